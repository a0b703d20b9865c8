#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qec5/decoder.hpp"
#include "qec5/flag_table.hpp"
#include "qec5/noise.hpp"

namespace qec5 {

struct RunConfig {
    int q = 2;
    int cycles = 3;
    NoiseModel model{NoiseModel::Kind::CircuitLevel, 1e-3};
    DecoderKind decoder = DecoderKind::Bm;
    bool flagged = true;
    long long shots = 10000;
    std::uint64_t seed = 0;
    int threads = 0;          // 0 = hardware concurrency
    double ci_level = 0.99;   // Wilson interval level (0.90 or 0.99)

    // Sample-count convention shots = A / p when A > 0 overrides `shots`.
    double sample_parameter_A = 0.0;

    long long effective_shots() const;
};

struct ExperimentResult {
    RunConfig config;
    long long shots = 0;
    long long failures = 0;
    double p_l = 0.0;
    double ci_low = 0.0, ci_high = 0.0;

    std::string csv_row() const;
    static std::string csv_header();
};

// Wilson score interval for f failures out of n at the given level.
std::pair<double, double> wilson_interval(long long failures, long long n, double level);

// Full Monte Carlo pipeline: build + schedule circuits, instrument noise,
// propagate the fault frame, extract detection events, decode (flag table
// first when flagged), and check the residual for trivial logical action.
// Shots run on worker threads with independent per-shot RNG streams, so the
// result is bit-identical for a fixed seed regardless of thread count.
ExperimentResult run_experiment(const RunConfig& cfg);

// Probability of more than one data qudit erring in a cycle under the
// standard depolarizing model: 1 - [(1-p)^5 + 5 p (1-p)^4].
double p_m1(double p_c);

struct FitPoint {
    double p = 0.0;       // physical rate
    double p_l = 0.0;     // logical rate
    double weight = 1.0;  // inverse variance of log(p_l)
};

struct FitResult {
    double a = 0.0, b = 0.0;
    // Covariance of (ln a, b) from the weighted normal equations.
    std::array<std::array<double, 2>, 2> cov{};
    std::array<std::array<double, 2>, 2> cov_ab() const;  // delta-method (a, b)
};

// Weighted least squares of log p_l = ln a + b log p. Needs >= 3 points.
FitResult fit_power_law(const std::vector<FitPoint>& points);

struct ThresholdResult {
    double value = 0.0;
    double sigma = 0.0;
};

// Fixed point a^(-1/(b-1)) of P(p) = a p^b, the common intersection of all
// concatenation-level curves. Uncertainty by Monte Carlo over (ln a, b)
// drawn from the fit covariance. Requires b > 1.
ThresholdResult threshold(const FitResult& fit, int mc_samples = 20000,
                          std::uint64_t seed = 12345);

struct LevelCurve {
    int level = 1;
    std::vector<double> p;    // physical rates sampled
    std::vector<double> p_l;  // projected logical rates
};

// Level-l logical rate: P1 = a p^b, P(l+1) = a (Pl)^b. Concatenating l
// times yields parameters [[5^l, 1, 3^l]].
double concatenated_rate(const FitResult& fit, int level, double p);
std::vector<LevelCurve> concatenation_curves(const FitResult& fit, int levels,
                                             const std::vector<double>& p_grid);

// Numerical intersection of consecutive level curves on (lo, hi).
double curve_intersection(const FitResult& fit, int level_a, int level_b, double lo, double hi);

std::string fit_report_json(const FitResult& fit, const ThresholdResult& thr,
                            const std::vector<LevelCurve>& curves);

}  // namespace qec5
