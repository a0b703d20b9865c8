#include "qec5/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "qec5/rng.hpp"

using namespace qec5;

TEST(pm1, examples_and_monotonicity) {
    EXPECT_DOUBLE_EQ(p_m1(0.0), 0.0);
    EXPECT_DOUBLE_EQ(p_m1(1.0), 1.0);
    EXPECT_NEAR(p_m1(0.1), 0.08146, 5e-6);
    double prev = -1;
    for (double p = 0.0; p <= 1.0; p += 0.01) {
        EXPECT_GE(p_m1(p), prev);
        prev = p_m1(p);
    }
}

TEST(fit, recovers_exact_points) {
    std::vector<FitPoint> pts;
    for (double p : {1e-4, 3e-4, 1e-3, 3e-3})
        pts.push_back({p, 766.0 * std::pow(p, 1.873), 1.0});
    auto fit = fit_power_law(pts);
    EXPECT_NEAR(fit.a, 766.0, 766.0 * 1e-6);
    EXPECT_NEAR(fit.b, 1.873, 1e-6);
}

TEST(fit, rejects_bad_input) {
    std::vector<FitPoint> two = {{1e-3, 1e-2, 1.0}, {1e-4, 1e-3, 1.0}};
    EXPECT_THROW(fit_power_law(two), std::invalid_argument);
    std::vector<FitPoint> degenerate = {{1e-3, 1e-2, 1.0}, {1e-3, 2e-2, 1.0}, {1e-3, 3e-2, 1.0}};
    EXPECT_THROW(fit_power_law(degenerate), std::invalid_argument);
    std::vector<FitPoint> neg = {{1e-3, 1e-2, 1.0}, {1e-4, 0.0, 1.0}, {1e-5, 1e-6, 1.0}};
    EXPECT_THROW(fit_power_law(neg), std::invalid_argument);
}

TEST(fit, noisy_recovery_within_covariance) {
    // Multiplicative 5% noise on synthetic points: the reported covariance
    // should cover the truth most of the time.
    Rng rng(77);
    const double true_a = 766, true_b = 1.873;
    int covered_b = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        std::vector<FitPoint> pts;
        for (double p : {1e-4, 2e-4, 5e-4, 1e-3, 2e-3}) {
            double noise = 1.0 + 0.05 * rng.gaussian();
            double sigma_log = 0.05;
            pts.push_back({p, true_a * std::pow(p, true_b) * std::max(noise, 0.5),
                           1.0 / (sigma_log * sigma_log)});
        }
        auto fit = fit_power_law(pts);
        double sd_b = std::sqrt(fit.cov[1][1]);
        if (std::abs(fit.b - true_b) < 2 * sd_b) ++covered_b;
    }
    EXPECT_GT(covered_b, trials * 0.85);
}

TEST(threshold, fixed_point_examples) {
    FitResult unit;
    unit.a = 1.0;
    unit.b = 1.5;
    EXPECT_NEAR(threshold(unit, 100).value, 1.0, 1e-12);

    FitResult f;
    f.a = 766;
    f.b = 1.873;
    EXPECT_NEAR(threshold(f, 100).value, 4.97e-4, 0.05e-4);

    FitResult flat;
    flat.a = 10;
    flat.b = 0.9;
    EXPECT_THROW(threshold(flat), std::domain_error);
}

TEST(threshold, uncertainty_shrinks_with_covariance) {
    FitResult f;
    f.a = 766;
    f.b = 1.873;
    f.cov = {{{0.01, 0.0}, {0.0, 0.001}}};
    double wide = threshold(f, 40000).sigma;
    f.cov = {{{0.0025, 0.0}, {0.0, 0.00025}}};
    double narrow = threshold(f, 40000).sigma;
    EXPECT_GT(wide, narrow);
    EXPECT_GT(narrow, 0.0);
}

TEST(curves, common_intersection_and_contraction) {
    FitResult f;
    f.a = 766;
    f.b = 1.873;
    double pstar = threshold(f, 100).value;
    // Level curves all pass through the fixed point.
    for (int l = 1; l <= 3; ++l)
        EXPECT_NEAR(concatenated_rate(f, l, pstar), pstar, pstar * 1e-9);
    // Below the fixed point each level contracts.
    double p = pstar / 3;
    EXPECT_LT(concatenated_rate(f, 2, p), concatenated_rate(f, 1, p));
    EXPECT_LT(concatenated_rate(f, 3, p), concatenated_rate(f, 2, p));
    // Pairwise numerical intersections agree to high precision.
    double i12 = curve_intersection(f, 1, 2, pstar / 10, pstar * 10);
    double i23 = curve_intersection(f, 2, 3, pstar / 10, pstar * 10);
    double i13 = curve_intersection(f, 1, 3, pstar / 10, pstar * 10);
    EXPECT_NEAR(i12, i23, i12 * 1e-12);
    EXPECT_NEAR(i12, i13, i12 * 1e-12);
    EXPECT_NEAR(i12, pstar, pstar * 1e-9);
}

TEST(curves, sampling_grid) {
    FitResult f;
    f.a = 100;
    f.b = 2.0;
    auto curves = concatenation_curves(f, 3, {1e-4, 1e-3});
    ASSERT_EQ(curves.size(), 3u);
    EXPECT_EQ(curves[0].level, 1);
    EXPECT_NEAR(curves[0].p_l[0], 100 * 1e-8, 1e-12);
    EXPECT_NEAR(curves[1].p_l[0], 100 * std::pow(100 * 1e-8, 2.0), 1e-15);
}

TEST(wilson, interval_sanity) {
    auto [lo, hi] = wilson_interval(10, 1000, 0.99);
    EXPECT_LT(lo, 0.01);
    EXPECT_GT(hi, 0.01);
    EXPECT_GT(lo, 0.0);
    auto [lo0, hi0] = wilson_interval(0, 1000, 0.99);
    EXPECT_DOUBLE_EQ(lo0, 0.0);
    EXPECT_GT(hi0, 0.0);
    // 90% interval is narrower than 99%.
    auto [lo90, hi90] = wilson_interval(10, 1000, 0.90);
    EXPECT_GT(lo90, lo);
    EXPECT_LT(hi90, hi);
}

TEST(run, zero_rate_zero_failures) {
    RunConfig cfg;
    cfg.q = 3;
    cfg.model = {NoiseModel::Kind::StandardDepolarizing, 0.0};
    cfg.decoder = DecoderKind::Bm;
    cfg.flagged = false;
    cfg.shots = 500;
    auto res = run_experiment(cfg);
    EXPECT_EQ(res.failures, 0);
    EXPECT_EQ(res.p_l, 0.0);
}

TEST(run, deterministic_across_threads_and_repeats) {
    RunConfig cfg;
    cfg.q = 2;
    cfg.model = {NoiseModel::Kind::CircuitLevel, 2e-3};
    cfg.decoder = DecoderKind::Bm;
    cfg.flagged = true;
    cfg.shots = 1500;
    cfg.seed = 123;
    cfg.threads = 1;
    auto r1 = run_experiment(cfg);
    cfg.threads = 2;
    auto r2 = run_experiment(cfg);
    cfg.threads = 3;
    auto r3 = run_experiment(cfg);
    EXPECT_EQ(r1.failures, r2.failures);
    EXPECT_EQ(r2.failures, r3.failures);
    auto r4 = run_experiment(cfg);
    EXPECT_EQ(r3.failures, r4.failures);
    EXPECT_EQ(r3.csv_row(), r4.csv_row());
}

TEST(run, shots_from_sample_parameter) {
    RunConfig cfg;
    cfg.model.p = 1e-3;
    cfg.sample_parameter_A = 20;
    EXPECT_EQ(cfg.effective_shots(), 20000);
    cfg.sample_parameter_A = 0;
    cfg.shots = 77;
    EXPECT_EQ(cfg.effective_shots(), 77);
}

TEST(run, csv_schema) {
    EXPECT_EQ(ExperimentResult::csv_header(),
              "q,model,decoder,flag,p,shots,failures,p_l,ci_low,ci_high,seed");
    RunConfig cfg;
    cfg.q = 3;
    cfg.model = {NoiseModel::Kind::StandardDepolarizing, 0.05};
    cfg.decoder = DecoderKind::Mwpm;
    cfg.flagged = false;
    cfg.seed = 9;
    ExperimentResult res;
    res.config = cfg;
    res.shots = 100;
    res.failures = 5;
    res.p_l = 0.05;
    auto row = res.csv_row();
    EXPECT_NE(row.find("3,sdep,mwpm,0,0.05,100,5,"), std::string::npos);
}
