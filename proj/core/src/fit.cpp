#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qec5/experiments.hpp"
#include "qec5/rng.hpp"

namespace qec5 {

FitResult fit_power_law(const std::vector<FitPoint>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    for (const auto& pt : points)
        if (pt.p <= 0.0 || pt.p_l <= 0.0 || pt.weight <= 0.0)
            throw std::invalid_argument("fit_power_law: points must be positive");

    // Weighted least squares for y = c0 + c1 x with x = ln p, y = ln p_l.
    double s_w = 0, s_x = 0, s_y = 0, s_xx = 0, s_xy = 0;
    for (const auto& pt : points) {
        const double x = std::log(pt.p), y = std::log(pt.p_l), w = pt.weight;
        s_w += w;
        s_x += w * x;
        s_y += w * y;
        s_xx += w * x * x;
        s_xy += w * x * y;
    }
    const double det = s_w * s_xx - s_x * s_x;
    if (std::abs(det) < 1e-12 * std::max(1.0, s_w * s_xx))
        throw std::invalid_argument("fit_power_law: degenerate design matrix");
    const double c0 = (s_xx * s_y - s_x * s_xy) / det;
    const double c1 = (s_w * s_xy - s_x * s_y) / det;

    FitResult fit;
    fit.a = std::exp(c0);
    fit.b = c1;
    // (X^T W X)^-1 with weights as inverse variances of y.
    fit.cov[0][0] = s_xx / det;
    fit.cov[0][1] = fit.cov[1][0] = -s_x / det;
    fit.cov[1][1] = s_w / det;
    return fit;
}

std::array<std::array<double, 2>, 2> FitResult::cov_ab() const {
    // var(a) = a^2 var(ln a) to first order.
    std::array<std::array<double, 2>, 2> c{};
    c[0][0] = a * a * cov[0][0];
    c[0][1] = c[1][0] = a * cov[0][1];
    c[1][1] = cov[1][1];
    return c;
}

ThresholdResult threshold(const FitResult& fit, int mc_samples, std::uint64_t seed) {
    if (fit.b <= 1.0)
        throw std::domain_error("threshold: no finite threshold for b <= 1");
    ThresholdResult res;
    res.value = std::pow(fit.a, -1.0 / (fit.b - 1.0));

    // Cholesky of the 2x2 (ln a, b) covariance.
    const double c00 = std::max(fit.cov[0][0], 0.0);
    const double l00 = std::sqrt(c00);
    const double l10 = l00 > 0 ? fit.cov[0][1] / l00 : 0.0;
    const double l11 = std::sqrt(std::max(fit.cov[1][1] - l10 * l10, 0.0));

    Rng rng(seed);
    double sum = 0, sum2 = 0;
    int used = 0;
    const double ln_a0 = std::log(fit.a);
    for (int i = 0; i < mc_samples; ++i) {
        double g1 = rng.gaussian(), g2 = rng.gaussian();
        double ln_a = ln_a0 + l00 * g1;
        double b = fit.b + l10 * g1 + l11 * g2;
        if (b <= 1.0 + 1e-9) continue;  // sample outside the valid regime
        double p = std::exp(-ln_a / (b - 1.0));
        sum += p;
        sum2 += p * p;
        ++used;
    }
    if (used > 1) {
        double mean = sum / used;
        res.sigma = std::sqrt(std::max(sum2 / used - mean * mean, 0.0));
    }
    return res;
}

double concatenated_rate(const FitResult& fit, int level, double p) {
    double r = p;
    for (int l = 0; l < level; ++l) r = fit.a * std::pow(r, fit.b);
    return r;
}

std::vector<LevelCurve> concatenation_curves(const FitResult& fit, int levels,
                                             const std::vector<double>& p_grid) {
    if (levels < 1) throw std::invalid_argument("concatenation_curves: levels >= 1");
    std::vector<LevelCurve> curves;
    for (int l = 1; l <= levels; ++l) {
        LevelCurve c;
        c.level = l;
        c.p = p_grid;
        for (double p : p_grid) c.p_l.push_back(concatenated_rate(fit, l, p));
        curves.push_back(std::move(c));
    }
    return curves;
}

double curve_intersection(const FitResult& fit, int level_a, int level_b, double lo, double hi) {
    auto diff = [&](double p) {
        return std::log(concatenated_rate(fit, level_a, p)) -
               std::log(concatenated_rate(fit, level_b, p));
    };
    double flo = diff(lo), fhi = diff(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if (flo * fhi > 0)
        throw std::domain_error("curve_intersection: no sign change on bracket");
    for (int i = 0; i < 200; ++i) {
        double mid = std::sqrt(lo * hi);  // bisection in log space
        double fm = diff(mid);
        if (fm == 0) return mid;
        if (flo * fm < 0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return std::sqrt(lo * hi);
}

std::string fit_report_json(const FitResult& fit, const ThresholdResult& thr,
                            const std::vector<LevelCurve>& curves) {
    nlohmann::json j;
    j["a"] = fit.a;
    j["b"] = fit.b;
    auto cab = fit.cov_ab();
    j["cov"] = {{cab[0][0], cab[0][1]}, {cab[1][0], cab[1][1]}};
    j["cov_log"] = {{fit.cov[0][0], fit.cov[0][1]}, {fit.cov[1][0], fit.cov[1][1]}};
    j["threshold"] = thr.value;
    j["threshold_sigma"] = thr.sigma;
    auto& lc = j["level_curves"] = nlohmann::json::array();
    for (const auto& c : curves) {
        nlohmann::json e;
        e["level"] = c.level;
        e["code_parameters"] = {static_cast<long long>(std::pow(5, c.level)), 1,
                                static_cast<long long>(std::pow(3, c.level))};
        e["p"] = c.p;
        e["p_l"] = c.p_l;
        lc.push_back(std::move(e));
    }
    return j.dump(2);
}

}  // namespace qec5
