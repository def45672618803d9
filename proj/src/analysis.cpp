#include "census/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace census {
namespace analysis {

double theta(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("theta: p must be in (0, 1)");
    return -std::log(1.0 - p);
}

double lemma1_threshold(double p, int h, double d) {
    if (h < 1) throw std::invalid_argument("lemma1_threshold: h must be >= 1");
    if (!(d > 0.0)) throw std::invalid_argument("lemma1_threshold: d must be > 0");
    return theta(p) / (static_cast<double>(h) * h * d);
}

double nn_pdf(double rho, double r) {
    if (!(rho > 0.0)) throw std::invalid_argument("nn_pdf: rho must be > 0");
    if (r < 0.0) throw std::invalid_argument("nn_pdf: r must be >= 0");
    return 2.0 * std::numbers::pi * rho * r * std::exp(-rho * std::numbers::pi * r * r);
}

double nn_cdf(double rho, double r) {
    if (!(rho > 0.0)) throw std::invalid_argument("nn_cdf: rho must be > 0");
    if (r < 0.0) throw std::invalid_argument("nn_cdf: r must be >= 0");
    return 1.0 - std::exp(-rho * std::numbers::pi * r * r);
}

namespace {

// Sum of N*(2i+1)/i^2 over shells i = 1..upper, where the non-integer tail
// shell contributes proportionally.
double shell_sum(double n, double upper) {
    if (upper <= 0.0) return 0.0;
    const int full = static_cast<int>(std::floor(upper));
    double total = 0.0;
    for (int i = 1; i <= full; ++i) {
        total += n * (2.0 * i + 1.0) / (static_cast<double>(i) * i);
    }
    const double frac = upper - full;
    if (frac > 0.0) {
        const double i = full + 1.0;
        total += frac * n * (2.0 * i + 1.0) / (i * i);
    }
    return total;
}

} // namespace

double local_bias_cover_series(double n, double d) {
    if (!(n >= 1.0)) throw std::invalid_argument("local_bias_cover_series: n must be >= 1");
    if (!(d >= 1.0)) throw std::invalid_argument("local_bias_cover_series: d must be >= 1");
    if (n <= d) return n;
    const double z = n / d;
    return (n - n / d) + shell_sum(n, std::sqrt(z) - 1.0);
}

double gradient_cover_series(double n, double d) {
    if (!(n >= 1.0)) throw std::invalid_argument("gradient_cover_series: n must be >= 1");
    if (!(d >= 1.0)) throw std::invalid_argument("gradient_cover_series: d must be >= 1");
    double basel = 0.0;
    const int limit = static_cast<int>(std::floor(std::sqrt(n)));
    for (int i = 1; i <= limit; ++i) basel += 1.0 / (static_cast<double>(i) * i);
    return n * (1.0 + basel / d);
}

double gradient_overhead_series(double n, double d, double k) {
    if (!(k >= 1.0)) throw std::invalid_argument("gradient_overhead_series: k must be >= 1");
    if (!(n >= 1.0) || !(d >= 1.0))
        throw std::invalid_argument("gradient_overhead_series: n and d must be >= 1");
    const double p = n / (k * d);
    if (p <= 1.0) return 0.0;
    return shell_sum(n, std::sqrt(p) - 1.0);
}

double per_token_scaling(const std::function<double(double, double)>& series, double n, double d,
                         double k) {
    if (!(k >= 1.0)) throw std::invalid_argument("per_token_scaling: k must be >= 1");
    return series(n / k, d);
}

double union_coverage_theory(double m, int c) {
    if (!(m > 0.0 && m < 1.0))
        throw std::invalid_argument("union_coverage_theory: m must be in (0, 1)");
    if (c < 1) throw std::invalid_argument("union_coverage_theory: c must be >= 1");
    return 1.0 - std::pow(1.0 - m, c);
}

LinearFit linear_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 points");
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate x values");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("loglog_slope: need >= 3 points");
    std::vector<std::pair<double, double>> logs;
    logs.reserve(points.size());
    for (const auto& [x, y] : points) {
        if (!(x > 0.0 && y > 0.0))
            throw std::invalid_argument("loglog_slope: points must be positive");
        logs.emplace_back(std::log(x), std::log(y));
    }
    return linear_fit(logs).slope;
}

} // namespace analysis
} // namespace census
