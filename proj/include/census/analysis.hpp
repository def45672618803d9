#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace census {
namespace analysis {

// theta(p) = -ln(1 - p), p in (0, 1).
double theta(double p);

// Largest unvisited fraction down to which an unvisited node is expected
// within h hops with confidence p: theta(p) / (h^2 * d).
double lemma1_threshold(double p, int h, double d);

// Nearest-neighbor distance law of a planar Poisson process of intensity rho.
double nn_pdf(double rho, double r);
double nn_cdf(double rho, double r);

// Expected transfers for a single locally-biased token: exact shell sum
// (N - N/d) + N * sum_{i=1..sqrt(z)-1} (2i+1)/i^2 with z = N/d. The
// fractional tail shell carries proportional weight. Degenerate N <= d
// returns N.
double local_bias_cover_series(double n, double d);

// Expected transfers for a single gradient-biased token:
// N * (1 + (1/d) * sum_{i=1..floor(sqrt(N))} 1/i^2). Bounded above by
// N * (1 + pi^2 / (6 d)).
double gradient_cover_series(double n, double d);

// Expected gradient messages with k tokens: shell sum
// N * sum_{i=1..sqrt(N/(kd))-1} (2i+1)/i^2, fractional tail shell included.
// Zero when the per-token area fits inside one neighborhood (N <= k*d).
double gradient_overhead_series(double n, double d, double k);

// Corollary scaling: each token covers N/k nodes on average, so per-token
// expectations are the single-token series evaluated at N/k.
double per_token_scaling(const std::function<double(double, double)>& series, double n, double d,
                         double k);

// Union coverage of c independent trials each stopped at fraction m.
double union_coverage_theory(double m, int c);

// Least-squares slope of log(value) against log(N). Needs >= 3 points,
// all positive.
double loglog_slope(const std::vector<std::pair<double, double>>& points);

// Plain least squares y = a + b*x; returns {intercept, slope, r_squared}.
struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};
LinearFit linear_fit(const std::vector<std::pair<double, double>>& points);

} // namespace analysis
} // namespace census
