#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moonboot/rng.hpp"
#include "moonboot/series.hpp"

namespace moonboot {

// Rule for deriving the subsample size m from n. All real-valued
// rules are floored.
struct MRule {
    enum class Kind { log_n, cbrt, sqrt_n, fixed };

    Kind kind = Kind::cbrt;
    std::size_t fixed_k = 0;
    double c = 1.0; // scale for the cbrt rule

    // Accepts "log", "cbrt", "sqrt", "fixed:K".
    static MRule parse(const std::string& text);
    std::string str() const;
};

// m per the rule: log -> floor(ln n), cbrt -> floor(c * n^(1/3)),
// sqrt -> floor(sqrt n), fixed(k) -> k clamped to [1, n]. Throws if
// the rule yields m < 1.
std::size_t choose_m(std::size_t n, const MRule& rule);

// k = floor(count * p) + 1, the order-statistic index of the quantile
// within a resample of the given size.
std::size_t quantile_order_index(std::size_t count, QuantileLevel level);

// r = floor(n * p) + 1, the centering index of the variance formula.
std::size_t centering_index(std::size_t n, QuantileLevel level);

// m i.i.d. draws from the empirical distribution (with replacement).
std::vector<double> moon_resample(const SortedSample& sample, std::size_t m,
                                  Stream& stream);

// k-th smallest element of the resample, k = floor(m*p)+1.
double bootstrap_quantile(std::vector<double> resample, QuantileLevel level);

// Probability that the m-out-of-n bootstrap quantile equals each order
// statistic: w[j-1] = I_{j/n}(k, m-k+1) - I_{(j-1)/n}(k, m-k+1).
struct MoonWeights {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k = 0;
    double p = 0.5;
    std::vector<double> w;
};

MoonWeights moon_weights(std::size_t n, std::size_t m, QuantileLevel level);

// Closed-form second moment of sqrt(m) * (bootstrap quantile - X_(r)):
// sigma2 = m * sum_j (X_(j) - X_(r))^2 * w_j.
struct BootstrapVariance {
    double sigma2 = 0.0;
    std::size_t r = 0;
};

BootstrapVariance closed_form_variance(const SortedSample& sample,
                                       const MoonWeights& weights,
                                       QuantileLevel level);

// T = sqrt(m) * (mu_boot - mu_hat_n) / sqrt(sigma2). sigma2 already
// carries the factor m, so sqrt(sigma2) is the scale of
// sqrt(m) * (bootstrap quantile - mu_hat_n). Throws when sigma2 <= 0.
double studentized_stat(double mu_boot, double mu_hat_n,
                        const BootstrapVariance& variance, std::size_t m);

struct Ci {
    double lo = 0.0;
    double hi = 0.0;
    double level = 0.0;
};

// Confidence interval for the p-th quantile: one bootstrap draw
// mu_boot plus/minus z_{(1+conf)/2} * sqrt(sigma2) / sqrt(m) with the
// closed-form variance. Degenerate variance collapses to the point
// interval at the sample quantile.
Ci moon_ci(const SortedSample& sample, QuantileLevel level, std::size_t m,
           double conf, Stream& stream);

// Monte Carlo collection of Studentized statistics for one fixed
// dataset: B resamples, each producing one T against the fixed sample
// quantile and closed-form variance.
struct StudentizedDraws {
    std::vector<double> t;
    std::size_t m = 0;

    std::size_t replicates() const { return t.size(); }
};

StudentizedDraws bootstrap_distribution(const SortedSample& sample,
                                        std::size_t m, QuantileLevel level,
                                        std::size_t replicates, Stream& stream);

} // namespace moonboot
