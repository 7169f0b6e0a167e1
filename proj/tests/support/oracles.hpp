#pragma once

// Independent brute-force references used by the unit and acceptance
// suites. These deliberately avoid the library's incomplete-beta and
// Edgeworth code paths.

#include <cmath>
#include <cstddef>
#include <vector>

namespace moonboot::oracles {

// Probability that the k-th smallest of m with-replacement draws from
// n distinct values equals each order statistic, by exhaustive
// enumeration of all n^m index tuples. k = floor(m*p) + 1.
inline std::vector<double> enumerate_weights(std::size_t n, std::size_t m,
                                             double p) {
    const auto k = static_cast<std::size_t>(
                       std::floor(static_cast<double>(m) * p)) + 1;
    std::vector<double> counts(n, 0.0);
    std::vector<std::size_t> tuple(m, 0); // order-statistic indices, 0-based
    double total = 0.0;
    for (;;) {
        std::vector<std::size_t> sorted = tuple;
        std::sort(sorted.begin(), sorted.end());
        counts[sorted[k - 1]] += 1.0;
        total += 1.0;
        std::size_t pos = 0;
        while (pos < m && ++tuple[pos] == n) {
            tuple[pos] = 0;
            ++pos;
        }
        if (pos == m) break;
    }
    for (double& c : counts) c /= total;
    return counts;
}

// P(X <= x) for X ~ Binomial(m, p) by direct summation of the mass
// function.
inline double exact_binomial_cdf(std::size_t m, double p, std::size_t x) {
    double pmf = std::pow(1.0 - p, static_cast<double>(m));
    double cdf = pmf;
    for (std::size_t i = 0; i < x && i < m; ++i) {
        pmf *= static_cast<double>(m - i) / static_cast<double>(i + 1) * p /
               (1.0 - p);
        cdf += pmf;
    }
    return std::min(cdf, 1.0);
}

} // namespace moonboot::oracles
