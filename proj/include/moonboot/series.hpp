#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace moonboot {

enum class SeriesKind { iid, markov_chain };

// An observed series X_1, ..., X_n in time order.
struct ObservationSeries {
    std::vector<double> values;
    SeriesKind kind = SeriesKind::iid;

    std::size_t size() const { return values.size(); }
};

// Ascending order statistics X_(1) <= ... <= X_(n).
struct SortedSample {
    std::vector<double> sorted;

    std::size_t size() const { return sorted.size(); }
    double order_stat(std::size_t j) const { return sorted[j - 1]; } // 1-based
};

// Quantile level p in the open interval (0, 1).
struct QuantileLevel {
    double p;

    explicit QuantileLevel(double level) : p(level) {
        if (!(p > 0.0 && p < 1.0)) {
            throw std::invalid_argument("QuantileLevel: p must lie in (0, 1)");
        }
    }
};

// Sorts a series into order statistics. Rejects empty input and any
// non-finite value.
SortedSample sort_sample(const ObservationSeries& series);

// Empirical CDF value #{i : X_i <= t} / n.
double empirical_cdf(const SortedSample& sample, double t);

// Sample quantile inf{t : ecdf(t) >= p}, i.e. the ceil(n*p)-th order
// statistic.
double sample_quantile(const SortedSample& sample, QuantileLevel level);

// One-sample Kolmogorov-Smirnov distance between the empirical CDF of
// `draws` and a reference CDF, via the exact max formula over the
// sorted draws. Rejects empty or non-finite input.
template <typename RefCdf>
double ks_distance(std::vector<double> draws, RefCdf&& reference) {
    if (draws.empty()) {
        throw std::invalid_argument("ks_distance: draws must be non-empty");
    }
    std::sort(draws.begin(), draws.end());
    const double inv_b = 1.0 / static_cast<double>(draws.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        if (!std::isfinite(draws[i])) {
            throw std::invalid_argument("ks_distance: draws must be finite");
        }
        const double r = reference(draws[i]);
        const double hi = static_cast<double>(i + 1) * inv_b - r;
        const double lo = r - static_cast<double>(i) * inv_b;
        sup = std::max(sup, std::max(hi, lo));
    }
    return sup;
}

// Newline-delimited decimal floats; '#' starts a comment line.
ObservationSeries read_series(const std::string& path);
void write_series(const std::string& path, const ObservationSeries& series);

} // namespace moonboot
