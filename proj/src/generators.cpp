#include "moonboot/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace moonboot {

namespace {

// exp(700) ~ 1.01e304; the largest tail draw that squares of
// differences downstream can still be formed from without an
// immediate overflow of the draw itself.
constexpr double kHeavyTailLogCap = 700.0;

void require_length(std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("generator: n must be at least 1");
    }
}

} // namespace

ObservationSeries gen_gaussian_iid(std::size_t n, Stream& stream) {
    require_length(n);
    ObservationSeries series;
    series.kind = SeriesKind::iid;
    series.values.resize(n);
    for (double& v : series.values) v = stream.normal();
    return series;
}

ObservationSeries gen_heavy_tail(std::size_t n, double C, Stream& stream) {
    require_length(n);
    if (!(C > M_E)) {
        throw std::invalid_argument("gen_heavy_tail: C must exceed e");
    }
    const double tail_mass = 1.0 / (2.0 * std::log(C)); // F(-C) and 1 - F(C)
    ObservationSeries series;
    series.kind = SeriesKind::iid;
    series.values.resize(n);
    for (double& v : series.values) {
        const double u = stream.u01_open();
        if (u > 1.0 - tail_mass) {
            v = std::exp(std::min(0.5 / (1.0 - u), kHeavyTailLogCap));
        } else if (u < tail_mass) {
            v = -std::exp(std::min(0.5 / u, kHeavyTailLogCap));
        } else {
            // Linear interior between (-C, tail_mass) and (C, 1 - tail_mass)
            // passing through (0, 1/2).
            v = C * (u - 0.5) / (0.5 - tail_mass);
        }
    }
    return series;
}

double heavy_tail_cdf(double x, double C) {
    if (!(C > M_E)) {
        throw std::invalid_argument("heavy_tail_cdf: C must exceed e");
    }
    const double tail_mass = 1.0 / (2.0 * std::log(C));
    if (x > C) return 1.0 - 1.0 / (2.0 * std::log(x));
    if (x < -C) return 1.0 / (2.0 * std::log(-x));
    return 0.5 + x / C * (0.5 - tail_mass);
}

double reflect_into_unit(double v) {
    while (v > 1.0 || v < -1.0) {
        v = v > 1.0 ? 2.0 - v : -2.0 - v;
    }
    return v;
}

ObservationSeries gen_reflected_rw(std::size_t n, double step_scale,
                                   Stream& stream) {
    require_length(n);
    if (!(step_scale > 0.0 && step_scale < 2.0)) {
        throw std::invalid_argument("gen_reflected_rw: step_scale must lie in (0, 2)");
    }
    ObservationSeries series;
    series.kind = SeriesKind::markov_chain;
    series.values.resize(n);
    double x = 0.0;
    for (double& v : series.values) {
        x = reflect_into_unit(x + step_scale * stream.normal());
        v = x;
    }
    return series;
}

ObservationSeries gen_rwmh(std::size_t n, double proposal_scale,
                           std::size_t burn_in, Stream& stream,
                           std::size_t* accepted) {
    require_length(n);
    if (!(proposal_scale > 0.0)) {
        throw std::invalid_argument("gen_rwmh: proposal_scale must be positive");
    }
    ObservationSeries series;
    series.kind = SeriesKind::markov_chain;
    series.values.resize(n);
    std::size_t accept_count = 0;
    double x = 0.0;
    const std::size_t total = burn_in + n;
    for (std::size_t i = 0; i < total; ++i) {
        const double y = x + stream.laplace(proposal_scale);
        // Symmetric proposal: rho = min(1, pi(y)/pi(x)) for the
        // standard normal target.
        const double log_rho = 0.5 * (x * x - y * y);
        if (stream.u01_open() < std::exp(std::min(log_rho, 0.0))) {
            x = y;
            ++accept_count;
        }
        if (i >= burn_in) series.values[i - burn_in] = x;
    }
    if (accepted) *accepted = accept_count;
    return series;
}

ObservationSeries gen_mdp_rewards(std::size_t n, double step_scale,
                                  Stream& stream) {
    ObservationSeries series = gen_reflected_rw(n, step_scale, stream);
    for (double& v : series.values) v = 0.5 * (v + 1.0);
    return series;
}

ObservationSeries gen_uniform(std::size_t n, double theta, Stream& stream) {
    require_length(n);
    if (!(theta > 0.0)) {
        throw std::invalid_argument("gen_uniform: theta must be positive");
    }
    ObservationSeries series;
    series.kind = SeriesKind::iid;
    series.values.resize(n);
    for (double& v : series.values) v = theta * stream.u01();
    return series;
}

double max_bootstrap_stat(const SortedSample& sample, std::size_t m,
                          Stream& stream) {
    if (m < 1 || m > sample.size()) {
        throw std::invalid_argument("max_bootstrap_stat: need 1 <= m <= n");
    }
    double resample_max = -HUGE_VAL;
    for (std::size_t i = 0; i < m; ++i) {
        resample_max = std::max(
            resample_max, sample.sorted[stream.uniform_index(sample.size())]);
    }
    return static_cast<double>(m) * (sample.sorted.back() - resample_max);
}

} // namespace moonboot
