#include "moonboot/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "moonboot/special.hpp"

namespace moonboot {

double DensityHandle::sigma(QuantileLevel level) const {
    if (!(f_mu > 0.0)) {
        throw std::invalid_argument("DensityHandle: f_mu must be positive");
    }
    return std::sqrt(level.p * (1.0 - level.p)) / f_mu;
}

double binomial_edgeworth_cdf(std::size_t m, double p, double t) {
    if (m < 1) {
        throw std::invalid_argument("binomial_edgeworth_cdf: m must be positive");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("binomial_edgeworth_cdf: p must lie in (0, 1)");
    }
    const double skew =
        (1.0 - 2.0 * p) / (6.0 * std::sqrt(static_cast<double>(m) * p * (1.0 - p)));
    const double value = std_normal_cdf(t) - skew * std_normal_pdf(t) * hermite2(t);
    return std::clamp(value, 0.0, 1.0);
}

double quantile_edgeworth_cdf(double t, std::size_t m, QuantileLevel level,
                              const DensityHandle& density) {
    if (m < 1) {
        throw std::invalid_argument("quantile_edgeworth_cdf: m must be positive");
    }
    const double s = density.sigma(level);
    const double ts = t * s;
    const double value = std_normal_cdf(t) +
                         ts * ts / std::sqrt(static_cast<double>(m)) *
                             density.fprime_mu * std_normal_pdf(t);
    return std::clamp(value, 0.0, 1.0);
}

double berry_esseen_gap(const StudentizedDraws& draws) {
    return ks_distance(draws.t, [](double t) { return std_normal_cdf(t); });
}

} // namespace moonboot
