#pragma once

#include "moonboot/bootstrap.hpp"
#include "moonboot/series.hpp"

namespace moonboot {

// Analytic density information at the target quantile. sigma is the
// asymptotic scale sqrt(p(1-p)) / f_mu and is derived from the level
// inside each formula, so it is always consistent with f_mu and p.
struct DensityHandle {
    double f_mu = 0.0;      // density at the quantile, must be positive
    double fprime_mu = 0.0; // density derivative at the quantile

    double sigma(QuantileLevel level) const;
};

// Two-term expansion of the standardized Binomial(m, p) CDF:
// Phi(t) - (1-2p) / (6*sqrt(m*p*(1-p))) * phi(t) * H2(t), clamped to
// [0, 1].
double binomial_edgeworth_cdf(std::size_t m, double p, double t);

// Two-term approximation to the CDF of the Studentized bootstrap
// quantile: Phi(t) + (t*sigma)^2/sqrt(m) * f'(mu) * phi(t), clamped to
// [0, 1]. The phi argument t*sigma*f(mu)/sqrt(p(1-p)) reduces to t.
double quantile_edgeworth_cdf(double t, std::size_t m, QuantileLevel level,
                              const DensityHandle& density);

// sup_t |empirical CDF of the draws - Phi(t)|.
double berry_esseen_gap(const StudentizedDraws& draws);

} // namespace moonboot
