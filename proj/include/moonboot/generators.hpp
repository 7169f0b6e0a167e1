#pragma once

#include <cstddef>

#include "moonboot/rng.hpp"
#include "moonboot/series.hpp"

namespace moonboot {

// n i.i.d. standard normal draws.
ObservationSeries gen_gaussian_iid(std::size_t n, Stream& stream);

// Heavy-tailed law with tail F(x) = 1 - 1/(2 ln|x|) for x > C, the
// symmetric branch for x < -C, and a piecewise-linear interior through
// (-C, 1/(2 ln C)), (0, 1/2), (C, 1 - 1/(2 ln C)). Requires C > e.
// Tail draws are capped at exp(700) to keep every value finite; the
// exact inverse CDF overflows a double beyond that point.
ObservationSeries gen_heavy_tail(std::size_t n, double C, Stream& stream);

// CDF of the heavy-tailed law above, for round-trip checks.
double heavy_tail_cdf(double x, double C);

// Random walk with Gaussian steps of the given scale, folded into
// [-1, 1]; X_0 = 0, the emitted series starts at X_1.
ObservationSeries gen_reflected_rw(std::size_t n, double step_scale,
                                   Stream& stream);

// Folds a real into [-1, 1] by repeated reflection at the boundaries.
double reflect_into_unit(double v);

// Random-walk Metropolis-Hastings on a standard normal target with a
// Laplace(0, proposal_scale) proposal, started at 0. The first
// burn_in states are discarded. When `accepted` is non-null it
// receives the number of accepted proposals over the whole run.
ObservationSeries gen_rwmh(std::size_t n, double proposal_scale,
                           std::size_t burn_in, Stream& stream,
                           std::size_t* accepted = nullptr);

// Reward series r(X_i) = (X_i + 1) / 2 over the reflected random walk.
ObservationSeries gen_mdp_rewards(std::size_t n, double step_scale,
                                  Stream& stream);

// n i.i.d. Uniform(0, theta) draws.
ObservationSeries gen_uniform(std::size_t n, double theta, Stream& stream);

// One replicate of the scaled maximum statistic m * (X_(n) - max of an
// m-resample).
double max_bootstrap_stat(const SortedSample& sample, std::size_t m,
                          Stream& stream);

} // namespace moonboot
