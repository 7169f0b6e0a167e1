#include <doctest.h>

#include <cmath>

#include "moonboot/edgeworth.hpp"
#include "moonboot/special.hpp"
#include "support/oracles.hpp"

using namespace moonboot;

TEST_CASE("binomial edgeworth closed forms") {
    // symmetric case: the skew term vanishes
    for (double t : {-2.0, -0.3, 0.0, 1.1, 3.7}) {
        CHECK(binomial_edgeworth_cdf(40, 0.5, t) == std_normal_cdf(t));
    }
    CHECK(binomial_edgeworth_cdf(50, 0.3, 0.0) ==
          doctest::Approx(0.508208).epsilon(1e-5));
    CHECK(binomial_edgeworth_cdf(50, 0.3, 40.0) == 1.0);
    CHECK(binomial_edgeworth_cdf(50, 0.3, -40.0) == 0.0);
    CHECK_THROWS_AS(binomial_edgeworth_cdf(50, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(binomial_edgeworth_cdf(0, 0.3, 0.0), std::invalid_argument);
}

TEST_CASE("binomial edgeworth tracks the exact CDF at lattice midpoints") {
    for (std::size_t m : {20, 50, 100}) {
        for (double p : {0.1, 0.3, 0.5}) {
            const double scale = std::sqrt(static_cast<double>(m) * p * (1 - p));
            double sup_edge = 0.0;
            double sup_normal = 0.0;
            for (std::size_t x = 0; x < m; ++x) {
                const double t =
                    (static_cast<double>(x) + 0.5 - static_cast<double>(m) * p) /
                    scale;
                const double exact = oracles::exact_binomial_cdf(m, p, x);
                sup_edge = std::max(sup_edge,
                                    std::abs(binomial_edgeworth_cdf(m, p, t) - exact));
                sup_normal =
                    std::max(sup_normal, std::abs(std_normal_cdf(t) - exact));
            }
            CHECK(sup_edge <= 1.5 / static_cast<double>(m));
            if (m == 50 && p == 0.3) {
                CHECK(sup_edge <= sup_normal); // the correction helps
            }
        }
    }
}

TEST_CASE("quantile edgeworth closed forms") {
    const QuantileLevel half(0.5);
    // correction carries a t^2 factor, so the center is exact
    CHECK(quantile_edgeworth_cdf(0.0, 25, half, DensityHandle{0.8, 1.3}) == 0.5);
    // symmetric density at its median: no correction at all
    const DensityHandle sym{0.3989422804014327, 0.0};
    for (double t : {-1.5, 0.4, 2.0}) {
        CHECK(quantile_edgeworth_cdf(t, 25, half, sym) == std_normal_cdf(t));
    }
    // exponential(1) at its median: f = 1/2, f' = -1/2, sigma = 1
    const DensityHandle expo{0.5, -0.5};
    CHECK(quantile_edgeworth_cdf(1.0, 100, half, expo) ==
          doctest::Approx(0.829246).epsilon(1e-5));
    CHECK(expo.sigma(half) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(quantile_edgeworth_cdf(1.0, 100, half, DensityHandle{0.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("quantile edgeworth correction is even in t and vanishes with m") {
    const QuantileLevel level(0.3);
    const DensityHandle density{0.6, -0.9};
    for (double t : {0.2, 0.8, 1.6}) {
        const double up = quantile_edgeworth_cdf(t, 50, level, density) -
                          std_normal_cdf(t);
        const double down = quantile_edgeworth_cdf(-t, 50, level, density) -
                            std_normal_cdf(-t);
        CHECK(up == doctest::Approx(down).epsilon(1e-12));
        CHECK(up < 0.0); // sign follows f'(mu)
    }
    for (double t : {-2.0, -0.5, 1.0, 2.5}) {
        CHECK(std::abs(quantile_edgeworth_cdf(t, 100000000, level, density) -
                       std_normal_cdf(t)) < 1e-3);
    }
}

TEST_CASE("berry_esseen_gap is the KS distance to the normal") {
    StudentizedDraws atom;
    atom.m = 4;
    atom.t = {0.0};
    CHECK(berry_esseen_gap(atom) == doctest::Approx(0.5));
}
