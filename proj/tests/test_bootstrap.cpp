#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "moonboot/bootstrap.hpp"
#include "moonboot/generators.hpp"
#include "moonboot/special.hpp"
#include "support/oracles.hpp"

using namespace moonboot;

namespace {

SortedSample gaussian_sample(std::size_t n, std::uint64_t seed, std::uint64_t index) {
    Stream stream = derive_stream(seed, index);
    return sort_sample(gen_gaussian_iid(n, stream));
}

} // namespace

TEST_CASE("choose_m reproduces the reported subsample sizes") {
    CHECK(choose_m(10000, MRule::parse("log")) == 9);
    CHECK(choose_m(10000, MRule::parse("cbrt")) == 21);
    CHECK(choose_m(10000, MRule::parse("sqrt")) == 100);
    CHECK(choose_m(20000, MRule::parse("log")) == 9);
    CHECK(choose_m(20000, MRule::parse("cbrt")) == 27);
    CHECK(choose_m(20000, MRule::parse("sqrt")) == 141);
    CHECK(choose_m(50000, MRule::parse("log")) == 10);
    CHECK(choose_m(50000, MRule::parse("cbrt")) == 36);
    CHECK(choose_m(50000, MRule::parse("sqrt")) == 223);
}

TEST_CASE("choose_m edge behavior") {
    MRule scaled = MRule::parse("cbrt");
    scaled.c = 2.0;
    CHECK(choose_m(1000, scaled) == 20);
    CHECK(choose_m(100, MRule::parse("fixed:7")) == 7);
    CHECK(choose_m(5, MRule::parse("fixed:700")) == 5); // clamped to n
    CHECK_THROWS_AS(choose_m(2, MRule::parse("log")), std::invalid_argument);
    CHECK_THROWS_AS(choose_m(1, MRule::parse("sqrt")), std::invalid_argument);
    CHECK_THROWS_AS(MRule::parse("quartic"), std::invalid_argument);
    CHECK_THROWS_AS(MRule::parse("fixed:x"), std::invalid_argument);
    CHECK(MRule::parse("fixed:21").str() == "fixed:21");
}

TEST_CASE("moon_resample draws from the observed values") {
    const auto constant = sort_sample({{4.25, 4.25, 4.25}});
    Stream stream = derive_stream(1, 0);
    for (double v : moon_resample(constant, 3, stream)) CHECK(v == 4.25);

    const auto sample = sort_sample({{1, 2, 3}});
    Stream s1 = derive_stream(9, 4);
    Stream s2 = derive_stream(9, 4);
    CHECK(moon_resample(sample, 3, s1) == moon_resample(sample, 3, s2));

    CHECK_THROWS_AS(moon_resample(sample, 4, s1), std::invalid_argument);
}

TEST_CASE("moon_resample picks each value uniformly") {
    const auto sample = sort_sample({{1, 2, 3}});
    std::array<std::size_t, 3> counts{0, 0, 0};
    Stream stream = derive_stream(17, 0);
    const std::size_t draws = 100000;
    for (std::size_t i = 0; i < draws; ++i) {
        const double v = moon_resample(sample, 1, stream)[0];
        counts[static_cast<std::size_t>(v) - 1] += 1;
    }
    const double expected = draws / 3.0;
    double chi2 = 0.0;
    for (std::size_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 20.0); // chi-square(2), far beyond the 99.9% point
}

TEST_CASE("bootstrap_quantile takes the k-th order statistic") {
    CHECK(bootstrap_quantile({2, 2, 3}, QuantileLevel(0.5)) == 2.0);
    CHECK(bootstrap_quantile({5, 1, 9}, QuantileLevel(0.5)) == 5.0);
    CHECK(bootstrap_quantile({1, 2}, QuantileLevel(0.5)) == 2.0);
    CHECK_THROWS_AS(bootstrap_quantile({}, QuantileLevel(0.5)),
                    std::invalid_argument);
}

TEST_CASE("moon_weights closed forms") {
    const auto uniform = moon_weights(7, 1, QuantileLevel(0.5));
    for (double w : uniform.w) CHECK(w == doctest::Approx(1.0 / 7.0).epsilon(1e-13));

    const auto w33 = moon_weights(3, 3, QuantileLevel(0.5));
    CHECK(std::abs(w33.w[0] - 7.0 / 27.0) < 1e-12);
    CHECK(std::abs(w33.w[1] - 13.0 / 27.0) < 1e-12);
    CHECK(std::abs(w33.w[2] - 7.0 / 27.0) < 1e-12);
    CHECK(w33.k == 2);

    CHECK_THROWS_AS(moon_weights(3, 4, QuantileLevel(0.5)), std::invalid_argument);
}

TEST_CASE("moon_weights sum to one and stay nonnegative") {
    struct { std::size_t n, m; double p; } cases[] = {
        {10, 3, 0.25}, {100, 10, 0.5}, {10000, 21, 0.5},
        {100000, 36, 0.5}, {5000, 70, 0.75},
    };
    for (const auto& c : cases) {
        const auto weights = moon_weights(c.n, c.m, QuantileLevel(c.p));
        double sum = 0.0;
        for (double w : weights.w) {
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
}

TEST_CASE("moon_weights are symmetric at the median for odd m") {
    const auto weights = moon_weights(11, 5, QuantileLevel(0.5));
    for (std::size_t j = 1; j <= 11; ++j) {
        CHECK(std::abs(weights.w[j - 1] - weights.w[11 - j]) < 1e-12);
    }
}

TEST_CASE("moon_weights match exhaustive enumeration") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t m = 1; m <= std::min<std::size_t>(n, 4); ++m) {
            for (double p : {0.25, 0.5, 0.75}) {
                const auto weights = moon_weights(n, m, QuantileLevel(p));
                const auto expected = oracles::enumerate_weights(n, m, p);
                for (std::size_t j = 0; j < n; ++j) {
                    CHECK(std::abs(weights.w[j] - expected[j]) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("closed_form_variance on small samples") {
    const auto sample = sort_sample({{1, 2, 3}});
    const QuantileLevel half(0.5);
    const auto weights = moon_weights(3, 3, half);
    const auto variance = closed_form_variance(sample, weights, half);
    CHECK(variance.r == 2);
    CHECK(variance.sigma2 == doctest::Approx(14.0 / 9.0).epsilon(1e-12));

    const auto constant = sort_sample({{2, 2, 2}});
    CHECK(closed_form_variance(constant, weights, half).sigma2 == 0.0);

    const auto other = sort_sample({{1, 2, 3, 4}});
    CHECK_THROWS_AS(closed_form_variance(other, weights, half),
                    std::invalid_argument);
    CHECK_THROWS_AS(closed_form_variance(sample, weights, QuantileLevel(0.25)),
                    std::invalid_argument);
}

TEST_CASE("studentized_stat standardizes the gap") {
    BootstrapVariance variance{2.25, 5};
    CHECK(studentized_stat(3.0, 3.0, variance, 9) == 0.0);
    // gap of one conditional standard deviation maps to T = 1
    const double sd_gap = std::sqrt(variance.sigma2 / 9.0);
    CHECK(studentized_stat(3.0 + sd_gap, 3.0, variance, 9) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(studentized_stat(2.0, 3.0, variance, 9) < 0.0);
    CHECK_THROWS_AS(studentized_stat(1.0, 2.0, BootstrapVariance{0.0, 1}, 4),
                    std::domain_error);
}

TEST_CASE("variance approaches p(1-p)/f^2 at the Gaussian median") {
    const std::size_t n = 50000;
    const std::size_t m = 36;
    const QuantileLevel half(0.5);
    const auto weights = moon_weights(n, m, half);
    const double limit = M_PI / 2.0;
    int within = 0;
    for (std::uint64_t seed_index = 0; seed_index < 10; ++seed_index) {
        const auto sample = gaussian_sample(n, 7100, seed_index);
        const double v = closed_form_variance(sample, weights, half).sigma2;
        if (std::abs(v - limit) <= 0.15 * limit) ++within;
    }
    CHECK(within >= 9);
}

TEST_CASE("variance stabilizes in m faster than in n") {
    const QuantileLevel half(0.5);
    auto median_var = [&](std::size_t n, std::size_t m) {
        const auto weights = moon_weights(n, m, half);
        std::vector<double> vs;
        for (std::uint64_t i = 0; i < 5; ++i) {
            const auto sample = gaussian_sample(n, 8200, i);
            vs.push_back(closed_form_variance(sample, weights, half).sigma2);
        }
        std::sort(vs.begin(), vs.end());
        return vs[2];
    };
    const double base = median_var(50000, 36);
    const double half_n = median_var(12500, 36);
    const double half_m = median_var(50000, 18);
    CHECK(std::abs(base - half_n) < std::abs(base - half_m));
}

TEST_CASE("location-scale equivariance") {
    const QuantileLevel half(0.5);
    const std::size_t n = 400;
    const std::size_t m = 12;
    const auto sample = gaussian_sample(n, 5150, 0);
    const double a = 2.5;
    const double b = -3.0;
    ObservationSeries scaled;
    for (double v : sample.sorted) scaled.values.push_back(a * v + b);
    const auto scaled_sample = sort_sample(scaled);

    const auto weights = moon_weights(n, m, half);
    const double v0 = closed_form_variance(sample, weights, half).sigma2;
    const double v1 = closed_form_variance(scaled_sample, weights, half).sigma2;
    CHECK(v1 == doctest::Approx(a * a * v0).epsilon(1e-12));

    Stream s0 = derive_stream(31, 0);
    Stream s1 = derive_stream(31, 0);
    const auto d0 = bootstrap_distribution(sample, m, half, 200, s0);
    const auto d1 = bootstrap_distribution(scaled_sample, m, half, 200, s1);
    for (std::size_t i = 0; i < d0.t.size(); ++i) {
        CHECK(d0.t[i] == doctest::Approx(d1.t[i]).epsilon(1e-10));
    }

    Stream c0 = derive_stream(32, 0);
    Stream c1 = derive_stream(32, 0);
    const Ci ci0 = moon_ci(sample, half, m, 0.95, c0);
    const Ci ci1 = moon_ci(scaled_sample, half, m, 0.95, c1);
    CHECK(ci1.lo == doctest::Approx(a * ci0.lo + b).epsilon(1e-10));
    CHECK(ci1.hi == doctest::Approx(a * ci0.hi + b).epsilon(1e-10));
}

TEST_CASE("moon_ci basics") {
    const QuantileLevel half(0.5);
    Stream stream = derive_stream(8, 0);
    const auto constant = sort_sample({{3, 3, 3, 3, 3}});
    const Ci point = moon_ci(constant, half, 3, 0.95, stream);
    CHECK(point.lo == 3.0);
    CHECK(point.hi == 3.0);

    const auto sample = gaussian_sample(500, 909, 0);
    Stream s2 = derive_stream(8, 1);
    const std::size_t m = 8;
    const Ci ci = moon_ci(sample, half, m, 0.95, s2);
    CHECK(ci.lo <= ci.hi);
    const auto weights = moon_weights(500, m, half);
    const double sigma2 = closed_form_variance(sample, weights, half).sigma2;
    const double z = std_normal_quantile(0.975);
    CHECK(std::abs(z - 1.96) < 1e-3);
    CHECK(ci.hi - ci.lo ==
          doctest::Approx(2.0 * z * std::sqrt(sigma2 / m)).epsilon(1e-12));

    CHECK_THROWS_AS(moon_ci(sample, half, m, 1.5, s2), std::invalid_argument);
}

TEST_CASE("bootstrap_distribution is reproducible and roughly normal") {
    const QuantileLevel half(0.5);
    const auto sample = gaussian_sample(10000, 1234, 0);

    Stream s1 = derive_stream(77, 0);
    Stream s2 = derive_stream(77, 0);
    const auto one = bootstrap_distribution(sample, 21, half, 1, s1);
    CHECK(one.t.size() == 1);
    // a single replicate is one studentized_stat evaluation
    Stream s3 = derive_stream(77, 0);
    const auto weights = moon_weights(10000, 21, half);
    const auto variance = closed_form_variance(sample, weights, half);
    const double mu_hat = sample_quantile(sample, half);
    const double mu_boot =
        bootstrap_quantile(moon_resample(sample, 21, s3), half);
    CHECK(one.t[0] == studentized_stat(mu_boot, mu_hat, variance, 21));

    const auto again = bootstrap_distribution(sample, 21, half, 1, s2);
    CHECK(one.t == again.t);

    Stream s4 = derive_stream(77, 1);
    const auto draws = bootstrap_distribution(sample, 21, half, 2000, s4);
    const double ks =
        ks_distance(draws.t, [](double t) { return std_normal_cdf(t); });
    CHECK(ks <= 0.08);

    const auto constant = sort_sample({{1, 1, 1}});
    CHECK_THROWS_AS(bootstrap_distribution(constant, 2, half, 10, s4),
                    std::domain_error);
}
