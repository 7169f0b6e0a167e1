#include <doctest.h>

#include <cmath>
#include <vector>

#include "moonboot/rng.hpp"

using namespace moonboot;

TEST_CASE("derived streams replay exactly") {
    Stream a = derive_stream(99, 7);
    Stream b = derive_stream(99, 7);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct indices and seeds give distinct streams") {
    CHECK(derive_stream(5, 0).next_u64() != derive_stream(5, 1).next_u64());
    CHECK(derive_stream(5, 0).next_u64() != derive_stream(6, 0).next_u64());
}

TEST_CASE("sibling streams are uncorrelated") {
    Stream a = derive_stream(42, 0);
    Stream b = derive_stream(42, 1);
    const int n = 10000;
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (int i = 0; i < n; ++i) {
        const double x = a.u01();
        const double y = b.u01();
        sa += x; sb += y; saa += x * x; sbb += y * y; sab += x * y;
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double va = saa / n - (sa / n) * (sa / n);
    const double vb = sbb / n - (sb / n) * (sb / n);
    CHECK(std::abs(cov / std::sqrt(va * vb)) < 0.05);
}

TEST_CASE("uniform variates stay in range") {
    Stream s(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = s.u01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = s.u01_open();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        const std::size_t idx = s.uniform_index(17);
        CHECK(idx < 17);
    }
}

TEST_CASE("normal moments") {
    Stream s(2);
    const int n = 200000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("laplace and exponential shapes") {
    Stream s(3);
    const int n = 100000;
    double lmean = 0, labs = 0, emean = 0;
    for (int i = 0; i < n; ++i) {
        const double l = s.laplace(1.0);
        lmean += l;
        labs += std::abs(l);
        emean += s.exponential();
    }
    CHECK(std::abs(lmean / n) < 0.02);      // symmetric
    CHECK(labs / n == doctest::Approx(1.0).epsilon(0.02)); // E|X| = scale
    CHECK(emean / n == doctest::Approx(1.0).epsilon(0.02));
}
