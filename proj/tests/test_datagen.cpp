#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "bandcov/matrix_ops.hpp"
#include "bandcov/rng.hpp"

using namespace bandcov;

TEST_CASE("standard_normals basics") {
    Rng rng(1, 0);
    CHECK(standard_normals(rng, 0).empty());

    Rng rng2(1, 0);
    const auto a = standard_normals(rng2, 1000);
    Rng rng3(1, 0);
    const auto b = standard_normals(rng3, 1000);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    Rng other(1, 1);
    const auto c = standard_normals(other, 1000);
    int same = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == c[i]) ++same;
    CHECK(same == 0);
}

TEST_CASE("draw counts compose: the spare normal is cached across calls") {
    Rng one(9, 3);
    Rng two(9, 3);
    const auto split_a = standard_normals(one, 7);
    const auto split_b = standard_normals(one, 5);
    const auto joint = standard_normals(two, 12);
    for (int i = 0; i < 7; ++i) CHECK(split_a[i] == joint[i]);
    for (int i = 0; i < 5; ++i) CHECK(split_b[i] == joint[7 + i]);
}

TEST_CASE("standard normals pass the CLT moment checks") {
    Rng rng(12345, 0);
    const std::size_t count = 1000000;
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double z = rng.next_normal();
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / count;
    const double var = sumsq / count - mean * mean;
    CHECK(std::abs(mean) <= 4.0 / std::sqrt(static_cast<double>(count)));
    CHECK(std::abs(var - 1.0) <= 0.01);
}

TEST_CASE("uniforms stay inside [0,1)") {
    Rng rng(77, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("next_below is unbiased enough and in range") {
    Rng rng(31, 0);
    int counts[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < 50000; ++i) {
        const auto v = rng.next_below(5);
        REQUIRE(v < 5);
        ++counts[v];
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("distinct streams are empirically independent") {
    const int length = 10000;
    const double threshold = 4.0 / std::sqrt(static_cast<double>(length));
    for (int pair = 0; pair < 100; ++pair) {
        Rng first(555, static_cast<std::uint64_t>(2 * pair));
        Rng second(555, static_cast<std::uint64_t>(2 * pair + 1));
        double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
        for (int i = 0; i < length; ++i) {
            const double x = first.next_normal();
            const double y = second.next_normal();
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
        }
        const double mx = sx / length;
        const double my = sy / length;
        const double corr = (sxy / length - mx * my) /
                            std::sqrt((sxx / length - mx * mx) * (syy / length - my * my));
        CHECK(std::abs(corr) < threshold);
    }
}

TEST_CASE("mvn_sample with identity factor reproduces the raw normal stream") {
    const DenseMatrix eye = DenseMatrix::identity(4);
    Rng rng_a(42, 5);
    Rng rng_b(42, 5);
    const DataSample x = mvn_sample(eye, 10, rng_a);
    const auto z = standard_normals(rng_b, 40);
    for (int k = 0; k < 10; ++k)
        for (int i = 0; i < 4; ++i) CHECK(x(k, i) == z[4 * k + i]);
}

TEST_CASE("mvn_sample reproduces a target correlation") {
    const SymMatrix sigma = SymMatrix::from_rows({{1.0, 0.9}, {0.9, 1.0}});
    const DenseMatrix l = cholesky(sigma);
    Rng rng(2718, 0);
    const DataSample x = mvn_sample(l, 100000, rng);
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int k = 0; k < x.n(); ++k) {
        sx += x(k, 0);
        sy += x(k, 1);
        sxx += x(k, 0) * x(k, 0);
        syy += x(k, 1) * x(k, 1);
        sxy += x(k, 0) * x(k, 1);
    }
    const double n = x.n();
    const double corr = (sxy / n - sx / n * sy / n) /
                        std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
    CHECK(std::abs(corr - 0.9) < 0.01);
}

TEST_CASE("Monte Carlo mean of the sample covariance matches Sigma") {
    const SymMatrix sigma = SymMatrix::from_rows({{2.0, 0.7}, {0.7, 1.0}});
    const DenseMatrix l = cholesky(sigma);
    const int reps = 2000;
    const int n = 12;
    double sum[3] = {0, 0, 0};
    double sumsq[3] = {0, 0, 0};
    Rng rng(31337, 0);
    for (int rep = 0; rep < reps; ++rep) {
        const SymMatrix s = sample_cov(mvn_sample(l, n, rng));
        const double v[3] = {s(0, 0), s(0, 1), s(1, 1)};
        for (int e = 0; e < 3; ++e) {
            sum[e] += v[e];
            sumsq[e] += v[e] * v[e];
        }
    }
    const double truth[3] = {sigma(0, 0), sigma(0, 1), sigma(1, 1)};
    for (int e = 0; e < 3; ++e) {
        const double mean = sum[e] / reps;
        const double var = (sumsq[e] - reps * mean * mean) / (reps - 1);
        CHECK(std::abs(mean - truth[e]) <= 3.0 * std::sqrt(var / reps));
    }
}

TEST_CASE("mvn_sample validates its inputs") {
    Rng rng(1, 0);
    CHECK_THROWS_AS(mvn_sample(DenseMatrix(2, 3), 5, rng), std::invalid_argument);
    CHECK_THROWS_AS(mvn_sample(DenseMatrix::identity(2), 1, rng), std::invalid_argument);
}
