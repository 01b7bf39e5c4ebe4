#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bandcov/estimators.hpp"
#include "bandcov/matrix_ops.hpp"
#include "bandcov/rng.hpp"

using namespace bandcov;

TEST_CASE("sample covariance of identical rows is exactly zero") {
    DenseMatrix rows(2, 3);
    for (int k = 0; k < 2; ++k) {
        rows(k, 0) = 0.5;
        rows(k, 1) = 1.5;
        rows(k, 2) = 2.5;
    }
    const SymMatrix s = sample_cov(DataSample(rows));
    for (double v : s.data()) CHECK(v == 0.0);
}

TEST_CASE("sample covariance hand case n=2 p=1") {
    DenseMatrix rows(2, 1);
    rows(0, 0) = 0.0;
    rows(1, 0) = 2.0;
    const SymMatrix s = sample_cov(DataSample(rows));
    CHECK(s(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("sample covariance requires two observations") {
    CHECK_THROWS_AS(DataSample(DenseMatrix(1, 3)), std::invalid_argument);
}

TEST_CASE("sample covariance is unbiased under MVN sampling") {
    PopulationModel model{20, 0.6, 0.5, 1.0};
    const SymMatrix sigma = power_law_sigma(model);
    const DenseMatrix l = cholesky(sigma);
    const int reps = 2000;
    const int n = 30;

    const std::pair<int, int> entries[] = {{0, 0}, {0, 1}, {3, 7}, {10, 19}};
    double sum[4] = {0, 0, 0, 0};
    double sumsq[4] = {0, 0, 0, 0};
    Rng rng(2024, 0);
    for (int rep = 0; rep < reps; ++rep) {
        const SymMatrix s = sample_cov(mvn_sample(l, n, rng));
        for (int e = 0; e < 4; ++e) {
            const double v = s(entries[e].first, entries[e].second);
            sum[e] += v;
            sumsq[e] += v * v;
        }
    }
    for (int e = 0; e < 4; ++e) {
        const double mean = sum[e] / reps;
        const double var = (sumsq[e] - reps * mean * mean) / (reps - 1);
        const double se = std::sqrt(var / reps);
        const double truth = sigma(entries[e].first, entries[e].second);
        CHECK(std::abs(mean - truth) <= 3.0 * se);
    }
}

TEST_CASE("sample covariance is positive semi-definite") {
    PopulationModel model{15, 0.6, 0.1, 1.0};
    const DenseMatrix l = cholesky(power_law_sigma(model));
    Rng rng(99, 0);
    const SymMatrix s = sample_cov(mvn_sample(l, 8, rng));  // rank-deficient: n-1 < p
    for (int probe = 0; probe < 50; ++probe) {
        std::vector<double> v(15);
        double norm = 0.0;
        for (double& x : v) {
            x = rng.next_normal();
            norm += x * x;
        }
        double quad = 0.0;
        for (int i = 0; i < 15; ++i)
            for (int j = 0; j < 15; ++j) quad += v[i] * s(i, j) * v[j];
        CHECK(quad / norm >= -1e-10);
    }
}

TEST_CASE("banding estimator equals band of the sample covariance") {
    PopulationModel model{9, 0.6, 0.5, 1.0};
    const DenseMatrix l = cholesky(power_law_sigma(model));
    Rng rng(7, 0);
    const DataSample x = mvn_sample(l, 25, rng);
    const SymMatrix s = sample_cov(x);

    for (int k : {1, 3, 9, 12}) {
        const SymMatrix direct = banding_estimator(x, k);
        const SymMatrix via_band = band(s, k);
        for (std::size_t idx = 0; idx < direct.data().size(); ++idx) {
            CHECK(direct.data()[idx] == via_band.data()[idx]);
        }
    }

    const SymMatrix full = banding_estimator(x, 9);
    for (std::size_t idx = 0; idx < full.data().size(); ++idx) {
        CHECK(full.data()[idx] == s.data()[idx]);
    }
    const SymMatrix diag_only = banding_estimator(x, 1);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            if (i != j) CHECK(diag_only(i, j) == 0.0);
    const SymMatrix b3 = banding_estimator(x, 3);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            if (std::abs(i - j) >= 3) CHECK(b3(i, j) == 0.0);
}

TEST_CASE("taper weights") {
    CHECK(taper_weight(0, 2) == 1.0);
    CHECK(taper_weight(0, 8) == 1.0);
    CHECK(taper_weight(3, 4) == doctest::Approx(0.5));
    CHECK(taper_weight(2, 4) == 1.0);
    CHECK(taper_weight(4, 4) == 0.0);
    CHECK(taper_weight(9, 4) == 0.0);
    CHECK_THROWS_AS(taper_weight(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(taper_weight(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(taper_weight(1, -2), std::invalid_argument);
}

TEST_CASE("tapering with full-width weights reproduces the sample covariance") {
    PopulationModel model{6, 0.6, 0.5, 1.0};
    const DenseMatrix l = cholesky(power_law_sigma(model));
    Rng rng(13, 0);
    const DataSample x = mvn_sample(l, 20, rng);
    const SymMatrix s = sample_cov(x);
    const SymMatrix t = tapering_estimator(x, 2 * (6 - 1));
    for (std::size_t idx = 0; idx < s.data().size(); ++idx) {
        CHECK(t.data()[idx] == s.data()[idx]);
    }
}

TEST_CASE("tapering scales entries by the offset weight") {
    SymMatrix s(5);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) s.set(i, j, 1.0);
    const SymMatrix t = apply_taper(s, 4);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const int m = std::abs(i - j);
            const double expected = m <= 2 ? 1.0 : (m == 3 ? 0.5 : 0.0);
            CHECK(t(i, j) == doctest::Approx(expected));
        }
    }
}

TEST_CASE("power-law population covariance") {
    const SymMatrix s3 = power_law_sigma({3, 0.6, 0.5, 1.0});
    CHECK(s3(0, 1) == doctest::Approx(0.6));
    CHECK(s3(0, 2) == doctest::Approx(0.6 * std::pow(2.0, -1.5)).epsilon(1e-12));
    CHECK(s3(0, 2) == doctest::Approx(0.212132).epsilon(1e-5));
    CHECK(s3(0, 0) == 1.0);

    const SymMatrix diag = power_law_sigma({4, 0.0, 0.5, 1.0});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(diag(i, j) == (i == j ? 1.0 : 0.0));

    // the Table-1 model at its hardest setting must be positive definite
    CHECK_NOTHROW(power_law_sigma({250, 0.6, 0.1, 1.0}));

    CHECK_THROWS_AS(power_law_sigma({3, 0.6, -0.1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(power_law_sigma({3, 0.6, 0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("power-law covariance decays monotonically away from the diagonal") {
    const SymMatrix s = power_law_sigma({30, 0.6, 0.1, 1.0});
    for (int i = 0; i < 30; ++i) CHECK(s(i, i) == 1.0);
    for (int m = 1; m < 29; ++m) CHECK(s(0, m) > s(0, m + 1));
}

TEST_CASE("power-law model is approximately banded") {
    const SymMatrix s = power_law_sigma({60, 0.6, 0.1, 1.0});
    const double m1 = approx_banded_constant(s, 0.1);
    CHECK(m1 > 0.0);
    CHECK(m1 < 20.0);
    // the constant actually bounds every tail
    for (int k : {1, 5, 20, 59}) {
        double tail = 0.0;
        for (int j = 0; j < 60; ++j) {
            double col = 0.0;
            for (int i = 0; i < 60; ++i)
                if (std::abs(i - j) >= k) col += std::abs(s(i, j));
            tail = std::max(tail, col);
        }
        CHECK(tail <= m1 * std::pow(static_cast<double>(k), -0.1) + 1e-12);
    }
}
