#include "bandcov/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bandcov {

SymMatrix sample_cov(const DataSample& x) {
    const int n = x.n();
    const int p = x.p();
    std::vector<double> mean(p, 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < p; ++i) mean[i] += x(k, i);
    for (int i = 0; i < p; ++i) mean[i] /= n;

    DenseMatrix centered(n, p);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < p; ++i) centered(k, i) = x(k, i) - mean[i];

    SymMatrix s(p);
    const double inv = 1.0 / (n - 1);
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += centered(k, i) * centered(k, j);
            s.set(i, j, acc * inv);
        }
    }
    return s;
}

SymMatrix banding_estimator(const DataSample& x, int bandwidth) {
    return band(sample_cov(x), bandwidth);
}

double taper_weight(int offset, int taper_width) {
    if (taper_width < 2 || taper_width % 2 != 0) {
        throw std::invalid_argument("taper_weight: width must be a positive even integer");
    }
    if (offset < 0) throw std::invalid_argument("taper_weight: offset must be nonnegative");
    const int half = taper_width / 2;
    if (offset <= half) return 1.0;
    if (offset >= taper_width) return 0.0;
    return 2.0 - 2.0 * static_cast<double>(offset) / taper_width;
}

SymMatrix apply_taper(const SymMatrix& s, int taper_width) {
    (void)taper_weight(0, taper_width);  // validates the width
    const int p = s.dim();
    SymMatrix out(p);
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            const double w = taper_weight(j - i, taper_width);
            if (w != 0.0) out.set(i, j, w * s(i, j));
        }
    }
    return out;
}

SymMatrix tapering_estimator(const DataSample& x, int taper_width) {
    return apply_taper(sample_cov(x), taper_width);
}

SymMatrix power_law_sigma(const PopulationModel& model) {
    if (model.p < 1) throw std::invalid_argument("power_law_sigma: p must be positive");
    if (model.alpha <= 0.0) throw std::invalid_argument("power_law_sigma: alpha must be positive");
    if (model.diagonal <= 0.0) throw std::invalid_argument("power_law_sigma: diagonal must be positive");
    SymMatrix sigma(model.p);
    for (int i = 0; i < model.p; ++i) {
        sigma.set(i, i, model.diagonal);
        for (int j = i + 1; j < model.p; ++j) {
            sigma.set(i, j, model.rho * std::pow(static_cast<double>(j - i), -(model.alpha + 1.0)));
        }
    }
    (void)cholesky(sigma);  // positive definiteness gate
    return sigma;
}

double approx_banded_constant(const SymMatrix& sigma, double alpha) {
    const int p = sigma.dim();
    double best = 0.0;
    for (int k = 1; k <= p - 1; ++k) {
        double tail = 0.0;
        for (int j = 0; j < p; ++j) {
            double col = 0.0;
            for (int i = 0; i < p; ++i) {
                if (std::abs(i - j) >= k) col += std::abs(sigma(i, j));
            }
            tail = std::max(tail, col);
        }
        best = std::max(best, tail * std::pow(static_cast<double>(k), alpha));
    }
    return best;
}

}  // namespace bandcov
