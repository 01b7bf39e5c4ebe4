#pragma once

#include "bandcov/matrix.hpp"
#include "bandcov/matrix_ops.hpp"

namespace bandcov {

/// n observations of a p-vector, one per row.
class DataSample {
public:
    explicit DataSample(DenseMatrix rows) : rows_(std::move(rows)) {
        if (rows_.rows() < 2) {
            throw std::invalid_argument("DataSample: need at least 2 observations");
        }
    }

    int n() const { return rows_.rows(); }
    int p() const { return rows_.cols(); }
    double operator()(int k, int i) const { return rows_(k, i); }
    const DenseMatrix& rows() const { return rows_; }

private:
    DenseMatrix rows_;
};

/// Power-law covariance model: off-diagonal sigma_ij = rho * |i-j|^-(alpha+1),
/// constant diagonal. alpha controls how fast correlations decay away from
/// the diagonal.
struct PopulationModel {
    int p = 1;
    double rho = 0.6;
    double alpha = 0.5;
    double diagonal = 1.0;
};

/// Centered sample covariance with divisor n-1.
SymMatrix sample_cov(const DataSample& x);

/// Sample covariance with all entries beyond the bandwidth zeroed.
SymMatrix banding_estimator(const DataSample& x, int bandwidth);

/// Trapezoidal taper weight for offset m at even width parameter K:
/// 1 for m <= K/2, linearly decaying to 0 at m = K.
double taper_weight(int offset, int taper_width);

/// Entrywise taper of a covariance estimate.
SymMatrix apply_taper(const SymMatrix& s, int taper_width);

/// Sample covariance tapered entrywise by taper_weight.
SymMatrix tapering_estimator(const DataSample& x, int taper_width);

/// Builds the power-law covariance; fails with NotPositiveDefiniteError if
/// the resulting matrix is not positive definite.
SymMatrix power_law_sigma(const PopulationModel& model);

/// Diagnostic for approximate bandedness: the smallest M with
/// max_j sum_{|i-j|>=k} |sigma_ij| <= M * k^-alpha over k = 1..p-1.
double approx_banded_constant(const SymMatrix& sigma, double alpha);

}  // namespace bandcov
