#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bandcov/estimators.hpp"
#include "bandcov/matrix.hpp"
#include "bandcov/matrix_ops.hpp"
#include "bandcov/rng.hpp"

namespace bandcov {

/// Closed-form constants of the unbiased variance and squared-bias
/// estimators built from sample covariance entries:
///   a_n sii sjj + b_n sij^2 estimates Var(sij),
///   c_n sii sjj + d_n sij^2 estimates sigma_ij^2.
/// Defined for n >= 3.
struct SureConstants {
    double a_n;
    double b_n;
    double c_n;
    double d_n;
};

SureConstants sure_constants(int n);

enum class SelectionMethod { sure_f, sure_op, sure_taper, cv_op, cv_l11 };

std::string selection_method_name(SelectionMethod method);

/// Chosen bandwidth plus the criterion values over the searched range.
/// chosen_k attains the minimum of the curve; ties break toward smaller K.
struct SelectionResult {
    SelectionMethod method;
    int chosen_k;
    std::vector<std::pair<int, double>> curve;
};

/// Unbiased estimate of the Frobenius risk of the banded estimator, for
/// every K in 1..p. Computed in O(p^2) total via per-offset sums.
std::vector<double> sure_f_curve(const SymMatrix& s, int n);

/// Frobenius criterion with the squared-bias estimates reweighted by
/// sure_op_weight, which favors the larger bandwidths suited to
/// operator-norm loss. Full curve over K in 1..p.
std::vector<double> sure_op_curve(const SymMatrix& s, int n);

/// W(m, K) = K * exp(1 - m/K) for offsets m >= K.
double sure_op_weight(int offset, int bandwidth);

/// Unbiased Frobenius-risk estimate of the tapering estimator over even
/// taper widths 2, 4, ..., 2(p-1).
std::vector<std::pair<int, double>> sure_taper_curve(const SymMatrix& s, int n);

/// method = sure_f: argmin of sure_f_curve over 1..p.
/// method = sure_op: argmin of sure_op_curve restricted to
/// [K_F, min(K_F^2, p)] where K_F is the sure_f choice.
SelectionResult select_sure(const SymMatrix& s, int n, SelectionMethod method);

SelectionResult select_sure_taper(const SymMatrix& s, int n);

/// Near-equal random partition of rows 0..n-1 into folds; returns the fold
/// id per row. Deterministic given the rng state.
std::vector<int> assign_folds(int n, int folds, Rng& rng);

/// k-fold cross-validation over K in 1..p: per fold, the banded
/// training-rows covariance is scored against the held-out-rows covariance
/// under the squared operator norm (cv_op) or the maximum absolute row sum
/// (cv_l11); fold scores are averaged and the argmin taken, ties toward
/// smaller K.
SelectionResult cv_select(const DataSample& x, SelectionMethod loss, int folds, Rng& rng,
                          double tol = kOpNormTol, int max_iter = kOpNormMaxIter);

}  // namespace bandcov
