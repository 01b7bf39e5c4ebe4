#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bandcov/matrix.hpp"

namespace bandcov {

/// Thrown when power iteration fails to converge within its iteration
/// budget. Carries the last norm estimate so callers never act on a
/// silently wrong value.
class PowerIterationError : public std::runtime_error {
public:
    PowerIterationError(double last_estimate, int iterations)
        : std::runtime_error("op_norm: power iteration did not converge after " +
                             std::to_string(iterations) +
                             " iterations (last estimate " + std::to_string(last_estimate) + ")"),
          last_estimate_(last_estimate),
          iterations_(iterations) {}

    double last_estimate() const { return last_estimate_; }
    int iterations() const { return iterations_; }

private:
    double last_estimate_;
    int iterations_;
};

/// Thrown by cholesky() on a non-positive-definite input; names the
/// failing pivot (0-based).
class NotPositiveDefiniteError : public std::runtime_error {
public:
    NotPositiveDefiniteError(int pivot_index, double pivot_value)
        : std::runtime_error("cholesky: non-positive pivot " + std::to_string(pivot_value) +
                             " at index " + std::to_string(pivot_index)),
          pivot_index_(pivot_index) {}

    int pivot_index() const { return pivot_index_; }

private:
    int pivot_index_;
};

inline constexpr double kOpNormTol = 1e-8;
inline constexpr int kOpNormMaxIter = 10000;

/// Largest singular value (for symmetric input, the largest absolute
/// eigenvalue). Power iteration on A^T A with a deterministic all-ones
/// start vector and one fixed perturbation retry; see power_iteration.
double op_norm(const SymMatrix& a, double tol = kOpNormTol, int max_iter = kOpNormMaxIter);
double op_norm(const DenseMatrix& a, double tol = kOpNormTol, int max_iter = kOpNormMaxIter);
double op_norm(const BlockNormMatrix& a, double tol = kOpNormTol, int max_iter = kOpNormMaxIter);

double frob_norm(const SymMatrix& a);
double frob_norm(const DenseMatrix& a);

/// Maximum absolute row sum; upper-bounds the operator norm of a
/// symmetric matrix.
double max_abs_row_sum(const SymMatrix& a);

/// Keeps entry (i,j) iff |i-j| <= bandwidth-1, zeroes the rest exactly.
SymMatrix band(const SymMatrix& a, int bandwidth);

/// Number of K-by-K blocks per side, ceil(p/K); the trailing block is
/// ragged when K does not divide p.
int block_count(int p, int bandwidth);

/// The (k,l) block {A_ij : (i,j) in [(k-1)K+1, kK] x [(l-1)K+1, lK]}
/// intersected with valid indices. Block indices k, l are 1-based.
DenseMatrix block(const SymMatrix& a, int k, int l, int bandwidth);
DenseMatrix block(const DenseMatrix& a, int k, int l, int bandwidth);

/// Matrix of operator norms of the K-by-K blocks of `a`.
BlockNormMatrix block_compress(const SymMatrix& a, int bandwidth,
                               double tol = kOpNormTol, int max_iter = kOpNormMaxIter);

/// Lower-triangular L with L L^T = sigma.
DenseMatrix cholesky(const SymMatrix& sigma);

namespace detail {

struct PowerIterationResult {
    double norm = 0.0;           // sqrt of the converged Rayleigh quotient of A^T A
    std::vector<double> vec;     // final unit vector (length cols)
    int iterations = 0;
    bool converged = false;
};

/// Power iteration for the top singular value of a rows-by-cols row-major
/// matrix, run on A^T A so the iterate converges to the squared spectral
/// norm regardless of eigenvalue sign. Stops when the residual
/// ||A^T A v - theta v|| <= tol * theta, which for the symmetric matrix
/// A^T A pins theta within tol*theta of an eigenvalue.
///
/// With value_stop set, also accepts once the monotone Rayleigh sequence
/// has provably little climb left (Aitken extrapolation of its geometric
/// increments, sustained over several iterations). This resolves the value
/// to cluster level when the top two eigenvalues of A^T A are nearly
/// degenerate and the eigenvector (hence the residual) cannot converge in
/// reasonable time; the returned value is then accurate to the larger of
/// tol and the unresolved cluster spread. Meant for callers that rank or
/// average norms rather than assert them.
PowerIterationResult power_iteration(const double* a, int rows, int cols,
                                     const std::vector<double>& start,
                                     double tol, int max_iter, bool value_stop = false);

/// Shared start-vector policy: all-ones start, with one fixed
/// perturbation retry when the first run stalls (non-convergence, a zero
/// iterate, or instant convergence that would mask a start vector lying
/// in an invariant subspace orthogonal to the top eigenspace).
double op_norm_raw(const double* a, int rows, int cols, double tol, int max_iter,
                   bool value_stop = false);

}  // namespace detail

}  // namespace bandcov
