#include "bandcov/matrix_ops.hpp"

#include <algorithm>
#include <cmath>

namespace bandcov {

namespace detail {

namespace {

// w = A^T (A v), returns ||A v||^2 which equals the Rayleigh quotient of
// A^T A at unit v.
double apply_gram(const double* a, int rows, int cols,
                  const std::vector<double>& v, std::vector<double>& u,
                  std::vector<double>& w) {
    double theta = 0.0;
    for (int i = 0; i < rows; ++i) {
        const double* row = a + static_cast<std::size_t>(i) * cols;
        double s = 0.0;
        for (int j = 0; j < cols; ++j) s += row[j] * v[j];
        u[i] = s;
        theta += s * s;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int i = 0; i < rows; ++i) {
        const double* row = a + static_cast<std::size_t>(i) * cols;
        const double ui = u[i];
        for (int j = 0; j < cols; ++j) w[j] += row[j] * ui;
    }
    return theta;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

PowerIterationResult power_iteration(const double* a, int rows, int cols,
                                     const std::vector<double>& start,
                                     double tol, int max_iter, bool value_stop) {
    PowerIterationResult res;
    std::vector<double> v = start;
    const double n0 = norm2(v);
    if (n0 == 0.0) throw std::invalid_argument("power_iteration: zero start vector");
    for (double& x : v) x /= n0;

    std::vector<double> u(rows, 0.0);
    std::vector<double> w(cols, 0.0);

    double theta = 0.0;
    double prev_theta = 0.0;
    double prev_inc = 0.0;
    int flat_streak = 0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        theta = apply_gram(a, rows, cols, v, u, w);
        res.iterations = iter;
        if (theta == 0.0) {
            // v lies in the kernel of A; the caller decides whether to retry.
            res.norm = 0.0;
            res.vec = v;
            return res;
        }
        double resid = 0.0;
        for (int j = 0; j < cols; ++j) {
            const double r = w[j] - theta * v[j];
            resid += r * r;
        }
        resid = std::sqrt(resid);
        const double wn = norm2(w);
        if (wn == 0.0) {
            res.norm = 0.0;
            res.vec = v;
            return res;
        }
        for (int j = 0; j < cols; ++j) v[j] = w[j] / wn;
        if (resid <= tol * theta) {
            res.norm = std::sqrt(theta);
            res.vec = std::move(v);
            res.converged = true;
            return res;
        }
        if (value_stop) {
            // The Rayleigh sequence on A^T A is monotone; its increments
            // decay geometrically, so Aitken extrapolation bounds the
            // remaining climb.
            if (iter >= 2) {
                const double inc = theta - prev_theta;
                bool flat = false;
                if (inc <= 1e-15 * theta) {
                    flat = true;
                } else if (prev_inc > 0.0 && inc < prev_inc) {
                    const double rho = inc / prev_inc;
                    flat = inc * rho / (1.0 - rho) <= 0.5 * tol * theta;
                }
                flat_streak = flat ? flat_streak + 1 : 0;
                prev_inc = inc;
                if (flat_streak >= 5 && iter >= 12 && resid <= 1e-2 * theta) {
                    res.norm = std::sqrt(theta);
                    res.vec = std::move(v);
                    res.converged = true;
                    return res;
                }
            }
            prev_theta = theta;
        }
    }
    res.norm = std::sqrt(theta);
    res.vec = std::move(v);
    return res;
}

double op_norm_raw(const double* a, int rows, int cols, double tol, int max_iter,
                   bool value_stop) {
    if (tol <= 0.0) throw std::invalid_argument("op_norm: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("op_norm: max_iter must be at least 1");

    double amax = 0.0;
    const std::size_t total = static_cast<std::size_t>(rows) * cols;
    for (std::size_t k = 0; k < total; ++k) amax = std::max(amax, std::abs(a[k]));
    if (amax == 0.0) return 0.0;

    std::vector<double> start(cols, 1.0);
    PowerIterationResult first = power_iteration(a, rows, cols, start, tol, max_iter, value_stop);

    const bool stalled = !first.converged || first.norm == 0.0 || first.iterations <= 3;
    if (!stalled) return first.norm;

    for (int j = 0; j < cols; ++j) start[j] = 1.0 + static_cast<double>(j + 1) / (cols + 1);
    PowerIterationResult second = power_iteration(a, rows, cols, start, tol, max_iter, value_stop);

    const bool first_ok = first.converged && first.norm > 0.0;
    const bool second_ok = second.converged && second.norm > 0.0;
    if (!first_ok && !second_ok) {
        throw PowerIterationError(std::max(first.norm, second.norm),
                                  first.iterations + second.iterations);
    }
    if (first_ok && second_ok) return std::max(first.norm, second.norm);
    return first_ok ? first.norm : second.norm;
}

}  // namespace detail

double op_norm(const SymMatrix& a, double tol, int max_iter) {
    return detail::op_norm_raw(a.data().data(), a.dim(), a.dim(), tol, max_iter);
}

double op_norm(const DenseMatrix& a, double tol, int max_iter) {
    return detail::op_norm_raw(a.data().data(), a.rows(), a.cols(), tol, max_iter);
}

double op_norm(const BlockNormMatrix& a, double tol, int max_iter) {
    return detail::op_norm_raw(a.data().data(), a.blocks(), a.blocks(), tol, max_iter);
}

namespace {

double frob_of(const std::vector<double>& data) {
    double s = 0.0;
    for (double x : data) s += x * x;
    return std::sqrt(s);
}

}  // namespace

double frob_norm(const SymMatrix& a) { return frob_of(a.data()); }
double frob_norm(const DenseMatrix& a) { return frob_of(a.data()); }

double max_abs_row_sum(const SymMatrix& a) {
    const int p = a.dim();
    double best = 0.0;
    for (int i = 0; i < p; ++i) {
        double s = 0.0;
        for (int j = 0; j < p; ++j) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

SymMatrix band(const SymMatrix& a, int bandwidth) {
    if (bandwidth < 1) throw std::invalid_argument("band: bandwidth must be at least 1");
    const int p = a.dim();
    SymMatrix out(p);
    for (int i = 0; i < p; ++i) {
        const int jmax = std::min(p - 1, i + bandwidth - 1);
        for (int j = i; j <= jmax; ++j) out.set(i, j, a(i, j));
    }
    return out;
}

int block_count(int p, int bandwidth) {
    if (bandwidth < 1) throw std::invalid_argument("block: bandwidth must be at least 1");
    return (p + bandwidth - 1) / bandwidth;
}

namespace {

DenseMatrix block_raw(const double* a, int p, int k, int l, int bandwidth) {
    const int nb = block_count(p, bandwidth);
    if (k < 1 || k > nb || l < 1 || l > nb) {
        throw std::invalid_argument("block: block index out of range");
    }
    const int r0 = (k - 1) * bandwidth;
    const int c0 = (l - 1) * bandwidth;
    const int r1 = std::min(p, r0 + bandwidth);
    const int c1 = std::min(p, c0 + bandwidth);
    DenseMatrix out(r1 - r0, c1 - c0);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j)
            out(i - r0, j - c0) = a[static_cast<std::size_t>(i) * p + j];
    return out;
}

}  // namespace

DenseMatrix block(const SymMatrix& a, int k, int l, int bandwidth) {
    return block_raw(a.data().data(), a.dim(), k, l, bandwidth);
}

DenseMatrix block(const DenseMatrix& a, int k, int l, int bandwidth) {
    if (a.rows() != a.cols()) throw std::invalid_argument("block: matrix must be square");
    return block_raw(a.data().data(), a.rows(), k, l, bandwidth);
}

BlockNormMatrix block_compress(const SymMatrix& a, int bandwidth, double tol, int max_iter) {
    const int nb = block_count(a.dim(), bandwidth);
    BlockNormMatrix out(nb);
    for (int k = 1; k <= nb; ++k) {
        for (int l = k; l <= nb; ++l) {
            const DenseMatrix b = block(a, k, l, bandwidth);
            out.set(k, l, op_norm(b, tol, max_iter));
        }
    }
    return out;
}

DenseMatrix cholesky(const SymMatrix& sigma) {
    const int p = sigma.dim();
    DenseMatrix l(p, p);
    for (int j = 0; j < p; ++j) {
        double d = sigma(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= 0.0) throw NotPositiveDefiniteError(j, d);
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (int i = j + 1; i < p; ++i) {
            double s = sigma(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

}  // namespace bandcov
