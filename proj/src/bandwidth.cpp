#include "bandcov/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bandcov {

SureConstants sure_constants(int n) {
    if (n < 3) throw std::invalid_argument("sure_constants: need n >= 3");
    const double denom = static_cast<double>(n) * n - n - 2.0;
    SureConstants c;
    c.a_n = (n - 1.0) / denom;
    c.b_n = (n - 3.0) / denom;
    c.c_n = (1.0 - n) / denom;
    c.d_n = (n - 1.0) * (n - 1.0) / denom;
    return c;
}

std::string selection_method_name(SelectionMethod method) {
    switch (method) {
        case SelectionMethod::sure_f: return "sure_f";
        case SelectionMethod::sure_op: return "sure_op";
        case SelectionMethod::sure_taper: return "sure_taper";
        case SelectionMethod::cv_op: return "cv_op";
        case SelectionMethod::cv_l11: return "cv_l11";
    }
    throw std::invalid_argument("selection_method_name: unknown method");
}

namespace {

// Per-offset sums over ordered pairs with |i-j| = m:
//   products[m] = sum of s_ii * s_jj, squares[m] = sum of s_ij^2.
struct OffsetSums {
    std::vector<double> products;
    std::vector<double> squares;
};

OffsetSums offset_sums(const SymMatrix& s) {
    const int p = s.dim();
    OffsetSums sums{std::vector<double>(p, 0.0), std::vector<double>(p, 0.0)};
    for (int i = 0; i < p; ++i) {
        sums.products[0] += s(i, i) * s(i, i);
        sums.squares[0] += s(i, i) * s(i, i);
    }
    for (int m = 1; m < p; ++m) {
        double prod = 0.0;
        double sq = 0.0;
        for (int i = 0; i + m < p; ++i) {
            prod += s(i, i) * s(i + m, i + m);
            sq += s(i, i + m) * s(i, i + m);
        }
        sums.products[m] = 2.0 * prod;
        sums.squares[m] = 2.0 * sq;
    }
    return sums;
}

int argmin_smallest(const std::vector<std::pair<int, double>>& curve) {
    if (curve.empty()) throw std::invalid_argument("selection: empty criterion curve");
    int best_k = curve.front().first;
    double best = curve.front().second;
    for (const auto& [k, value] : curve) {
        if (value < best) {
            best = value;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace

std::vector<double> sure_f_curve(const SymMatrix& s, int n) {
    const SureConstants c = sure_constants(n);
    const OffsetSums sums = offset_sums(s);
    const int p = s.dim();

    double tail = 0.0;
    for (int m = 0; m < p; ++m) tail += c.c_n * sums.products[m] + c.d_n * sums.squares[m];

    std::vector<double> curve(p, 0.0);
    double head = 0.0;
    for (int k = 1; k <= p; ++k) {
        const int m = k - 1;  // offset entering the band at bandwidth k
        head += c.a_n * sums.products[m] + c.b_n * sums.squares[m];
        tail -= c.c_n * sums.products[m] + c.d_n * sums.squares[m];
        curve[k - 1] = head + tail;
    }
    return curve;
}

double sure_op_weight(int offset, int bandwidth) {
    if (bandwidth < 1) throw std::invalid_argument("sure_op_weight: bandwidth must be positive");
    return bandwidth * std::exp(1.0 - static_cast<double>(offset) / bandwidth);
}

std::vector<double> sure_op_curve(const SymMatrix& s, int n) {
    const SureConstants c = sure_constants(n);
    const OffsetSums sums = offset_sums(s);
    const int p = s.dim();

    std::vector<double> bias_term(p, 0.0);
    for (int m = 0; m < p; ++m) bias_term[m] = c.c_n * sums.products[m] + c.d_n * sums.squares[m];

    std::vector<double> curve(p, 0.0);
    double head = 0.0;
    for (int k = 1; k <= p; ++k) {
        head += c.a_n * sums.products[k - 1] + c.b_n * sums.squares[k - 1];
        double weighted_tail = 0.0;
        for (int m = k; m < p; ++m) weighted_tail += sure_op_weight(m, k) * bias_term[m];
        curve[k - 1] = head + weighted_tail;
    }
    return curve;
}

std::vector<std::pair<int, double>> sure_taper_curve(const SymMatrix& s, int n) {
    const SureConstants c = sure_constants(n);
    const OffsetSums sums = offset_sums(s);
    const int p = s.dim();

    std::vector<std::pair<int, double>> curve;
    const int max_width = std::max(2, 2 * (p - 1));
    for (int width = 2; width <= max_width; width += 2) {
        double value = 0.0;
        for (int m = 0; m < p; ++m) {
            const double w = taper_weight(m, width);
            const double var_part = c.a_n * sums.products[m] + c.b_n * sums.squares[m];
            const double bias_part = c.c_n * sums.products[m] + c.d_n * sums.squares[m];
            value += w * w * var_part + (1.0 - w) * (1.0 - w) * bias_part;
        }
        curve.emplace_back(width, value);
    }
    return curve;
}

SelectionResult select_sure(const SymMatrix& s, int n, SelectionMethod method) {
    const int p = s.dim();
    if (method == SelectionMethod::sure_f) {
        const std::vector<double> values = sure_f_curve(s, n);
        SelectionResult result{method, 0, {}};
        result.curve.reserve(p);
        for (int k = 1; k <= p; ++k) result.curve.emplace_back(k, values[k - 1]);
        result.chosen_k = argmin_smallest(result.curve);
        return result;
    }
    if (method != SelectionMethod::sure_op) {
        throw std::invalid_argument("select_sure: method must be sure_f or sure_op");
    }
    const int k_f = select_sure(s, n, SelectionMethod::sure_f).chosen_k;
    const int k_hi = std::min(static_cast<long long>(p),
                              static_cast<long long>(k_f) * k_f);
    const std::vector<double> values = sure_op_curve(s, n);
    SelectionResult result{method, 0, {}};
    for (int k = k_f; k <= k_hi; ++k) result.curve.emplace_back(k, values[k - 1]);
    result.chosen_k = argmin_smallest(result.curve);
    return result;
}

SelectionResult select_sure_taper(const SymMatrix& s, int n) {
    SelectionResult result{SelectionMethod::sure_taper, 0, sure_taper_curve(s, n)};
    result.chosen_k = argmin_smallest(result.curve);
    return result;
}

std::vector<int> assign_folds(int n, int folds, Rng& rng) {
    if (folds < 2) throw std::invalid_argument("assign_folds: need at least 2 folds");
    if (n < folds) throw std::invalid_argument("assign_folds: more folds than rows");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[i], order[j]);
    }
    std::vector<int> fold_of(n, 0);
    for (int t = 0; t < n; ++t) fold_of[order[t]] = t % folds;
    return fold_of;
}

namespace {

// Operator norm of the p x p symmetric buffer `m`, reusing `v` across
// calls as a warm start; cold calls follow the same ones-then-ramp retry
// policy as op_norm. Loss norms are ranked, not asserted, so the
// iteration may accept cluster-level value convergence when the top
// eigenvalue pair is nearly degenerate (see power_iteration).
double warm_op_norm(const std::vector<double>& m, int p, std::vector<double>& v,
                    double tol, int max_iter) {
    double amax = 0.0;
    for (double x : m) amax = std::max(amax, std::abs(x));
    if (amax == 0.0) return 0.0;

    if (!v.empty()) {
        const auto run = detail::power_iteration(m.data(), p, p, v, tol, max_iter, true);
        if (run.converged && run.norm > 0.0) {
            v = run.vec;
            return run.norm;
        }
    }
    std::vector<double> start(p, 1.0);
    auto first = detail::power_iteration(m.data(), p, p, start, tol, max_iter, true);
    if (first.converged && first.norm > 0.0 && first.iterations > 3) {
        v = first.vec;
        return first.norm;
    }
    for (int j = 0; j < p; ++j) start[j] = 1.0 + static_cast<double>(j + 1) / (p + 1);
    auto second = detail::power_iteration(m.data(), p, p, start, tol, max_iter, true);
    const bool first_ok = first.converged && first.norm > 0.0;
    const bool second_ok = second.converged && second.norm > 0.0;
    if (!first_ok && !second_ok) {
        throw PowerIterationError(std::max(first.norm, second.norm),
                                  first.iterations + second.iterations);
    }
    if (!second_ok || (first_ok && first.norm >= second.norm)) {
        v = first.vec;
        return first.norm;
    }
    v = second.vec;
    return second.norm;
}

double max_abs_row_sum_raw(const std::vector<double>& m, int p) {
    double best = 0.0;
    for (int i = 0; i < p; ++i) {
        const double* row = m.data() + static_cast<std::size_t>(i) * p;
        double s = 0.0;
        for (int j = 0; j < p; ++j) s += std::abs(row[j]);
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

SelectionResult cv_select(const DataSample& x, SelectionMethod loss, int folds, Rng& rng,
                          double tol, int max_iter) {
    if (loss != SelectionMethod::cv_op && loss != SelectionMethod::cv_l11) {
        throw std::invalid_argument("cv_select: loss must be cv_op or cv_l11");
    }
    const int n = x.n();
    const int p = x.p();
    const std::vector<int> fold_of = assign_folds(n, folds, rng);

    std::vector<int> fold_size(folds, 0);
    for (int f : fold_of) ++fold_size[f];
    for (int f = 0; f < folds; ++f) {
        if (fold_size[f] < 2) {
            throw std::invalid_argument("cv_select: fold " + std::to_string(f) +
                                        " has fewer than 2 rows");
        }
    }

    std::vector<double> total(p, 0.0);
    for (int f = 0; f < folds; ++f) {
        DenseMatrix train(n - fold_size[f], p);
        DenseMatrix held(fold_size[f], p);
        int tr = 0;
        int te = 0;
        for (int k = 0; k < n; ++k) {
            DenseMatrix& dst = (fold_of[k] == f) ? held : train;
            int& row = (fold_of[k] == f) ? te : tr;
            for (int i = 0; i < p; ++i) dst(row, i) = x(k, i);
            ++row;
        }
        const SymMatrix s_train = sample_cov(DataSample(std::move(train)));
        const SymMatrix s_held = sample_cov(DataSample(std::move(held)));

        // diff = band(s_train, k) - s_held, built incrementally: bandwidth k
        // adds the offset-(k-1) diagonals of s_train.
        std::vector<double> diff(static_cast<std::size_t>(p) * p);
        for (std::size_t idx = 0; idx < diff.size(); ++idx) diff[idx] = -s_held.data()[idx];
        std::vector<double> warm;
        for (int k = 1; k <= p; ++k) {
            const int m = k - 1;
            for (int i = 0; i + m < p; ++i) {
                const double v = s_train(i, i + m);
                diff[static_cast<std::size_t>(i) * p + (i + m)] += v;
                if (m > 0) diff[static_cast<std::size_t>(i + m) * p + i] += v;
            }
            if (loss == SelectionMethod::cv_op) {
                const double norm = warm_op_norm(diff, p, warm, tol, max_iter);
                total[k - 1] += norm * norm;
            } else {
                total[k - 1] += max_abs_row_sum_raw(diff, p);
            }
        }
    }

    SelectionResult result{loss, 0, {}};
    result.curve.reserve(p);
    for (int k = 1; k <= p; ++k) result.curve.emplace_back(k, total[k - 1] / folds);
    result.chosen_k = argmin_smallest(result.curve);
    return result;
}

}  // namespace bandcov
