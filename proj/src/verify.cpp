#include "bandcov/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "bandcov/estimators.hpp"
#include "bandcov/matrix_ops.hpp"
#include "bandcov/report_io.hpp"

namespace bandcov::verify {

bool all_pass(const std::vector<OracleReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

void write_oracle_csv(std::ostream& out, const std::vector<OracleReport>& reports) {
    out << "check,quantity,value,reference,tolerance,mc_se,pass\n";
    for (const auto& r : reports) {
        out << r.check << ',' << r.quantity << ',' << format_double(r.value) << ','
            << format_double(r.reference) << ',' << format_double(r.tolerance) << ',';
        if (r.mc_se) out << format_double(*r.mc_se);
        out << ',' << (r.pass ? "pass" : "FAIL") << '\n';
    }
}

namespace {

// ---- small dense helpers, toy scale only ----

struct EigSym {
    std::vector<double> values;
    DenseMatrix vectors;  // eigenvectors in columns
};

// Cyclic Jacobi sweeps; adequate for the <= 16x16 matrices the oracles use.
EigSym jacobi_eig(const SymMatrix& a) {
    const int d = a.dim();
    DenseMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = a(i, j);
    DenseMatrix v = DenseMatrix::identity(d);

    double scale = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) scale = std::max(scale, std::abs(m(i, j)));
    if (scale == 0.0) return {std::vector<double>(d, 0.0), v};

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off = std::max(off, std::abs(m(i, j)));
        if (off <= 1e-14 * scale) break;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                if (std::abs(m(p, q)) <= 1e-300) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < d; ++k) {
                    const double mkp = m(k, p);
                    const double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < d; ++k) {
                    const double mpk = m(p, k);
                    const double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < d; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<double> values(d);
    for (int i = 0; i < d; ++i) values[i] = m(i, i);
    return {std::move(values), std::move(v)};
}

SymMatrix sym_sqrt(const SymMatrix& a) {
    const EigSym eig = jacobi_eig(a);
    const int d = a.dim();
    double top = 0.0;
    for (double lam : eig.values) top = std::max(top, std::abs(lam));
    std::vector<double> roots(d);
    for (int i = 0; i < d; ++i) {
        if (eig.values[i] < -1e-10 * std::max(top, 1.0)) {
            throw std::invalid_argument("sym_sqrt: matrix is not positive semi-definite");
        }
        roots[i] = std::sqrt(std::max(0.0, eig.values[i]));
    }
    SymMatrix out(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += eig.vectors(i, k) * roots[k] * eig.vectors(j, k);
            out.set(i, j, s);
        }
    }
    return out;
}

// det via LU with partial pivoting.
double determinant(DenseMatrix m) {
    const int d = m.rows();
    double det = 1.0;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int i = col + 1; i < d; ++i)
            if (std::abs(m(i, col)) > std::abs(m(piv, col))) piv = i;
        if (m(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < d; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (int i = col + 1; i < d; ++i) {
            const double f = m(i, col) / m(col, col);
            for (int j = col; j < d; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

// [[0, A], [A^T, 0]] as a symmetric (p+q) matrix.
SymMatrix embed_bilinear(const DenseMatrix& a) {
    const int p = a.rows();
    const int q = a.cols();
    SymMatrix m(p + q);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) m.set(i, p + j, a(i, j));
    return m;
}

SymMatrix mgf_b_matrix(const DenseMatrix& a, const SymMatrix& sigma) {
    if (sigma.dim() != a.rows() + a.cols()) {
        throw std::invalid_argument("mgf: sigma dimension must be rows(A)+cols(A)");
    }
    const SymMatrix root = sym_sqrt(sigma);
    const SymMatrix m = embed_bilinear(a);
    const int d = sigma.dim();
    DenseMatrix tmp(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += root(i, k) * m(k, j);
            tmp(i, j) = s;
        }
    DenseMatrix b(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += tmp(i, k) * root(k, j);
            b(i, j) = s;
        }
    return SymMatrix::symmetrized(b);
}

double trace_sq(const SymMatrix& b) {
    double s = 0.0;
    const int d = b.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s += b(i, j) * b(i, j);
    return s;
}

double trace_a_sigma21(const DenseMatrix& a, const SymMatrix& sigma) {
    const int p = a.rows();
    const int q = a.cols();
    double s = 0.0;
    for (int i = 0; i < p; ++i)
        for (int k = 0; k < q; ++k) s += a(i, k) * sigma(p + k, i);
    return s;
}

struct MeanAccumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    long count = 0;

    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++count;
    }
    double mean() const { return sum / count; }
    double se() const {
        const double m = mean();
        const double var = std::max(0.0, (sumsq - count * m * m) / (count - 1));
        return std::sqrt(var / count);
    }
};

OracleReport two_sided(std::string check, std::string quantity, double value, double reference,
                       double se_mult_tol, double se) {
    OracleReport r;
    r.check = std::move(check);
    r.quantity = std::move(quantity);
    r.value = value;
    r.reference = reference;
    r.tolerance = se_mult_tol * se;
    r.mc_se = se;
    r.pass = std::abs(value - reference) <= r.tolerance;
    return r;
}

OracleReport one_sided(std::string check, std::string quantity, double lhs, double rhs,
                       double tolerance, std::optional<double> se = std::nullopt) {
    OracleReport r;
    r.check = std::move(check);
    r.quantity = std::move(quantity) + " [lhs=" + format_double(lhs) +
                 " rhs=" + format_double(rhs) + "]";
    r.value = std::max(0.0, lhs - rhs);
    r.reference = 0.0;
    r.tolerance = tolerance;
    r.mc_se = se;
    r.pass = r.value <= tolerance;
    return r;
}

}  // namespace

std::vector<OracleReport> check_moment_identities(const SymMatrix& sigma, int n, int reps,
                                                  Rng& rng) {
    if (n < 2) throw std::invalid_argument("check_moment_identities: need n >= 2");
    if (reps < 100) throw std::invalid_argument("check_moment_identities: need reps >= 100");
    const int p = sigma.dim();
    const int i = 0;
    const int j = p > 1 ? 1 : 0;
    const DenseMatrix l = cholesky(sigma);

    MeanAccumulator sq_ij;
    MeanAccumulator prod_iijj;
    MeanAccumulator sq_ii;
    std::vector<double> z(p);
    std::vector<double> xi(n);
    std::vector<double> xj(n);
    for (int rep = 0; rep < reps; ++rep) {
        for (int k = 0; k < n; ++k) {
            for (int c = 0; c < p; ++c) z[c] = rng.next_normal();
            double vi = 0.0;
            double vj = 0.0;
            for (int c = 0; c <= i; ++c) vi += l(i, c) * z[c];
            for (int c = 0; c <= j; ++c) vj += l(j, c) * z[c];
            xi[k] = vi;
            xj[k] = vj;
        }
        double mi = 0.0;
        double mj = 0.0;
        for (int k = 0; k < n; ++k) {
            mi += xi[k];
            mj += xj[k];
        }
        mi /= n;
        mj /= n;
        double sii = 0.0;
        double sjj = 0.0;
        double sij = 0.0;
        for (int k = 0; k < n; ++k) {
            sii += (xi[k] - mi) * (xi[k] - mi);
            sjj += (xj[k] - mj) * (xj[k] - mj);
            sij += (xi[k] - mi) * (xj[k] - mj);
        }
        sii /= n - 1;
        sjj /= n - 1;
        sij /= n - 1;
        sq_ij.add(sij * sij);
        prod_iijj.add(sii * sjj);
        sq_ii.add(sii * sii);
    }

    const double sii_t = sigma(i, i);
    const double sjj_t = sigma(j, j);
    const double sij_t = sigma(i, j);
    std::vector<OracleReport> out;
    out.push_back(two_sided("moments", "E[s_ij^2] i=0 j=" + std::to_string(j),
                            sq_ij.mean(),
                            sii_t * sjj_t / (n - 1.0) + n * sij_t * sij_t / (n - 1.0), 4.0,
                            sq_ij.se()));
    out.push_back(two_sided("moments", "E[s_ii*s_jj] i=0 j=" + std::to_string(j),
                            prod_iijj.mean(),
                            sii_t * sjj_t + 2.0 * sij_t * sij_t / (n - 1.0), 4.0,
                            prod_iijj.se()));
    out.push_back(two_sided("moments", "E[s_ii^2] i=j=0", sq_ii.mean(),
                            sii_t * sii_t * (n + 1.0) / (n - 1.0), 4.0, sq_ii.se()));
    return out;
}

std::vector<OracleReport> check_mgf_identity(const DenseMatrix& a, const SymMatrix& sigma,
                                             const std::vector<double>& t_grid, int reps,
                                             Rng& rng) {
    const int p = a.rows();
    const int q = a.cols();
    const SymMatrix b = mgf_b_matrix(a, sigma);
    const double b_norm = op_norm(b);
    for (double t : t_grid) {
        if (b_norm > 0.0 && std::abs(t) >= 1.0 / (2.0 * b_norm)) {
            throw std::invalid_argument("check_mgf_identity: |t| must be below 1/(2||B||_op)");
        }
    }

    const DenseMatrix l = cholesky(sigma);
    const int d = p + q;
    std::vector<MeanAccumulator> mgf(t_grid.size());
    MeanAccumulator q_acc;
    std::vector<double> z(d);
    std::vector<double> w(d);
    for (int rep = 0; rep < reps; ++rep) {
        for (int c = 0; c < d; ++c) z[c] = rng.next_normal();
        for (int r = 0; r < d; ++r) {
            double s = 0.0;
            for (int c = 0; c <= r; ++c) s += l(r, c) * z[c];
            w[r] = s;
        }
        double qv = 0.0;
        for (int i = 0; i < p; ++i)
            for (int k = 0; k < q; ++k) qv += w[i] * a(i, k) * w[p + k];
        q_acc.add(qv);
        for (std::size_t g = 0; g < t_grid.size(); ++g) mgf[g].add(std::exp(t_grid[g] * qv));
    }

    std::vector<OracleReport> out;
    for (std::size_t g = 0; g < t_grid.size(); ++g) {
        const double t = t_grid[g];
        DenseMatrix i_tb = DenseMatrix::identity(d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) i_tb(r, c) -= t * b(r, c);
        const double ref = 1.0 / std::sqrt(determinant(i_tb));
        out.push_back(two_sided("mgf", "E[exp(tQ)] t=" + format_double(t), mgf[g].mean(), ref,
                                4.0, mgf[g].se()));
    }
    const double eq_ref = trace_a_sigma21(a, sigma);
    out.push_back(two_sided("mgf", "E[Q]", q_acc.mean(), eq_ref, 4.0, q_acc.se()));

    double tr_b = 0.0;
    for (int r = 0; r < d; ++r) tr_b += b(r, r);
    OracleReport half_trace;
    half_trace.check = "mgf";
    half_trace.quantity = "tr(B)/2 = tr(A*Sigma21)";
    half_trace.value = 0.5 * tr_b;
    half_trace.reference = eq_ref;
    half_trace.tolerance = 1e-10 * std::max(1.0, std::abs(eq_ref));
    half_trace.pass = std::abs(half_trace.value - half_trace.reference) <= half_trace.tolerance;
    out.push_back(std::move(half_trace));
    return out;
}

OracleReport check_trace_bound(const SymMatrix& sigma, const std::vector<double>& u,
                               const std::vector<double>& v, const DenseMatrix& h) {
    const int k = h.rows();
    if (h.cols() != k) throw std::invalid_argument("check_trace_bound: H must be square");
    if (static_cast<int>(u.size()) != k || static_cast<int>(v.size()) != k) {
        throw std::invalid_argument("check_trace_bound: u, v must have length K");
    }
    if (sigma.dim() != 2 * k) throw std::invalid_argument("check_trace_bound: Sigma must be 2K x 2K");
    auto unit = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double e : x) s += e * e;
        return std::abs(std::sqrt(s) - 1.0) <= 1e-9;
    };
    if (!unit(u) || !unit(v)) throw std::invalid_argument("check_trace_bound: u, v must be unit vectors");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (std::abs(h(i, j)) > 1.0 + 1e-12) {
                throw std::invalid_argument("check_trace_bound: |H entries| must be <= 1");
            }
    (void)cholesky(sigma);  // positive definiteness gate

    DenseMatrix a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = u[i] * v[j] * h(i, j);

    const SymMatrix b = mgf_b_matrix(a, sigma);
    const double lhs = trace_sq(b);

    DenseMatrix s12_abs(k, k);
    DenseMatrix s11_abs(k, k);
    DenseMatrix s22_abs(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            s12_abs(i, j) = std::abs(sigma(i, k + j));
            s11_abs(i, j) = std::abs(sigma(i, j));
            s22_abs(i, j) = std::abs(sigma(k + i, k + j));
        }
    const double n12 = op_norm(s12_abs, 1e-12, 200000);
    const double n11 = op_norm(s11_abs, 1e-12, 200000);
    const double n22 = op_norm(s22_abs, 1e-12, 200000);
    const double rhs = 2.0 * n12 * n12 + 2.0 * n11 * n22;

    return one_sided("trace", "tr(B^2) <= 2||S12abs||^2 + 2||S11abs||*||S22abs||", lhs, rhs,
                     1e-10 * std::max(1.0, rhs));
}

std::vector<OracleReport> check_tail_bound(const DenseMatrix& a, const SymMatrix& sigma, int n,
                                           const std::vector<double>& t_grid, int reps, Rng& rng) {
    for (double t : t_grid) {
        if (t <= 0.0 || t >= 0.5) {
            throw std::invalid_argument("check_tail_bound: t grid must lie inside (0, 1/2)");
        }
    }
    const int p = a.rows();
    const int q = a.cols();
    const SymMatrix b = mgf_b_matrix(a, sigma);
    const double tr_b2 = trace_sq(b);
    const double eq = trace_a_sigma21(a, sigma);
    const DenseMatrix l = cholesky(sigma);
    const int d = p + q;

    std::vector<long> exceed(t_grid.size(), 0);
    std::vector<double> z(d);
    std::vector<double> w(d);
    const double scale = std::sqrt(tr_b2);
    for (int rep = 0; rep < reps; ++rep) {
        double qbar = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < d; ++c) z[c] = rng.next_normal();
            for (int r = 0; r < d; ++r) {
                double s = 0.0;
                for (int c = 0; c <= r; ++c) s += l(r, c) * z[c];
                w[r] = s;
            }
            double qv = 0.0;
            for (int r = 0; r < p; ++r)
                for (int k = 0; k < q; ++k) qv += w[r] * a(r, k) * w[p + k];
            qbar += qv - eq;
        }
        qbar /= n;
        for (std::size_t g = 0; g < t_grid.size(); ++g) {
            if (std::abs(qbar) > t_grid[g] * scale) ++exceed[g];
        }
    }

    std::vector<OracleReport> out;
    for (std::size_t g = 0; g < t_grid.size(); ++g) {
        const double t = t_grid[g];
        const double freq = static_cast<double>(exceed[g]) / reps;
        const double bound = std::min(1.0, 2.0 * std::exp(-0.5 * n * t * t));
        const double se = std::sqrt(bound * (1.0 - bound) / reps);
        out.push_back(one_sided("tail",
                                "P(|Qbar| > t*sqrt(tr(B^2))) n=" + std::to_string(n) +
                                    " t=" + format_double(t),
                                freq, bound, 4.0 * se, se));
    }
    return out;
}

std::vector<OracleReport> check_band_structure(int p, int n, int bandwidth,
                                               const SymMatrix& sigma, Rng& rng, int draws) {
    if (bandwidth < 1) throw std::invalid_argument("check_band_structure: bandwidth must be >= 1");
    if (sigma.dim() != p) throw std::invalid_argument("check_band_structure: sigma dim mismatch");
    const DenseMatrix l = cholesky(sigma);
    const SymMatrix sigma_k = band(sigma, bandwidth);
    const int nb = block_count(p, bandwidth);

    double worst_offband = 0.0;
    double worst_schur = 0.0;
    double worst_diag = 0.0;
    double worst_norm_vs_compress = -1e300;
    double worst_compress_vs_3max = -1e300;
    double chain_tol = 0.0;

    for (int draw = 0; draw < draws; ++draw) {
        const DataSample x = mvn_sample(l, n, rng);
        const SymMatrix s = sample_cov(x);
        const SymMatrix s_k = band(s, bandwidth);
        const SymMatrix diff = s_k - sigma_k;
        const SymMatrix raw_diff = s - sigma;

        for (int k = 1; k <= nb; ++k) {
            for (int m = 1; m <= nb; ++m) {
                const DenseMatrix blk = block(diff, k, m, bandwidth);
                if (std::abs(k - m) >= 2) {
                    for (double e : blk.data()) worst_offband = std::max(worst_offband, std::abs(e));
                } else if (k == m) {
                    const DenseMatrix expect = block(raw_diff, k, m, bandwidth);
                    for (int i = 0; i < blk.rows(); ++i)
                        for (int j = 0; j < blk.cols(); ++j)
                            worst_diag = std::max(worst_diag, std::abs(blk(i, j) - expect(i, j)));
                } else {
                    // Schur form: the surviving mask of an adjacent block is
                    // the strictly lower-triangular ones matrix (k < m) or
                    // its transpose (k > m), clipped at ragged edges.
                    const DenseMatrix raw = block(raw_diff, k, m, bandwidth);
                    for (int i = 0; i < blk.rows(); ++i) {
                        for (int j = 0; j < blk.cols(); ++j) {
                            const int gi = (k - 1) * bandwidth + i;
                            const int gj = (m - 1) * bandwidth + j;
                            const bool keep = std::abs(gi - gj) <= bandwidth - 1;
                            const double expect = keep ? raw(i, j) : 0.0;
                            const bool h0_keep = (k < m) ? (i > j) : (j > i);
                            if (keep != h0_keep) worst_schur = std::max(worst_schur, 1.0);
                            worst_schur = std::max(worst_schur, std::abs(blk(i, j) - expect));
                        }
                    }
                }
            }
        }

        const double dn = op_norm(diff, 1e-12, 200000);
        const BlockNormMatrix comp = block_compress(diff, bandwidth, 1e-12, 200000);
        const double cn = op_norm(comp, 1e-12, 200000);
        double max_adj = 0.0;
        for (int k = 1; k <= nb; ++k)
            for (int m = std::max(1, k - 1); m <= std::min(nb, k + 1); ++m)
                max_adj = std::max(max_adj, comp(k, m));
        worst_norm_vs_compress = std::max(worst_norm_vs_compress, dn - cn);
        worst_compress_vs_3max = std::max(worst_compress_vs_3max, cn - 3.0 * max_adj);
        chain_tol = std::max(chain_tol, 1e-10 * std::max(1.0, 3.0 * max_adj));
    }

    std::vector<OracleReport> out;
    OracleReport offband{"structure", "blocks with |k-l| >= 2 are exactly zero", worst_offband,
                         0.0, 0.0, std::nullopt, worst_offband == 0.0};
    out.push_back(std::move(offband));
    OracleReport schur{"structure", "adjacent blocks match the H0 Schur form exactly",
                       worst_schur, 0.0, 0.0, std::nullopt, worst_schur == 0.0};
    out.push_back(std::move(schur));
    OracleReport diag{"structure", "diagonal blocks equal the unbanded difference",
                      worst_diag, 0.0, 0.0, std::nullopt, worst_diag == 0.0};
    out.push_back(std::move(diag));
    if (p >= 2 * bandwidth) {
        const double free_entries = bandwidth * (bandwidth - 1) / 2.0;
        int count = 0;
        for (int i = 0; i < bandwidth; ++i)
            for (int j = 0; j < bandwidth; ++j)
                if (i > j) ++count;
        OracleReport fe{"structure", "off-diagonal block free entries = K(K-1)/2",
                        static_cast<double>(count), free_entries, 0.0, std::nullopt,
                        static_cast<double>(count) == free_entries};
        out.push_back(std::move(fe));
    }
    out.push_back(one_sided("structure", "op_norm(D) <= op_norm(compress(D))",
                            worst_norm_vs_compress, 0.0, chain_tol));
    out.push_back(one_sided("structure", "op_norm(compress(D)) <= 3*max adjacent block norm",
                            worst_compress_vs_3max, 0.0, chain_tol));
    return out;
}

std::vector<OracleReport> check_scalar_lemmas() {
    std::vector<OracleReport> out;

    double min_f = 1e300;
    double min_x = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double x = -0.499 + i * (10.0 + 0.499) / 20000.0;
        const double f = std::log1p(x) - x + x * x;
        if (f < min_f) {
            min_f = f;
            min_x = x;
        }
    }
    OracleReport grid_min{"scalars",
                          "min over (-0.499..10] of log(1+x)-x+x^2 (at x=" + format_double(min_x) + ")",
                          min_f, 0.0, 1e-12, std::nullopt, min_f >= -1e-12};
    out.push_back(std::move(grid_min));

    const double f0 = std::log1p(0.0) - 0.0 + 0.0;
    OracleReport at_zero{"scalars", "log(1+x)-x+x^2 at x=0", f0, 0.0, 0.0, std::nullopt, f0 == 0.0};
    out.push_back(std::move(at_zero));

    const double f_neg = std::log1p(-0.4) + 0.4 + 0.16;
    OracleReport at_neg{"scalars", "log(1+x)-x+x^2 at x=-0.4", f_neg,
                        std::log(0.6) + 0.56, 1e-14, std::nullopt,
                        std::abs(f_neg - (std::log(0.6) + 0.56)) <= 1e-14 && f_neg > 0.0};
    out.push_back(std::move(at_neg));

    double worst_dev = 0.0;
    for (double c0 : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        for (double t : {0.01, 0.1, 1.0, 5.0}) {
            const double a = t / (2.0 * c0);
            const double exponent = c0 * a * a - a * t;
            const double expected = -t * t / (4.0 * c0);
            worst_dev = std::max(worst_dev,
                                 std::abs(exponent - expected) / std::max(1.0, std::abs(expected)));
        }
    }
    OracleReport chernoff{"scalars", "c0*a^2 - a*t = -t^2/(4c0) at a=t/(2c0)", worst_dev, 0.0,
                          1e-12, std::nullopt, worst_dev <= 1e-12};
    out.push_back(std::move(chernoff));
    return out;
}

namespace {

SymMatrix random_pd_sigma(int dim, Rng& rng) {
    DenseMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.next_normal();
    SymMatrix s(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            double acc = 0.0;
            for (int k = 0; k < dim; ++k) acc += g(i, k) * g(j, k);
            s.set(i, j, acc / dim + (i == j ? 0.5 : 0.0));
        }
    }
    return s;
}

std::vector<double> random_unit(int dim, Rng& rng) {
    std::vector<double> u(dim);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (double& e : u) {
            e = rng.next_normal();
            norm += e * e;
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& e : u) e /= norm;
    return u;
}

std::vector<OracleReport> moments_suite(std::uint64_t seed) {
    Rng rng(seed, 101);
    return check_moment_identities(SymMatrix::from_rows({{1.0, 0.5}, {0.5, 1.0}}), 10, 100000, rng);
}

std::vector<OracleReport> mgf_suite(std::uint64_t seed) {
    std::vector<OracleReport> out;
    {
        Rng rng(seed, 201);
        const DenseMatrix a = DenseMatrix::from_rows({{1.0}});
        const auto reports = check_mgf_identity(a, SymMatrix::identity(2),
                                                {0.0, -0.45, -0.2, 0.1, 0.3, 0.45}, 200000, rng);
        out.insert(out.end(), reports.begin(), reports.end());
        // hand-derived reference for the scalar case: det(I - tB) = 1 - t^2
        for (double t : {-0.45, 0.3}) {
            DenseMatrix i_tb = DenseMatrix::from_rows({{1.0, -t}, {-t, 1.0}});
            OracleReport hand{"mgf",
                              "det route equals (1-t^2)^(-1/2) at t=" + format_double(t),
                              1.0 / std::sqrt(determinant(i_tb)),
                              1.0 / std::sqrt(1.0 - t * t),
                              1e-12, std::nullopt, false};
            hand.pass = std::abs(hand.value - hand.reference) <= hand.tolerance;
            out.push_back(std::move(hand));
        }
    }
    {
        Rng rng(seed, 202);
        SymMatrix sigma = random_pd_sigma(5, rng);
        DenseMatrix a(3, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) a(i, j) = 2.0 * rng.next_uniform() - 1.0;
        const auto reports = check_mgf_identity(a, sigma, {0.0, 0.1}, 200000, rng);
        out.insert(out.end(), reports.begin(), reports.end());
    }
    return out;
}

std::vector<OracleReport> trace_suite(std::uint64_t seed) {
    std::vector<OracleReport> out;
    const int k = 4;
    {
        DenseMatrix h(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) h(i, j) = 1.0;
        std::vector<double> e1(k, 0.0);
        e1[0] = 1.0;
        out.push_back(check_trace_bound(SymMatrix::identity(2 * k), e1, e1, h));
    }
    {
        DenseMatrix h(k, k);
        std::vector<double> e1(k, 0.0);
        e1[0] = 1.0;
        out.push_back(check_trace_bound(SymMatrix::identity(2 * k), e1, e1, h));
    }
    Rng rng(seed, 301);
    double worst_violation = 0.0;
    double worst_tol = 0.0;
    int fails = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const SymMatrix sigma = random_pd_sigma(2 * k, rng);
        const std::vector<double> u = random_unit(k, rng);
        const std::vector<double> v = random_unit(k, rng);
        DenseMatrix h(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) h(i, j) = 2.0 * rng.next_uniform() - 1.0;
        const OracleReport r = check_trace_bound(sigma, u, v, h);
        if (!r.pass) ++fails;
        worst_violation = std::max(worst_violation, r.value);
        worst_tol = std::max(worst_tol, r.tolerance);
    }
    OracleReport sweep{"trace", "100 seeded random (Sigma;u;v;H) at K=4 worst violation",
                       worst_violation, 0.0, worst_tol, std::nullopt, fails == 0};
    out.push_back(std::move(sweep));
    return out;
}

std::vector<OracleReport> tail_suite(std::uint64_t seed) {
    std::vector<OracleReport> out;
    const std::vector<double> grid{0.2, 0.25, 0.3, 0.4, 0.45};
    for (int n : {50, 200}) {
        Rng rng(seed, 400 + n);
        SymMatrix sigma = random_pd_sigma(6, rng);
        DenseMatrix a(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = 2.0 * rng.next_uniform() - 1.0;
        const auto reports = check_tail_bound(a, sigma, n, grid, 10000, rng);
        out.insert(out.end(), reports.begin(), reports.end());
    }
    return out;
}

std::vector<OracleReport> structure_suite(std::uint64_t seed) {
    std::vector<OracleReport> out;
    {
        Rng rng(seed, 501);
        PopulationModel model{9, 0.6, 0.5, 1.0};
        const auto reports = check_band_structure(9, 20, 3, power_law_sigma(model), rng, 1);
        out.insert(out.end(), reports.begin(), reports.end());
    }
    {
        Rng rng(seed, 502);
        PopulationModel model{60, 0.6, 0.1, 1.0};
        const auto reports = check_band_structure(60, 40, 5, power_law_sigma(model), rng, 50);
        out.insert(out.end(), reports.begin(), reports.end());
    }
    {
        // operator norm bounded by the maximum absolute row sum on seeded
        // symmetric matrices
        Rng rng(seed, 503);
        double worst = -1e300;
        double tol = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int dim = 2 + static_cast<int>(rng.next_below(29));
            SymMatrix a(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) a.set(i, j, 2.0 * rng.next_uniform() - 1.0);
            const double lhs = op_norm(a, 1e-12, 200000);
            const double rhs = max_abs_row_sum(a);
            worst = std::max(worst, lhs - rhs);
            tol = std::max(tol, 1e-10 * std::max(1.0, rhs));
        }
        out.push_back(one_sided("structure", "op_norm <= max_abs_row_sum on 100 seeded matrices",
                                worst, 0.0, tol));
    }
    return out;
}

}  // namespace

std::vector<OracleReport> run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "moments") return moments_suite(seed);
    if (name == "mgf") return mgf_suite(seed);
    if (name == "trace") return trace_suite(seed);
    if (name == "tail") return tail_suite(seed);
    if (name == "structure") return structure_suite(seed);
    if (name == "scalars") return check_scalar_lemmas();
    if (name == "all") {
        std::vector<OracleReport> out;
        for (const char* suite : {"moments", "mgf", "trace", "tail", "structure", "scalars"}) {
            const auto reports = run_suite(suite, seed);
            out.insert(out.end(), reports.begin(), reports.end());
        }
        return out;
    }
    throw std::invalid_argument("run_suite: unknown suite " + name);
}

}  // namespace bandcov::verify
