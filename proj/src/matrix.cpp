#include "bandcov/matrix.hpp"

namespace bandcov {

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const int r = static_cast<int>(rows.size());
    if (r == 0) throw std::invalid_argument("DenseMatrix: empty row list");
    const int c = static_cast<int>(rows.begin()->size());
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(r) * c);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) {
            throw std::invalid_argument("DenseMatrix: ragged row list");
        }
        data.insert(data.end(), row.begin(), row.end());
    }
    return DenseMatrix(r, c, std::move(data));
}

SymMatrix SymMatrix::from_dense(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("SymMatrix: input is not square");
    const int p = a.rows();
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (a(i, j) != a(j, i)) {
                throw std::invalid_argument("SymMatrix: input is not symmetric at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    SymMatrix out(p);
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) out.set(i, j, a(i, j));
    return out;
}

SymMatrix SymMatrix::symmetrized(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("SymMatrix: input is not square");
    const int p = a.rows();
    SymMatrix out(p);
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) out.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    return out;
}

}  // namespace bandcov
