#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace bandcov {

/// General rectangular matrix, dense row-major doubles.
class DenseMatrix {
public:
    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(check_dims(rows, cols), 0.0) {}

    DenseMatrix(int rows, int cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != check_dims(rows, cols)) {
            throw std::invalid_argument("DenseMatrix: data size does not match dimensions");
        }
        require_finite();
    }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

private:
    static std::size_t check_dims(int rows, int cols) {
        if (rows < 1 || cols < 1) {
            throw std::invalid_argument("DenseMatrix: dimensions must be positive");
        }
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    void require_finite() const {
        for (double v : data_) {
            if (!std::isfinite(v)) throw std::invalid_argument("DenseMatrix: non-finite entry");
        }
    }

    int rows_;
    int cols_;
    std::vector<double> data_;
};

/// Dense real symmetric p-by-p matrix. Symmetry holds by construction: the
/// only mutator writes both (i,j) and (j,i), and the factory constructors
/// either validate symmetry or symmetrize.
class SymMatrix {
public:
    explicit SymMatrix(int dim) : p_(dim), data_(check_dim(dim), 0.0) {}

    /// Validates that `a` is square and exactly symmetric.
    static SymMatrix from_dense(const DenseMatrix& a);

    /// (A + A^T) / 2 of a square matrix.
    static SymMatrix symmetrized(const DenseMatrix& a);

    static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        return from_dense(DenseMatrix::from_rows(rows));
    }

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
        return m;
    }

    int dim() const { return p_; }

    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * p_ + j]; }

    /// Writes both mirrored entries.
    void set(int i, int j, double value) {
        data_[static_cast<std::size_t>(i) * p_ + j] = value;
        data_[static_cast<std::size_t>(j) * p_ + i] = value;
    }

    const std::vector<double>& data() const { return data_; }

    SymMatrix operator-(const SymMatrix& other) const {
        require_same_dim(other);
        SymMatrix out(p_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] - other.data_[k];
        return out;
    }

    SymMatrix operator+(const SymMatrix& other) const {
        require_same_dim(other);
        SymMatrix out(p_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] + other.data_[k];
        return out;
    }

private:
    static std::size_t check_dim(int dim) {
        if (dim < 1) throw std::invalid_argument("SymMatrix: dimension must be positive");
        return static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
    }

    void require_same_dim(const SymMatrix& other) const {
        if (other.p_ != p_) throw std::invalid_argument("SymMatrix: dimension mismatch");
    }

    int p_;
    std::vector<double> data_;
};

/// Matrix of operator norms of the K-by-K blocks of a symmetric matrix
/// (block compression). Block indices are 1-based, matching the block
/// partition convention used throughout; entries are nonnegative and the
/// matrix is symmetric because its source is.
class BlockNormMatrix {
public:
    explicit BlockNormMatrix(int blocks)
        : blocks_(blocks), data_(check_dim(blocks), 0.0) {}

    int blocks() const { return blocks_; }

    double operator()(int k, int l) const {
        check_index(k);
        check_index(l);
        return data_[static_cast<std::size_t>(k - 1) * blocks_ + (l - 1)];
    }

    void set(int k, int l, double value) {
        check_index(k);
        check_index(l);
        if (value < 0.0) throw std::invalid_argument("BlockNormMatrix: negative block norm");
        data_[static_cast<std::size_t>(k - 1) * blocks_ + (l - 1)] = value;
        data_[static_cast<std::size_t>(l - 1) * blocks_ + (k - 1)] = value;
    }

    const std::vector<double>& data() const { return data_; }

private:
    static std::size_t check_dim(int blocks) {
        if (blocks < 1) throw std::invalid_argument("BlockNormMatrix: block count must be positive");
        return static_cast<std::size_t>(blocks) * static_cast<std::size_t>(blocks);
    }

    void check_index(int k) const {
        if (k < 1 || k > blocks_) throw std::invalid_argument("BlockNormMatrix: block index out of range");
    }

    int blocks_;
    std::vector<double> data_;
};

}  // namespace bandcov
