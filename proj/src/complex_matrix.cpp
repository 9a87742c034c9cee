#include "isopair/complex_matrix.hpp"

#include "isopair/error.hpp"
#include "isopair/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isopair {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InputError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw InputError("ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(data_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw InputError("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cx> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const CVector> columns, std::size_t rows) {
    ComplexMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        m.set_column(j, columns[j]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cx> v, std::span<const cx> w) {
    ComplexMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            m(i, j) = v[i] * std::conj(w[j]);
        }
    }
    return m;
}

CVector ComplexMatrix::column(std::size_t j) const {
    CVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        v[i] = (*this)(i, j);
    }
    return v;
}

void ComplexMatrix::set_column(std::size_t j, std::span<const cx> v) {
    if (v.size() != rows_) {
        throw InputError("set_column: length mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = v[i];
    }
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m(j, i) = std::conj((*this)(i, j));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            m(j, i) = (*this)(i, j);
        }
    }
    return m;
}

cx ComplexMatrix::trace() const {
    cx t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    return std::sqrt(kernels::dotc(data_, data_).real());
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cx& z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

ComplexMatrix ComplexMatrix::submatrix(std::span<const std::size_t> row_idx,
                                       std::span<const std::size_t> col_idx) const {
    ComplexMatrix m(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        const auto src = row(row_idx[i]);
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            m(i, j) = src[col_idx[j]];
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::select_rows(std::span<const std::size_t> row_idx) const {
    ComplexMatrix m(row_idx.size(), cols_);
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        std::ranges::copy(row(row_idx[i]), m.row(i).begin());
    }
    return m;
}

ComplexMatrix ComplexMatrix::select_cols(std::span<const std::size_t> col_idx) const {
    ComplexMatrix m(rows_, col_idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            m(i, j) = (*this)(i, col_idx[j]);
        }
    }
    return m;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) {
        throw InputError("set_block: block exceeds matrix bounds");
    }
    for (std::size_t i = 0; i < block.rows(); ++i) {
        std::ranges::copy(block.row(i), row(r0 + i).begin() + static_cast<std::ptrdiff_t>(c0));
    }
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw InputError("block: range exceeds matrix bounds");
    }
    ComplexMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            m(i, j) = (*this)(r0 + i, c0 + j);
        }
    }
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+=");
    kernels::axpy(1.0, other.data(), data_);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-=");
    kernels::axpy(-1.0, other.data(), data_);
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx s) {
    for (cx& z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InputError("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    kernels::gemm(kernels::active(), a.rows(), a.cols(), b.cols(), a.data().data(), b.data().data(),
                  c.data().data());
    return c;
}

CVector operator*(const ComplexMatrix& a, std::span<const cx> x) {
    if (a.cols() != x.size()) {
        throw InputError("matrix-vector product: length mismatch");
    }
    CVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        y[i] = kernels::dotu(a.row(i), x);
    }
    return y;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) {
        throw InputError("adjoint_times: row counts differ");
    }
    ComplexMatrix c(a.cols(), b.cols());
    const auto& table = kernels::active();
    for (std::size_t p = 0; p < a.rows(); ++p) {
        const auto arow = a.row(p);
        const auto brow = b.row(p);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            if (arow[i] == cx{}) {
                continue;
            }
            table.axpy(b.cols(), std::conj(arow[i]), brow.data(), c.row(i).data());
        }
    }
    return c;
}

CVector adjoint_times(const ComplexMatrix& a, std::span<const cx> x) {
    if (a.rows() != x.size()) {
        throw InputError("adjoint matrix-vector product: length mismatch");
    }
    CVector y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (x[i] == cx{}) {
            continue;
        }
        const auto row = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            y[j] += std::conj(row[j]) * x[i];
        }
    }
    return y;
}

ComplexMatrix block_diagonal(std::span<const ComplexMatrix> blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    ComplexMatrix m(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "distance");
    return (a - b).frobenius_norm();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && distance(a, b) <= tol;
}

cx inner(std::span<const cx> x, std::span<const cx> y) {
    if (x.size() != y.size()) {
        throw InputError("inner: length mismatch");
    }
    return kernels::dotc(x, y);
}

double norm(std::span<const cx> x) { return std::sqrt(kernels::dotc(x, x).real()); }

} // namespace isopair
