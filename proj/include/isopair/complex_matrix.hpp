#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace isopair {

using cx = std::complex<double>;
using CVector = std::vector<cx>;

/// Dense complex matrix, row-major. The carrier for every operator in the
/// library (U, P, defect, cross-commutator, truncated V1/V2).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> data);
    ComplexMatrix(std::initializer_list<std::initializer_list<cx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const cx> diag);
    static ComplexMatrix diagonal(std::span<const double> diag);
    /// Columns given as vectors of equal length.
    static ComplexMatrix from_columns(std::span<const CVector> columns, std::size_t rows);
    /// v w*
    static ComplexMatrix outer(std::span<const cx> v, std::span<const cx> w);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    cx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<cx> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const cx> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    CVector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const cx> v);

    std::span<cx> data() noexcept { return data_; }
    std::span<const cx> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    cx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    ComplexMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
    ComplexMatrix select_rows(std::span<const std::size_t> row_idx) const;
    ComplexMatrix select_cols(std::span<const std::size_t> col_idx) const;
    /// Copy `block` into this matrix with its (0,0) entry at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& block);
    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
CVector operator*(const ComplexMatrix& a, std::span<const cx> x);

/// A* B without materialising A*.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);
/// A* x
CVector adjoint_times(const ComplexMatrix& a, std::span<const cx> x);

ComplexMatrix block_diagonal(std::span<const ComplexMatrix> blocks);

/// ||A - B||_F
double distance(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// sum conj(x_i) y_i, conjugate-linear in x.
cx inner(std::span<const cx> x, std::span<const cx> y);
double norm(std::span<const cx> x);

} // namespace isopair
