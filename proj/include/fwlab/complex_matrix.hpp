#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace fwlab {

using cxd = std::complex<double>;

/// Dense square complex matrix, row-major. This is the working type for all
/// operator algebra; products and norms route through the kernels layer so
/// the serial/OpenMP split lives in one place.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);

  static ComplexMatrix zero(std::size_t dim);
  static ComplexMatrix identity(std::size_t dim);
  /// Build from nested braces: ComplexMatrix::from_rows({{a,b},{c,d}}).
  /// Throws std::invalid_argument on ragged rows.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<cxd>> rows);

  std::size_t dim() const { return dim_; }

  cxd& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cxd& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  cxd* data() { return data_.data(); }
  const cxd* data() const { return data_.data(); }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cxd s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(cxd s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  /// Matrix product (kernels::matmul). Throws on dimension mismatch.
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

  ComplexMatrix adjoint() const;

  /// Largest entry modulus (max norm).
  double max_abs() const;
  /// Max norm restricted to the leading block of the given dimension.
  /// block_dim must not exceed dim().
  double max_abs_leading_block(std::size_t block_dim) const;
  /// ||A - A^dagger||_max.
  double hermiticity_residual() const;
  /// True when every off-diagonal entry is exactly zero.
  bool is_exactly_diagonal() const;
  /// True when every entry is finite.
  bool is_finite() const;

  /// A*v for a column vector v of matching length.
  std::vector<cxd> apply(const std::vector<cxd>& v) const;

  bool operator==(const ComplexMatrix& rhs) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cxd> data_;
};

/// AB - BA via two products.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// AB + BA.
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

double vector_norm(const std::vector<cxd>& v);
cxd inner_product(const std::vector<cxd>& a, const std::vector<cxd>& b);

}  // namespace fwlab
