#include "fwlab/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "fwlab/kernels.hpp"

namespace fwlab {

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : dim_(dim), data_(dim * dim, cxd(0.0, 0.0)) {}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) {
  return ComplexMatrix(dim);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<cxd>> rows) {
  ComplexMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != m.dim_)
      throw std::invalid_argument("from_rows: ragged row list");
    std::size_t j = 0;
    for (const cxd& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_)
    throw std::invalid_argument("matrix add: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_)
    throw std::invalid_argument("matrix subtract: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cxd s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_)
    throw std::invalid_argument("matrix multiply: dimension mismatch");
  ComplexMatrix c(a.dim_);
  kernels::matmul(a.data(), b.data(), c.data(), a.dim_);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix b(dim_);
  kernels::adjoint(data(), b.data(), dim_);
  return b;
}

double ComplexMatrix::max_abs() const {
  return kernels::max_abs(data(), data_.size());
}

double ComplexMatrix::max_abs_leading_block(std::size_t block_dim) const {
  if (block_dim > dim_)
    throw std::invalid_argument("max_abs_leading_block: block exceeds matrix");
  double m = 0.0;
  for (std::size_t i = 0; i < block_dim; ++i)
    for (std::size_t j = 0; j < block_dim; ++j)
      m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double ComplexMatrix::hermiticity_residual() const {
  double r = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return r;
}

bool ComplexMatrix::is_exactly_diagonal() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      const cxd& v = (*this)(i, j);
      if (v.real() != 0.0 || v.imag() != 0.0) return false;
    }
  return true;
}

bool ComplexMatrix::is_finite() const {
  for (const cxd& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

std::vector<cxd> ComplexMatrix::apply(const std::vector<cxd>& v) const {
  if (v.size() != dim_)
    throw std::invalid_argument("matrix apply: vector length mismatch");
  std::vector<cxd> out(dim_, cxd(0.0, 0.0));
  for (std::size_t i = 0; i < dim_; ++i) {
    cxd acc(0.0, 0.0);
    const cxd* row = data() + i * dim_;
    for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

double vector_norm(const std::vector<cxd>& v) {
  double s = 0.0;
  for (const cxd& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cxd inner_product(const std::vector<cxd>& a, const std::vector<cxd>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner_product: length mismatch");
  cxd s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace fwlab
