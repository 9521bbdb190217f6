#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "loccalc/ratfn.hpp"

namespace loccalc {

/// Dense n x n matrix over RatFn, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), entries_(n * n) {}
  SquareMatrix(std::initializer_list<std::initializer_list<RatFn>> rows);
  static SquareMatrix from_rows(const std::vector<std::vector<RatFn>>& rows);
  static SquareMatrix identity(std::size_t n);
  static SquareMatrix diagonal(const std::vector<RatFn>& diag);
  static SquareMatrix block_diagonal(const SquareMatrix& a, const SquareMatrix& b);

  std::size_t size() const { return n_; }
  RatFn& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const RatFn& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  bool is_upper_triangular() const;
  bool is_lower_triangular() const;
  SquareMatrix scaled(const RatFn& factor) const;
  SquareMatrix substitute(const std::string& var, const RatFn& value) const;
  RatFn trace() const;
  std::vector<std::vector<RatFn>> rows() const;

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<RatFn> entries_;
};

/// Exact determinant. Rows are cleared of denominators and the resulting
/// polynomial matrix is reduced by Bareiss' fraction-free elimination, with row
/// exchanges tracked by sign. Triangular matrices short-circuit to the diagonal product.
RatFn det(const SquareMatrix& m);

/// (e1, ..., en): elementary symmetric functions of the eigenvalues, read off the
/// characteristic polynomial det(xI - M) = x^n - e1 x^(n-1) + ... + (-1)^n en,
/// computed with the Faddeev-LeVerrier recurrence.
std::vector<RatFn> elementary_symmetric(const SquareMatrix& m);

}  // namespace loccalc
