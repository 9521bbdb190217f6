#include "loccalc/matrix.hpp"

#include <utility>

#include "loccalc/error.hpp"

namespace loccalc {

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<RatFn>> rows) : n_(rows.size()) {
  entries_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw MathError("matrix is not square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<RatFn>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw MathError("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFn(1);
  return m;
}

SquareMatrix SquareMatrix::diagonal(const std::vector<RatFn>& diag) {
  SquareMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

SquareMatrix SquareMatrix::block_diagonal(const SquareMatrix& a, const SquareMatrix& b) {
  SquareMatrix m(a.n_ + b.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t j = 0; j < a.n_; ++j) m(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.n_; ++i) {
    for (std::size_t j = 0; j < b.n_; ++j) m(a.n_ + i, a.n_ + j) = b(i, j);
  }
  return m;
}

bool SquareMatrix::is_upper_triangular() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

bool SquareMatrix::is_lower_triangular() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

SquareMatrix SquareMatrix::scaled(const RatFn& factor) const {
  SquareMatrix m = *this;
  for (auto& e : m.entries_) e = e * factor;
  return m;
}

SquareMatrix SquareMatrix::substitute(const std::string& var, const RatFn& value) const {
  SquareMatrix m = *this;
  for (auto& e : m.entries_) e = e.substitute(var, value);
  return m;
}

RatFn SquareMatrix::trace() const {
  RatFn t;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<std::vector<RatFn>> SquareMatrix::rows() const {
  std::vector<std::vector<RatFn>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(entries_.begin() + i * n_, entries_.begin() + (i + 1) * n_);
  return out;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.n_ != b.n_) throw MathError("matrix dimension mismatch");
  SquareMatrix m(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      const RatFn& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < a.n_; ++j) {
        if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
      }
    }
  }
  return m;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.n_ != b.n_) throw MathError("matrix dimension mismatch");
  SquareMatrix m = a;
  for (std::size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] += b.entries_[i];
  return m;
}

RatFn det(const SquareMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return RatFn(1);
  if (m.is_upper_triangular() || m.is_lower_triangular()) {
    RatFn d(1);
    for (std::size_t i = 0; i < n; ++i) d *= m(i, i);
    return d;
  }

  // Clear denominators row by row: row_i * D_i is polynomial, det(M) = det(P) / prod D_i.
  std::vector<std::vector<SparsePoly>> a(n, std::vector<SparsePoly>(n));
  SparsePoly scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    SparsePoly row_den(1);
    for (std::size_t j = 0; j < n; ++j) {
      const SparsePoly& d = m(i, j).den();
      if (d.is_constant()) continue;
      SparsePoly g = gcd(row_den, d);
      row_den = row_den * *d.divide_exact(g);
    }
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = m(i, j).num() * *row_den.divide_exact(m(i, j).den());
    }
    scale = scale * row_den;
  }

  int sign = 1;
  SparsePoly previous(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return RatFn();
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        SparsePoly v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto q = v.divide_exact(previous);
        if (!q) throw MathError("internal: Bareiss step is not exact");
        a[i][j] = std::move(*q);
      }
      a[i][k] = SparsePoly();
    }
    previous = a[k][k];
  }
  SparsePoly value = a[n - 1][n - 1];
  if (sign < 0) value = -value;
  return RatFn::normalize(value, scale);
}

std::vector<RatFn> elementary_symmetric(const SquareMatrix& m) {
  const std::size_t n = m.size();
  if (m.is_upper_triangular() && m.is_lower_triangular()) {
    // Diagonal: expand prod (1 + d_i x) directly.
    std::vector<RatFn> e(n + 1);
    e[0] = RatFn(1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k > 0; --k) e[k] += e[k - 1] * m(i, i);
    }
    e.erase(e.begin());
    return e;
  }
  // Faddeev-LeVerrier: N_1 = I, a_k = -tr(M N_k) / k, N_{k+1} = M N_k + a_k I, where
  // a_k is the coefficient of x^(n-k) in det(xI - M), so e_k = (-1)^k a_k.
  std::vector<RatFn> e;
  e.reserve(n);
  SquareMatrix aux = SquareMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    SquareMatrix product = m * aux;
    RatFn ak = -(product.trace() / RatFn(static_cast<long>(k)));
    e.push_back(k % 2 == 0 ? ak : -ak);
    if (k < n) {
      aux = product;
      for (std::size_t i = 0; i < n; ++i) aux(i, i) += ak;
    }
  }
  return e;
}

}  // namespace loccalc
