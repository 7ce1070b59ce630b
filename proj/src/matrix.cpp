#include "hypcheck/matrix.hpp"

#include <utility>

#include "hypcheck/error.hpp"

namespace hypcheck {

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::kDimensionMismatch, "ragged row in from_rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  ExactMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged column in from_columns");
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Vector ExactMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::kDimensionMismatch, "matrix product shape mismatch");
  ExactMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        if (rhs(k, c) != 0) out(r, c) += a * rhs(k, c);
      }
    }
  }
  return out;
}

Vector ExactMatrix::operator*(std::span<const Rational> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != 0 && v[c] != 0) out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw Error(ErrorCode::kDimensionMismatch, "hstack row mismatch");
  ExactMatrix out(rows_, cols_ + rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, cols_ + c) = rhs(r, c);
  }
  return out;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& rhs) const {
  if (cols_ != rhs.cols_) throw Error(ErrorCode::kDimensionMismatch, "vstack column mismatch");
  ExactMatrix out(rows_ + rhs.rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
  for (std::size_t r = 0; r < rhs.rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(rows_ + r, c) = rhs(r, c);
  return out;
}

bool ExactMatrix::is_zero() const { return hypcheck::is_zero(data_); }

namespace {

using IntegerRows = std::vector<std::vector<Integer>>;

IntegerRows clear_denominators(const ExactMatrix& m) {
  IntegerRows a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer lcm = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Integer& den = m(r, c).get_den();
      if (den != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& q = m(r, c);
      if (q != 0) a[r][c] = q.get_num() * (lcm / q.get_den());
    }
  }
  return a;
}

// Fraction-free Gaussian elimination in place. Every entry stays an integer
// (a minor of the input), so the division by the previous pivot is exact.
std::vector<std::size_t> bareiss_echelon(IntegerRows& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  Integer previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t pivot_row = r;
    while (pivot_row < a.size() && a[pivot_row][c] == 0) ++pivot_row;
    if (pivot_row == a.size()) continue;
    std::swap(a[r], a[pivot_row]);
    const Integer& pivot = a[r][c];
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      const Integer factor = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer value = pivot * a[i][j];
        if (factor != 0) value -= factor * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
      }
      a[i][c] = 0;
    }
    previous = pivot;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RowEchelon reduced_row_echelon(const ExactMatrix& m) {
  IntegerRows a = clear_denominators(m);
  const std::vector<std::size_t> pivots = bareiss_echelon(a, m.cols());
  const std::size_t r = pivots.size();

  ExactMatrix form(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = pivots[i]; j < m.cols(); ++j) form(i, j) = Rational(a[i][j]);

  // Back substitution from the bottom: normalize each pivot to 1 and clear
  // its column above.
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t pc = pivots[k];
    const Rational inv = 1 / form(k, pc);
    for (std::size_t j = pc; j < m.cols(); ++j) {
      if (form(k, j) != 0) form(k, j) *= inv;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const Rational factor = form(i, pc);
      if (factor == 0) continue;
      for (std::size_t j = pc; j < m.cols(); ++j) {
        if (form(k, j) != 0) form(i, j) -= factor * form(k, j);
      }
    }
  }
  return {std::move(form), pivots};
}

std::size_t rank(const ExactMatrix& m) {
  IntegerRows a = clear_denominators(m);
  return bareiss_echelon(a, m.cols()).size();
}

std::size_t modular_rank(const ExactMatrix& m, std::uint32_t prime) {
  const std::uint64_t p = prime;
  auto reduce = [&](const Integer& z) {
    return static_cast<std::uint64_t>(mpz_fdiv_ui(z.get_mpz_t(), prime));
  };
  auto power = [&](std::uint64_t base, std::uint64_t e) {
    std::uint64_t result = 1;
    base %= p;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const std::uint64_t den = reduce(m(r, c).get_den());
      if (den == 0) throw Error(ErrorCode::kInvalidArgument, "denominator vanishes modulo prime");
      a[r][c] = reduce(m(r, c).get_num()) * power(den, p - 2) % p;
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pr = rank;
    while (pr < m.rows() && a[pr][c] == 0) ++pr;
    if (pr == m.rows()) continue;
    std::swap(a[rank], a[pr]);
    const std::uint64_t inv = power(a[rank][c], p - 2);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c] * inv % p;
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] = (a[i][j] + (p - f) * a[rank][j]) % p;
    }
    ++rank;
  }
  return rank;
}

Subspace kernel_basis(const ExactMatrix& m) {
  const RowEchelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t pc : e.pivots) is_pivot[pc] = true;

  std::vector<Vector> generators;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.form(k, f);
    generators.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), generators);
}

std::optional<Vector> solve(const ExactMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.rows()) throw Error(ErrorCode::kDimensionMismatch, "solve: rhs length != rows");
  ExactMatrix augmented(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) augmented(r, c) = m(r, c);
    augmented(r, m.cols()) = v[r];
  }
  const RowEchelon e = reduced_row_echelon(augmented);
  Vector x(m.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == m.cols()) return std::nullopt;
    x[e.pivots[k]] = e.form(k, m.cols());
  }
  return x;
}

Subspace Subspace::column_span(const ExactMatrix& generators) {
  Subspace s(generators.rows());
  RowEchelon e = reduced_row_echelon(generators.transpose());
  s.basis_ = e.form.transpose();
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& generators) {
  if (generators.empty()) return Subspace(ambient);
  return column_span(ExactMatrix::from_columns(generators, ambient));
}

Subspace Subspace::full(std::size_t ambient) { return column_span(ExactMatrix::identity(ambient)); }

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis_.column(k));
  return out;
}

Vector Subspace::reduce(std::span<const Rational> v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::kDimensionMismatch, "reduce: ambient mismatch");
  Vector out(v.begin(), v.end());
  for (std::size_t k = 0; k < dim(); ++k) {
    const Rational factor = out[pivots_[k]];
    if (factor == 0) continue;
    for (std::size_t r = pivots_[k]; r < ambient_; ++r) {
      if (basis_(r, k) != 0) out[r] -= factor * basis_(r, k);
    }
  }
  return out;
}

bool Subspace::contains(std::span<const Rational> v) const { return hypcheck::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) {
    throw Error(ErrorCode::kDimensionMismatch, "contains: ambient mismatch");
  }
  for (std::size_t k = 0; k < other.dim(); ++k) {
    if (!contains(other.basis_vector(k))) return false;
  }
  return true;
}

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "subspaces live in different ambient spaces");
  }
}

}  // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return Subspace::column_span(a.basis().hstack(b.basis()));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_dim());
  // a*x = b*y  <=>  [a | -b] (x, y) = 0
  ExactMatrix neg_b = b.basis();
  for (std::size_t r = 0; r < neg_b.rows(); ++r)
    for (std::size_t c = 0; c < neg_b.cols(); ++c) neg_b(r, c) = -neg_b(r, c);
  const Subspace pairs = kernel_basis(a.basis().hstack(neg_b));
  std::vector<Vector> generators;
  for (std::size_t k = 0; k < pairs.dim(); ++k) {
    const Vector xy = pairs.basis_vector(k);
    generators.push_back(a.basis() * std::span<const Rational>(xy.data(), a.dim()));
  }
  return Subspace::span(a.ambient_dim(), generators);
}

bool subspace_contains(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return a.contains(b);
}

bool subspace_contains(const Subspace& a, std::span<const Rational> v) { return a.contains(v); }

Subspace image(const ExactMatrix& map, const Subspace& source) {
  if (map.cols() != source.ambient_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "image: map domain != subspace ambient");
  }
  if (source.dim() == 0) return Subspace(map.rows());
  return Subspace::column_span(map * source.basis());
}

}  // namespace hypcheck
