#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypcheck/rational.hpp"

namespace hypcheck {

/// Dense row-major matrix of rationals.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  /// Columns given as vectors of length `rows`.
  static ExactMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  ExactMatrix transpose() const;
  ExactMatrix operator*(const ExactMatrix& rhs) const;
  Vector operator*(std::span<const Rational> v) const;

  /// [this | rhs]
  ExactMatrix hstack(const ExactMatrix& rhs) const;
  /// [this ; rhs]
  ExactMatrix vstack(const ExactMatrix& rhs) const;

  bool is_zero() const;
  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

/// Reduced row echelon form: pivot entries are 1 and are the only nonzero
/// entries of their columns. `form` keeps only the nonzero rows.
struct RowEchelon {
  ExactMatrix form;
  std::vector<std::size_t> pivots;
};

/// Computed with fraction-free (Bareiss) elimination over the integers after
/// clearing row denominators, then normalized.
RowEchelon reduced_row_echelon(const ExactMatrix& m);

std::size_t rank(const ExactMatrix& m);

/// Rank of m reduced modulo `prime`; m's denominators must be invertible
/// mod prime. Never exceeds rank(m).
std::size_t modular_rank(const ExactMatrix& m, std::uint32_t prime);

class Subspace;

/// Subspace of Q^cols with dimension cols - rank(m).
Subspace kernel_basis(const ExactMatrix& m);

/// Some x with m * x = v, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const ExactMatrix& m, std::span<const Rational> v);

/// A linear subspace of Q^ambient held in canonical form: the basis columns
/// are in reduced column echelon form (leading entries 1), so equality of
/// subspaces is equality of data.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient), basis_(ambient, 0) {}

  /// Span of the columns of `generators` (ambient = generators.rows()).
  static Subspace column_span(const ExactMatrix& generators);
  static Subspace span(std::size_t ambient, const std::vector<Vector>& generators);
  static Subspace full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  /// ambient x dim, reduced column echelon form.
  const ExactMatrix& basis() const { return basis_; }
  Vector basis_vector(std::size_t k) const { return basis_.column(k); }
  std::vector<Vector> basis_vectors() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Canonical representative of v modulo this subspace: v minus the
  /// combination of basis vectors that clears every pivot coordinate.
  Vector reduce(std::span<const Rational> v) const;

  bool contains(std::span<const Rational> v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_;
  ExactMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Throw Error(kDimensionMismatch) when ambient dimensions differ.
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& a, std::span<const Rational> v);

/// Image of a subspace under a linear map given as a matrix.
Subspace image(const ExactMatrix& map, const Subspace& source);

}  // namespace hypcheck
