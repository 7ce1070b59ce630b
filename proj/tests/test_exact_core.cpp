#include <gtest/gtest.h>

#include <set>

#include "hypcheck/error.hpp"
#include "hypcheck/matrix.hpp"
#include "hypcheck/rational.hpp"
#include "hypcheck/rng.hpp"

using namespace hypcheck;

namespace {

// Textbook Gaussian elimination over Q, kept apart from the library code.
std::size_t naive_rank(std::vector<Vector> a, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<Vector> random_rows(Rng& rng, std::size_t rows, std::size_t cols, unsigned long bound = 20) {
  std::vector<Vector> out(rows, Vector(cols));
  for (auto& row : out) {
    for (auto& x : row) x = sample_rational(rng, bound);
  }
  return out;
}

// rows x cols with rank at most r: product of random rows x r and r x cols.
ExactMatrix low_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  const ExactMatrix a = ExactMatrix::from_rows(random_rows(rng, rows, r), r);
  const ExactMatrix b = ExactMatrix::from_rows(random_rows(rng, r, cols), cols);
  return a * b;
}

std::vector<Vector> rows_of(const ExactMatrix& m) {
  std::vector<Vector> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

}  // namespace

TEST(Rational, FormatParseRoundTrip) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const Rational q = sample_rational(rng, 100000);
    EXPECT_EQ(parse_rational(format_rational(q)), q);
  }
  EXPECT_EQ(format_rational(Rational(3)), "3/1");
  EXPECT_EQ(format_rational(Rational(-1, 2)), "-1/2");
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
}

TEST(Rational, ParseRejectsMalformed) {
  for (const char* bad : {"", "1/0", "abc", "1/", "/2", "1.5", "--1"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << bad;
    }
  }
}

TEST(Rational, SamplingRespectsBound) {
  Rng rng(11);
  for (int k = 0; k < 500; ++k) {
    const Rational q = sample_nonzero_rational(rng, 7);
    EXPECT_NE(q, 0);
    EXPECT_LE(abs(q.get_num()), 7);
    EXPECT_LE(q.get_den(), 7);
  }
}

TEST(Rng, DeterministicAndSplittable) {
  Rng a(42), b(42);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(a.next(), b.next());
  Rng c(42);
  Rng child = c.split();
  Rng d(42);
  d.next();
  EXPECT_EQ(c.next(), d.next());  // split consumes exactly one draw
  EXPECT_NE(child.next(), Rng(42).next());

  const Rng base(9);
  Rng f1 = base.fork(1), f1b = base.fork(1), f2 = base.fork(2);
  EXPECT_EQ(f1.next(), f1b.next());
  EXPECT_NE(Rng(9).fork(1).next(), f2.next());
  Rng untouched(9);
  EXPECT_EQ(Rng(base).next(), untouched.next());
}

TEST(Rng, UniformCoversRange) {
  Rng rng(5);
  std::set<std::int64_t> seen;
  for (int k = 0; k < 2000; ++k) {
    const auto x = rng.uniform(-3, 3);
    ASSERT_GE(x, -3);
    ASSERT_LE(x, 3);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Matrix, RankMatchesNaiveElimination) {
  Rng rng(1);
  for (int k = 0; k < 60; ++k) {
    const std::size_t rows = 1 + rng.uniform(0, 7), cols = 1 + rng.uniform(0, 7);
    const std::size_t r = rng.uniform(0, std::min(rows, cols));
    const ExactMatrix m = low_rank(rng, rows, cols, r);
    EXPECT_EQ(rank(m), naive_rank(rows_of(m), cols));
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(Matrix, FractionFreeAndModularRankAgree) {
  // 100 random matrices up to 60 x 60 with planted rank deficiency.
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const std::size_t rows = 1 + rng.uniform(0, 59), cols = 1 + rng.uniform(0, 59);
    const std::size_t r = rng.uniform(0, std::min(rows, cols));
    const ExactMatrix m = low_rank(rng, rows, cols, r);
    const std::size_t exact = rank(m);
    EXPECT_LE(exact, r);
    EXPECT_EQ(modular_rank(m, 2147483647u), exact);
    EXPECT_EQ(modular_rank(m, 1000000007u), exact);
  }
}

TEST(Matrix, ModularRankNeverExceedsExact) {
  // Mod 3 a rank-2 matrix can drop rank but never gain it.
  const ExactMatrix m = ExactMatrix::from_rows({{1, 1}, {1, 4}}, 2);
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(modular_rank(m, 3), 1u);
}

TEST(Matrix, ReducedRowEchelonShape) {
  Rng rng(4);
  for (int k = 0; k < 30; ++k) {
    const ExactMatrix m = low_rank(rng, 6, 8, 1 + k % 5);
    const RowEchelon e = reduced_row_echelon(m);
    ASSERT_EQ(e.form.rows(), e.pivots.size());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (r > 0) EXPECT_LT(e.pivots[r - 1], e.pivots[r]);
      for (std::size_t i = 0; i < e.form.rows(); ++i) {
        EXPECT_EQ(e.form(i, e.pivots[r]), i == r ? 1 : 0);
      }
      for (std::size_t c = 0; c < e.pivots[r]; ++c) EXPECT_EQ(e.form(r, c), 0);
    }
    // Same row space as the input.
    EXPECT_EQ(Subspace::span(8, rows_of(e.form)), Subspace::span(8, rows_of(m)));
  }
}

TEST(Matrix, KernelIsKernel) {
  Rng rng(6);
  for (int k = 0; k < 40; ++k) {
    const std::size_t rows = 1 + rng.uniform(0, 8), cols = 1 + rng.uniform(0, 8);
    const ExactMatrix m = low_rank(rng, rows, cols, rng.uniform(0, std::min(rows, cols)));
    const Subspace ker = kernel_basis(m);
    EXPECT_EQ(ker.dim() + rank(m), cols);
    for (const Vector& v : ker.basis_vectors()) EXPECT_TRUE(is_zero(m * v));
  }
}

TEST(Matrix, SolveConsistentAndInconsistent) {
  Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    const ExactMatrix m = low_rank(rng, 5, 7, 3);
    Vector x(7);
    for (auto& c : x) c = sample_rational(rng, 50);
    const Vector v = m * x;
    const auto sol = solve(m, v);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m * *sol, v);
  }
  const ExactMatrix m = ExactMatrix::from_rows({{1, 2}, {2, 4}}, 2);
  EXPECT_FALSE(solve(m, Vector{1, 3}).has_value());
}

TEST(Subspace, CanonicalUnderBasisChange) {
  Rng rng(10);
  for (int k = 0; k < 30; ++k) {
    const auto gens = random_rows(rng, 4, 9);
    std::vector<Vector> mixed;
    for (int j = 0; j < 6; ++j) {
      Vector v(9);
      for (const Vector& g : gens) {
        const Rational c = sample_rational(rng, 9);
        for (std::size_t i = 0; i < 9; ++i) v[i] += c * g[i];
      }
      mixed.push_back(v);
    }
    const Subspace a = Subspace::span(9, gens);
    const Subspace b = Subspace::span(9, mixed);
    EXPECT_EQ(a.dim(), 4u);
    EXPECT_TRUE(a.contains(b));
    if (b.dim() == 4) EXPECT_EQ(a, b);
  }
}

TEST(Subspace, SumIntersectionDimensionFormula) {
  Rng rng(12);
  for (int k = 0; k < 30; ++k) {
    // Shared part forces a nontrivial intersection.
    const auto shared = random_rows(rng, 2, 8);
    auto ga = random_rows(rng, 2, 8), gb = random_rows(rng, 3, 8);
    ga.insert(ga.end(), shared.begin(), shared.end());
    gb.insert(gb.end(), shared.begin(), shared.end());
    const Subspace a = Subspace::span(8, ga), b = Subspace::span(8, gb);
    const Subspace s = subspace_sum(a, b), i = subspace_intersect(a, b);
    EXPECT_EQ(s.dim() + i.dim(), a.dim() + b.dim());
    EXPECT_GE(i.dim(), 2u);
    EXPECT_TRUE(subspace_contains(a, i));
    EXPECT_TRUE(subspace_contains(b, i));
    EXPECT_TRUE(subspace_contains(s, a));
    for (const Vector& v : shared) EXPECT_TRUE(i.contains(v));
  }
}

TEST(Subspace, ReduceIsCanonicalRepresentative) {
  Rng rng(13);
  const Subspace s = Subspace::span(6, random_rows(rng, 3, 6));
  const Vector v = random_rows(rng, 1, 6)[0];
  Vector w = v;
  for (const Vector& b : s.basis_vectors()) {
    for (std::size_t i = 0; i < 6; ++i) w[i] += 5 * b[i];
  }
  EXPECT_EQ(s.reduce(v), s.reduce(w));
  EXPECT_TRUE(is_zero(s.reduce(s.basis_vector(1))));
  for (std::size_t p : s.pivots()) EXPECT_EQ(s.reduce(v)[p], 0);
}

TEST(Subspace, ImageAndMismatch) {
  const ExactMatrix proj = ExactMatrix::from_rows({{1, 0, 0}, {0, 1, 0}}, 3);
  const Subspace src = Subspace::span(3, {{1, 1, 1}, {0, 0, 1}});
  const Subspace img = image(proj, src);
  EXPECT_EQ(img.dim(), 1u);
  EXPECT_TRUE(img.contains(Vector{2, 2}));
  EXPECT_THROW(subspace_sum(Subspace(3), Subspace(4)), Error);
  EXPECT_EQ(Subspace::full(3).dim(), 3u);
  EXPECT_EQ(Subspace(3).dim(), 0u);
}
