#include <gtest/gtest.h>

#include "hypcheck/error.hpp"
#include "hypcheck/lineworld.hpp"

using namespace hypcheck;

namespace {

ProjPoint random_point(Rng& rng, std::size_t nvars) {
  Vector v(nvars);
  for (auto& x : v) x = sample_nonzero_rational(rng, 40);
  return ProjPoint(v);
}

HomogPoly random_poly(Rng& rng, std::size_t nvars, unsigned degree) {
  HomogPoly p(nvars, degree);
  for (const Monomial& m : all_monomials(nvars, degree)) {
    if (rng.uniform(0, 2) == 0) p.add_term(m, sample_rational(rng, 20));
  }
  return p;
}

// (b s - a t) vanishes at (s : t) = (a : b).
BinaryForm vanishing_at(const Rational& a, const Rational& b) { return BinaryForm(Vector{b, -a}); }

BinaryForm power(const BinaryForm& f, unsigned e) {
  BinaryForm out(Vector{1});
  for (unsigned k = 0; k < e; ++k) out = out * f;
  return out;
}

}  // namespace

TEST(BinaryForm, ArithmeticAndEvaluation) {
  const BinaryForm f(Vector{1, 2, 3});  // s^2 + 2 s t + 3 t^2
  EXPECT_EQ(f.degree(), 2u);
  EXPECT_EQ(f.evaluate(2, 1), 4 + 4 + 3);
  const BinaryForm g(Vector{0, 1});  // t
  EXPECT_EQ(f * g, BinaryForm(Vector{0, 1, 2, 3}));
  EXPECT_EQ((f * g).evaluate(2, 5), f.evaluate(2, 5) * g.evaluate(2, 5));
  EXPECT_EQ(BinaryForm::monomial(4, 1, 7), BinaryForm(Vector{0, 7, 0, 0, 0}));
  EXPECT_THROW(f + g, Error);
  EXPECT_THROW(BinaryForm::monomial(2, 3), Error);
  EXPECT_EQ(format_binary(f), "s^2+2*s*t+3*t^2");
  EXPECT_EQ(format_binary(BinaryForm(Vector{0, -1, 0})), "-s*t");
  EXPECT_EQ(format_binary(BinaryForm(2)), "0");
}

TEST(BinaryForm, Multiplicities) {
  const BinaryForm f = BinaryForm::monomial(6, 2);  // s^4 t^2
  EXPECT_EQ(f.multiplicity_at_t_zero(), 2u);
  EXPECT_EQ(f.multiplicity_at_s_zero(), 4u);
  EXPECT_EQ(BinaryForm(3).multiplicity_at_t_zero(), 4u);
}

TEST(BinaryForm, DistinctRootsAgainstConstruction) {
  Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    // Up to four distinct finite roots plus optional roots at s = 0 and t = 0.
    std::vector<Rational> ys;
    BinaryForm f(Vector{sample_nonzero_rational(rng, 9)});
    const int finite = static_cast<int>(rng.uniform(0, 4));
    for (int k = 0; k < finite; ++k) {
      Rational y;
      do y = sample_nonzero_rational(rng, 30);
      while (std::find(ys.begin(), ys.end(), y) != ys.end());
      ys.push_back(y);
      f = f * power(vanishing_at(1, y), 1 + static_cast<unsigned>(rng.uniform(0, 2)));
    }
    unsigned expected = finite;
    if (rng.uniform(0, 1)) {
      f = f * power(BinaryForm(Vector{1, 0}), 1 + static_cast<unsigned>(rng.uniform(0, 2)));  // s
      ++expected;
    }
    if (rng.uniform(0, 1)) {
      f = f * power(BinaryForm(Vector{0, 1}), 1 + static_cast<unsigned>(rng.uniform(0, 2)));  // t
      ++expected;
    }
    EXPECT_EQ(distinct_roots(f), expected) << format_binary(f);
  }
  EXPECT_EQ(distinct_roots(BinaryForm::monomial(6, 3)), 2u);
  EXPECT_EQ(distinct_roots(BinaryForm(Vector{5})), 0u);
  EXPECT_THROW(distinct_roots(BinaryForm(3)), Error);
}

TEST(BinaryForm, Gcd) {
  // (y - 1)(y + 2) and (y - 1)(y - 3): gcd y - 1.
  EXPECT_EQ(poly_gcd(Vector{-2, 1, 1}, Vector{3, -4, 1}), (Vector{-1, 1}));
  EXPECT_EQ(poly_gcd(Vector{1, 1}, Vector{0}), (Vector{1, 1}));
  EXPECT_EQ(poly_gcd(Vector{2, 4}, Vector{3}), (Vector{1}));
}

TEST(Line, Validation) {
  const ProjPoint p(Vector{1, 2, 3});
  EXPECT_THROW(Line(p, ProjPoint(Vector{2, 4, 6})), Error);
  EXPECT_THROW(Line(p, ProjPoint(Vector{1, 0})), Error);
  const Line l(p, ProjPoint(Vector{0, 1, 0}));
  EXPECT_EQ(l.coordinate(1), BinaryForm(Vector{2, 1}));
  EXPECT_THROW(ProjPoint(Vector{0, 0, 0}), Error);
  EXPECT_EQ(ProjPoint(Vector{0, 2, 4}), ProjPoint(Vector{0, 1, 2}));
  EXPECT_TRUE(ProjPoint(Vector{0, 3, 0}).is_coordinate_point());
  EXPECT_FALSE(ProjPoint(Vector{1, 3, 0}).is_coordinate_point());
}

TEST(Classify, Examples) {
  // Generic: every choice of n + 1 coordinates still separates the points.
  Rng rng(2);
  EXPECT_EQ(classify(LengthTwoScheme(random_point(rng, 4), random_point(rng, 4))).tag, SchemeTag::kGeneric);

  // (a1, 1, c, 0) and (a2, 1, c, 0): only x_0 separates, x_3 vanishes.
  const LengthTwoScheme special(ProjPoint(Vector{2, 1, 5, 0}), ProjPoint(Vector{7, 1, 5, 0}));
  const SchemeClass sc = classify(special);
  EXPECT_EQ(sc.tag, SchemeTag::kSpecial);
  EXPECT_EQ(sc.a, 2u);
  EXPECT_EQ(sc.vanishing, (std::vector<std::size_t>{3}));
  EXPECT_EQ(sc.normalization, (std::vector<std::size_t>{0, 1, 2, 3}));

  // Coordinate line through e_0 and e_1.
  const LengthTwoScheme very(ProjPoint(Vector{1, 0, 0, 0}), ProjPoint(Vector{0, 1, 0, 0}));
  const SchemeClass vc = classify(very);
  EXPECT_EQ(vc.tag, SchemeTag::kVerySpecial);
  EXPECT_EQ(vc.vanishing, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(to_string(vc.tag), "very-special");

  // Degenerate coordinate not first: the normalization moves it to x_0.
  const LengthTwoScheme moved(ProjPoint(Vector{0, 1, 2, 3}), ProjPoint(Vector{0, 1, 2, 8}));
  const SchemeClass mc = classify(moved);
  EXPECT_EQ(mc.tag, SchemeTag::kSpecial);
  EXPECT_EQ(mc.normalization, (std::vector<std::size_t>{3, 1, 2, 0}));
  const LengthTwoScheme normalized(permute_point(moved.p1(), mc.normalization),
                                   permute_point(moved.p2(), mc.normalization));
  EXPECT_EQ(classify(normalized).normalization, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Classify, InvariantUnderSwapAndScale) {
  Rng rng(3);
  const std::vector<LengthTwoScheme> schemes{
      LengthTwoScheme(random_point(rng, 5), random_point(rng, 5)),
      LengthTwoScheme(ProjPoint(Vector{2, 1, 5, 3, 0}), ProjPoint(Vector{7, 1, 5, 3, 0})),
      LengthTwoScheme(ProjPoint(Vector{1, 4, 0, 0, 0}), ProjPoint(Vector{3, 4, 0, 0, 0}))};
  for (const LengthTwoScheme& z : schemes) {
    const SchemeClass c = classify(z);
    const SchemeClass swapped = classify(LengthTwoScheme(z.p2(), z.p1()));
    Vector scaled = z.p1().coords();
    for (auto& x : scaled) x *= -7;
    const SchemeClass rescaled = classify(LengthTwoScheme(ProjPoint(scaled), z.p2()));
    EXPECT_EQ(c.tag, swapped.tag);
    EXPECT_EQ(c.tag, rescaled.tag);
    EXPECT_EQ(c.vanishing, swapped.vanishing);
    EXPECT_EQ(c.a, swapped.a);
  }
}

TEST(Restrict, RingHomomorphismAndEvaluation) {
  Rng rng(4);
  for (int k = 0; k < 15; ++k) {
    const Line line(random_point(rng, 4), random_point(rng, 4));
    const HomogPoly f = random_poly(rng, 4, 3), g = random_poly(rng, 4, 3), h = random_poly(rng, 4, 2);
    EXPECT_EQ(restrict_poly(f + g, line), restrict_poly(f, line) + restrict_poly(g, line));
    EXPECT_EQ(restrict_poly(f * h, line), restrict_poly(f, line) * restrict_poly(h, line));
    const Rational s = sample_rational(rng, 9), t = sample_rational(rng, 9);
    Vector x(4);
    for (std::size_t i = 0; i < 4; ++i) x[i] = s * line.p()[i] + t * line.q()[i];
    EXPECT_EQ(restrict_poly(f, line).evaluate(s, t), f.evaluate(x));
  }
}

TEST(Restrict, Sections) {
  Rng rng(5);
  const ShapePtr shape = make_shape(1, 4);
  const DeformationPoint b = sample_b(shape, rng);
  const Line line(random_point(rng, 3), random_point(rng, 3));
  const EulerSection p = EulerSection::field(HomogPoly::variable(3, 0) * HomogPoly::variable(3, 2), 1);
  const auto r = restrict_section(p, line);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_TRUE(r[0].is_zero());
  EXPECT_EQ(r[1], restrict_poly(p[1], line));
  EXPECT_EQ(flatten(r).size(), 9u);

  std::vector<HomogPoly> base(shape->size(), HomogPoly(3, 1));
  base[0] = HomogPoly::variable(3, 2);
  const auto mixed = restrict_section(MixedTangentSection(p, base), line, b);
  ASSERT_EQ(mixed.size(), 4u);
  EXPECT_EQ(mixed[3], restrict_poly(HomogPoly::variable(3, 2) * HomogPoly::monomial(shape->jd()[0]), line));
  EXPECT_EQ(restrict_section(MixedTangentSection::from_p(p, shape->size()), line, b).size(), 3u);
}

TEST(Restrict, ModuloF) {
  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    const ShapePtr shape = make_shape(2, 5);
    const HomogPoly F = f_poly(sample_b(shape, rng));
    const Line line(random_point(rng, 4), ProjPoint(Vector{0, 1, sample_rational(rng, 5), 0}));
    const HomogPoly p = random_poly(rng, 4, 7);
    const BinaryForm r = restrict_mod_F(p, line, F);
    const BinaryForm xf = restrict_poly(F, line);
    const unsigned j0 = xf.multiplicity_at_t_zero();
    for (unsigned j = j0; j <= j0 + 2; ++j) EXPECT_EQ(r[j], 0);
    // restrict(p) - r is xi(F) times a quadratic form.
    std::vector<Vector> cols;
    for (unsigned e = 0; e <= 2; ++e) cols.push_back((xf * BinaryForm::monomial(2, e)).coeffs());
    const BinaryForm diff = restrict_poly(p, line) - r;
    EXPECT_TRUE(solve(ExactMatrix::from_columns(cols, 8), diff.coeffs()).has_value());
  }
  const Line in_x(ProjPoint(Vector{1, -1, 0, 0}), ProjPoint(Vector{0, 0, 1, -1}));
  EXPECT_THROW(restrict_mod_F(HomogPoly(4, 7), in_x, fermat(2, 5)), Error);
  EXPECT_THROW(restrict_mod_F(HomogPoly(4, 3), in_x, fermat(2, 5)), Error);
}

TEST(Ideals, LinearFormsThroughPoints) {
  Rng rng(7);
  const LengthTwoScheme z(random_point(rng, 5), random_point(rng, 5));
  const Subspace iz = iz_linear(z);
  EXPECT_EQ(iz.dim(), 3u);
  for (const Vector& l : iz.basis_vectors()) {
    EXPECT_EQ(linear_form(l).evaluate(z.p1().coords()), 0);
    EXPECT_EQ(linear_form(l).evaluate(z.p2().coords()), 0);
  }
  EXPECT_EQ(ip_linear(z.p1()).dim(), 4u);
  EXPECT_TRUE(ip_linear(z.p1()).contains(iz));
}
