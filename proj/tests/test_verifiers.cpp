#include <gtest/gtest.h>

#include <set>

#include "hypcheck/error.hpp"
#include "hypcheck/verifiers.hpp"

using namespace hypcheck;

namespace {

long long dim_of(const LemmaReport& r, const std::string& name) {
  for (const auto& [key, value] : r.dims) {
    if (key == name) return value;
  }
  ADD_FAILURE() << "missing dim " << name << " in " << r.lemma;
  return -1;
}

std::string without_elapsed(const LemmaReport& r) {
  auto j = to_json(r);
  j.erase("elapsed_ms");
  return j.dump();
}

LengthTwoScheme random_scheme(Rng& rng, std::size_t nvars) {
  Vector a(nvars), b(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    a[i] = sample_nonzero_rational(rng, 50);
    b[i] = sample_nonzero_rational(rng, 50);
  }
  return LengthTwoScheme(ProjPoint(a), ProjPoint(b));
}

}  // namespace

TEST(Registry, FixedOrder) {
  const std::vector<std::string> expected{"w-basis",    "kernel-generic", "kernel-special", "point-ideal",
                                          "xi-special", "xi-generic",     "systems",        "secant",
                                          "incidence",  "tangency"};
  std::vector<std::string> ids;
  for (const auto& e : registry()) ids.push_back(e.id);
  EXPECT_EQ(ids, expected);
  EXPECT_EQ(&registry(), &registry());
}

TEST(Registry, EveryLemmaPassesAtTwoSix) {
  const VerifyParams params{2, 6, 0, 5};
  for (const auto& entry : registry()) {
    const LemmaReport r = run_lemma(entry, params, 1);
    EXPECT_EQ(r.verdict, Verdict::kPass) << entry.id << " " << to_json(r).dump();
    EXPECT_EQ(r.lemma, entry.id);
    EXPECT_EQ(r.seed, 1u);
  }
}

TEST(Registry, DeterministicPerSeed) {
  const VerifyParams params{2, 6, 0, 2};
  for (const auto& entry : registry()) {
    EXPECT_EQ(without_elapsed(run_lemma(entry, params, 3)), without_elapsed(run_lemma(entry, params, 3)))
        << entry.id;
  }
  // Different seeds draw different instances.
  const auto& w = registry()[0];
  EXPECT_NE(to_json(run_lemma(w, params, 3))["params"], nullptr);
}

TEST(Registry, InvalidParametersPropagate) {
  const VerifyParams params{2, 3, 0, 5};
  try {
    run_lemma(registry()[0], params, 0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(run_lemma(registry()[1], VerifyParams{2, 6, 0, 0}, 0), Error);
}

TEST(Report, JsonKeyOrder) {
  LemmaReport r;
  r.lemma = "kernel-special";
  r.n = 2;
  r.d = 6;
  r.seed = 7;
  r.dims = {{"lhs", 61}, {"rhs", 61}};
  r.elapsed_ms = 412.7;
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"lemma", "n", "d", "seed", "verdict", "dims", "witness", "params",
                                            "elapsed_ms"}));
  EXPECT_EQ(j.dump(),
            R"({"lemma":"kernel-special","n":2,"d":6,"seed":7,"verdict":"PASS","dims":{"lhs":61,"rhs":61},)"
            R"("witness":null,"params":{},"elapsed_ms":412})");
}

TEST(Report, AggregateProtocol) {
  const auto outcome = [](bool holds, bool skipped = false) {
    TrialOutcome t;
    t.holds = holds;
    t.skipped = skipped;
    t.dims = {{"x", holds ? 1 : 0}};
    if (!holds) t.witness = {{"reason", "no"}};
    return t;
  };
  const auto verdict = [](const std::vector<TrialOutcome>& ts) {
    LemmaReport r;
    aggregate(ts, r);
    return r;
  };
  EXPECT_EQ(verdict({outcome(true), outcome(true)}).verdict, Verdict::kPass);
  const LemmaReport all_fail = verdict({outcome(false), outcome(false)});
  EXPECT_EQ(all_fail.verdict, Verdict::kFail);
  ASSERT_TRUE(all_fail.witness.has_value());
  const LemmaReport mixed = verdict({outcome(true), outcome(false), outcome(true)});
  EXPECT_EQ(mixed.verdict, Verdict::kIndeterminate);
  EXPECT_EQ(mixed.dims, (Dims{{"x", 0}}));
  EXPECT_EQ(verdict({outcome(true, true)}).verdict, Verdict::kSkipped);
  EXPECT_EQ(verdict({outcome(true, true), outcome(true)}).verdict, Verdict::kPass);
  EXPECT_EQ(to_string(Verdict::kIndeterminate), "INDETERMINATE");
}

TEST(Checks, WBasisExamples) {
  Rng rng(1);
  for (auto [n, d, size] : {std::tuple{2u, 6u, 24}, {1u, 4u, 9}}) {
    const TrialOutcome t = check_w_basis(sample_b(make_shape(n, d), rng));
    EXPECT_TRUE(t.holds) << t.witness.dump();
    EXPECT_EQ(t.dims[0].second, size);
  }
  // At the Fermat point the omegas are monomial fields and still qualify.
  EXPECT_TRUE(check_w_basis(DeformationPoint(make_shape(2, 6))).holds);
}

TEST(Checks, KernelSchemesAreRouted) {
  const FamilyShape shape(2, 6);
  const LengthTwoScheme special(ProjPoint(Vector{2, 1, 5, 0}), ProjPoint(Vector{7, 1, 5, 0}));
  EXPECT_TRUE(check_kernel_generic(shape, special).skipped);
  const TrialOutcome s = check_kernel_special(shape, special);
  EXPECT_TRUE(s.holds) << s.witness.dump();
  EXPECT_EQ(s.dims[1].second, s.dims[2].second);

  // Special but not normalized: x_3 is the separating coordinate.
  const LengthTwoScheme moved(ProjPoint(Vector{0, 1, 2, 3}), ProjPoint(Vector{0, 1, 2, 8}));
  EXPECT_TRUE(check_kernel_special(shape, moved).skipped);

  Rng rng(2);
  const TrialOutcome g = check_kernel_generic(shape, random_scheme(rng, 4));
  EXPECT_TRUE(g.holds);
  EXPECT_EQ(g.dims[3], (std::pair<std::string, long long>{"quotient", 7}));
}

TEST(Checks, PointIdeal) {
  const ProjPoint p(Vector{1, 2, 3});
  const ProjPoint q(Vector{1, 5, -1});
  const TrialOutcome t = check_point_ideal(1, 4, p, q);
  EXPECT_TRUE(t.holds) << t.witness.dump();
  for (std::size_t i = 0; i < 3; ++i) {
    Vector e(3);
    e[i] = 1;
    try {
      check_point_ideal(1, 4, ProjPoint(e), q);
      ADD_FAILURE();
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), ErrorCode::kCoordinatePoint);
    }
  }
  // Points on a coordinate hyperplane are allowed.
  EXPECT_TRUE(check_point_ideal(1, 4, ProjPoint(Vector{1, 1, 0}), q).holds);
  EXPECT_THROW(verify_point_ideal(VerifyParams{2, 6, 0, 1}, ProjPoint(Vector{0, 0, 1, 0}), Rng(0)), Error);
  EXPECT_EQ(verify_point_ideal(VerifyParams{2, 6, 0, 2}, ProjPoint(Vector{1, 1, 1, 1}), Rng(0)).verdict,
            Verdict::kPass);
}

TEST(Checks, XiRanks) {
  for (unsigned n : {2u, 3u}) {
    const VerifyParams params{n, 2 * n + 2, 0, 2};
    const LemmaReport special = verify_xi_special(params, Rng(4));
    EXPECT_EQ(special.verdict, Verdict::kPass);
    EXPECT_EQ(dim_of(special, "special_rank_mod_alpha"), 3 * n + 4);
    EXPECT_EQ(dim_of(special, "very_special_w_rank"), 3 * n + 2);
    const LemmaReport generic = verify_xi_generic(params, Rng(4));
    EXPECT_EQ(generic.verdict, Verdict::kPass);
    EXPECT_EQ(dim_of(generic, "random_rank"), 3 * (n + 2));
  }
  EXPECT_EQ(verify_xi_generic(VerifyParams{1, 4, 0, 2}, Rng(0)).verdict, Verdict::kSkipped);
}

TEST(Systems, TwoByTwoDeterminantOracle) {
  Rng rng(5);
  for (int k = 0; k < 40; ++k) {
    SystemCoefficients c = sample_system_coefficients(rng);
    if (k % 4 == 0) c.c[{2, 0, 0}] = 1 / c(0, 2, 2);
    const Rational a = sample_nonzero_rational(rng, 100);
    const ExactMatrix m = two_unknown_system(c, a);
    const Rational det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    EXPECT_EQ(det, a * a * (c(0, 2, 2) * c(2, 0, 0) - 1));
    EXPECT_EQ(rank(m) < 2, c(0, 2, 2) * c(2, 0, 0) == 1);
    EXPECT_EQ(c(1, 0, 2), c(1, 2, 0));
  }
}

TEST(Systems, NineBySixShapeAndKernel) {
  Rng rng(6);
  for (int k = 0; k < 20; ++k) {
    const SystemCoefficients c = sample_system_coefficients(rng);
    const ExactMatrix m = nine_by_six_system(c);
    EXPECT_EQ(m.rows(), 9u);
    EXPECT_EQ(m.cols(), 6u);
    EXPECT_EQ(kernel_basis(m).dim(), 0u);
    const ExactMatrix minor = two_by_two_minor(c);
    EXPECT_EQ(minor(0, 0), c(1, 0, 2));
    EXPECT_EQ(minor(1, 1), c(0, 1, 3));
  }
  // At c = 0 the six x_i^2 d/dx_k rows are an identity block.
  SystemCoefficients zero = sample_system_coefficients(rng);
  for (auto& [key, value] : zero.c) value = 0;
  const ExactMatrix z = nine_by_six_system(zero);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_TRUE(is_zero(Vector(z.row(r).begin(), z.row(r).end())));
  EXPECT_EQ(rank(z), 6u);
}

TEST(Secant, RandomConfigurationsAreNotWellDefined) {
  const ShapePtr shape = make_shape(2, 6);
  Rng rng(7);
  for (int k = 0; k < 4; ++k) {
    const auto [b, z] = random_secant(shape, rng);
    const SecantAnalysis s = secant_obstruction(b, z);
    EXPECT_GE(s.distinct_roots, 3u);
    EXPECT_FALSE(s.well_defined);
    EXPECT_TRUE(s.conditions_agree());
    EXPECT_EQ(s.offset, 1);
    EXPECT_EQ(s.ker_rho, 2u);
  }
}

TEST(Secant, TwoPointLinesAreWellDefined) {
  const ShapePtr shape = make_shape(2, 6);
  Rng rng(8);
  for (unsigned m = 1; m < 6; ++m) {
    const auto [b, z] = two_point_line(shape, m, rng);
    const SecantAnalysis s = secant_obstruction(b, z);
    EXPECT_TRUE(s.monomial);
    EXPECT_EQ(s.xi_f.multiplicity_at_t_zero(), m);
    EXPECT_TRUE(s.well_defined);
    EXPECT_GT(s.intersection, 0u);
    EXPECT_TRUE(s.conditions_agree());
    EXPECT_EQ(s.distinct_roots, 2u);
  }
}

TEST(Secant, Errors) {
  const ShapePtr shape = make_shape(2, 6);
  Rng rng(9);
  const LengthTwoScheme special(ProjPoint(Vector{2, 1, 5, 0}), ProjPoint(Vector{7, 1, 5, 0}));
  try {
    secant_obstruction(sample_b(shape, rng), special);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonGenericScheme);
  }
  const auto [b, z] = random_secant(shape, rng);
  EXPECT_THROW(secant_obstruction(sample_b(shape, rng), z), Error);
  EXPECT_EQ(verify_secant(VerifyParams{2, 7, 0, 1}, Rng(0)).verdict, Verdict::kSkipped);
}

TEST(Incidence, DimensionTable) {
  for (unsigned n = 1; n <= 6; ++n) {
    for (unsigned d = 4; d <= 2 * n + 4; ++d) {
      for (unsigned m = 1; m < d; ++m) {
        EXPECT_EQ(incidence_dimension(n, d, m), 2LL * n + 2 - d);
      }
    }
    EXPECT_THROW(incidence_dimension(n, 2 * n + 2, 0), Error);
    EXPECT_THROW(incidence_dimension(n, 2 * n + 2, 2 * n + 2), Error);
  }
}

TEST(Incidence, FiberCodimensionOnGenericLine) {
  Rng rng(10);
  const FamilyShape shape(2, 6);
  const LengthTwoScheme z = random_scheme(rng, 4);
  for (unsigned m = 1; m < 6; ++m) EXPECT_EQ(incidence_fiber_codim(shape, z.line(), m), 6u);
}

TEST(Tangency, InstancesAndSymmetry) {
  Rng rng(11);
  const Line line = coordinate_line(2);
  const HomogPoly F = tangency_instance(2, 6, 3, false, rng);
  const TangencyResult r = tangency_deformation_dim(F, line, 3);
  EXPECT_EQ(r.dimension, 0u);
  EXPECT_EQ(r.unknowns, 4u);
  const HomogPoly G0 = tangency_instance(2, 6, 3, true, rng);
  EXPECT_EQ(G0, parse_poly("x0^3*x1^3", 4, 6));
  EXPECT_GT(tangency_deformation_dim(G0, line, 3).dimension, 0u);

  // Swapping x0 and x1 exchanges m with d - m.
  for (unsigned m = 1; m < 6; ++m) {
    const HomogPoly H = tangency_instance(2, 6, m, false, rng);
    const HomogPoly swapped = H.permute_variables({1, 0, 2, 3});
    EXPECT_EQ(tangency_deformation_dim(H, line, m).dimension,
              tangency_deformation_dim(swapped, line, 6 - m).dimension);
  }
  // Below the balanced degree the expected dimension is positive.
  EXPECT_EQ(tangency_deformation_dim(tangency_instance(3, 6, 3, false, rng), coordinate_line(3), 3).dimension,
            2u);
  try {
    tangency_deformation_dim(fermat(2, 6), line, 3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInWm);
  }
}
