#include "hypcheck/verifiers.hpp"

#include <algorithm>
#include <chrono>

#include "hypcheck/error.hpp"

namespace hypcheck {

using nlohmann::ordered_json;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kIndeterminate: return "INDETERMINATE";
    case Verdict::kInfeasible: return "INFEASIBLE";
    case Verdict::kSkipped: return "SKIPPED";
  }
  return "UNKNOWN";
}

ordered_json to_json(const LemmaReport& r) {
  ordered_json out;
  out["lemma"] = r.lemma;
  out["n"] = r.n;
  out["d"] = r.d;
  out["seed"] = r.seed;
  out["verdict"] = std::string(to_string(r.verdict));
  ordered_json dims = ordered_json::object();
  for (const auto& [name, value] : r.dims) dims[name] = value;
  out["dims"] = std::move(dims);
  out["witness"] = r.witness ? *r.witness : ordered_json(nullptr);
  out["params"] = r.params;
  out["elapsed_ms"] = static_cast<long long>(r.elapsed_ms);
  return out;
}

void aggregate(const std::vector<TrialOutcome>& trials, LemmaReport& report) {
  std::size_t held = 0, failed = 0, skipped = 0;
  const TrialOutcome* first_failure = nullptr;
  const TrialOutcome* first_run = nullptr;
  for (const TrialOutcome& t : trials) {
    if (t.skipped) {
      ++skipped;
      continue;
    }
    if (!first_run) first_run = &t;
    if (t.holds) {
      ++held;
    } else {
      ++failed;
      if (!first_failure) first_failure = &t;
    }
  }
  report.params["trials"] = trials.size();
  report.params["trials_held"] = held;
  if (skipped) report.params["trials_skipped"] = skipped;

  if (held + failed == 0) {
    report.verdict = Verdict::kSkipped;
    if (!trials.empty()) report.params["instance"] = trials.front().info;
    return;
  }
  const TrialOutcome& shown = first_failure ? *first_failure : *first_run;
  report.dims = shown.dims;
  report.params["instance"] = shown.info;
  if (failed == 0) {
    report.verdict = Verdict::kPass;
    return;
  }
  report.verdict = held == 0 ? Verdict::kFail : Verdict::kIndeterminate;
  report.witness = first_failure->witness;
}

namespace {

LemmaReport start(const char* id, const VerifyParams& params) {
  LemmaReport r;
  r.lemma = id;
  r.n = params.n;
  r.d = params.d;
  return r;
}

void check_shape(const VerifyParams& params) {
  if (params.n < 1 || params.d < 4) {
    throw Error(ErrorCode::kInvalidArgument, "verification needs n >= 1 and d >= 4");
  }
  if (params.trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be positive");
}

unsigned multiplicity(const VerifyParams& params) { return params.m == 0 ? params.n + 1 : params.m; }

Rational nonzero(Rng& rng) { return sample_nonzero_rational(rng, 1000); }

// (alpha1, 1, c_2, ..., c_a, 0, ..., 0) and (alpha2, 1, c_2, ..., c_a, 0, ...).
LengthTwoScheme special_scheme(std::size_t nvars, std::size_t a, Rng& rng) {
  for (;;) {
    const Rational a1 = sample_rational(rng, 1000);
    const Rational a2 = sample_rational(rng, 1000);
    if (a1 == a2) continue;
    Vector p1(nvars), p2(nvars);
    p1[0] = a1;
    p2[0] = a2;
    p1[1] = p2[1] = 1;
    for (std::size_t j = 2; j <= a; ++j) p1[j] = p2[j] = nonzero(rng);
    return LengthTwoScheme(ProjPoint(p1), ProjPoint(p2));
  }
}

LengthTwoScheme very_special_scheme(std::size_t nvars, Rng& rng) { return special_scheme(nvars, 1, rng); }

LengthTwoScheme random_generic(std::size_t nvars, Rng& rng) {
  for (;;) {
    Vector p1(nvars), p2(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
      p1[i] = nonzero(rng);
      p2[i] = nonzero(rng);
    }
    if (ProjPoint(p1) == ProjPoint(p2)) continue;
    LengthTwoScheme z{ProjPoint(p1), ProjPoint(p2)};
    if (classify(z).tag == SchemeTag::kGeneric) return z;
  }
}

// Both points of the form (u, v, w, 0, ..., 0) with every 2x2 minor of the
// first three columns nonzero.
LengthTwoScheme three_coordinate_scheme(std::size_t nvars, Rng& rng) {
  for (;;) {
    Vector p1(nvars), p2(nvars);
    for (std::size_t i = 0; i < 3; ++i) {
      p1[i] = nonzero(rng);
      p2[i] = nonzero(rng);
    }
    bool minors = true;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) minors = minors && p1[i] * p2[j] != p1[j] * p2[i];
    }
    if (minors) return LengthTwoScheme(ProjPoint(p1), ProjPoint(p2));
  }
}

// Points (u, v, a u, b v, 0, ..., 0) with shared a, b.
LengthTwoScheme paired_coordinate_scheme(std::size_t nvars, Rng& rng) {
  const Rational a = nonzero(rng);
  const Rational b = nonzero(rng);
  for (;;) {
    Vector p1(nvars), p2(nvars);
    p1[0] = nonzero(rng);
    p1[1] = nonzero(rng);
    p2[0] = nonzero(rng);
    p2[1] = nonzero(rng);
    if (p1[0] * p2[1] == p1[1] * p2[0]) continue;
    p1[2] = a * p1[0];
    p2[2] = a * p2[0];
    p1[3] = b * p1[1];
    p2[3] = b * p2[1];
    return LengthTwoScheme(ProjPoint(p1), ProjPoint(p2));
  }
}

void prefix_dims(TrialOutcome& into, const TrialOutcome& from, const std::string& prefix) {
  for (const auto& [name, value] : from.dims) into.dims.emplace_back(prefix + name, value);
}

// Merges sub-checks of one trial: holds iff all hold; witness of the first failure.
TrialOutcome combine(const std::vector<std::pair<std::string, TrialOutcome>>& parts) {
  TrialOutcome out;
  for (const auto& [prefix, part] : parts) {
    prefix_dims(out, part, prefix);
    for (const auto& [key, value] : part.info.items()) out.info[prefix + key] = value;
    if (!part.holds && out.holds) {
      out.holds = false;
      out.witness = part.witness;
      out.witness["check"] = prefix.empty() ? "main" : prefix.substr(0, prefix.size() - 1);
    }
  }
  return out;
}

}  // namespace

LemmaReport verify_w_basis(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("w-basis", params);
  const ShapePtr shape = make_shape(params.n, params.d);
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    trials.push_back(check_w_basis(sample_b(shape, trial)));
  }
  aggregate(trials, report);
  return report;
}

LemmaReport verify_kernel_generic(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("kernel-generic", params);
  const ShapePtr shape = make_shape(params.n, params.d);
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    const LengthTwoScheme z = random_generic(shape->nvars(), trial);
    sample_b_through(shape, {z.p1(), z.p2()}, trial);
    trials.push_back(check_kernel_generic(*shape, z));
  }
  aggregate(trials, report);
  return report;
}

LemmaReport verify_kernel_special(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("kernel-special", params);
  const ShapePtr shape = make_shape(params.n, params.d);
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    // a runs over 2 .. n+1 so every non-very-special shape is visited.
    const std::size_t a = 2 + k % params.n;
    const LengthTwoScheme z = special_scheme(shape->nvars(), a, trial);
    sample_b_through(shape, {z.p1(), z.p2()}, trial);
    trials.push_back(check_kernel_special(*shape, z));
  }
  aggregate(trials, report);
  return report;
}

LemmaReport verify_point_ideal(const VerifyParams& params, const ProjPoint& p, Rng rng) {
  check_shape(params);
  if (p.is_coordinate_point()) throw Error(ErrorCode::kCoordinatePoint, "the point is a coordinate point");
  LemmaReport report = start("point-ideal", params);
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    Vector q(params.n + 2);
    for (Rational& c : q) c = nonzero(trial);
    if (ProjPoint(q) == p) q[0] += 1;
    trials.push_back(check_point_ideal(params.n, params.d, p, ProjPoint(q)));
  }
  aggregate(trials, report);
  return report;
}

LemmaReport verify_point_ideal(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("point-ideal", params);
  const std::size_t nvars = params.n + 2;
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    Vector p(nvars, Rational(1));
    if (k > 0) {
      for (Rational& c : p) c = nonzero(trial);
    }
    Vector q(nvars);
    for (Rational& c : q) c = nonzero(trial);
    if (ProjPoint(q) == ProjPoint(p)) q[0] += 1;
    trials.push_back(check_point_ideal(params.n, params.d, ProjPoint(p), ProjPoint(q)));
  }
  aggregate(trials, report);

  // Coordinate points must be refused.
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < nvars; ++i) {
    Vector e(nvars), q(nvars, Rational(1));
    e[i] = 1;
    try {
      check_point_ideal(params.n, params.d, ProjPoint(e), ProjPoint(q));
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kCoordinatePoint) ++rejected;
    }
  }
  report.dims.emplace_back("coordinate_points_rejected", static_cast<long long>(rejected));
  if (rejected != nvars) {
    report.verdict = Verdict::kFail;
    report.witness = ordered_json{{"reason", "a coordinate point was accepted"}, {"rejected", rejected}};
  }
  return report;
}

LemmaReport verify_xi_special(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("xi-special", params);
  if (params.n < 2) {
    report.verdict = Verdict::kSkipped;
    report.params["reason"] = "needs n >= 2";
    return report;
  }
  const ShapePtr shape = make_shape(params.n, params.d);
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    const std::size_t a = 2 + k % params.n;
    const LengthTwoScheme special = special_scheme(shape->nvars(), a, trial);
    const LengthTwoScheme very = very_special_scheme(shape->nvars(), trial);
    // One general b carrying both schemes.
    const DeformationPoint b = sample_b_through(shape, {special.p1(), special.p2(), very.p1(), very.p2()}, trial);
    trials.push_back(combine({{"", check_xi_special(b, special)}, {"", check_xi_very_special(b, very)}}));
  }
  aggregate(trials, report);
  return report;
}

LemmaReport verify_xi_generic(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("xi-generic", params);
  if (params.n < 2) {
    report.verdict = Verdict::kSkipped;
    report.params["reason"] = "needs n >= 2";
    return report;
  }
  const ShapePtr shape = make_shape(params.n, params.d);
  const std::size_t nvars = shape->nvars();
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    const LengthTwoScheme random = random_generic(nvars, trial);
    const LengthTwoScheme three = three_coordinate_scheme(nvars, trial);
    const LengthTwoScheme paired = paired_coordinate_scheme(nvars, trial);
    const DeformationPoint b = sample_b_through(
        shape, {random.p1(), random.p2(), three.p1(), three.p2(), paired.p1(), paired.p2()}, trial);
    trials.push_back(combine({{"random_", check_xi_generic(b, random)},
                              {"three_coordinate_", check_xi_generic(b, three)},
                              {"paired_coordinate_", check_xi_generic(b, paired)}}));
  }
  aggregate(trials, report);
  return report;
}

LemmaReport verify_generic_systems(const VerifyParams& params, Rng rng) {
  constexpr unsigned kDraws = 20;
  constexpr unsigned kSingular = 5;
  LemmaReport report = start("systems", params);
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < kDraws; ++k) {
    Rng trial = rng.split();
    const SystemCoefficients c = sample_system_coefficients(trial);
    const Rational a = nonzero(trial);
    TrialOutcome t;
    const std::size_t big_rank = rank(nine_by_six_system(c));
    const std::size_t minor_rank = rank(two_by_two_minor(c));
    const bool singular = rank(two_unknown_system(c, a)) < 2;
    const bool on_locus = c(0, 2, 2) * c(2, 0, 0) == 1;
    t.dims = {{"kernel_9x6", static_cast<long long>(6 - big_rank)},
              {"minor_rank", static_cast<long long>(minor_rank)},
              {"kernel_2x2", singular ? 1 : 0}};
    if (big_rank != 6 || minor_rank != 2 || singular != on_locus) {
      t.holds = false;
      t.witness["reason"] = big_rank != 6      ? "9x6 system has a nontrivial solution"
                            : minor_rank != 2 ? "2x2 minor vanishes"
                                              : "2x2 system singularity does not match c022 c200 = 1";
      t.witness["c"] = ordered_json::object();
      for (const auto& [key, value] : c.c) {
        t.witness["c"]["c" + std::to_string(key[0]) + std::to_string(key[1]) + std::to_string(key[2])] =
            format_rational(value);
      }
      t.witness["a"] = format_rational(a);
    }
    trials.push_back(std::move(t));
  }
  aggregate(trials, report);

  std::size_t singular_hits = 0;
  for (unsigned k = 0; k < kSingular; ++k) {
    Rng trial = rng.split();
    SystemCoefficients c = sample_system_coefficients(trial);
    const Rational c022 = nonzero(trial);
    c.c[{0, 2, 2}] = c022;
    c.c[{2, 0, 0}] = 1 / c022;
    const Rational a = nonzero(trial);
    if (rank(two_unknown_system(c, a)) < 2) ++singular_hits;
  }
  report.dims.emplace_back("draws", kDraws);
  report.dims.emplace_back("constructed_singular", static_cast<long long>(singular_hits));
  report.params["constructed"] = kSingular;
  if (singular_hits != kSingular && report.verdict != Verdict::kFail) {
    report.verdict = Verdict::kFail;
    report.witness = ordered_json{{"reason", "c022 c200 = 1 did not make the 2x2 system singular"}};
  }
  return report;
}

LemmaReport verify_secant(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("secant", params);
  const unsigned m = multiplicity(params);
  report.params["m"] = m;
  if (params.d != 2 * params.n + 2) {
    report.verdict = Verdict::kSkipped;
    report.params["reason"] = "the obstruction is stated for d = 2n+2";
    return report;
  }
  if (m == 0 || m >= params.d) throw Error(ErrorCode::kInvalidArgument, "multiplicity must satisfy 0 < m < d");
  const ShapePtr shape = make_shape(params.n, params.d);
  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    const auto [b_random, z_random] = random_secant(shape, trial);
    const auto [b_line, z_line] = two_point_line(shape, m, trial);
    const SecantAnalysis random = secant_obstruction(b_random, z_random);
    const SecantAnalysis line = secant_obstruction(b_line, z_line);

    TrialOutcome t;
    t.dims = {{"ker_rho", static_cast<long long>(random.ker_rho)},
              {"random_ker_eta_hat", static_cast<long long>(random.ker_eta_hat)},
              {"random_intersection", static_cast<long long>(random.intersection)},
              {"random_distinct_roots", random.distinct_roots},
              {"line_ker_eta_hat", static_cast<long long>(line.ker_eta_hat)},
              {"line_intersection", static_cast<long long>(line.intersection)},
              {"line_distinct_roots", line.distinct_roots},
              {"offset", random.offset}};
    t.info["random"] = to_json(random);
    t.info["line"] = to_json(line);
    const auto common = [](const SecantAnalysis& s) {
      return s.conditions_agree() && s.ker_rho == 2 && s.alpha_in_ker_rho && s.image_matches;
    };
    const bool random_ok = common(random) && !random.well_defined && random.distinct_roots >= 3;
    const bool line_ok = common(line) && line.well_defined && line.intersection > 0 && line.distinct_roots <= 2;
    if (!random_ok || !line_ok) {
      t.holds = false;
      t.witness["reason"] = !random_ok ? "random secant" : "two-point line";
      t.witness["analysis"] = !random_ok ? to_json(random) : to_json(line);
      t.witness["scheme"] = !random_ok ? scheme_json(z_random) : scheme_json(z_line);
      t.witness["b"] = !random_ok ? to_json(b_random) : to_json(b_line);
    }
    trials.push_back(std::move(t));
  }
  aggregate(trials, report);
  return report;
}

LemmaReport verify_incidence(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("incidence", params);
  const unsigned m = multiplicity(params);
  report.params["m"] = m;
  const long long value = incidence_dimension(params.n, params.d, m);
  report.dims = {{"incidence_dimension", value},
                 {"grassmannian", 2LL * params.n},
                 {"codim", static_cast<long long>(params.d)}};
  report.verdict = Verdict::kPass;

  // The fiber codimension d is recomputed exactly when the base is small.
  constexpr std::size_t kMaxBase = 2000;
  const ShapePtr shape = make_shape(params.n, params.d);
  if (shape->size() <= kMaxBase) {
    const LengthTwoScheme z = random_generic(shape->nvars(), rng);
    const std::size_t codim = incidence_fiber_codim(*shape, z.line(), m);
    report.dims.emplace_back("fiber_codim", static_cast<long long>(codim));
    if (codim != params.d) {
      report.verdict = Verdict::kFail;
      report.witness = ordered_json{{"reason", "fiber codimension differs from d"},
                                    {"codim", codim},
                                    {"scheme", scheme_json(z)}};
    }
  } else {
    report.params["fiber_codim_checked"] = false;
  }
  return report;
}

LemmaReport verify_tangency(const VerifyParams& params, Rng rng) {
  check_shape(params);
  LemmaReport report = start("tangency", params);
  const unsigned m = multiplicity(params);
  const unsigned n = params.n;
  const unsigned d = params.d;
  report.params["m"] = m;
  report.params["unchecked"] = ordered_json::array({"smoothness of X along the line"});
  if (m == 0 || m >= d) throw Error(ErrorCode::kInvalidArgument, "multiplicity must satisfy 0 < m < d");
  const long long expected = std::max(0LL, 2LL * n + 2 - static_cast<long long>(d));
  const Line line = coordinate_line(n);
  // x0 <-> x1 turns x0^{d-m} x1^m into x0^m x1^{d-m}.
  const std::vector<std::size_t> swap01 = [n] {
    std::vector<std::size_t> p(n + 2);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
    std::swap(p[0], p[1]);
    return p;
  }();

  Rng degenerate_rng = rng.split();
  const TangencyResult cone = tangency_deformation_dim(tangency_instance(n, d, m, true, degenerate_rng), line, m);

  std::vector<TrialOutcome> trials;
  for (unsigned k = 0; k < params.trials; ++k) {
    Rng trial = rng.split();
    const HomogPoly F = tangency_instance(n, d, m, false, trial);
    const TangencyResult generic = tangency_deformation_dim(F, line, m);
    const TangencyResult swapped = tangency_deformation_dim(F.permute_variables(swap01), line, d - m);
    TrialOutcome t;
    t.dims = {{"dimension", static_cast<long long>(generic.dimension)},
              {"expected", expected},
              {"unknowns", static_cast<long long>(generic.unknowns)},
              {"constraints", static_cast<long long>(generic.constraints)},
              {"swapped_dimension", static_cast<long long>(swapped.dimension)},
              {"degenerate_dimension", static_cast<long long>(cone.dimension)}};
    if (static_cast<long long>(generic.dimension) != expected || swapped.dimension != generic.dimension ||
        cone.dimension == 0) {
      t.holds = false;
      t.witness["reason"] = static_cast<long long>(generic.dimension) != expected
                                ? "deformation space has unexpected dimension"
                            : swapped.dimension != generic.dimension ? "swapping the two points changed the dimension"
                                                                     : "degenerate instance has no deformations";
      t.witness["F"] = format_poly(F);
    }
    trials.push_back(std::move(t));
  }
  aggregate(trials, report);
  return report;
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {"w-basis", verify_w_basis},
      {"kernel-generic", verify_kernel_generic},
      {"kernel-special", verify_kernel_special},
      {"point-ideal", [](const VerifyParams& p, Rng r) { return verify_point_ideal(p, r); }},
      {"xi-special", verify_xi_special},
      {"xi-generic", verify_xi_generic},
      {"systems", verify_generic_systems},
      {"secant", verify_secant},
      {"incidence", verify_incidence},
      {"tangency", verify_tangency},
  };
  return entries;
}

namespace {

std::uint64_t label_of(std::string_view id) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : id) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

LemmaReport run_lemma(const RegistryEntry& entry, const VerifyParams& params, std::uint64_t seed) {
  const auto begin = std::chrono::steady_clock::now();
  LemmaReport report;
  try {
    report = entry.run(params, Rng(seed).fork(label_of(entry.id)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument || e.code() == ErrorCode::kParse) throw;
    report = LemmaReport{};
    report.lemma = entry.id;
    report.n = params.n;
    report.d = params.d;
    report.verdict = Verdict::kInfeasible;
    report.witness = ordered_json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  report.seed = seed;
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin).count();
  return report;
}

}  // namespace hypcheck
