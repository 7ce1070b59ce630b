#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypcheck/family.hpp"
#include "hypcheck/lineworld.hpp"
#include "hypcheck/rng.hpp"

namespace hypcheck {

enum class Verdict { kPass, kFail, kIndeterminate, kInfeasible, kSkipped };

std::string_view to_string(Verdict v);

using Dims = std::vector<std::pair<std::string, long long>>;

struct LemmaReport {
  std::string lemma;
  unsigned n = 0;
  unsigned d = 0;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::kPass;
  Dims dims;
  /// Always set for FAIL.
  std::optional<nlohmann::ordered_json> witness;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  double elapsed_ms = 0;
};

/// Keys in the order lemma, n, d, seed, verdict, dims, witness, params,
/// elapsed_ms.
nlohmann::ordered_json to_json(const LemmaReport& r);

struct VerifyParams {
  unsigned n = 2;
  unsigned d = 6;
  /// Tangency / incidence multiplicity; 0 selects n + 1.
  unsigned m = 0;
  unsigned trials = 5;
};

// One sample of a claim that should hold for general choices.
struct TrialOutcome {
  bool holds = true;
  bool skipped = false;
  Dims dims;
  nlohmann::ordered_json witness;  // set when !holds
  nlohmann::ordered_json info = nlohmann::ordered_json::object();
};

/// PASS when every trial holds, FAIL when every trial fails, INDETERMINATE
/// otherwise; dims, witness and info come from the first failing trial (or
/// the first trial when all hold). All-skipped gives SKIPPED.
void aggregate(const std::vector<TrialOutcome>& trials, LemmaReport& report);

nlohmann::ordered_json scheme_json(const LengthTwoScheme& z);
nlohmann::ordered_json vector_json(const Vector& v);

// ---------------------------------------------------------------------------
// Per-instance checks. Each is deterministic in its arguments.

/// Span of eta over all degree-2 sections, the omega list and the kernel
/// of eta modulo Span J_{d+1} + F * H^0(O(1)).
TrialOutcome check_w_basis(const DeformationPoint& b);

/// Skipped unless z is generic.
TrialOutcome check_kernel_generic(const FamilyShape& shape, const LengthTwoScheme& z);

/// Skipped unless z is special but not very special and already in
/// normalized coordinates.
TrialOutcome check_kernel_special(const FamilyShape& shape, const LengthTwoScheme& z);

/// Throws Error(kCoordinatePoint) for e_0, ..., e_{n+1}; q is the second
/// point of the length-two scheme (must differ from p).
TrialOutcome check_point_ideal(unsigned n, unsigned d, const ProjPoint& p, const ProjPoint& q);

/// Restricted omega list as vectors of length 3(n+2).
std::vector<Vector> restricted_w(const DeformationPoint& b, const Line& line);

/// Special but not very special z (normalized) on X_b.
TrialOutcome check_xi_special(const DeformationPoint& b, const LengthTwoScheme& z);
/// Very special z (normalized) on X_b.
TrialOutcome check_xi_very_special(const DeformationPoint& b, const LengthTwoScheme& z);
/// Generic z on X_b.
TrialOutcome check_xi_generic(const DeformationPoint& b, const LengthTwoScheme& z);

// The coefficients c_ijk for i, j, k in {0, 1, 2, 3} entering the reduced
// systems, c_ijk = c_ikj.
struct SystemCoefficients {
  std::map<std::array<int, 3>, Rational> c;
  Rational operator()(int i, int j, int k) const;
};

SystemCoefficients sample_system_coefficients(Rng& rng);
/// The 9 x 6 system in the unknowns a_i x_i^2 d/dx_j (i != j in 0..2),
/// columns ordered (1,0), (2,0), (0,1), (2,1), (0,2), (1,2).
ExactMatrix nine_by_six_system(const SystemCoefficients& c);
/// [[c102, c012], [c103, c013]].
ExactMatrix two_by_two_minor(const SystemCoefficients& c);
/// [[-a c022, 1], [a^2, -a c200]].
ExactMatrix two_unknown_system(const SystemCoefficients& c, const Rational& a);

// Secant-line data for Z on X_b.
struct SecantAnalysis {
  BinaryForm xi_f{0};
  std::size_t ker_rho = 0;
  std::size_t ker_eta_hat = 0;
  std::size_t intersection = 0;
  bool alpha_in_ker_rho = false;
  bool image_matches = false;  // eta_hat(ker rho) = Span{s f_s, t f_t}
  bool well_defined = false;   // ker eta_hat inside ker rho
  bool pair_dependent = false; // f(y), y f'(y) dependent
  bool monomial = false;       // xi(F) = c s^{d-m} t^m
  unsigned distinct_roots = 0;
  long long offset = 0;        // 2(n+2) - (d+1)
  bool conditions_agree() const { return well_defined == pair_dependent && pair_dependent == monomial; }
};

/// Throws Error(kNonGenericScheme) for non-generic z, Error(kLineInX) when
/// xi(F) = 0 and Error(kInvalidArgument) when z is not on X_b.
SecantAnalysis secant_obstruction(const DeformationPoint& b, const LengthTwoScheme& z);
nlohmann::ordered_json to_json(const SecantAnalysis& s);

/// Random generic z and b with z on X_b.
std::pair<DeformationPoint, LengthTwoScheme> random_secant(const ShapePtr& shape, Rng& rng);
/// Generic z and b with xi(F) = c s^{d-m} t^m, c != 0.
std::pair<DeformationPoint, LengthTwoScheme> two_point_line(const ShapePtr& shape, unsigned m, Rng& rng);

/// 2n + 2 - d; throws Error(kInvalidArgument) unless 0 < m < d.
long long incidence_dimension(unsigned n, unsigned d, unsigned m);

/// Codimension in the base of {b : xi(F) = c s^{d-m} t^m} for the given line.
std::size_t incidence_fiber_codim(const FamilyShape& shape, const Line& line, unsigned m);

struct TangencyResult {
  std::size_t unknowns = 0;
  std::size_t constraints = 0;
  std::size_t dimension = 0;
};

/// First-order moves of the line along n normal directions keeping the
/// restriction in the span of s^{d-m}t^m, s^{d-m+1}t^{m-1}, s^{d-m-1}t^{m+1}.
/// Throws Error(kNotInWm) unless xi(F) = c s^{d-m} t^m with c != 0.
TangencyResult tangency_deformation_dim(const HomogPoly& F, const Line& line, unsigned m);

/// x0^{d-m} x1^m + sum_{k >= 2} x_k G_k with G_k random of degree d-1, or
/// zero when `degenerate`.
HomogPoly tangency_instance(unsigned n, unsigned d, unsigned m, bool degenerate, Rng& rng);

/// Line through e_0 and e_1.
Line coordinate_line(unsigned n);

// ---------------------------------------------------------------------------
// Registry verifiers. The report's seed field is filled by the caller.

using Verifier = std::function<LemmaReport(const VerifyParams&, Rng)>;

LemmaReport verify_w_basis(const VerifyParams& params, Rng rng);
LemmaReport verify_kernel_generic(const VerifyParams& params, Rng rng);
LemmaReport verify_kernel_special(const VerifyParams& params, Rng rng);
LemmaReport verify_point_ideal(const VerifyParams& params, Rng rng);
/// Single point p; throws Error(kCoordinatePoint) for a coordinate point.
LemmaReport verify_point_ideal(const VerifyParams& params, const ProjPoint& p, Rng rng);
LemmaReport verify_xi_special(const VerifyParams& params, Rng rng);
LemmaReport verify_xi_generic(const VerifyParams& params, Rng rng);
LemmaReport verify_generic_systems(const VerifyParams& params, Rng rng);
LemmaReport verify_secant(const VerifyParams& params, Rng rng);
LemmaReport verify_incidence(const VerifyParams& params, Rng rng);
LemmaReport verify_tangency(const VerifyParams& params, Rng rng);

struct RegistryEntry {
  std::string id;
  Verifier run;
};

/// w-basis, kernel-generic, kernel-special, point-ideal, xi-special,
/// xi-generic, systems, secant, incidence, tangency.
const std::vector<RegistryEntry>& registry();

/// Runs one registry entry with a stream derived from (seed, id), timing it
/// and mapping INFEASIBLE errors to the verdict.
LemmaReport run_lemma(const RegistryEntry& entry, const VerifyParams& params, std::uint64_t seed);

}  // namespace hypcheck
