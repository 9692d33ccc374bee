#pragma once

// Demailly-type verdicts for s very general points of P^N: an upper bound on
// the initial degree of I^(m) from a dimension count, compared against a
// certified lower bound on the Waldschmidt constant. Also the exact integer
// forms of the threshold, regularity and inequality lemmas used along the way.

#include "waldcert/bounds.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace waldcert {

enum class Variant { Strict, Weak };
std::string_view variant_name(Variant v);

struct DemaillyQuery {
  int dim = 0;
  std::int64_t points = 0;
  int multiplicity = 3;
  Variant variant = Variant::Strict;
};

/// Minimal degree d carrying a nonzero form with multiplicity >= m at all
/// points: C(N+d, N) > s * C(N+m-1, N). ell = d - 1.
struct AlphaUpperBound {
  int dim = 0;
  std::int64_t points = 0;
  int multiplicity = 0;
  int degree = 0;
  int ell = -1;
};

AlphaUpperBound alpha_upper_bound(int dim, std::int64_t points, int multiplicity);

enum class VerdictStatus { Proven, Inconclusive };
enum class VerdictRoute {
  BoundComparison,
  FewPointsAxiom,
  ManyPointsAxiom,
  PowerOfTwo,
  SmallEll,
  CaseOne,
  CaseTwo,
};
std::string_view status_name(VerdictStatus s);
std::string_view route_name(VerdictRoute r);

struct DemaillyVerdict {
  DemaillyQuery query;
  AlphaUpperBound alpha_ub;
  Rational required;
  WaldschmidtLowerBound achieved;
  VerdictStatus status = VerdictStatus::Inconclusive;
  VerdictRoute route = VerdictRoute::BoundComparison;
  std::string route_detail;

  bool proven() const { return status == VerdictStatus::Proven; }
};

/// (d + N - 1)/(m + N - 1) for strict, (d + N - 2)/(N + 2) for weak.
Rational required_bound(const DemaillyQuery& q, const AlphaUpperBound& alpha);

/// Throws std::invalid_argument for N < 2, s < 1, m < 1, or a weak query
/// with m != 3. Weak queries with N >= 3 go through weak_demailly_prover.
DemaillyVerdict demailly_verdict(Prover& prover, const DemaillyQuery& q);

/// Weak variant for m = 3 and N >= 3. N <= 7 uses the general engine; N >= 8
/// routes on ell: s >= 2^N via the 2^N fact, ell <= 4 via the N+3 fact, the
/// case-one inequality via ChudnovskyM2 with j = ell - 2, otherwise a k = 1
/// decomposition whose children are proven recursively in P^{N-1}.
DemaillyVerdict weak_demailly_prover(Prover& prover, int dim, std::int64_t points);

/// The same prover with its recursion memo kept across queries.
class WeakDemaillyProver {
 public:
  explicit WeakDemaillyProver(Prover& prover) : prover_(prover) {}
  DemaillyVerdict verdict(int dim, std::int64_t points);

 private:
  struct Step {
    CertPtr cert;
    VerdictRoute route = VerdictRoute::BoundComparison;
    std::string detail;
  };
  Step prove(int dim, std::int64_t points);
  Step route(int dim, std::int64_t points);

  Prover& prover_;
  std::map<std::pair<int, std::int64_t>, Step> memo_;
};

/// ceil((5 + sqrt(8N+17))/2) + 1, by integer comparison.
int ell0(int dim);

/// ell^2 - 5 ell - 2(N-1) <= 0, cross-checked against
/// (N+1) C(N+ell,N) >= C(N+2,N) C(N+ell-2,N). Throws std::logic_error if
/// the two forms disagree.
bool case1_inequality(int dim, int ell);

/// (N+ell-2)!/(ell!(N+2)!) (ell^2 - 5 ell - (2N-2)) >= 1/2, cross-checked
/// against C(N+ell,N)/C(N+2,N) >= (C(N-1+ell,N-1) + C(N-2+ell,N-1))/C(N+1,N-1) + 1.
/// Throws std::logic_error if the two forms disagree.
bool case2_inequality(int dim, int ell);

/// 1: 3^N C(N+2,N) <= C(2N+6,N); 2: 2^N C(N+2,N) <= C(2N,N);
/// 3: 3^N C(N+2,N) <= C(2N,N). Throws std::invalid_argument for other variants.
bool lemma42_certify(int variant, int dim);

struct GeneralThresholdReport {
  int dim = 0;
  int multiplicity = 0;
  std::int64_t points = 0;
  std::int64_t k = 0;  // floor(s^(1/N))
  bool passes = false;
  bool k5_hypothesis_met = false;
};

/// s (2m+N-1)^N <= (k(N-1) + (k-1)(2m+N-1))^N with k = floor(s^(1/N)).
GeneralThresholdReport general_threshold_check(int dim, int multiplicity, std::int64_t points);

/// k_min^N with k_min = ceil(2(2m+N-1)/(N-1)).
BigInt uniform_general_threshold(int dim, int multiplicity);

struct Lemma31Report {
  bool holds = false;          // C((k-1)(m+N-1)+N-1, N) >= s C(m+N-1, N)
  bool printed_holds = false;  // same with s^N in place of s
  bool statement_as_printed = false;  // printed_holds == holds
  GeneralThresholdReport threshold;
};

/// Throws std::domain_error unless k^N <= s < (k+1)^N.
Lemma31Report lemma31_check(int dim, int multiplicity, std::int64_t k, std::int64_t points);

struct RegularityReport {
  int dim = 0;
  std::int64_t points = 0;
  int multiplicity = 0;
  int w = 0;
  int reg_upper = 0;
};

/// Minimal w with (s-1) C(m+N-1,N) < C(N+w,N); reg_upper = m + w.
RegularityReport trung_valla_reg(int dim, std::int64_t points, int multiplicity);

struct ContainmentMargin {
  bool asymptotic_ok = false;
  std::optional<std::int64_t> min_r;
  std::int64_t k = 0;
  int reg_upper = 0;
};

/// r (reg + N - 1) < k (r (m+N-1) - N + 1) for all large r iff
/// reg + N - 1 < k (m+N-1); min_r is the least such r.
ContainmentMargin containment_margin(int dim, std::int64_t points, int multiplicity);

}  // namespace waldcert
