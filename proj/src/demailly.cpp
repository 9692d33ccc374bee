#include "waldcert/demailly.hpp"

#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace waldcert {

std::string_view variant_name(Variant v) { return v == Variant::Strict ? "strict" : "weak"; }

std::string_view status_name(VerdictStatus s) { return s == VerdictStatus::Proven ? "Proven" : "Inconclusive"; }

std::string_view route_name(VerdictRoute r) {
  switch (r) {
    case VerdictRoute::BoundComparison: return "bound-comparison";
    case VerdictRoute::FewPointsAxiom: return "few-points-axiom";
    case VerdictRoute::ManyPointsAxiom: return "many-points-axiom";
    case VerdictRoute::PowerOfTwo: return "power-of-two";
    case VerdictRoute::SmallEll: return "small-ell";
    case VerdictRoute::CaseOne: return "case-one";
    case VerdictRoute::CaseTwo: return "case-two";
  }
  return "?";
}

AlphaUpperBound alpha_upper_bound(int dim, std::int64_t points, int multiplicity) {
  if (dim < 1 || points < 1 || multiplicity < 1)
    throw std::invalid_argument("alpha_upper_bound needs N, s, m >= 1");
  const BigInt conditions = big(points) * binom(dim + multiplicity - 1, dim);
  auto forced = [&](int d) { return binom(dim + d, dim) > conditions; };
  int hi = 1;
  while (!forced(hi)) hi *= 2;
  int lo = hi / 2;  // !forced(lo) unless lo == 0
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (forced(mid)) hi = mid;
    else lo = mid + 1;
  }
  const int d = lo;
  return {dim, points, multiplicity, d, d - 1};
}

Rational required_bound(const DemaillyQuery& q, const AlphaUpperBound& alpha) {
  if (q.variant == Variant::Strict)
    return Rational(BigInt(alpha.degree + q.dim - 1), BigInt(q.multiplicity + q.dim - 1));
  return Rational(BigInt(alpha.degree + q.dim - 2), BigInt(q.dim + 2));
}

namespace {

void validate(const DemaillyQuery& q) {
  if (q.dim < 2) throw std::invalid_argument("N must be >= 2");
  if (q.points < 1) throw std::invalid_argument("s must be >= 1");
  if (q.multiplicity < 1) throw std::invalid_argument("m must be >= 1");
  if (q.variant == Variant::Weak && q.multiplicity != 3)
    throw std::invalid_argument("the weak variant is defined for m = 3 only");
}

std::optional<std::int64_t> power_points(std::int64_t base, int dim) {
  BigInt p = ipow(BigInt(static_cast<long>(base)), static_cast<unsigned long>(dim));
  if (p > big(std::numeric_limits<std::int64_t>::max())) return std::nullopt;
  return to_int64(p);
}

// Known-result routes for m = 3 that stand in for the comparison when it
// fails; they never replace a successful comparison.
std::optional<VerdictRoute> axiom_route(const FactTable& facts, const DemaillyQuery& q, std::string& detail) {
  if (q.multiplicity != 3) return std::nullopt;
  if (q.points <= q.dim + 2) {
    if (const auto* fam = facts.family(Family::DemaillyFewPoints)) {
      detail = "s <= N+2: " + fam->source;
      return VerdictRoute::FewPointsAxiom;
    }
  }
  const auto many = power_points(3, q.dim);
  if (!many || q.points >= *many) {
    if (const auto* fam = facts.family(Family::DemaillyM3Large)) {
      detail = "s >= 3^N: " + fam->source;
      return VerdictRoute::ManyPointsAxiom;
    }
  }
  return std::nullopt;
}

void settle(const FactTable& facts, DemaillyVerdict& v) {
  if (v.achieved.value >= v.required) {
    v.status = VerdictStatus::Proven;
    return;
  }
  std::string detail;
  if (auto route = axiom_route(facts, v.query, detail)) {
    v.status = VerdictStatus::Proven;
    v.route = *route;
    v.route_detail = detail;
    return;
  }
  v.status = VerdictStatus::Inconclusive;
}

}  // namespace

WeakDemaillyProver::Step WeakDemaillyProver::prove(int dim, std::int64_t points) {
  const auto key = std::make_pair(dim, points);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Step step = route(dim, points);
  memo_.emplace(key, step);
  return step;
}

WeakDemaillyProver::Step WeakDemaillyProver::route(int dim, std::int64_t points) {
  if (dim <= 7) return {prover_.lower_bound(dim, points).certificate, VerdictRoute::BoundComparison, "general engine"};

  const FactTable& facts = prover_.facts();
  const auto doubling = power_points(2, dim);
  if (facts.has_family(Family::PowerOfTwo) && doubling && points >= *doubling) {
    for (const auto& ax : facts.axioms_at(dim, *doubling)) {
      if (ax.bound == Rational(2))
        return {make_monotone(make_axiom(dim, *doubling, ax.bound, ax.source), points), VerdictRoute::PowerOfTwo,
                "s >= 2^N: bound 2 from the 2^N fact"};
    }
  }
  if (points <= dim + 2) return {make_trivial(dim, points), VerdictRoute::FewPointsAxiom, "s <= N+2: trivial bound"};

  const int ell = alpha_upper_bound(dim, points, 3).ell;
  if (ell <= 4 && facts.has_family(Family::NPlusThree)) {
    const Rational value(BigInt(dim + 2), BigInt(dim));
    for (const auto& ax : facts.axioms_at(dim, dim + 3)) {
      if (ax.bound == value)
        return {make_monotone(make_axiom(dim, dim + 3, ax.bound, ax.source), points), VerdictRoute::SmallEll,
                "ell = " + std::to_string(ell) + " <= 4: N+3 fact"};
    }
  }
  if (ell >= 5 && case1_inequality(dim, ell))
    return {make_chudnovsky(dim, points, ell - 2), VerdictRoute::CaseOne,
            "ell = " + std::to_string(ell) + ": ChudnovskyM2 with j = ell - 2"};

  const BigInt unit = binom(dim + 1, dim - 1);
  const std::int64_t r1 = to_int64(ceil_div(binom(dim - 1 + ell, dim - 1), unit));
  const std::int64_t r2 = to_int64(ceil_div(binom(dim - 2 + ell, dim - 1), unit));
  const std::string tag = "ell = " + std::to_string(ell) + ": k=1 split r = (" + std::to_string(r1) + ", " +
                          std::to_string(r2) + ")";
  if (r1 < 1 || r2 < 1 || r1 + r2 > points)
    return {make_trivial(dim, points), VerdictRoute::CaseTwo, tag + " exceeds s"};
  const Step first = prove(dim - 1, r1);
  const Step second = prove(dim - 1, r2);
  const Rational cap(2);
  const Rational a1 = std::min(first.cert->value, cap);
  const Rational a2 = std::min(second.cert->value, cap);
  if (!(a1 > Rational(1))) return {make_trivial(dim, points), VerdictRoute::CaseTwo, tag + " has a_1 <= 1"};
  const SplitChild children[] = {{r1, a1}, {r2, a2}};
  const Rational value = apply_decomposition(children, 1);
  std::vector<DecompositionPart> parts{{r1, a1, first.cert}, {r2, a2, second.cert}};
  return {make_monotone(make_decomposition(dim, r1 + r2, 1, std::move(parts), value), points),
          VerdictRoute::CaseTwo, tag};
}

DemaillyVerdict demailly_verdict(Prover& prover, const DemaillyQuery& q) {
  validate(q);
  if (q.variant == Variant::Weak && q.dim >= 3) return weak_demailly_prover(prover, q.dim, q.points);
  DemaillyVerdict v;
  v.query = q;
  v.alpha_ub = alpha_upper_bound(q.dim, q.points, q.multiplicity);
  v.required = required_bound(q, v.alpha_ub);
  v.achieved = prover.lower_bound(q.dim, q.points);
  v.route_detail = "certified lower bound vs required";
  settle(prover.facts(), v);
  return v;
}

DemaillyVerdict weak_demailly_prover(Prover& prover, int dim, std::int64_t points) {
  return WeakDemaillyProver(prover).verdict(dim, points);
}

DemaillyVerdict WeakDemaillyProver::verdict(int dim, std::int64_t points) {
  if (dim < 3) throw std::invalid_argument("the weak prover needs N >= 3");
  if (points < 1) throw std::invalid_argument("s must be >= 1");
  DemaillyVerdict v;
  v.query = {dim, points, 3, Variant::Weak};
  v.alpha_ub = alpha_upper_bound(dim, points, 3);
  v.required = required_bound(v.query, v.alpha_ub);
  const Step step = prove(dim, points);
  v.achieved = {dim, points, step.cert->value, step.cert};
  v.route = step.route;
  v.route_detail = step.detail;
  settle(prover_.facts(), v);
  return v;
}

int ell0(int dim) {
  if (dim < 1) throw std::invalid_argument("ell0 needs N >= 1");
  const BigInt disc = big(8 * static_cast<std::int64_t>(dim) + 17);
  int n = 3;  // smallest n with 2n - 5 >= 0
  while (BigInt((2 * n - 5) * (2 * n - 5)) < disc) ++n;
  return n + 1;
}

bool case1_inequality(int dim, int ell) {
  if (dim < 1 || ell < 0) throw std::invalid_argument("case1_inequality needs N >= 1, ell >= 0");
  const BigInt quadratic = BigInt(ell) * ell - 5 * ell - 2 * (dim - 1);
  const bool by_quadratic = quadratic <= 0;
  const bool by_binomial =
      (dim + 1) * binom(dim + ell, dim) >= binom(dim + 2, dim) * binom(dim + ell - 2, dim);
  if (by_quadratic != by_binomial)
    throw std::logic_error("case-one forms disagree at N=" + std::to_string(dim) + ", ell=" + std::to_string(ell));
  return by_quadratic;
}

namespace {

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace

bool case2_inequality(int dim, int ell) {
  if (dim < 2 || ell < 2) throw std::invalid_argument("case2_inequality needs N >= 2, ell >= 2");
  const Rational prefactor(factorial(dim + ell - 2), factorial(ell) * factorial(dim + 2));
  const Rational factorial_form = prefactor * Rational(BigInt(ell) * ell - 5 * ell - (2 * dim - 2));
  const bool by_factorial = factorial_form >= Rational(BigInt(1), BigInt(2));

  const BigInt lower_unit = binom(dim + 1, dim - 1);
  const Rational lhs(binom(dim + ell, dim), binom(dim + 2, dim));
  const Rational rhs = Rational(binom(dim - 1 + ell, dim - 1), lower_unit) +
                       Rational(binom(dim - 2 + ell, dim - 1), lower_unit) + Rational(1);
  const bool by_binomial = lhs >= rhs;
  if (by_factorial != by_binomial)
    throw std::logic_error("case-two forms disagree at N=" + std::to_string(dim) + ", ell=" + std::to_string(ell));
  return by_factorial;
}

bool lemma42_certify(int variant, int dim) {
  if (dim < 1) throw std::invalid_argument("lemma42_certify needs N >= 1");
  const BigInt quad = binom(dim + 2, dim);
  const unsigned long n = static_cast<unsigned long>(dim);
  switch (variant) {
    case 1: return ipow(BigInt(3), n) * quad <= binom(2 * dim + 6, dim);
    case 2: return ipow(BigInt(2), n) * quad <= binom(2 * dim, dim);
    case 3: return ipow(BigInt(3), n) * quad <= binom(2 * dim, dim);
  }
  throw std::invalid_argument("lemma42 variant must be 1, 2 or 3");
}

GeneralThresholdReport general_threshold_check(int dim, int multiplicity, std::int64_t points) {
  if (dim < 2 || multiplicity < 1 || points < 1)
    throw std::invalid_argument("general_threshold_check needs N >= 2, m >= 1, s >= 1");
  GeneralThresholdReport r{dim, multiplicity, points, 0, false, false};
  const BigInt k = nth_root_floor(big(points), static_cast<unsigned long>(dim));
  r.k = to_int64(k);
  const BigInt step = 2 * multiplicity + dim - 1;
  const unsigned long n = static_cast<unsigned long>(dim);
  r.passes = big(points) * ipow(step, n) <= ipow(k * (dim - 1) + (k - 1) * step, n);
  r.k5_hypothesis_met = r.k >= 5;
  return r;
}

BigInt uniform_general_threshold(int dim, int multiplicity) {
  if (dim < 2 || multiplicity < 1) throw std::invalid_argument("uniform_general_threshold needs N >= 2, m >= 1");
  const BigInt k_min = ceil_div(BigInt(2 * (2 * multiplicity + dim - 1)), BigInt(dim - 1));
  return ipow(k_min, static_cast<unsigned long>(dim));
}

Lemma31Report lemma31_check(int dim, int multiplicity, std::int64_t k, std::int64_t points) {
  if (dim < 2 || multiplicity < 1 || k < 1) throw std::domain_error("lemma31_check needs N >= 2, m >= 1, k >= 1");
  const unsigned long n = static_cast<unsigned long>(dim);
  if (ipow(big(k), n) > big(points) || big(points) >= ipow(big(k + 1), n))
    throw std::domain_error("s = " + std::to_string(points) + " is outside [k^N, (k+1)^N) for k = " +
                            std::to_string(k));
  const int width = multiplicity + dim - 1;
  const BigInt lhs = binom(static_cast<long>((k - 1) * width + dim - 1), dim);
  const BigInt unit = binom(width, dim);
  Lemma31Report r;
  r.holds = lhs >= big(points) * unit;
  r.printed_holds = lhs >= ipow(big(points), n) * unit;
  r.statement_as_printed = r.printed_holds == r.holds;
  r.threshold = general_threshold_check(dim, multiplicity, points);
  return r;
}

RegularityReport trung_valla_reg(int dim, std::int64_t points, int multiplicity) {
  if (dim < 1 || points < 1 || multiplicity < 1) throw std::invalid_argument("trung_valla_reg needs N, s, m >= 1");
  const BigInt conditions = big(points - 1) * binom(multiplicity + dim - 1, dim);
  int w = 0;
  while (!(conditions < binom(dim + w, dim))) ++w;
  return {dim, points, multiplicity, w, multiplicity + w};
}

ContainmentMargin containment_margin(int dim, std::int64_t points, int multiplicity) {
  if (dim < 2 || points < 1 || multiplicity < 1)
    throw std::invalid_argument("containment_margin needs N >= 2, s >= 1, m >= 1");
  ContainmentMargin out;
  out.k = to_int64(nth_root_floor(big(points), static_cast<unsigned long>(dim)));
  out.reg_upper = trung_valla_reg(dim, points, multiplicity).reg_upper;
  const BigInt slack = big(out.k) * (multiplicity + dim - 1) - out.reg_upper - dim + 1;
  out.asymptotic_ok = slack > 0;
  if (out.asymptotic_ok) {
    BigInt quotient = big(out.k) * (dim - 1);
    mpz_fdiv_q(quotient.get_mpz_t(), quotient.get_mpz_t(), slack.get_mpz_t());
    out.min_r = to_int64(quotient) + 1;
  }
  return out;
}

}  // namespace waldcert
