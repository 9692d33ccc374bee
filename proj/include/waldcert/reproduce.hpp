#pragma once

// Reproduction tables: the per-dimension case table for 3 <= N <= 7, the
// uniform general-points thresholds, and the binomial inequality family.
// Each table renders to deterministic text and to JSON.

#include "waldcert/bounds.hpp"
#include "waldcert/demailly.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace waldcert {

struct CaseRow {
  int dim = 0;
  int ell_max = 0;
  std::int64_t s_lo = 0;
  std::int64_t s_hi = 0;
  std::string reference;  // the value as printed, decimal or fraction
};

/// The case rows for 3 <= N <= 7 with their printed reference values.
const std::vector<CaseRow>& case_rows();

/// ell with C(N+ell,N) < s C(N+2,N) <= C(N+ell+1,N).
int ell_strict_left(int dim, std::int64_t points);

struct CaseResult {
  CaseRow row;
  Rational reference_value;
  WaldschmidtLowerBound engine;  // at s_lo, covering the row by monotonicity
  bool dominates = false;        // engine >= reference
  // Per s in the row: lower_bound(N, s) > (N + ell_strict_left(N, s))/(N + 2).
  std::int64_t tightest_s = 0;   // s with the smallest margin
  Rational tightest_bound;
  Rational tightest_required;
  std::vector<std::int64_t> strict_failures;
  bool strict = false;
  bool ell_consistent = false;   // ell_strict_left(N, s) <= ell_max on the row
};

struct CaseTable {
  std::vector<CaseResult> rows;
  bool all_dominate() const;
  bool all_strict() const;
  std::string text() const;
  nlohmann::json json() const;
};

CaseTable reproduce_cases(Prover& prover);

struct ThresholdRow {
  int dim = 0;
  int multiplicity = 0;
  BigInt k_min;
  BigInt threshold;
  bool passes_at_threshold = false;
  bool fails_below = false;  // threshold - 1 fails (or is below 1)
};

struct ThresholdTable {
  std::vector<ThresholdRow> rows;
  std::string text() const;
  nlohmann::json json() const;
};

/// Rows for 4 <= N <= 10 at m = 3.
ThresholdTable reproduce_thresholds();

struct InequalityRow {
  int variant = 0;
  int from = 0;
  int to = 0;
  bool holds_on_range = false;
  std::optional<int> first_failure;
  std::optional<int> last_failure_below;  // largest N < from that fails
};

struct InequalityTable {
  std::vector<InequalityRow> rows;
  BigInt base_left;   // 3^8 C(10,8)
  BigInt base_right;  // C(22,8)
  BigInt top_left_statement;  // 3^30 C(32,2)
  BigInt top_left_printed;    // 3^30 C(32,20)
  BigInt top_right;           // C(60,30)
  std::string text() const;
  nlohmann::json json() const;
};

/// Variants 1 and 2 on 8..200 and variant 3 on 30..200.
InequalityTable reproduce_inequalities();

}  // namespace waldcert
