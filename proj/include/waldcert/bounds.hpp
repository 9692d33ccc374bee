#pragma once

// Certified lower bounds â(P^N, s) for s very general points.
//
// The prover closes the fact table under five rules (Trivial, Monotone,
// Doubling, ChudnovskyM2, Decomposition) and returns the best bound it finds
// together with a certificate. Queries are memoized per Prover; a Prover is
// bound to one fact table, so memo entries never outlive the facts they were
// derived from.

#include "waldcert/certificate.hpp"
#include "waldcert/facts.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace waldcert {

inline constexpr int kRuleSetVersion = 1;

struct WaldschmidtLowerBound {
  int dim = 0;
  std::int64_t points = 0;
  Rational value;
  CertPtr certificate;
};

struct SplitChild {
  std::int64_t points = 0;
  Rational bound;
};

class DecompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (1 - sum_{j<=k} 1/a_j) * a_{k+1} + k, after checking k <= a_j <= k+1
/// (j <= k), a_1 > k and a_{k+1} <= k+1. Throws DecompositionError naming the
/// first violated inequality.
Rational apply_decomposition(std::span<const SplitChild> children, int k);

struct SearchBudget {
  int max_k = 4;             // largest number of "upper" children tried
  int max_candidates = 1024;  // cap on child candidates per slot
};

struct Split {
  int k = 0;
  std::vector<DecompositionPart> parts;  // parts[0] carries the a_1 > k child
  std::int64_t total = 0;                // sum of r_j
  Rational value;
};

class Prover {
 public:
  explicit Prover(FactTable facts, SearchBudget budget = {});

  const FactTable& facts() const { return facts_; }
  const SearchBudget& budget() const { return budget_; }
  std::uint64_t fact_hash() const { return fact_hash_; }

  /// Best certified bound for (N, s); throws std::domain_error for N < 2 or
  /// s < 1.
  WaldschmidtLowerBound lower_bound(int dim, std::int64_t points);

  /// Best k-split with sum r_j <= s among the candidate children in P^{N-1}.
  std::optional<Split> decompose_search(int dim, std::int64_t points, int k);

  /// The sorted candidate point counts of P^N up to `limit`: facts, 2^N and
  /// N+3, ChudnovskyM2 thresholds, ceilings C(N+l,N)/C(N+2,N), and their
  /// 2^N-multiples.
  std::vector<std::int64_t> support_points(int dim, std::int64_t limit);

  std::size_t memo_size() const;

 private:
  struct Frontier {
    std::int64_t limit = 0;
    std::map<int, std::vector<Split>> by_k;  // Pareto: total ascending, value strictly increasing
  };
  struct SupportCache {
    std::int64_t limit = 0;
    std::vector<std::int64_t> points;
  };

  WaldschmidtLowerBound lower_bound_locked(int dim, std::int64_t points);
  const std::vector<std::int64_t>& support_locked(int dim, std::int64_t limit);
  const Frontier& frontier_locked(int dim, std::int64_t limit);
  std::optional<Split> best_split_locked(int dim, std::int64_t points, std::optional<int> k);
  Frontier build_frontier(int dim, std::int64_t limit);

  FactTable facts_;
  SearchBudget budget_;
  std::uint64_t fact_hash_;
  mutable std::mutex mu_;
  std::map<std::pair<int, std::int64_t>, WaldschmidtLowerBound> memo_;
  std::map<int, Frontier> frontiers_;
  std::map<int, SupportCache> supports_;
};

/// Largest j >= 3 usable by the ChudnovskyM2 rule at (N, s), if any.
std::optional<int> chudnovsky_degree(int dim, std::int64_t points);

}  // namespace waldcert
