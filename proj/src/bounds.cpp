#include "waldcert/bounds.hpp"

#include "waldcert/checker.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <string>

namespace waldcert {

Rational apply_decomposition(std::span<const SplitChild> children, int k) {
  if (k < 1) throw DecompositionError("k = " + std::to_string(k) + " must be >= 1");
  if (children.size() != static_cast<std::size_t>(k) + 1)
    throw DecompositionError("expected k+1 = " + std::to_string(k + 1) + " children, got " +
                             std::to_string(children.size()));
  const Rational lo(k);
  const Rational hi(k + 1);
  Rational reciprocal_sum;
  for (int j = 0; j < k; ++j) {
    const Rational& a = children[j].bound;
    const std::string tag = "a_" + std::to_string(j + 1) + " = " + a.str();
    if (a < lo) throw DecompositionError(tag + " violates k <= a_j (k = " + std::to_string(k) + ")");
    if (a > hi) throw DecompositionError(tag + " violates a_j <= k+1 (k = " + std::to_string(k) + ")");
    reciprocal_sum += a.reciprocal();
  }
  if (!(children.front().bound > lo))
    throw DecompositionError("a_1 = " + children.front().bound.str() + " violates a_1 > k (k = " +
                             std::to_string(k) + ")");
  const Rational& last = children.back().bound;
  if (last > hi)
    throw DecompositionError("a_" + std::to_string(k + 1) + " = " + last.str() + " violates a_{k+1} <= k+1");
  for (const auto& c : children)
    if (c.points < 1) throw DecompositionError("r_j = " + std::to_string(c.points) + " violates r_j >= 1");
  return (Rational(1) - reciprocal_sum) * last + lo;
}

std::optional<int> chudnovsky_degree(int dim, std::int64_t points) {
  if (dim < 1 || points < 1) return std::nullopt;
  const BigInt budget = big(points) * (dim + 1);
  int j = 2;
  while (binom(dim + j + 1, dim) <= budget) ++j;
  for (; j >= 3; --j)
    if (!alexander_hirschowitz_exception(dim, j, points)) return j;
  return std::nullopt;
}

Prover::Prover(FactTable facts, SearchBudget budget)
    : facts_(std::move(facts)), budget_(budget), fact_hash_(facts_.hash()) {}

std::size_t Prover::memo_size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

WaldschmidtLowerBound Prover::lower_bound(int dim, std::int64_t points) {
  if (dim < 2) throw std::domain_error("lower_bound needs N >= 2, got " + std::to_string(dim));
  if (points < 1) throw std::domain_error("lower_bound needs s >= 1, got " + std::to_string(points));
  std::lock_guard lock(mu_);
  return lower_bound_locked(dim, points);
}

std::optional<Split> Prover::decompose_search(int dim, std::int64_t points, int k) {
  if (dim < 3 || points < 1 || k < 1) return std::nullopt;
  std::lock_guard lock(mu_);
  return best_split_locked(dim, points, k);
}

std::vector<std::int64_t> Prover::support_points(int dim, std::int64_t limit) {
  if (dim < 1) throw std::domain_error("support_points needs N >= 1");
  std::lock_guard lock(mu_);
  const auto& all = support_locked(dim, limit);
  return {all.begin(), std::upper_bound(all.begin(), all.end(), limit)};
}

namespace {

constexpr std::int64_t kPointCap = std::int64_t{1} << 62;

std::optional<std::int64_t> pow2_points(int dim) {
  if (dim >= 62) return std::nullopt;
  return std::int64_t{1} << dim;
}

// ceil(num / den) clipped to kPointCap + 1 so callers can compare against limits.
std::int64_t ceil_clipped(const BigInt& num, const BigInt& den) {
  const BigInt c = ceil_div(num, den);
  if (c > big(kPointCap)) return kPointCap + 1;
  return to_int64(c);
}

}  // namespace

const std::vector<std::int64_t>& Prover::support_locked(int dim, std::int64_t limit) {
  SupportCache& cache = supports_[dim];
  if (cache.limit >= limit && !cache.points.empty()) return cache.points;
  const std::int64_t target = std::max(limit, std::min(kPointCap, cache.limit * 2));

  std::set<std::int64_t> base{1};
  for (const auto& rec : facts_.records())
    if (rec.space_dim == dim) base.insert(rec.points);
  if (facts_.has_family(Family::NPlusThree)) base.insert(dim + 3);
  const auto doubling = pow2_points(dim);
  if (doubling && facts_.has_family(Family::PowerOfTwo)) base.insert(*doubling);
  for (int j = 3;; ++j) {
    std::int64_t t = ceil_clipped(binom(dim + j, dim), big(dim + 1));
    if (t > target) break;
    if (alexander_hirschowitz_exception(dim, j, t)) ++t;
    base.insert(t);
  }
  const BigInt unit = binom(dim + 2, dim);
  for (int ell = 0;; ++ell) {
    const std::int64_t c = ceil_clipped(binom(dim + ell, dim), unit);
    if (c > target) break;
    base.insert(c);
  }
  std::set<std::int64_t> closed;
  for (std::int64_t x : base) {
    while (x <= target) {
      closed.insert(x);
      if (!doubling || x > target / *doubling) break;
      x *= *doubling;
    }
  }
  cache.limit = target;
  cache.points.assign(closed.begin(), closed.end());
  return cache.points;
}

WaldschmidtLowerBound Prover::lower_bound_locked(int dim, std::int64_t points) {
  const auto key = std::make_pair(dim, points);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  CertPtr best;
  auto consider = [&](CertPtr c) {
    if (c && (!best || c->value > best->value)) best = std::move(c);
  };

  {
    std::optional<AxiomFact> top;
    for (auto& ax : facts_.axioms_at(dim, points))
      if (!top || ax.bound > top->bound) top = ax;
    if (top) consider(make_axiom(dim, points, top->bound, top->source));
  }

  if (const auto doubling = pow2_points(dim); doubling && points >= *doubling) {
    const auto half = lower_bound_locked(dim, points / *doubling);
    consider(make_monotone(make_doubling(half.certificate, 1), points));
  }

  if (const auto j = chudnovsky_degree(dim, points)) consider(make_chudnovsky(dim, points, *j));

  if (dim >= 3) {
    if (auto split = best_split_locked(dim, points, std::nullopt)) {
      consider(make_monotone(
          make_decomposition(dim, split->total, split->k, std::move(split->parts), split->value), points));
    }
  }

  {
    const auto& support = support_locked(dim, points);
    const auto it = std::lower_bound(support.begin(), support.end(), points);
    if (it != support.begin()) {
      const auto prev = lower_bound_locked(dim, *std::prev(it));
      consider(make_monotone(prev.certificate, points));
    }
  }

  consider(make_trivial(dim, points));

  WaldschmidtLowerBound out{dim, points, best->value, best};
  memo_.emplace(key, out);
  return out;
}

const Prover::Frontier& Prover::frontier_locked(int dim, std::int64_t limit) {
  auto it = frontiers_.find(dim);
  if (it != frontiers_.end() && it->second.limit >= limit) return it->second;
  std::int64_t target = limit;
  if (it != frontiers_.end()) target = std::max(limit, std::min(kPointCap, it->second.limit * 2));
  Frontier built = build_frontier(dim, target);
  return frontiers_[dim] = std::move(built);
}

std::optional<Split> Prover::best_split_locked(int dim, std::int64_t points, std::optional<int> k) {
  const Frontier& fr = frontier_locked(dim, points);
  std::optional<Split> best;
  for (const auto& [kk, entries] : fr.by_k) {
    if (k && kk != *k) continue;
    auto it = std::upper_bound(entries.begin(), entries.end(), points,
                               [](std::int64_t s, const Split& e) { return s < e.total; });
    if (it == entries.begin()) continue;
    const Split& cand = *std::prev(it);
    if (!best || cand.value > best->value || (cand.value == best->value && cand.total < best->total))
      best = cand;
  }
  return best;
}

namespace {

struct Candidate {
  std::int64_t points;
  Rational weight;
  CertPtr proof;
};

struct State {
  std::int64_t sum = 0;
  Rational reciprocal_sum;
  bool strict = false;
  std::vector<int> picks;  // sorted indices into the upper candidate list
};

// Keeps, per strictness flag, the states whose reciprocal sum is strictly
// smaller than that of every state with a smaller or equal point sum. Ties on
// the reciprocal sum go to the lexicographically smallest picks.
std::vector<State> pareto_states(std::vector<State> states) {
  std::sort(states.begin(), states.end(), [](const State& a, const State& b) {
    if (a.sum != b.sum) return a.sum < b.sum;
    return a.picks < b.picks;
  });
  std::vector<State> out;
  for (bool flag : {true, false}) {
    std::optional<Rational> floor;
    for (std::size_t i = 0; i < states.size();) {
      std::size_t j = i;
      State* group_best = nullptr;
      for (; j < states.size() && states[j].sum == states[i].sum; ++j) {
        if (states[j].strict != flag) continue;
        if (!group_best || states[j].reciprocal_sum < group_best->reciprocal_sum) group_best = &states[j];
      }
      i = j;
      if (!group_best) continue;
      if (floor && !(group_best->reciprocal_sum < *floor)) continue;
      floor = group_best->reciprocal_sum;
      out.push_back(std::move(*group_best));
    }
  }
  return out;
}

void keep_last(std::vector<Candidate>& v, int cap) {
  if (cap > 0 && v.size() > static_cast<std::size_t>(cap)) v.erase(v.begin(), v.end() - cap);
}

}  // namespace

Prover::Frontier Prover::build_frontier(int dim, std::int64_t limit) {
  Frontier out;
  out.limit = limit;
  const int child_dim = dim - 1;
  // Support points of P^{N-1} plus the totals of its own decomposition frontier.
  const std::vector<std::int64_t> support = [&] {
    const auto& all = support_locked(child_dim, limit);
    std::set<std::int64_t> pts(all.begin(), std::upper_bound(all.begin(), all.end(), limit));
    if (child_dim >= 3) {
      for (const auto& [k, entries] : frontier_locked(child_dim, limit).by_k)
        for (const auto& e : entries)
          if (e.total <= limit) pts.insert(e.total);
    }
    return std::vector<std::int64_t>(pts.begin(), pts.end());
  }();

  // Child candidates with strictly increasing certified value.
  std::vector<WaldschmidtLowerBound> pareto;
  for (std::int64_t r : support) {
    auto lb = lower_bound_locked(child_dim, r);
    if (pareto.empty() || lb.value > pareto.back().value) pareto.push_back(std::move(lb));
  }
  if (pareto.empty()) return out;

  for (int k = 1; k <= budget_.max_k; ++k) {
    const Rational lo(k);
    const Rational hi(k + 1);
    if (!(pareto.back().value > lo)) break;

    std::vector<Candidate> upper;
    std::vector<Candidate> lower;
    bool capped = false;
    for (const auto& lb : pareto) {
      const bool reaches_cap = lb.value >= hi;
      if (reaches_cap && capped) break;
      const Rational weight = reaches_cap ? hi : lb.value;
      if (lb.value >= lo) upper.push_back({lb.points, weight, lb.certificate});
      lower.push_back({lb.points, weight, lb.certificate});
      capped = capped || reaches_cap;
    }
    keep_last(upper, budget_.max_candidates);
    keep_last(lower, budget_.max_candidates);

    std::vector<Rational> inverse;
    for (const auto& c : upper) inverse.push_back(c.weight.reciprocal());
    std::vector<State> states;
    for (int i = 0; i < static_cast<int>(upper.size()); ++i) {
      if (upper[i].points > limit) break;
      states.push_back({upper[i].points, inverse[i], upper[i].weight > lo, {i}});
    }
    states = pareto_states(std::move(states));
    for (int level = 1; level < k; ++level) {
      std::vector<State> next;
      for (const auto& st : states) {
        for (int i = 0; i < static_cast<int>(upper.size()); ++i) {
          if (upper[i].points > limit - st.sum) break;
          State grown{st.sum + upper[i].points, st.reciprocal_sum + inverse[i],
                      st.strict || upper[i].weight > lo, st.picks};
          grown.picks.insert(std::upper_bound(grown.picks.begin(), grown.picks.end(), i), i);
          next.push_back(std::move(grown));
        }
      }
      states = pareto_states(std::move(next));
    }

    struct Combo {
      std::int64_t total;
      int state;
      int low;
    };
    std::vector<Combo> combos;
    std::vector<Rational> slack(states.size());
    for (int si = 0; si < static_cast<int>(states.size()); ++si) {
      const State& st = states[si];
      if (!st.strict) continue;
      slack[si] = Rational(1) - st.reciprocal_sum;
      for (int li = 0; li < static_cast<int>(lower.size()); ++li) {
        if (lower[li].points > limit - st.sum) break;
        combos.push_back({st.sum + lower[li].points, si, li});
      }
    }
    std::sort(combos.begin(), combos.end(), [](const Combo& a, const Combo& b) {
      return std::tie(a.total, a.state, a.low) < std::tie(b.total, b.state, b.low);
    });
    std::vector<Split> front;
    std::optional<Rational> best;
    for (std::size_t i = 0; i < combos.size();) {
      const Combo* top = nullptr;
      Rational top_value;
      for (const std::int64_t total = combos[i].total; i < combos.size() && combos[i].total == total; ++i) {
        const Combo& c = combos[i];
        Rational v = slack[c.state] * lower[c.low].weight + lo;
        if (!top || v > top_value) {
          top = &c;
          top_value = std::move(v);
        }
      }
      if (best && !(top_value > *best)) continue;
      best = top_value;
      const State& st = states[top->state];
      const Candidate& low = lower[top->low];
      Split sp;
      sp.k = k;
      sp.total = top->total;
      sp.value = top_value;
      // Largest weight first so that parts[0] is the a_1 > k child.
      std::vector<int> order(st.picks.rbegin(), st.picks.rend());
      std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return upper[x].weight > upper[y].weight; });
      for (int j : order) sp.parts.push_back({upper[j].points, upper[j].weight, upper[j].proof});
      sp.parts.push_back({low.points, low.weight, low.proof});
      front.push_back(std::move(sp));
    }
    if (!front.empty()) out.by_k[k] = std::move(front);
  }
  return out;
}

}  // namespace waldcert
