#include "waldcert/checker.hpp"

#include <sstream>
#include <unordered_map>

namespace waldcert {

bool alexander_hirschowitz_exception(int dim, int degree, std::int64_t points) {
  if (degree == 2) return points >= 2 && points <= dim;
  return (dim == 2 && degree == 4 && points == 5) || (dim == 3 && degree == 4 && points == 9) ||
         (dim == 4 && degree == 3 && points == 7) || (dim == 4 && degree == 4 && points == 14);
}

namespace {

std::string describe(const CertNode& n) {
  std::ostringstream os;
  os << rule_name(n.rule) << " N=" << n.dim << " s=" << n.points;
  return os.str();
}

class Checker {
 public:
  explicit Checker(const FactTable& facts) : facts_(facts) {}

  CheckResult run(const CertPtr& root) {
    if (!root) return {false, "(null)", "empty certificate"};
    visit(root);
    if (failed_) return {false, node_, reason_};
    return {true, {}, {}};
  }

 private:
  bool reject(const CertNode& n, std::string reason) {
    if (!failed_) {
      failed_ = true;
      node_ = describe(n);
      reason_ = std::move(reason);
    }
    return false;
  }

  bool visit(const CertPtr& p) {
    if (failed_) return false;
    if (auto it = done_.find(p.get()); it != done_.end()) return it->second;
    bool ok = true;
    if (p->child) ok = visit(p->child);
    for (const auto& part : p->parts) {
      if (!ok) break;
      if (!part.proof) return reject(*p, "decomposition part without proof");
      ok = visit(part.proof);
    }
    ok = ok && local(*p);
    done_[p.get()] = ok;
    return ok;
  }

  bool claim(const CertNode& n, const Rational& recomputed) {
    if (n.value == recomputed) return true;
    return reject(n, "claimed value " + n.value.str() + " != recomputed " + recomputed.str());
  }

  bool local(const CertNode& n) {
    if (n.dim < 1) return reject(n, "dimension must be >= 1");
    if (n.points < 1) return reject(n, "point count must be >= 1");
    switch (n.rule) {
      case Rule::Trivial:
        if (n.child || !n.parts.empty()) return reject(n, "trivial node has children");
        return claim(n, Rational(1));

      case Rule::Axiom: {
        if (n.child || !n.parts.empty()) return reject(n, "axiom node has children");
        for (const auto& ax : facts_.axioms_at(n.dim, n.points))
          if (ax.bound == n.value && ax.source == n.source) return true;
        return reject(n, "no fact (N=" + std::to_string(n.dim) + ", s=" + std::to_string(n.points) +
                             ") with bound " + n.value.str() + " and the given source");
      }

      case Rule::Monotone: {
        if (!n.child || !n.parts.empty()) return reject(n, "monotone node needs exactly one child");
        const CertNode& c = *n.child;
        if (c.dim != n.dim) return reject(n, "child dimension differs");
        if (c.points > n.points)
          return reject(n, "s_child = " + std::to_string(c.points) + " > s = " + std::to_string(n.points));
        return claim(n, c.value);
      }

      case Rule::Doubling: {
        if (!n.child || !n.parts.empty()) return reject(n, "doubling node needs exactly one child");
        const CertNode& c = *n.child;
        if (n.times < 1) return reject(n, "t must be >= 1");
        if (c.dim != n.dim) return reject(n, "child dimension differs");
        const BigInt expected = big(c.points) * ipow(BigInt(2), static_cast<unsigned long>(n.dim) * n.times);
        if (big(n.points) != expected)
          return reject(n, "s = " + std::to_string(n.points) + " != s_child * 2^(N t) = " + expected.get_str());
        return claim(n, c.value * Rational(ipow(BigInt(2), static_cast<unsigned long>(n.times))));
      }

      case Rule::ChudnovskyM2: {
        if (n.child || !n.parts.empty()) return reject(n, "ChudnovskyM2 node has children");
        if (n.degree < 3) return reject(n, "j = " + std::to_string(n.degree) + " < 3");
        const BigInt lhs = big(n.points) * (n.dim + 1);
        const BigInt rhs = binom(n.dim + n.degree, n.dim);
        if (lhs < rhs)
          return reject(n, "(N+1)s = " + lhs.get_str() + " < C(N+j,N) = " + rhs.get_str());
        if (alexander_hirschowitz_exception(n.dim, n.degree, n.points))
          return reject(n, "(N, j, s) is an Alexander-Hirschowitz exception");
        return claim(n, Rational(BigInt(n.dim + n.degree), BigInt(n.dim + 1)));
      }

      case Rule::Decomposition: {
        if (n.child) return reject(n, "decomposition node has a single-child link");
        if (n.dim < 2) return reject(n, "decomposition needs N >= 2");
        if (n.k < 1) return reject(n, "k must be >= 1");
        if (n.parts.size() != static_cast<std::size_t>(n.k) + 1)
          return reject(n, "expected k+1 = " + std::to_string(n.k + 1) + " parts, got " +
                               std::to_string(n.parts.size()));
        const Rational lo(n.k);
        const Rational hi(n.k + 1);
        BigInt total = 0;
        Rational reciprocal_sum;
        for (std::size_t j = 0; j < n.parts.size(); ++j) {
          const auto& part = n.parts[j];
          const CertNode& c = *part.proof;
          const std::string tag = "part " + std::to_string(j + 1) + ": ";
          if (c.dim != n.dim - 1) return reject(n, tag + "child dimension must be N-1");
          if (c.points != part.points)
            return reject(n, tag + "r_j = " + std::to_string(part.points) + " but child proves s = " +
                                 std::to_string(c.points));
          if (part.points < 1) return reject(n, tag + "r_j must be >= 1");
          if (part.weight > c.value)
            return reject(n, tag + "a_j = " + part.weight.str() + " exceeds certified " + c.value.str());
          total += part.points;
          const bool last = j + 1 == n.parts.size();
          if (!last) {
            if (part.weight < lo) return reject(n, tag + "a_j = " + part.weight.str() + " < k");
            if (part.weight > hi) return reject(n, tag + "a_j = " + part.weight.str() + " > k+1");
            reciprocal_sum += part.weight.reciprocal();
          } else if (part.weight > hi) {
            return reject(n, tag + "a_{k+1} = " + part.weight.str() + " > k+1");
          }
        }
        if (!(n.parts.front().weight > lo)) return reject(n, "a_1 = " + n.parts.front().weight.str() + " is not > k");
        if (total > big(n.points))
          return reject(n, "sum r_j = " + total.get_str() + " > s = " + std::to_string(n.points));
        return claim(n, (Rational(1) - reciprocal_sum) * n.parts.back().weight + lo);
      }
    }
    return reject(n, "unknown rule");
  }

  const FactTable& facts_;
  std::unordered_map<const CertNode*, bool> done_;
  bool failed_ = false;
  std::string node_;
  std::string reason_;
};

}  // namespace

CheckResult check_certificate(const CertPtr& root, const FactTable& facts) { return Checker(facts).run(root); }

}  // namespace waldcert
