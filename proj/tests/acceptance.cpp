// Acceptance run: one PASS/FAIL line per criterion. Exits 1 if any fails.

#include "support/mutate.hpp"
#include "waldcert/checker.hpp"
#include "waldcert/demailly.hpp"
#include "waldcert/oracle.hpp"
#include "waldcert/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace waldcert;

namespace {

constexpr double kCaseSeconds = 5.0;
constexpr double kCorollarySeconds = 60.0;
constexpr double kWeakSeconds = 120.0;
constexpr int kThresholdSamples = 1000;
constexpr int kWeakSamples = 200;
constexpr int kOracleSeeds = 20;
constexpr int kOracleAgreePercent = 95;
constexpr int kMutations = 10000;
constexpr std::int64_t kLemmaMaxK = 60;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << name << ": " << detail << std::endl;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

std::int64_t pow_int(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

void case_table() {
  Stopwatch clock;
  Prover prover(default_facts());
  const auto table = reproduce_cases(prover);
  const double elapsed = clock.seconds();
  std::ostringstream detail;
  detail << table.rows.size() << " rows, dominated " << (table.all_dominate() ? "yes" : "no") << ", strict "
         << (table.all_strict() ? "yes" : "no");
  for (const auto& r : table.rows)
    for (auto s : r.strict_failures) detail << " [not strict at N=" << r.row.dim << " s=" << s << "]";
  detail << ", " << fmt_seconds(elapsed);
  report(1, "case table", table.all_dominate() && table.all_strict() && elapsed < kCaseSeconds, detail.str());
}

void corollary() {
  Stopwatch clock;
  Prover prover(default_facts());
  std::int64_t queries = 0, unproven = 0;
  for (int n = 3; n <= 7; ++n) {
    const std::int64_t top = pow_int(3, n);
    for (std::int64_t s = top; s >= 1; --s) {
      ++queries;
      if (!demailly_verdict(prover, {n, s, 3, Variant::Strict}).proven()) ++unproven;
    }
  }
  const double elapsed = clock.seconds();
  report(2, "strict verdicts for 3 <= N <= 7, s <= 3^N", unproven == 0 && elapsed < kCorollarySeconds,
         std::to_string(queries) + " queries, " + std::to_string(unproven) + " not proven, " + fmt_seconds(elapsed));
}

void thresholds() {
  const std::pair<int, std::int64_t> expected[] = {{4, 1296}, {5, 3125}, {6, 15625}, {7, 16384}};
  std::mt19937_64 rng(41);
  bool ok = true;
  std::ostringstream detail;
  for (const auto& [n, want] : expected) {
    const BigInt got = uniform_general_threshold(n, 3);
    if (got != BigInt(want)) ok = false;
    // Log-uniform over [T, 10^6 T].
    std::uniform_real_distribution<double> exponent(0.0, 6.0);
    int passed = 0;
    for (int i = 0; i < kThresholdSamples; ++i) {
      const auto s = static_cast<std::int64_t>(std::floor(static_cast<double>(want) * std::pow(10.0, exponent(rng))));
      if (general_threshold_check(n, 3, std::max(s, want)).passes) ++passed;
    }
    if (passed != kThresholdSamples) ok = false;
    detail << "N=" << n << " T=" << got.get_str() << " " << passed << "/" << kThresholdSamples << "; ";
  }
  report(3, "uniform thresholds", ok, detail.str());
}

void inequalities() {
  const auto t = reproduce_inequalities();
  bool ok = t.base_left == BigInt(295245) && t.base_right == BigInt(319770) && t.base_left < t.base_right;
  std::ostringstream detail;
  for (const auto& r : t.rows) {
    ok = ok && r.holds_on_range;
    detail << "variant " << r.variant << " on " << r.from << ".." << r.to << (r.holds_on_range ? " holds" : " fails")
           << "; ";
  }
  detail << t.base_left.get_str() << " < " << t.base_right.get_str();
  report(4, "binomial inequality family", ok, detail.str());
}

void lemma31_grid() {
  std::int64_t checked = 0, broken = 0;
  for (int n = 3; n <= 12; ++n) {
    for (int m = 1; m <= 6; ++m) {
      for (std::int64_t k = 1; k < kLemmaMaxK; ++k) {
        // Stop once (k+1)^N no longer fits in 63 bits.
        if (std::log2(static_cast<double>(k + 1)) * n >= 62.0) break;
        const std::int64_t lo = pow_int(k, n);
        const std::int64_t hi = pow_int(k + 1, n) - 1;
        for (std::int64_t s : {lo, hi}) {
          const auto r = lemma31_check(n, m, k, s);
          if (!r.threshold.passes) continue;
          ++checked;
          if (!r.holds) ++broken;
        }
      }
    }
  }
  report(5, "direct binomial verification grid", checked > 0 && broken == 0,
         std::to_string(checked) + " condition-passing points, " + std::to_string(broken) + " failures");
}

// Strata are the log-spaced intervals of [1, 3^N]; one seeded draw per stratum.
std::vector<std::int64_t> stratified_sample(int n, std::mt19937_64& rng) {
  const double top = std::pow(3.0, n);
  std::vector<std::int64_t> out;
  std::int64_t prev = 0;
  for (int i = 0; i < kWeakSamples; ++i) {
    const auto lo = std::max<std::int64_t>(prev + 1, static_cast<std::int64_t>(std::pow(top, double(i) / kWeakSamples)));
    const auto hi = std::max<std::int64_t>(lo, static_cast<std::int64_t>(std::pow(top, double(i + 1) / kWeakSamples)));
    const std::int64_t s = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    out.push_back(s);
    prev = s;
  }
  return out;
}

void weak_prover() {
  Stopwatch clock;
  Prover prover(default_facts());
  WeakDemaillyProver weak(prover);
  std::mt19937_64 rng(44);
  std::int64_t queries = 0, unproven = 0, rejected = 0;
  for (int n = 8; n <= 20; ++n) {
    for (std::int64_t s : stratified_sample(n, rng)) {
      ++queries;
      const auto v = weak.verdict(n, s);
      if (!v.proven()) ++unproven;
      if (!check_certificate(v.achieved.certificate, prover.facts()).accepted) ++rejected;
    }
  }
  const double elapsed = clock.seconds();
  report(6, "weak prover for 8 <= N <= 20", unproven == 0 && rejected == 0 && elapsed < kWeakSeconds,
         std::to_string(queries) + " queries, " + std::to_string(unproven) + " not proven, " +
             std::to_string(rejected) + " certificates rejected, " + fmt_seconds(elapsed));
}

void oracle() {
  struct Tuple {
    int n;
    std::int64_t s;
    int m;
  };
  const Tuple agree[] = {{2, 4, 2}, {2, 6, 2}, {3, 8, 2}, {3, 27, 3}, {4, 15, 3}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& t : agree) {
    const auto run = run_oracle(t.n, t.s, t.m, kDefaultPrime, kOracleSeeds);
    int equal = 0;
    for (int a : run.alphas)
      if (a == run.alpha_upper) ++equal;
    if (equal * 100 < kOracleAgreePercent * kOracleSeeds) ok = false;
    detail << "(" << t.n << "," << t.s << "," << t.m << ") " << equal << "/" << kOracleSeeds << "; ";
  }
  const auto exception = run_oracle(2, 5, 2, kDefaultPrime, kOracleSeeds);
  int below = 0;
  for (int a : exception.alphas)
    if (a == 4 && exception.alpha_upper == 5) ++below;
  if (below != kOracleSeeds) ok = false;
  detail << "(2,5,2) 4 < 5 in " << below << "/" << kOracleSeeds;
  report(7, "oracle agreement", ok, detail.str());
}

void mutations() {
  Prover prover(default_facts());
  WeakDemaillyProver weak(prover);
  std::vector<CertPtr> pool;
  for (auto [n, s] : {std::pair{4, 15}, {4, 48}, {5, 130}, {6, 320}, {7, 1400}, {5, 60}, {6, 500}, {3, 27}})
    pool.push_back(prover.lower_bound(n, s).certificate);
  for (auto [n, s] : {std::pair{8, 500}, {12, 13}, {16, 200}, {10, 3000}})
    pool.push_back(weak.verdict(n, s).achieved.certificate);
  int invalid_seed = 0;
  for (const auto& c : pool)
    if (!check_certificate(c, prover.facts()).accepted) ++invalid_seed;
  std::mt19937_64 rng(8);
  int accepted = 0;
  std::string first;
  for (int i = 0; i < kMutations; ++i) {
    const auto m = testing::mutate_once(pool[rng() % pool.size()], rng);
    if (check_certificate(m.cert, prover.facts()).accepted && accepted++ == 0) first = m.description;
  }
  report(8, "certificate mutation fuzz", invalid_seed == 0 && accepted == 0,
         std::to_string(kMutations) + " mutations, " + std::to_string(accepted) + " accepted" +
             (first.empty() ? "" : " (first: " + first + ")"));
}

}  // namespace

int main() {
  case_table();
  corollary();
  thresholds();
  inequalities();
  lemma31_grid();
  weak_prover();
  oracle();
  mutations();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
