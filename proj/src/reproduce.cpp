#include "waldcert/reproduce.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

namespace waldcert {

const std::vector<CaseRow>& case_rows() {
  static const std::vector<CaseRow> rows = {
      {3, 5, 6, 8, "12/7"},     {3, 6, 9, 12, "2"},        {3, 7, 13, 16, "126/57"},  {3, 8, 17, 22, "5/2"},
      {3, 9, 23, 27, "8/3"},    {4, 5, 7, 14, "6/4"},      {4, 7, 15, 33, "1.85"},    {4, 8, 34, 47, "2"},
      {4, 10, 48, 81, "2.38"},  {5, 4, 8, 12, "24/17"},    {5, 5, 13, 22, "1.5"},     {5, 6, 23, 37, "1.689"},
      {5, 9, 38, 143, "2"},     {5, 11, 144, 243, "2.31"}, {6, 4, 9, 16, "63/47"},    {6, 5, 17, 33, "1.4117"},
      {6, 6, 34, 61, "1.5758"}, {6, 7, 62, 107, "1.8445"}, {6, 10, 108, 442, "2"},    {6, 12, 443, 729, "2.268"},
      {7, 4, 10, 22, "1.2903"}, {7, 5, 23, 47, "63/47"},   {7, 6, 48, 95, "1.4897"},  {7, 8, 96, 317, "1.7214"},
      {7, 11, 318, 1399, "2"},  {7, 13, 1400, 2187, "2.5806"},
  };
  return rows;
}

int ell_strict_left(int dim, std::int64_t points) {
  const BigInt target = big(points) * binom(dim + 2, dim);
  int ell = -1;
  while (binom(dim + ell + 1, dim) < target) ++ell;
  return ell;
}

bool CaseTable::all_dominate() const {
  for (const auto& r : rows)
    if (!r.dominates) return false;
  return true;
}

bool CaseTable::all_strict() const {
  for (const auto& r : rows)
    if (!r.strict) return false;
  return true;
}

CaseTable reproduce_cases(Prover& prover) {
  CaseTable table;
  // Largest query per dimension first so each frontier is built once.
  std::map<int, std::int64_t> widest;
  for (const auto& row : case_rows()) widest[row.dim] = std::max(widest[row.dim], row.s_hi);
  for (const auto& [dim, s] : widest) prover.lower_bound(dim, s);
  for (const auto& row : case_rows()) {
    CaseResult r;
    r.row = row;
    r.reference_value = Rational::parse(row.reference);
    r.engine = prover.lower_bound(row.dim, row.s_lo);
    r.dominates = r.engine.value >= r.reference_value;
    r.ell_consistent = true;
    std::optional<Rational> tightest;
    for (std::int64_t s = row.s_lo; s <= row.s_hi; ++s) {
      const int ell = ell_strict_left(row.dim, s);
      if (ell > row.ell_max) r.ell_consistent = false;
      const Rational required(BigInt(row.dim + ell), BigInt(row.dim + 2));
      const Rational bound = prover.lower_bound(row.dim, s).value;
      if (!(bound > required)) r.strict_failures.push_back(s);
      if (!tightest || bound - required < *tightest) {
        tightest = bound - required;
        r.tightest_s = s;
        r.tightest_bound = bound;
        r.tightest_required = required;
      }
    }
    r.strict = r.strict_failures.empty();
    table.rows.push_back(std::move(r));
  }
  return table;
}

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string CaseTable::text() const {
  std::ostringstream os;
  os << std::left << std::setw(3) << "N" << std::setw(4) << "l" << std::setw(12) << "s" << std::setw(11)
     << "reference" << std::setw(20) << "engine" << std::setw(9) << "decimal" << std::setw(6) << ">=ref" << std::setw(7)
     << "tight" << std::setw(20) << "bound there" << std::setw(10) << "required" << "strict\n";
  for (const auto& r : rows) {
    const std::string range = std::to_string(r.row.s_lo) + ".." + std::to_string(r.row.s_hi);
    os << std::left << std::setw(3) << r.row.dim << std::setw(4) << r.row.ell_max << std::setw(12) << range
       << std::setw(11) << r.row.reference << std::setw(20) << r.engine.value.str() << std::setw(9)
       << r.engine.value.decimal(4) << std::setw(6) << yes_no(r.dominates) << std::setw(7) << r.tightest_s
       << std::setw(20) << r.tightest_bound.str() << std::setw(10) << r.tightest_required.str();
    if (r.strict) {
      os << "yes\n";
    } else {
      os << "no (s =";
      for (auto s : r.strict_failures) os << ' ' << s;
      os << ")\n";
    }
  }
  os << "dominated: " << yes_no(all_dominate()) << "\nstrict: " << yes_no(all_strict()) << '\n';
  return os.str();
}

nlohmann::json CaseTable::json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"N", r.row.dim},
                         {"ell", r.row.ell_max},
                         {"s_lo", r.row.s_lo},
                         {"s_hi", r.row.s_hi},
                         {"reference", r.row.reference},
                         {"engine", r.engine.value.str()},
                         {"dominates", r.dominates},
                         {"tightest_s", r.tightest_s},
                         {"tightest_bound", r.tightest_bound.str()},
                         {"tightest_required", r.tightest_required.str()},
                         {"strict_failures", r.strict_failures},
                         {"strict", r.strict},
                         {"ell_consistent", r.ell_consistent}});
  }
  return {{"rows", rows_json}, {"all_dominate", all_dominate()}, {"all_strict", all_strict()}};
}

ThresholdTable reproduce_thresholds() {
  ThresholdTable table;
  for (int dim = 4; dim <= 10; ++dim) {
    ThresholdRow row;
    row.dim = dim;
    row.multiplicity = 3;
    row.k_min = ceil_div(BigInt(2 * (2 * 3 + dim - 1)), BigInt(dim - 1));
    row.threshold = uniform_general_threshold(dim, 3);
    row.passes_at_threshold = general_threshold_check(dim, 3, to_int64(row.threshold)).passes;
    row.fails_below = row.threshold <= 1 || !general_threshold_check(dim, 3, to_int64(row.threshold) - 1).passes;
    table.rows.push_back(row);
  }
  return table;
}

std::string ThresholdTable::text() const {
  std::ostringstream os;
  os << std::left << std::setw(4) << "N" << std::setw(4) << "m" << std::setw(7) << "k_min" << std::setw(14)
     << "threshold" << std::setw(10) << "passes" << "fails-below\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(4) << r.dim << std::setw(4) << r.multiplicity << std::setw(7) << r.k_min.get_str()
       << std::setw(14) << r.threshold.get_str() << std::setw(10) << yes_no(r.passes_at_threshold)
       << yes_no(r.fails_below) << '\n';
  }
  return os.str();
}

nlohmann::json ThresholdTable::json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"N", r.dim},
                         {"m", r.multiplicity},
                         {"k_min", r.k_min.get_str()},
                         {"threshold", r.threshold.get_str()},
                         {"passes_at_threshold", r.passes_at_threshold},
                         {"fails_below", r.fails_below}});
  }
  return {{"rows", rows_json}};
}

InequalityTable reproduce_inequalities() {
  InequalityTable table;
  for (auto [variant, from] : {std::pair{1, 8}, std::pair{2, 8}, std::pair{3, 30}}) {
    InequalityRow row{variant, from, 200, true, std::nullopt, std::nullopt};
    for (int n = from; n <= 200; ++n) {
      if (!lemma42_certify(variant, n)) {
        row.holds_on_range = false;
        if (!row.first_failure) row.first_failure = n;
      }
    }
    for (int n = from - 1; n >= 1; --n) {
      if (!lemma42_certify(variant, n)) {
        row.last_failure_below = n;
        break;
      }
    }
    table.rows.push_back(row);
  }
  table.base_left = ipow(BigInt(3), 8) * binom(10, 8);
  table.base_right = binom(22, 8);
  table.top_left_statement = ipow(BigInt(3), 30) * binom(32, 2);
  table.top_left_printed = ipow(BigInt(3), 30) * binom(32, 20);
  table.top_right = binom(60, 30);
  return table;
}

std::string InequalityTable::text() const {
  std::ostringstream os;
  os << std::left << std::setw(9) << "variant" << std::setw(10) << "range" << std::setw(7) << "holds"
     << "largest-failure-below\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(9) << r.variant << std::setw(10)
       << (std::to_string(r.from) + ".." + std::to_string(r.to)) << std::setw(7) << yes_no(r.holds_on_range)
       << (r.last_failure_below ? std::to_string(*r.last_failure_below) : "-") << '\n';
  }
  os << "3^8 C(10,8) = " << base_left.get_str() << (base_left < base_right ? " < " : " >= ") << base_right.get_str()
     << " = C(22,8)\n";
  os << "3^30 C(32,2) = " << top_left_statement.get_str() << (top_left_statement < top_right ? " < " : " >= ")
     << top_right.get_str() << " = C(60,30)\n";
  os << "3^30 C(32,20) = " << top_left_printed.get_str() << (top_left_printed < top_right ? " < " : " >= ")
     << top_right.get_str() << " = C(60,30)\n";
  return os.str();
}

nlohmann::json InequalityTable::json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j = {{"variant", r.variant}, {"from", r.from}, {"to", r.to}, {"holds", r.holds_on_range}};
    j["first_failure"] = r.first_failure ? nlohmann::json(*r.first_failure) : nlohmann::json(nullptr);
    j["largest_failure_below"] =
        r.last_failure_below ? nlohmann::json(*r.last_failure_below) : nlohmann::json(nullptr);
    rows_json.push_back(j);
  }
  return {{"rows", rows_json},
          {"base", {{"left", base_left.get_str()}, {"right", base_right.get_str()}}},
          {"top",
           {{"left_statement", top_left_statement.get_str()},
            {"left_printed", top_left_printed.get_str()},
            {"right", top_right.get_str()}}}};
}

}  // namespace waldcert
