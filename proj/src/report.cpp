#include "waldcert/report.hpp"

#include <sstream>

namespace waldcert {

namespace {

class Record {
 public:
  template <class T>
  Record& add(const std::string& key, const T& value) {
    os_ << key << ": " << value << '\n';
    return *this;
  }
  Record& add(const std::string& key, bool value) { return add(key, value ? "true" : "false"); }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

}  // namespace

std::string bound_text(const WaldschmidtLowerBound& b) {
  return Record()
      .add("N", b.dim)
      .add("s", b.points)
      .add("lower_bound", b.value.str())
      .add("decimal", b.value.decimal(6))
      .add("rule", rule_name(b.certificate->rule))
      .add("certificate_nodes", certificate_size(b.certificate))
      .str();
}

nlohmann::json bound_json(const WaldschmidtLowerBound& b) {
  return {{"N", b.dim},
          {"s", b.points},
          {"lower_bound", b.value.str()},
          {"decimal", b.value.decimal(6)},
          {"rule", std::string(rule_name(b.certificate->rule))},
          {"certificate", serialize_certificate(b.certificate)}};
}

std::string verdict_text(const DemaillyVerdict& v) {
  return Record()
      .add("N", v.query.dim)
      .add("s", v.query.points)
      .add("m", v.query.multiplicity)
      .add("variant", variant_name(v.query.variant))
      .add("alpha_upper_bound", v.alpha_ub.degree)
      .add("ell", v.alpha_ub.ell)
      .add("required", v.required.str())
      .add("achieved", v.achieved.value.str())
      .add("status", status_name(v.status))
      .add("route", route_name(v.route))
      .add("route_detail", v.route_detail)
      .str();
}

nlohmann::json verdict_json(const DemaillyVerdict& v) {
  return {{"N", v.query.dim},
          {"s", v.query.points},
          {"m", v.query.multiplicity},
          {"variant", std::string(variant_name(v.query.variant))},
          {"alpha_upper_bound", v.alpha_ub.degree},
          {"ell", v.alpha_ub.ell},
          {"required", v.required.str()},
          {"achieved", v.achieved.value.str()},
          {"status", std::string(status_name(v.status))},
          {"route", std::string(route_name(v.route))},
          {"route_detail", v.route_detail},
          {"certificate", serialize_certificate(v.achieved.certificate)}};
}

std::string threshold_text(const GeneralThresholdReport& r) {
  return Record()
      .add("N", r.dim)
      .add("m", r.multiplicity)
      .add("s", r.points)
      .add("k", r.k)
      .add("passes", r.passes)
      .add("k5_hypothesis_met", r.k5_hypothesis_met)
      .str();
}

nlohmann::json threshold_json(const GeneralThresholdReport& r) {
  return {{"N", r.dim},         {"m", r.multiplicity},  {"s", r.points},
          {"k", r.k},           {"passes", r.passes},   {"k5_hypothesis_met", r.k5_hypothesis_met}};
}

std::string regularity_text(const RegularityReport& r, const ContainmentMargin& c) {
  return Record()
      .add("N", r.dim)
      .add("s", r.points)
      .add("m", r.multiplicity)
      .add("w", r.w)
      .add("reg_upper", r.reg_upper)
      .add("k", c.k)
      .add("asymptotic_ok", c.asymptotic_ok)
      .add("min_r", c.min_r ? std::to_string(*c.min_r) : std::string("none"))
      .str();
}

nlohmann::json regularity_json(const RegularityReport& r, const ContainmentMargin& c) {
  nlohmann::json j = {{"N", r.dim},   {"s", r.points}, {"m", r.multiplicity},          {"w", r.w},
                      {"reg_upper", r.reg_upper},       {"k", c.k}, {"asymptotic_ok", c.asymptotic_ok}};
  j["min_r"] = c.min_r ? nlohmann::json(*c.min_r) : nlohmann::json(nullptr);
  return j;
}

std::string lemma31_text(const Lemma31Report& r) {
  return Record()
      .add("holds", r.holds)
      .add("statement-as-printed", r.statement_as_printed)
      .add("printed_form_holds", r.printed_holds)
      .add("threshold_passes", r.threshold.passes)
      .add("k5_hypothesis_met", r.threshold.k5_hypothesis_met)
      .str();
}

nlohmann::json lemma31_json(const Lemma31Report& r) {
  return {{"holds", r.holds},
          {"statement-as-printed", r.statement_as_printed},
          {"printed_form_holds", r.printed_holds},
          {"threshold", threshold_json(r.threshold)}};
}

std::string oracle_csv(const OracleRun& run) {
  std::string out = postulation_csv_header() + "\n";
  for (const auto& r : run.reports) out += postulation_csv_row(r) + "\n";
  return out;
}

nlohmann::json oracle_json(const OracleRun& run) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : run.reports) {
    rows.push_back({{"seed", r.instance.seed},
                    {"d", r.degree},
                    {"rank", r.rank},
                    {"expected", r.expected_rank},
                    {"good", r.good_postulation}});
  }
  return {{"N", run.dim},
          {"s", run.points},
          {"m", run.multiplicity},
          {"p", run.prime},
          {"alpha_upper_bound", run.alpha_upper},
          {"alphas", run.alphas},
          {"agreement", run.agreement()},
          {"rows", rows}};
}

}  // namespace waldcert
