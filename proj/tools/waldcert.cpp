// waldcert: command-line front end.
//
// Exit codes: 0 proven / true / accept, 1 inconclusive / false / reject,
// 2 usage or input error.

#include "waldcert/bounds.hpp"
#include "waldcert/checker.hpp"
#include "waldcert/demailly.hpp"
#include "waldcert/facts.hpp"
#include "waldcert/oracle.hpp"
#include "waldcert/report.hpp"
#include "waldcert/reproduce.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace waldcert;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string facts_path;
  bool json = false;
  int budget = SearchBudget{}.max_candidates;
  std::string cert_out;
};

FactTable load(const Globals& g) { return g.facts_path.empty() ? default_facts() : load_facts(g.facts_path); }

void emit_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

void write_certificate(const Globals& g, const CertPtr& cert) {
  if (g.cert_out.empty()) return;
  std::ofstream out(g.cert_out);
  if (!out) throw std::runtime_error("cannot write " + g.cert_out);
  out << serialize_certificate(cert);
}

int run_bound(const Globals& g, int dim, std::int64_t points) {
  Prover prover(load(g), SearchBudget{SearchBudget{}.max_k, g.budget});
  const auto b = prover.lower_bound(dim, points);
  write_certificate(g, b.certificate);
  if (g.json) {
    emit_json(bound_json(b));
  } else {
    std::cout << bound_text(b) << "certificate:\n" << serialize_certificate(b.certificate);
  }
  return kYes;
}

int run_verify(const Globals& g, int dim, std::int64_t points, int multiplicity, bool weak) {
  Prover prover(load(g), SearchBudget{SearchBudget{}.max_k, g.budget});
  const auto v = demailly_verdict(prover, {dim, points, multiplicity, weak ? Variant::Weak : Variant::Strict});
  write_certificate(g, v.achieved.certificate);
  if (g.json) {
    emit_json(verdict_json(v));
  } else {
    std::cout << verdict_text(v) << "certificate:\n" << serialize_certificate(v.achieved.certificate);
  }
  return v.proven() ? kYes : kNo;
}

int run_threshold(const Globals& g, int dim, int multiplicity, std::optional<std::int64_t> points) {
  if (!points) {
    const BigInt s = uniform_general_threshold(dim, multiplicity);
    if (g.json) {
      emit_json({{"N", dim}, {"m", multiplicity}, {"threshold", s.get_str()}});
    } else {
      std::cout << "N: " << dim << "\nm: " << multiplicity << "\nthreshold: " << s.get_str() << '\n';
    }
    return kYes;
  }
  const auto r = general_threshold_check(dim, multiplicity, *points);
  const auto reg = trung_valla_reg(dim, *points, multiplicity);
  const auto margin = containment_margin(dim, *points, multiplicity);
  if (g.json) {
    emit_json({{"threshold", threshold_json(r)}, {"regularity", regularity_json(reg, margin)}});
  } else {
    std::cout << threshold_text(r) << regularity_text(reg, margin);
  }
  return r.passes ? kYes : kNo;
}

std::int64_t parse_int(const std::string& text) {
  std::size_t used = 0;
  const long long v = std::stoll(text, &used);
  if (used != text.size()) throw std::invalid_argument("not an integer: " + text);
  return v;
}

int run_lemma(const Globals& g, const std::string& id, const std::vector<std::string>& params) {
  auto need = [&](std::size_t n, const char* usage) {
    if (params.size() != n) throw CLI::ValidationError(id, std::string("expects ") + usage);
  };
  std::vector<std::int64_t> p;
  for (const auto& s : params) p.push_back(parse_int(s));
  auto answer = [&](bool truth, nlohmann::json extra) {
    extra["lemma"] = id;
    extra["holds"] = truth;
    if (g.json) {
      emit_json(extra);
    } else {
      std::cout << "lemma: " << id << "\nholds: " << (truth ? "true" : "false") << '\n';
    }
    return truth ? kYes : kNo;
  };
  if (id == "3.1") {
    need(4, "N m k s");
    const auto r = lemma31_check(static_cast<int>(p[0]), static_cast<int>(p[1]), p[2], p[3]);
    if (g.json) {
      auto j = lemma31_json(r);
      j["lemma"] = id;
      emit_json(j);
    } else {
      std::cout << "lemma: " << id << '\n' << lemma31_text(r);
    }
    return r.holds ? kYes : kNo;
  }
  if (id == "4.2.1" || id == "4.2.2" || id == "4.2.3") {
    need(1, "N");
    const int variant = id.back() - '0';
    return answer(lemma42_certify(variant, static_cast<int>(p[0])), {{"N", p[0]}, {"variant", variant}});
  }
  if (id == "4.4.case1") {
    need(2, "N ell");
    return answer(case1_inequality(static_cast<int>(p[0]), static_cast<int>(p[1])), {{"N", p[0]}, {"ell", p[1]}});
  }
  if (id == "4.4.case2") {
    need(2, "N ell");
    return answer(case2_inequality(static_cast<int>(p[0]), static_cast<int>(p[1])), {{"N", p[0]}, {"ell", p[1]}});
  }
  throw CLI::ValidationError("lemma", "unknown lemma id " + id);
}

int run_reproduce(const Globals& g, const std::string& what) {
  if (what == "section5") {
    Prover prover(load(g), SearchBudget{SearchBudget{}.max_k, g.budget});
    const auto t = reproduce_cases(prover);
    if (g.json) emit_json(t.json());
    else std::cout << t.text();
    return t.all_dominate() && t.all_strict() ? kYes : kNo;
  }
  if (what == "corollary4.1") {
    const auto t = reproduce_thresholds();
    if (g.json) emit_json(t.json());
    else std::cout << t.text();
    bool ok = true;
    for (const auto& r : t.rows) ok = ok && r.passes_at_threshold;
    return ok ? kYes : kNo;
  }
  if (what == "lemma4.2") {
    const auto t = reproduce_inequalities();
    if (g.json) emit_json(t.json());
    else std::cout << t.text();
    bool ok = t.base_left < t.base_right;
    for (const auto& r : t.rows) ok = ok && r.holds_on_range;
    return ok ? kYes : kNo;
  }
  throw CLI::ValidationError("reproduce", "unknown table " + what);
}

int run_oracle_cmd(const Globals& g, int dim, std::int64_t points, int multiplicity, std::uint64_t prime, int seeds) {
  const auto run = run_oracle(dim, points, multiplicity, prime, seeds);
  if (g.json) emit_json(oracle_json(run));
  else std::cout << oracle_csv(run);
  for (int a : run.alphas)
    if (a > run.alpha_upper) return kNo;
  return kYes;
}

int run_check(const Globals& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto cert = parse_certificate(buf.str());
  const auto r = check_certificate(cert, load(g));
  if (g.json) {
    emit_json({{"accepted", r.accepted}, {"node", r.node}, {"reason", r.reason}});
  } else if (r.accepted) {
    std::cout << "accept: " << rule_name(cert->rule) << " N=" << cert->dim << " s=" << cert->points
              << " value=" << cert->value.str() << '\n';
  } else {
    std::cout << "reject: " << r.node << ": " << r.reason << '\n';
  }
  return r.accepted ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lower bounds for Waldschmidt constants of very general points"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--facts", g.facts_path, "Fact table file (default: the built-in table)");
  app.add_flag("--json", g.json, "Emit JSON");
  app.add_option("--budget", g.budget, "Child candidates kept per decomposition slot")->check(CLI::PositiveNumber);

  int dim = 0, multiplicity = 3;
  std::int64_t points = 0;
  std::optional<std::int64_t> maybe_points;
  bool weak = false;
  std::string lemma_id, table, path;
  std::vector<std::string> params;
  std::uint64_t prime = kDefaultPrime;
  int seeds = 20;

  auto* bound = app.add_subcommand("bound", "Certified lower bound for (N, s)");
  bound->add_option("N", dim)->required();
  bound->add_option("s", points)->required();
  bound->add_option("--cert-out", g.cert_out, "Write the certificate to this file");

  auto* verify = app.add_subcommand("verify", "Demailly verdict for (N, s, m)");
  verify->add_option("N", dim)->required();
  verify->add_option("s", points)->required();
  verify->add_option("m", multiplicity)->required();
  verify->add_flag("--weak", weak, "Weak variant (m = 3)");
  verify->add_option("--cert-out", g.cert_out, "Write the certificate to this file");

  auto* threshold = app.add_subcommand("threshold", "General-points threshold for (N, m), or the check at s");
  threshold->add_option("N", dim)->required();
  threshold->add_option("m", multiplicity)->required();
  threshold->add_option("s", maybe_points);

  auto* lemma = app.add_subcommand("certify-lemma", "Exact inequality checks");
  lemma->add_option("id", lemma_id, "3.1 | 4.2.1 | 4.2.2 | 4.2.3 | 4.4.case1 | 4.4.case2")->required();
  lemma->add_option("params", params, "Integer parameters");

  auto* reproduce = app.add_subcommand("reproduce", "Reproduction tables");
  reproduce->add_option("table", table, "section5 | corollary4.1 | lemma4.2")->required();

  auto* oracle = app.add_subcommand("oracle", "Empirical initial degree over F_p");
  oracle->add_option("N", dim)->required();
  oracle->add_option("s", points)->required();
  oracle->add_option("m", multiplicity)->required();
  oracle->add_option("--prime", prime, "Field size");
  oracle->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check-cert", "Re-check a certificate file");
  check->add_option("file", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bound) return run_bound(g, dim, points);
    if (*verify) return run_verify(g, dim, points, multiplicity, weak);
    if (*threshold) return run_threshold(g, dim, multiplicity, maybe_points);
    if (*lemma) return run_lemma(g, lemma_id, params);
    if (*reproduce) return run_reproduce(g, table);
    if (*oracle) return run_oracle_cmd(g, dim, points, multiplicity, prime, seeds);
    if (*check) return run_check(g, path);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
