#include "waldcert/certificate.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace waldcert {

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "Axiom";
    case Rule::Trivial: return "Trivial";
    case Rule::Monotone: return "Monotone";
    case Rule::Doubling: return "Doubling";
    case Rule::ChudnovskyM2: return "ChudnovskyM2";
    case Rule::Decomposition: return "Decomposition";
  }
  return "?";
}

CertPtr make_axiom(int dim, std::int64_t points, Rational value, std::string source) {
  auto n = std::make_shared<CertNode>();
  n->rule = Rule::Axiom;
  n->dim = dim;
  n->points = points;
  n->value = std::move(value);
  n->source = std::move(source);
  return n;
}

CertPtr make_trivial(int dim, std::int64_t points) {
  auto n = std::make_shared<CertNode>();
  n->rule = Rule::Trivial;
  n->dim = dim;
  n->points = points;
  n->value = Rational(1);
  return n;
}

CertPtr make_monotone(CertPtr child, std::int64_t points) {
  if (child->points == points) return child;
  if (child->rule == Rule::Monotone) child = child->child;
  auto n = std::make_shared<CertNode>();
  n->rule = Rule::Monotone;
  n->dim = child->dim;
  n->points = points;
  n->value = child->value;
  n->child = std::move(child);
  return n;
}

CertPtr make_doubling(CertPtr child, int times) {
  if (child->rule == Rule::Doubling) {
    times += child->times;
    child = child->child;
  }
  auto n = std::make_shared<CertNode>();
  n->rule = Rule::Doubling;
  n->dim = child->dim;
  n->times = times;
  const BigInt pts = big(child->points) * ipow(BigInt(2), static_cast<unsigned long>(child->dim) * times);
  n->points = to_int64(pts);
  n->value = child->value * Rational(ipow(BigInt(2), static_cast<unsigned long>(times)));
  n->child = std::move(child);
  return n;
}

CertPtr make_chudnovsky(int dim, std::int64_t points, int degree) {
  auto n = std::make_shared<CertNode>();
  n->rule = Rule::ChudnovskyM2;
  n->dim = dim;
  n->points = points;
  n->degree = degree;
  n->value = Rational(BigInt(dim + degree), BigInt(dim + 1));
  return n;
}

CertPtr make_decomposition(int dim, std::int64_t points, int k, std::vector<DecompositionPart> parts,
                           Rational value) {
  auto n = std::make_shared<CertNode>();
  n->rule = Rule::Decomposition;
  n->dim = dim;
  n->points = points;
  n->k = k;
  n->parts = std::move(parts);
  n->value = std::move(value);
  return n;
}

namespace {

template <class F>
void for_each_child(const CertNode& n, F&& f) {
  if (n.child) f(n.child);
  for (const auto& p : n.parts)
    if (p.proof) f(p.proof);
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

class Writer {
 public:
  explicit Writer(const CertPtr& root) {
    count(root);
    assign(root);
  }

  std::string run(const CertPtr& root) {
    os_ << "waldcert-certificate 1\n";
    emit(root, 0, nullptr);
    return os_.str();
  }

 private:
  void count(const CertPtr& n) {
    if (uses_[n.get()]++ > 0) return;
    for_each_child(*n, [&](const CertPtr& c) { count(c); });
  }

  void assign(const CertPtr& n) {
    if (!seen_.insert(n.get()).second) return;
    if (uses_[n.get()] > 1) ids_[n.get()] = next_id_++;
    for_each_child(*n, [&](const CertPtr& c) { assign(c); });
  }

  void emit(const CertPtr& n, int depth, const DecompositionPart* part) {
    os_ << std::string(2 * depth, ' ');
    if (part) os_ << "[r=" << part->points << " a=" << part->weight.str() << "] ";
    auto id = ids_.find(n.get());
    if (id != ids_.end()) {
      if (printed_.count(n.get())) {
        os_ << "ref @" << id->second << "\n";
        return;
      }
      printed_.insert(n.get());
      os_ << "@" << id->second << " ";
    }
    os_ << rule_name(n->rule) << " N=" << n->dim << " s=" << n->points;
    switch (n->rule) {
      case Rule::Doubling: os_ << " t=" << n->times; break;
      case Rule::ChudnovskyM2: os_ << " j=" << n->degree; break;
      case Rule::Decomposition: os_ << " k=" << n->k; break;
      default: break;
    }
    os_ << " value=" << n->value.str();
    if (n->rule == Rule::Axiom) os_ << " source=" << quote(n->source);
    os_ << "\n";
    if (n->child) emit(n->child, depth + 1, nullptr);
    for (const auto& p : n->parts) emit(p.proof, depth + 1, &p);
  }

  std::ostringstream os_;
  std::unordered_map<const CertNode*, int> uses_;
  std::unordered_map<const CertNode*, int> ids_;
  std::unordered_set<const CertNode*> seen_;
  std::unordered_set<const CertNode*> printed_;
  int next_id_ = 1;
};

struct Line {
  int lineno = 0;
  int depth = 0;
  std::string_view body;
};

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw std::invalid_argument("certificate line " + std::to_string(lineno) + ": " + what);
}

std::int64_t to_i64(std::string_view s, int lineno) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(lineno, "bad integer '" + std::string(s) + "'");
  return v;
}

std::string_view take_word(std::string_view& s) {
  const auto sp = s.find(' ');
  std::string_view w = s.substr(0, sp);
  s = sp == std::string_view::npos ? std::string_view{} : s.substr(sp + 1);
  return w;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  CertPtr run() {
    if (lines_.empty()) throw std::invalid_argument("empty certificate");
    auto root = node(0, nullptr);
    if (pos_ != lines_.size()) fail(lines_[pos_].lineno, "unexpected trailing node");
    return root;
  }

 private:
  CertPtr node(int depth, DecompositionPart* part) {
    if (pos_ >= lines_.size()) fail(lines_.empty() ? 0 : lines_.back().lineno, "missing child node");
    const Line& ln = lines_[pos_++];
    if (ln.depth != depth) fail(ln.lineno, "unexpected indentation");
    std::string_view body = ln.body;

    if (body.starts_with("[")) {
      if (!part) fail(ln.lineno, "part annotation outside a decomposition");
      const auto close = body.find("] ");
      if (close == std::string_view::npos) fail(ln.lineno, "unterminated part annotation");
      std::string_view ann = body.substr(1, close - 1);
      body = body.substr(close + 2);
      const auto r = take_word(ann);
      const auto a = take_word(ann);
      if (!r.starts_with("r=") || !a.starts_with("a=") || !ann.empty()) fail(ln.lineno, "bad part annotation");
      part->points = to_i64(r.substr(2), ln.lineno);
      try {
        part->weight = Rational::parse(a.substr(2));
      } catch (const std::exception& e) {
        fail(ln.lineno, e.what());
      }
    } else if (part) {
      fail(ln.lineno, "decomposition child without [r= a=] annotation");
    }

    if (body.starts_with("ref @")) {
      const auto id = to_i64(body.substr(5), ln.lineno);
      auto it = labels_.find(id);
      if (it == labels_.end()) fail(ln.lineno, "reference to unknown node @" + std::to_string(id));
      return it->second;
    }

    std::int64_t label = 0;
    if (body.starts_with("@")) {
      label = to_i64(take_word(body).substr(1), ln.lineno);
      if (labels_.count(label)) fail(ln.lineno, "duplicate label @" + std::to_string(label));
    }

    auto n = std::make_shared<CertNode>();
    const std::string_view rule = take_word(body);
    bool known = false;
    for (Rule r : {Rule::Axiom, Rule::Trivial, Rule::Monotone, Rule::Doubling, Rule::ChudnovskyM2,
                   Rule::Decomposition}) {
      if (rule == rule_name(r)) {
        n->rule = r;
        known = true;
      }
    }
    if (!known) fail(ln.lineno, "unknown rule '" + std::string(rule) + "'");

    bool have_value = false;
    while (!body.empty()) {
      if (body.starts_with("source=")) {
        std::string_view q = body.substr(7);
        if (!q.starts_with("\"")) fail(ln.lineno, "source must be quoted");
        std::size_t i = 1;
        bool closed = false;
        while (i < q.size()) {
          char c = q[i++];
          if (c == '"') {
            closed = true;
            break;
          }
          if (c == '\\' && i < q.size()) c = q[i++];
          n->source.push_back(c);
        }
        if (!closed || i != q.size()) fail(ln.lineno, "bad source string");
        body = {};
        break;
      }
      const auto kv = take_word(body);
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) fail(ln.lineno, "expected key=value, got '" + std::string(kv) + "'");
      const auto key = kv.substr(0, eq);
      const auto val = kv.substr(eq + 1);
      if (key == "N") {
        n->dim = static_cast<int>(to_i64(val, ln.lineno));
      } else if (key == "s") {
        n->points = to_i64(val, ln.lineno);
      } else if (key == "t") {
        n->times = static_cast<int>(to_i64(val, ln.lineno));
      } else if (key == "j") {
        n->degree = static_cast<int>(to_i64(val, ln.lineno));
      } else if (key == "k") {
        n->k = static_cast<int>(to_i64(val, ln.lineno));
      } else if (key == "value") {
        try {
          n->value = Rational::parse(val);
        } catch (const std::exception& e) {
          fail(ln.lineno, e.what());
        }
        have_value = true;
      } else {
        fail(ln.lineno, "unknown key '" + std::string(key) + "'");
      }
    }
    if (!have_value) fail(ln.lineno, "missing value");

    switch (n->rule) {
      case Rule::Monotone:
      case Rule::Doubling: n->child = node(depth + 1, nullptr); break;
      case Rule::Decomposition: {
        if (n->k < 1 || n->k > 64) fail(ln.lineno, "decomposition k out of range");
        n->parts.resize(static_cast<std::size_t>(n->k) + 1);
        for (auto& p : n->parts) p.proof = node(depth + 1, &p);
        break;
      }
      default: break;
    }
    CertPtr out = std::move(n);
    if (label) labels_[label] = out;
    return out;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::map<std::int64_t, CertPtr> labels_;
};

}  // namespace

std::string serialize_certificate(const CertPtr& root) {
  Writer w(root);
  return w.run(root);
}

CertPtr parse_certificate(std::string_view text) {
  std::vector<Line> lines;
  int lineno = 0;
  bool header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (raw.empty()) continue;
    if (!header) {
      if (raw != "waldcert-certificate 1") fail(lineno, "missing 'waldcert-certificate 1' header");
      header = true;
      continue;
    }
    std::size_t indent = 0;
    while (indent < raw.size() && raw[indent] == ' ') ++indent;
    if (indent % 2) fail(lineno, "odd indentation");
    lines.push_back({lineno, static_cast<int>(indent / 2), raw.substr(indent)});
  }
  if (!header) throw std::invalid_argument("empty certificate");
  return Reader(std::move(lines)).run();
}

std::size_t certificate_size(const CertPtr& root) {
  std::unordered_set<const CertNode*> seen;
  std::function<void(const CertPtr&)> walk = [&](const CertPtr& n) {
    if (!seen.insert(n.get()).second) return;
    for_each_child(*n, walk);
  };
  walk(root);
  return seen.size();
}

int certificate_depth(const CertPtr& root) {
  std::unordered_map<const CertNode*, int> memo;
  std::function<int(const CertPtr&)> depth = [&](const CertPtr& n) -> int {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    int d = 0;
    for_each_child(*n, [&](const CertPtr& c) { d = std::max(d, depth(c)); });
    return memo[n.get()] = d + 1;
  };
  return depth(root);
}

}  // namespace waldcert
