#include "waldcert/facts.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace waldcert {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 4> kFamilyNames{{
    {Family::PowerOfTwo, "pow2"},
    {Family::NPlusThree, "n_plus_3"},
    {Family::DemaillyFewPoints, "demailly_few_points"},
    {Family::DemaillyM3Large, "demailly_m3_many_points"},
}};

struct Token {
  std::string text;
  bool quoted = false;
};

std::vector<Token> tokenize(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    Token tok;
    if (c == '"') {
      tok.quoted = true;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char d = line[i++];
        if (d == '"') {
          closed = true;
          break;
        }
        if (d == '\\') {
          if (i >= line.size()) break;
          d = line[i++];
        }
        tok.text.push_back(d);
      }
      if (!closed) throw FactError(FactError::Kind::Parse, lineno, "unterminated string");
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') tok.text.push_back(line[i++]);
    }
    out.push_back(std::move(tok));
  }
  return out;
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

std::int64_t parse_count(const Token& t, int lineno, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(t.text, &used);
    if (used != t.text.size() || t.quoted) throw std::invalid_argument(t.text);
    return v;
  } catch (const std::exception&) {
    throw FactError(FactError::Kind::Parse, lineno, std::string("bad ") + what + " '" + t.text + "'");
  }
}

const Token& expect(const std::vector<Token>& toks, std::size_t i, std::string_view keyword, int lineno) {
  if (i >= toks.size()) throw FactError(FactError::Kind::Parse, lineno, "missing '" + std::string(keyword) + "'");
  if (!keyword.empty() && (toks[i].text != keyword || toks[i].quoted))
    throw FactError(FactError::Kind::Parse, lineno,
                    "expected '" + std::string(keyword) + "', got '" + toks[i].text + "'");
  return toks[i];
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& [fam, n] : kFamilyNames)
    if (n == name) return fam;
  return std::nullopt;
}

FactError::FactError(Kind kind, int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line) {}

const FactRecord* FactTable::find(int space_dim, std::int64_t points) const {
  auto it = std::lower_bound(records_.begin(), records_.end(), std::pair{space_dim, points},
                             [](const FactRecord& r, const std::pair<int, std::int64_t>& key) {
                               return std::pair{r.space_dim, r.points} < key;
                             });
  if (it != records_.end() && it->space_dim == space_dim && it->points == points) return &*it;
  return nullptr;
}

const FamilyRecord* FactTable::family(Family f) const {
  for (const auto& rec : families_)
    if (rec.family == f) return &rec;
  return nullptr;
}

std::vector<AxiomFact> FactTable::axioms_at(int space_dim, std::int64_t points) const {
  std::vector<AxiomFact> out;
  if (const auto* rec = find(space_dim, points)) out.push_back({rec->bound, rec->source});
  if (const auto* fam = family(Family::PowerOfTwo); fam && space_dim < 63 && points == (std::int64_t{1} << space_dim))
    out.push_back({Rational(2), fam->source});
  if (const auto* fam = family(Family::NPlusThree); fam && points == space_dim + 3)
    out.push_back({Rational(BigInt(space_dim + 2), BigInt(space_dim)), fam->source});
  return out;
}

std::string FactTable::serialize() const {
  std::ostringstream os;
  os << "format " << format_version_ << "\n";
  for (const auto& r : records_) {
    os << "N " << r.space_dim << " s " << r.points << " bound " << r.bound.fraction() << " source " << quote(r.source);
    if (r.truncated) os << " truncated";
    os << "\n";
  }
  for (const auto& f : families_) os << "family " << family_name(f.family) << " source " << quote(f.source) << "\n";
  return os.str();
}

std::uint64_t FactTable::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

FactTable parse_facts(std::string_view text) {
  FactTable table;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    const auto toks = tokenize(line, lineno);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;

    if (head == "format") {
      const auto version = parse_count(expect(toks, 1, "", lineno), lineno, "format version");
      if (version != kFactFormatVersion)
        throw FactError(FactError::Kind::Parse, lineno, "unsupported format version " + std::to_string(version));
      if (toks.size() != 2) throw FactError(FactError::Kind::Parse, lineno, "trailing tokens after format");
      table.format_version_ = static_cast<int>(version);
    } else if (head == "family") {
      const auto fam = family_from_name(expect(toks, 1, "", lineno).text);
      if (!fam) throw FactError(FactError::Kind::Parse, lineno, "unknown family '" + toks[1].text + "'");
      expect(toks, 2, "source", lineno);
      const Token& src = expect(toks, 3, "", lineno);
      if (!src.quoted || src.text.empty())
        throw FactError(FactError::Kind::Parse, lineno, "source must be a nonempty quoted string");
      if (toks.size() != 4) throw FactError(FactError::Kind::Parse, lineno, "trailing tokens after source");
      if (table.has_family(*fam))
        throw FactError(FactError::Kind::Conflict, lineno, "duplicate family '" + toks[1].text + "'");
      table.families_.push_back({*fam, src.text});
    } else if (head == "N") {
      FactRecord rec;
      rec.space_dim = static_cast<int>(parse_count(expect(toks, 1, "", lineno), lineno, "N"));
      expect(toks, 2, "s", lineno);
      rec.points = parse_count(expect(toks, 3, "", lineno), lineno, "s");
      expect(toks, 4, "bound", lineno);
      const Token& b = expect(toks, 5, "", lineno);
      if (b.text.find('/') == std::string::npos)
        throw FactError(FactError::Kind::Parse, lineno, "bound must be <int>/<int>, got '" + b.text + "'");
      try {
        rec.bound = Rational::parse(b.text);
      } catch (const std::exception& e) {
        throw FactError(FactError::Kind::Parse, lineno, e.what());
      }
      expect(toks, 6, "source", lineno);
      const Token& src = expect(toks, 7, "", lineno);
      if (!src.quoted || src.text.empty())
        throw FactError(FactError::Kind::Parse, lineno, "source must be a nonempty quoted string");
      rec.source = src.text;
      if (toks.size() == 9 && toks[8].text == "truncated" && !toks[8].quoted)
        rec.truncated = true;
      else if (toks.size() != 8)
        throw FactError(FactError::Kind::Parse, lineno, "trailing tokens after source");

      if (rec.space_dim < 2) throw FactError(FactError::Kind::Range, lineno, "N must be >= 2");
      if (rec.points < 1) throw FactError(FactError::Kind::Range, lineno, "s must be >= 1");
      if (rec.bound < Rational(1)) throw FactError(FactError::Kind::Range, lineno, "bound below 1: " + rec.bound.str());
      if (table.find(rec.space_dim, rec.points))
        throw FactError(FactError::Kind::Conflict, lineno,
                        "duplicate key N=" + std::to_string(rec.space_dim) + " s=" + std::to_string(rec.points));
      auto at = std::upper_bound(table.records_.begin(), table.records_.end(), rec, [](const auto& a, const auto& b) {
        return std::pair{a.space_dim, a.points} < std::pair{b.space_dim, b.points};
      });
      table.records_.insert(at, std::move(rec));
    } else {
      throw FactError(FactError::Kind::Parse, lineno, "unknown directive '" + head + "'");
    }
  }
  std::sort(table.families_.begin(), table.families_.end(),
            [](const auto& a, const auto& b) { return a.family < b.family; });
  return table;
}

FactTable load_facts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FactError(FactError::Kind::Io, 0, "cannot open fact file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_facts(buf.str());
}

const FactTable& default_facts() {
  static const FactTable table = parse_facts(default_facts_text());
  return table;
}

std::optional<Rational> query_fact(const FactTable& table, int space_dim, std::int64_t points) {
  std::optional<Rational> best;
  for (const auto& ax : table.axioms_at(space_dim, points))
    if (!best || ax.bound > *best) best = ax.bound;
  return best;
}

}  // namespace waldcert
