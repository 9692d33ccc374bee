#pragma once

// Axiomatic Waldschmidt lower bounds for very general points, loaded from a
// line-oriented fact file:
//
//   # comment
//   format 1
//   N 3 s 6 bound 12/7 source "dumnicki2015containments, Prop. 11"
//   N 7 s 10 bound 12903/10000 source "..." truncated
//   family pow2 source "..."
//
// `family` lines enable parametric facts that hold in every dimension (see
// Family). Point facts are keyed by (N, s); keys are unique per table.

#include "waldcert/exactmath.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace waldcert {

inline constexpr int kFactFormatVersion = 1;

enum class FactKind { PointFact, RuleParameter };

enum class Family {
  PowerOfTwo,         // â(P^N, 2^N) >= 2
  NPlusThree,         // â(P^N, N+3) >= (N+2)/N
  DemaillyFewPoints,  // Demailly holds for s <= N+2, every m
  DemaillyM3Large,    // Demailly (m = 3) holds for s >= 3^N
};

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct FactRecord {
  int space_dim = 0;
  std::int64_t points = 0;
  Rational bound;
  std::string source;
  FactKind kind = FactKind::PointFact;
  bool truncated = false;  // stored from below a printed decimal

  friend bool operator==(const FactRecord&, const FactRecord&) = default;
};

struct FamilyRecord {
  Family family;
  std::string source;

  friend bool operator==(const FamilyRecord&, const FamilyRecord&) = default;
};

/// A fact usable as a certificate leaf at exactly (N, s).
struct AxiomFact {
  Rational bound;
  std::string source;
};

class FactError : public std::runtime_error {
 public:
  enum class Kind { Parse, Conflict, Range, Io };
  FactError(Kind kind, int line, const std::string& what);
  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

class FactTable {
 public:
  FactTable() = default;

  int format_version() const { return format_version_; }
  /// Point facts sorted by (space_dim, points).
  const std::vector<FactRecord>& records() const { return records_; }
  const std::vector<FamilyRecord>& families() const { return families_; }

  const FactRecord* find(int space_dim, std::int64_t points) const;
  const FamilyRecord* family(Family f) const;
  bool has_family(Family f) const { return family(f) != nullptr; }

  /// Every axiom applicable at exactly (N, s): the point fact plus any family
  /// instance, in a fixed order.
  std::vector<AxiomFact> axioms_at(int space_dim, std::int64_t points) const;

  /// Canonical text; parse(serialize()) == *this.
  std::string serialize() const;
  /// FNV-1a over serialize().
  std::uint64_t hash() const;

  friend bool operator==(const FactTable&, const FactTable&) = default;

 private:
  friend FactTable parse_facts(std::string_view text);

  int format_version_ = kFactFormatVersion;
  std::vector<FactRecord> records_;
  std::vector<FamilyRecord> families_;
};

FactTable parse_facts(std::string_view text);
FactTable load_facts(const std::filesystem::path& path);

std::string_view default_facts_text();
const FactTable& default_facts();

/// Best axiom bound at exactly (N, s); rules are never applied here.
std::optional<Rational> query_fact(const FactTable& table, int space_dim, std::int64_t points);

}  // namespace waldcert
