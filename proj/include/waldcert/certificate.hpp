#pragma once

// Derivation trees for Waldschmidt lower bounds. Every node claims
// "â(P^dim, points) >= value"; the checker recomputes each claim from the
// node's children and the fact table alone.
//
// Nodes are immutable and may be shared, so a certificate is a DAG. The text
// form prints each node on one line, indented two spaces per level; a node
// reached more than once is labelled `@id` at its first occurrence and
// referenced as `ref @id` afterwards:
//
//   waldcert-certificate 1
//   Monotone N=4 s=48 value=49/20
//     Decomposition N=4 s=46 k=2 value=49/20
//       [r=21 a=8/3] Axiom N=3 s=21 value=8/3 source="..."
//       ...

#include "waldcert/exactmath.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace waldcert {

enum class Rule { Axiom, Trivial, Monotone, Doubling, ChudnovskyM2, Decomposition };

std::string_view rule_name(Rule r);

struct CertNode;
using CertPtr = std::shared_ptr<const CertNode>;

/// One (r_j, a_j) entry of a decomposition: `weight` is the a_j fed to the
/// decomposition formula and may sit below the child's certified value.
struct DecompositionPart {
  std::int64_t points = 0;
  Rational weight;
  CertPtr proof;
};

struct CertNode {
  Rule rule = Rule::Trivial;
  int dim = 0;
  std::int64_t points = 0;
  Rational value;

  std::string source;  // Axiom
  int times = 0;       // Doubling: number of 2^N multiplications
  int degree = 0;      // ChudnovskyM2: j
  int k = 0;           // Decomposition
  CertPtr child;       // Monotone, Doubling
  std::vector<DecompositionPart> parts;  // Decomposition, k+1 entries
};

// Prover-side constructors. They compute the claimed value; they do not
// validate hypotheses (that is the checker's job).
CertPtr make_axiom(int dim, std::int64_t points, Rational value, std::string source);
CertPtr make_trivial(int dim, std::int64_t points);
/// Lifts `child` to `points`; collapses a Monotone child and returns `child`
/// itself when the point counts already agree.
CertPtr make_monotone(CertPtr child, std::int64_t points);
/// Applies `times` doublings; merges with a Doubling child.
CertPtr make_doubling(CertPtr child, int times);
CertPtr make_chudnovsky(int dim, std::int64_t points, int degree);
CertPtr make_decomposition(int dim, std::int64_t points, int k, std::vector<DecompositionPart> parts,
                           Rational value);

/// Deterministic text form (see file comment). parse(serialize(c)) reproduces
/// the same text byte for byte.
std::string serialize_certificate(const CertPtr& root);
CertPtr parse_certificate(std::string_view text);

std::size_t certificate_size(const CertPtr& root);  // distinct nodes
int certificate_depth(const CertPtr& root);

}  // namespace waldcert
