#pragma once

// Independent certificate verifier. It recomputes every node from its
// children using exact arithmetic and the fact table, and shares no code
// with the prover beyond exactmath and facts.

#include "waldcert/certificate.hpp"
#include "waldcert/facts.hpp"

#include <string>

namespace waldcert {

struct CheckResult {
  bool accepted = false;
  std::string node;    // first failing node, "Rule N=.. s=.." (empty on accept)
  std::string reason;  // the inequality or equation that failed

  explicit operator bool() const { return accepted; }
};

CheckResult check_certificate(const CertPtr& root, const FactTable& facts);

/// (N, j, s) is an Alexander-Hirschowitz exceptional case for double points
/// in degree j: the degree-j forms singular at s general points exceed the
/// expected count.
bool alexander_hirschowitz_exception(int dim, int degree, std::int64_t points);

}  // namespace waldcert
