#include "waldcert/bounds.hpp"
#include "waldcert/certificate.hpp"
#include "waldcert/checker.hpp"
#include "support/mutate.hpp"

#include <doctest.h>

using namespace waldcert;

namespace {

CertPtr axiom(int dim, std::int64_t s) {
  for (const auto& ax : default_facts().axioms_at(dim, s))
    if (ax.bound == *query_fact(default_facts(), dim, s)) return make_axiom(dim, s, ax.bound, ax.source);
  return nullptr;
}

// Decomposition at (4, 15) with k = 1 from (3, 9) >= 2 and (3, 6) >= 12/7.
CertPtr split_4_15() {
  const CertPtr two = make_monotone(make_doubling(make_trivial(3, 1), 1), 9);
  const CertPtr low = axiom(3, 6);
  return make_decomposition(4, 15, 1, {{9, Rational(2), two}, {6, low->value, low}}, Rational(BigInt(13), BigInt(7)));
}

}  // namespace

TEST_CASE("constructors compute claimed values") {
  CHECK(make_trivial(5, 3)->value == Rational(1));
  const CertPtr d = make_doubling(axiom(7, 10), 1);
  CHECK(d->points == 1280);
  CHECK(d->value == Rational::parse("2.5806"));
  CHECK(make_doubling(d, 2)->times == 3);
  CHECK(make_doubling(d, 2)->points == 10 * (std::int64_t{1} << 21));
  CHECK(make_chudnovsky(4, 15, 4)->value == Rational(BigInt(8), BigInt(5)));
  const CertPtr m = make_monotone(axiom(3, 21), 27);
  CHECK(m->child->points == 21);
  CHECK(make_monotone(m, 30)->child->points == 21);
  CHECK(make_monotone(m, 27) == m);
}

TEST_CASE("serialization is deterministic and round trips") {
  const CertPtr root = make_monotone(split_4_15(), 20);
  const std::string text = serialize_certificate(root);
  CHECK(text.rfind("waldcert-certificate 1\n", 0) == 0);
  const CertPtr back = parse_certificate(text);
  CHECK(serialize_certificate(back) == text);
  CHECK(check_certificate(back, default_facts()).accepted);
  CHECK(certificate_size(root) == certificate_size(back));
  CHECK(certificate_depth(root) == certificate_depth(back));
}

TEST_CASE("shared nodes are labelled once and referenced") {
  const CertPtr shared = axiom(3, 21);
  const CertPtr low = axiom(3, 17);
  const Rational a1 = Rational::parse("8/3");
  const Rational a2 = Rational::parse("5/2");
  const Rational value = (Rational(1) - a1.reciprocal() - a1.reciprocal()) * a2 + Rational(2);
  const CertPtr root =
      make_decomposition(4, 59, 2, {{21, a1, shared}, {21, a1, shared}, {17, a2, low}}, value);
  const std::string text = serialize_certificate(root);
  CHECK(text.find("@1 Axiom N=3 s=21") != std::string::npos);
  CHECK(text.find("ref @1") != std::string::npos);
  const CertPtr back = parse_certificate(text);
  CHECK(back->parts[0].proof == back->parts[1].proof);
  CHECK(certificate_size(back) == 3);
  CHECK(check_certificate(back, default_facts()).accepted);
}

TEST_CASE("malformed certificate text is rejected") {
  CHECK_THROWS(parse_certificate(""));
  CHECK_THROWS(parse_certificate("not-a-certificate 1\nTrivial N=3 s=1 value=1\n"));
  CHECK_THROWS(parse_certificate("waldcert-certificate 1\nBogus N=3 s=1 value=1\n"));
  CHECK_THROWS(parse_certificate("waldcert-certificate 1\nMonotone N=3 s=2 value=1\n"));
  CHECK_THROWS(parse_certificate("waldcert-certificate 1\nTrivial N=3 s=1 value=1\n  Trivial N=3 s=1 value=1\n"));
  CHECK_THROWS(parse_certificate("waldcert-certificate 1\nTrivial N=3 s=x value=1\n"));
  CHECK_THROWS(parse_certificate("waldcert-certificate 1\nref @4\n"));
}

TEST_CASE("checker accepts sound nodes") {
  CHECK(check_certificate(split_4_15(), default_facts()).accepted);
  CHECK(check_certificate(make_chudnovsky(8, 19, 3), default_facts()).accepted);
  CHECK(check_certificate(make_monotone(axiom(3, 21), 27), default_facts()).accepted);
}

TEST_CASE("checker rejects bad hypotheses with the failing inequality") {
  SUBCASE("bumped value") {
    const CertPtr root = split_4_15();
    const CertPtr bumped = testing::replace_node(root, root.get(), [](CertNode n) {
      n.value = Rational(BigInt(14), BigInt(7));
      return n;
    });
    const auto r = check_certificate(bumped, default_facts());
    CHECK_FALSE(r.accepted);
    CHECK(r.node == "Decomposition N=4 s=15");
    CHECK(r.reason.find("claimed value 2") != std::string::npos);
  }
  SUBCASE("a_{k+1} above k+1") {
    const CertPtr big_child = make_monotone(make_doubling(make_trivial(3, 1), 2), 100);
    const Rational a2 = Rational(2) + Rational(BigInt(1), BigInt(1000));
    const CertPtr two = make_monotone(make_doubling(make_trivial(3, 1), 1), 9);
    const Rational value = (Rational(1) - Rational(BigInt(1), BigInt(2))) * a2 + Rational(1);
    const CertPtr root = make_decomposition(4, 109, 1, {{9, Rational(2), two}, {100, a2, big_child}}, value);
    const auto r = check_certificate(root, default_facts());
    CHECK_FALSE(r.accepted);
    CHECK(r.reason.find("> k+1") != std::string::npos);
  }
  SUBCASE("a_1 not above k") {
    const CertPtr low = axiom(3, 6);
    const CertPtr root = make_decomposition(4, 12, 1, {{6, Rational(1), low}, {6, low->value, low}}, Rational(1));
    const auto r = check_certificate(root, default_facts());
    CHECK_FALSE(r.accepted);
    CHECK(r.reason.find("is not > k") != std::string::npos);
  }
  SUBCASE("sum of r_j above s") {
    const CertPtr root = split_4_15();
    const CertPtr shrunk = testing::replace_node(root, root.get(), [](CertNode n) {
      n.points = 14;
      return n;
    });
    const auto r = check_certificate(shrunk, default_facts());
    CHECK_FALSE(r.accepted);
    CHECK(r.reason.find("sum r_j = 15 > s = 14") != std::string::npos);
  }
  SUBCASE("ChudnovskyM2 below its threshold or exceptional") {
    CHECK_FALSE(check_certificate(make_chudnovsky(4, 13, 4), default_facts()).accepted);
    CHECK_FALSE(check_certificate(make_chudnovsky(4, 7, 3), default_facts()).accepted);
    CHECK_FALSE(check_certificate(make_chudnovsky(4, 14, 4), default_facts()).accepted);
    CHECK_FALSE(check_certificate(make_chudnovsky(2, 10, 2), default_facts()).accepted);
    CHECK(check_certificate(make_chudnovsky(4, 8, 3), default_facts()).accepted);
  }
  SUBCASE("axiom absent from the table") {
    CHECK_FALSE(check_certificate(make_axiom(3, 7, Rational(2), "made up"), default_facts()).accepted);
    CHECK_FALSE(check_certificate(make_axiom(3, 6, Rational::parse("12/7"), "wrong source"), default_facts()).accepted);
  }
  SUBCASE("monotone going down") {
    const CertPtr m = make_monotone(axiom(3, 21), 27);
    const CertPtr down = testing::replace_node(m, m.get(), [](CertNode n) {
      n.points = 20;
      return n;
    });
    CHECK_FALSE(check_certificate(down, default_facts()).accepted);
  }
  SUBCASE("doubling with the wrong point count") {
    const CertPtr d = make_doubling(axiom(7, 10), 1);
    const CertPtr off = testing::replace_node(d, d.get(), [](CertNode n) {
      n.points += 1;
      return n;
    });
    CHECK_FALSE(check_certificate(off, default_facts()).accepted);
  }
}

TEST_CASE("checker depends on the fact table") {
  const FactTable bare = parse_facts("format 1\n");
  CHECK_FALSE(check_certificate(axiom(3, 21), bare).accepted);
  CHECK(check_certificate(make_trivial(3, 21), bare).accepted);
}

TEST_CASE("random single-field mutations of prover certificates are rejected") {
  Prover prover(default_facts());
  std::mt19937_64 rng(2024);
  std::vector<CertPtr> pool;
  for (auto [n, s] : {std::pair{4, 15}, {4, 48}, {5, 130}, {6, 320}, {7, 1400}, {5, 60}, {6, 500}})
    pool.push_back(prover.lower_bound(n, s).certificate);
  for (const auto& c : pool) REQUIRE(check_certificate(c, default_facts()).accepted);
  int accepted = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto m = testing::mutate_once(pool[rng() % pool.size()], rng);
    if (check_certificate(m.cert, default_facts()).accepted) {
      ++accepted;
      MESSAGE("accepted mutation: " << m.description);
    }
  }
  CHECK(accepted == 0);
}
