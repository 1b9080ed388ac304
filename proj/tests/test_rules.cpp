#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abcv/corpus.hpp"
#include "abcv/oracle.hpp"
#include "abcv/rules.hpp"

using namespace abcv;

TEST_CASE("mes splits seats between equal parties with index tie-breaks") {
  Instance inst = parse_instance("4 4 2\n0 1\n0 1\n2 3\n2 3\n");
  Committee w = mes(inst);
  CHECK(w.members == set_from_vector({0, 2}));
}

TEST_CASE("mes elects the agreed pair on the lower-quota instance") {
  const Fixture& f = fixture("fig2");
  Committee w = mes(f.instance);
  CHECK(set_contains(w.members, 0));
  CHECK(set_contains(w.members, 1));
  CHECK(verify(NotionId::EJRplus, f.instance, w).satisfied);
}

TEST_CASE("mes single-candidate election") {
  Instance inst = parse_instance("3 1 1\n0\n0\n0\n");
  CHECK(mes(inst).members == set_with(0, 0));
}

TEST_CASE("mes completes with approval greedy when budgets run dry") {
  // one voter, two seats: after the first purchase nothing is affordable
  Instance inst = parse_instance("1 3 2\n0\n");
  Committee w = mes(inst);
  CHECK(set_size(w.members) == 2);
  CHECK(set_contains(w.members, 0));
}

TEST_CASE("mes is deterministic across repeat runs") {
  Instance inst = random_instance(12, 8, 4, 400000, 77, true);
  Committee w1 = mes(inst);
  Committee w2 = mes(inst);
  CHECK(w1 == w2);
}

TEST_CASE("pav picks the harmonic optimum on the npr instance") {
  const Fixture& f = fixture("fig8");
  // independent exact scorer over all five committees
  Committee best{0};
  Rational best_score = -1;
  for_each_committee(f.instance, [&](const Committee& w) {
    Rational score = 0;
    for (int i = 0; i < f.instance.n; ++i) {
      int u = set_size(f.instance.ballots[i] & w.members);
      for (int t = 1; t <= u; ++t) score += Rational(1) / t;
    }
    if (score > best_score) {
      best_score = score;
      best = w;
    }
    return true;
  });
  Committee pav = pav_exhaustive(f.instance);
  CHECK(pav == best);
  CHECK(set_contains(pav.members, 0));
  CHECK(pav_score(f.instance, pav) == best_score);
}

TEST_CASE("pav ties break lexicographically") {
  // identical ballots larger than k: lexicographically least subset wins
  Instance inst = parse_instance("2 4 2\n0 1 2 3\n0 1 2 3\n");
  CHECK(pav_exhaustive(inst).members == set_from_vector({0, 1}));

  // empty profile: all scores zero
  Instance empty = parse_instance("2 4 2\n\n\n");
  CHECK(pav_exhaustive(empty).members == set_from_vector({0, 1}));
}

TEST_CASE("pav satisfies npr on a family slice") {
  InstanceFamily family;
  family.max_voters = 3;
  family.max_candidates = 4;
  family.max_k = 2;
  int sampled = 0;
  for_each_instance(family, [&](const Instance& inst) {
    if (++sampled % 13 != 0) return true;
    Committee w = pav_exhaustive(inst);
    CHECK(verify(NotionId::NPR, inst, w).satisfied);
    return true;
  });
}

TEST_CASE("mes satisfies ejr+ on seeded random instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = random_instance(3 + seed % 10, 4 + seed % 6,
                                    1 + seed % 4, 350000, seed, true);
    Committee w = mes(inst);
    CHECK(verify(NotionId::EJRplus, inst, w).satisfied);
  }
}

TEST_CASE("random instances are reproducible and respect parameters") {
  Instance a = random_instance(4, 5, 3, 500000, 42);
  Instance b = random_instance(4, 5, 3, 500000, 42);
  CHECK(a == b);
  CHECK(serialize_instance(a) == serialize_instance(b));

  Instance all = random_instance(3, 4, 2, 1000000, 1);
  for (CandSet ballot : all.ballots) CHECK(ballot == full_set(4));

  Instance none = random_instance(3, 4, 2, 0, 1);
  for (CandSet ballot : none.ballots) CHECK(ballot == 0);

  CHECK_THROWS_AS(random_instance(3, 2, 3, 500000, 1), PreconditionError);
}
