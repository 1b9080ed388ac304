#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "abcv/corpus.hpp"

using namespace abcv;

namespace {

InstanceFamily tiny_family() {
  InstanceFamily f;
  f.max_voters = 3;
  f.max_candidates = 4;
  f.max_k = 2;
  return f;
}

}  // namespace

TEST_CASE("axiom ids round-trip through their names") {
  for (AxiomId id : all_axioms()) {
    auto back = axiom_from_string(to_string(id));
    REQUIRE(back);
    CHECK(*back == id);
  }
}

TEST_CASE("monotonicity transform stream contains the paper edit") {
  const Fixture& f = fixture("fig3");
  Instance edited = f.instance;
  edited.ballots[1] = set_with(edited.ballots[1], 2);
  bool seen = false;
  TransformOptions opts;
  bool exhaustive = transform(AxiomId::Monotonicity, f.instance,
                              f.committees[0], opts,
                              [&](const TransformedPair& pair) {
                                if (pair.instance == edited) seen = true;
                                return true;
                              });
  CHECK(exhaustive);
  CHECK(seen);
}

TEST_CASE("approval-swap transform fixes ballots disjoint from W") {
  // all ballots disjoint from the committee: the stream is empty
  Instance inst = parse_instance("2 4 2\n2 3\n2 3\n");
  Committee w = parse_committee("0 1", inst);
  int count = 0;
  TransformOptions opts;
  transform(AxiomId::IndependenceOfApprovalSwaps, inst, w, opts,
            [&](const TransformedPair&) {
              ++count;
              return true;
            });
  CHECK(count == 0);
}

TEST_CASE("loser-removal transform reindexes the committee") {
  const Fixture& f = fixture("fig2");
  TransformOptions opts;
  int count = 0;
  transform(AxiomId::IndependenceOfLosers, f.instance, f.committees[0], opts,
            [&](const TransformedPair& pair) {
              ++count;
              CHECK(pair.instance.m == f.instance.m - 1);
              CHECK(set_size(pair.committee.members) == f.instance.k);
              return true;
            });
  CHECK(count == 3);  // candidates 0, 1, 2 are outside W
}

TEST_CASE("check_axiom statuses") {
  const Fixture& f = fixture("fig3");
  // (PJR, monotonicity) violated at the fixture pair
  CHECK(check_axiom(NotionId::PJR, AxiomId::Monotonicity, f.instance,
                    f.committees[0])
            .status == AxiomVerdict::Status::Violated);
  // EJR+ does not hold at this pair, so the conditional axiom is vacuous
  CHECK(check_axiom(NotionId::EJRplus, AxiomId::Monotonicity, f.instance,
                    f.committees[0])
            .status == AxiomVerdict::Status::NotApplicable);
  // priceability fails robustness to fully satisfied voters on fig11
  const Fixture& f11 = fixture("fig11");
  auto verdict = check_axiom(NotionId::Priceable, AxiomId::RobustnessFSV,
                             f11.instance, f11.committees[0]);
  REQUIRE(verdict.status == AxiomVerdict::Status::Violated);
  REQUIRE(verdict.transformed);
  CHECK(!verify(NotionId::Priceable, *verdict.transformed,
                *verdict.transformed_committee)
             .satisfied);
}

TEST_CASE("ejr+ passes the five roadmap axioms on the tiny family") {
  InstanceFamily f = tiny_family();
  for (AxiomId axiom :
       {AxiomId::Monotonicity, AxiomId::IndependenceOfLosers,
        AxiomId::RobustnessFSV, AxiomId::IndependenceOfApprovalSwaps,
        AxiomId::LowerQuotaPartyLists}) {
    auto outcome = search_axiom_violation(NotionId::EJRplus, axiom, f);
    CHECK(!outcome.violated);
  }
}

TEST_CASE("search finds and shrinks the PJR monotonicity failure") {
  InstanceFamily f;
  f.max_voters = 4;
  f.max_candidates = 4;
  f.max_k = 3;
  auto outcome =
      search_axiom_violation(NotionId::PJR, AxiomId::Monotonicity, f);
  REQUIRE(outcome.violated);
  // shrunk counterexamples replay
  CHECK(check_axiom(NotionId::PJR, AxiomId::Monotonicity, *outcome.instance,
                    *outcome.committee)
            .status == AxiomVerdict::Status::Violated);
  // greedy minimization: nothing below three voters can fail here
  CHECK(outcome.instance->n <= 4);
  CHECK(outcome.instance->m <= 4);
}

TEST_CASE("search respects the canonical first-hit order across thread counts") {
  InstanceFamily f = tiny_family();
  SearchOptions one;
  one.jobs = 1;
  one.shrink = false;
  SearchOptions two;
  two.jobs = 2;
  two.shrink = false;
  auto a = search_axiom_violation(NotionId::PJR, AxiomId::Monotonicity, f, one);
  auto b = search_axiom_violation(NotionId::PJR, AxiomId::Monotonicity, f, two);
  REQUIRE(a.violated);
  REQUIRE(b.violated);
  CHECK(a.instance == b.instance);
  CHECK(a.committee == b.committee);
}

TEST_CASE("lower-quota axioms on party lists") {
  const Fixture& f10 = fixture("fig10");
  CHECK(check_axiom(NotionId::JR, AxiomId::LowerQuotaPartyLists, f10.instance,
                    f10.committees[0])
            .status == AxiomVerdict::Status::Violated);
  CHECK(check_axiom(NotionId::PJR, AxiomId::LowerQuotaPartyLists, f10.instance,
                    f10.committees[1])
            .status == AxiomVerdict::Status::Holds);
  const Fixture& f100 = fixture("price100");
  CHECK(check_axiom(NotionId::Priceable, AxiomId::LowerQuotaExtension,
                    f100.instance, f100.committees[0])
            .status == AxiomVerdict::Status::Violated);
}

TEST_CASE("refutation chain on seeded violating pairs") {
  std::mt19937_64 rng(41);
  int done = 0;
  while (done < 40) {
    int n = 2 + static_cast<int>(rng() % 5);
    int m = 3 + static_cast<int>(rng() % 3);
    int k = 2 + static_cast<int>(rng() % std::min(m - 1, 2));
    Instance inst;
    inst.n = n;
    inst.m = m;
    inst.k = k;
    inst.ballots.clear();
    for (int i = 0; i < n; ++i) inst.ballots.push_back(rng() & full_set(m));
    bool advanced = false;
    for_each_committee(inst, [&](const Committee& w) {
      auto result = verify_pjrp_fast(inst, w);
      if (result.satisfied) return true;
      if (static_cast<int>(result.witness->group.size()) == n) return true;
      auto refuted = refute_via_party_list(inst, w, *result.witness);
      CHECK(party_list_structure(refuted.instance));
      CHECK(!satisfies_lower_quota(refuted.instance, refuted.committee));
      Instance extended = pjr_violation_from_plus(inst, w, *result.witness);
      CHECK(!verify(NotionId::PJR, extended, w).satisfied);
      advanced = true;
      return false;
    });
    if (advanced) ++done;
  }
  CHECK(done == 40);
}

TEST_CASE("monotone extension is the identity when the union is empty") {
  // the lower-quota instance: the witness group approves nothing in W, so
  // there is nothing to add and PJR is already broken
  const Fixture& f = fixture("fig2");
  auto result = verify_pjrp_fast(f.instance, f.committees[0]);
  REQUIRE(!result.satisfied);
  CHECK(!verify(NotionId::PJR, f.instance, f.committees[0]).satisfied);
  Instance extended =
      pjr_violation_from_plus(f.instance, f.committees[0], *result.witness);
  CHECK(extended == f.instance);
}

TEST_CASE("refutation chain rejects witnesses that span the electorate") {
  // every voter approves only the same loser: the only witnesses cover N
  Instance inst = parse_instance("2 3 2\n2\n2\n");
  Committee w = parse_committee("0 1", inst);
  auto result = verify_pjrp_fast(inst, w);
  REQUIRE(!result.satisfied);
  ViolationWitness witness = *result.witness;
  witness.group = {0, 1};
  witness.ell = 2;
  REQUIRE(replay_witness(inst, w, witness));
  CHECK_THROWS_AS(refute_via_party_list(inst, w, witness), PreconditionError);
}

TEST_CASE("coarsening chains on handcrafted witnesses") {
  // EJR+ holds, the group shares an unselected candidate
  Instance inst = parse_instance("4 5 3\n0 1 4\n0 2 4\n1 2 3\n3\n");
  Committee w = parse_committee("0 1 2", inst);
  REQUIRE(verify(NotionId::EJRplus, inst, w).satisfied);
  std::vector<int> group = {0, 1};
  auto chain = coarsening_chain(NotionId::EJRplus, inst, w, group);
  CHECK(party_list_structure(chain.i3));
  CHECK(satisfies_lower_quota(chain.i3, chain.w3));
  CHECK(embedding_valid({&chain.i2, group, w}, {&chain.i3, group, chain.w3},
                        chain.embedding));

  auto pjr_chain = coarsening_chain(NotionId::PJRplus, inst, w, group);
  CHECK(satisfies_lower_quota(pjr_chain.i3, pjr_chain.w3));
}

TEST_CASE("coarsening chain single-party case") {
  // W inside the shared ballot: the party list has one party
  Instance inst = parse_instance("2 3 2\n0 1 2\n0 1 2\n");
  Committee w = parse_committee("0 1", inst);
  REQUIRE(verify(NotionId::EJRplus, inst, w).satisfied);
  std::vector<int> group = {0, 1};
  auto chain = coarsening_chain(NotionId::EJRplus, inst, w, group);
  auto parties = party_list_structure(chain.i3);
  REQUIRE(parties);
  CHECK(parties->parties.size() == 1);
  CHECK(satisfies_lower_quota(chain.i3, chain.w3));
}

TEST_CASE("coarsening chain tolerates level zero") {
  // a single shared voter in a large electorate: floor(k|N'|/n) = 0
  Instance inst = parse_instance("5 4 2\n3\n0 1\n0 1\n0 1\n0 1\n");
  Committee w = parse_committee("0 1", inst);
  REQUIRE(verify(NotionId::EJRplus, inst, w).satisfied);
  std::vector<int> group = {0};
  auto chain = coarsening_chain(NotionId::EJRplus, inst, w, group);
  CHECK(satisfies_lower_quota(chain.i3, chain.w3));
}

TEST_CASE("strong independence of losers") {
  InstanceFamily f = tiny_family();
  CHECK(check_strong_iol(NotionId::EJRplus, f).holds);
  CHECK(check_strong_iol(NotionId::Universal, f).holds);

  const Fixture& f12 = fixture("fig12");
  auto verdict = check_axiom(NotionId::Core, AxiomId::StrongIoL, f12.instance,
                             f12.committees[0]);
  CHECK(verdict.status == AxiomVerdict::Status::Violated);

  InstanceFamily with_core;
  with_core.max_voters = 3;
  with_core.max_candidates = 4;
  with_core.max_k = 2;
  // the equivalence itself can be scanned; fig12 is outside these bounds, so
  // only assert the scan completes and agrees with itself
  auto outcome = check_strong_iol(NotionId::PJRplus, with_core);
  CHECK(outcome.holds);
}

TEST_CASE("permutation invariance certificate on the tiny family") {
  InstanceFamily f = tiny_family();
  for (NotionId id : {NotionId::EJRplus, NotionId::Core, NotionId::Priceable}) {
    auto outcome = check_permutation_invariance(id, f, 0, 11);
    CHECK(outcome.holds);
    CHECK(outcome.orbits > 0);
    CHECK(outcome.orbits < outcome.pairs_checked);
  }
}

TEST_CASE("trivial whole-electorate witness respects embeddings") {
  // the witness-basedness characterization, spot-checked: all catalog
  // notions pass anonymity/neutrality/IUC/IoL, so the trivial assignment
  // w(I,W) = {N} on violated pairs must satisfy witness property (ii)
  InstanceFamily f;
  f.max_voters = 2;
  f.max_candidates = 3;
  f.max_k = 2;
  auto instances = family_instances(f);
  std::vector<NotionId> ids = {NotionId::EJRplus, NotionId::Core,
                               NotionId::Priceable};
  for (NotionId id : ids) {
    for (const Instance& a : instances) {
      for_each_committee(a, [&](const Committee& wa) {
        if (verify(id, a, wa).satisfied) return true;
        std::vector<int> everyone(a.n);
        std::iota(everyone.begin(), everyone.end(), 0);
        for (const Instance& b : instances) {
          if (b.n != a.n || b.k != a.k) continue;
          for_each_committee(b, [&](const Committee& wb) {
            EmbeddingSide from{&a, everyone, wa};
            EmbeddingSide to{&b, everyone, wb};
            if (find_local_embedding(from, to)) {
              CHECK(!verify(id, b, wb).satisfied);
            }
            return true;
          });
        }
        return true;
      });
    }
  }
}

TEST_CASE("conditional violations replay end-to-end") {
  // every Violated verdict's transformed pair must flip membership
  InstanceFamily f = tiny_family();
  for (NotionId id : {NotionId::PJR, NotionId::EJR}) {
    auto outcome = search_axiom_violation(id, AxiomId::Monotonicity, f);
    REQUIRE(outcome.violated);
    CHECK(verify(id, *outcome.instance, *outcome.committee).satisfied);
    REQUIRE(outcome.verdict.transformed);
    CHECK(!verify(id, *outcome.verdict.transformed,
                  *outcome.verdict.transformed_committee)
               .satisfied);
  }
}
