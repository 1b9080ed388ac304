#include "abcv/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace abcv {

namespace {

Fixture make_fixture(const std::string& name, const std::string& role,
                     const std::string& text,
                     const std::vector<std::string>& committees) {
  Fixture f;
  f.name = name;
  f.role = role;
  f.instance = parse_instance(text);
  for (const auto& c : committees)
    f.committees.push_back(parse_committee(c, f.instance));
  return f;
}

std::string price100_text() {
  std::string text = "101 3 2\n";
  for (int i = 0; i < 100; ++i) text += "0 1\n";
  text += "2\n";
  return text;
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> fs;
    fs.push_back(make_fixture("fig2", "lower quota and independence of losers",
                              "4 7 4\n0 1 2\n0 1\n3 4 5 6\n3 4 5 6\n",
                              {"3 4 5 6"}));
    fs.push_back(make_fixture("fig3", "PJR, EJR, and monotonicity",
                              "4 7 6\n0 1 2\n0 1\n3 4 5 6\n3 4 5 6\n",
                              {"0 2 3 4 5 6"}));
    fs.push_back(make_fixture("fig4", "refinement chain walkthrough",
                              "4 7 4\n0 4 5\n4\n1 2 4\n0 2 3 6\n",
                              {"0 1 2 3"}));
    fs.push_back(make_fixture("fig5", "local embeddings",
                              "6 6 3\n0 1\n0 2\n0 2\n0 4\n3 4 5\n3 4 5\n",
                              {"0 1 2", "0 3 4"}));
    fs.push_back(make_fixture("fig6", "EJR and merge-proofness",
                              "6 5 3\n0 3 4\n0 3 4\n1 3 4\n1 3 4\n2\n2\n",
                              {"0 1 2"}));
    fs.push_back(make_fixture(
        "fig7", "laminar-style instance: EJR+ holds, priceability fails",
        "4 10 6\n0 1 3\n0 2 4\n5 6 7 8 9\n5 6 7 8 9\n", {"0 5 6 7 8 9"}));
    fs.push_back(make_fixture("fig8", "EJR+ and NPR",
                              "4 5 4\n0 1 2 3 4\n0 1 2 3\n0 1 2\n0 1\n",
                              {"1 2 3 4"}));
    fs.push_back(make_fixture("fig9", "PJR vs overlap-PJR",
                              "4 6 4\n0 1 2\n0 1\n3 4 5\n3 4 5\n",
                              {"2 3 4 5"}));
    fs.push_back(make_fixture("overlap_mono",
                              "overlap-PJR is not monotone",
                              "4 3 2\n0 1\n0 1\n0 1\n0\n", {"1 2"}));
    fs.push_back(make_fixture("fig10", "JR vs lower quota on a party list",
                              "4 6 4\n0 1 2\n0 1 2\n3 4 5\n3 4 5\n",
                              {"0 1 2 3", "0 1 3 4"}));
    fs.push_back(make_fixture(
        "fig11", "priceability vs robustness to fully satisfied voters",
        "4 4 3\n0 1\n0 2 3\n1 2 3\n3\n", {"0 1 2"}));
    fs.push_back(make_fixture(
        "fig12", "core vs cohesiveness-basedness and merge-proofness",
        "6 6 3\n0 3 4\n0 3 4\n1 4 5\n1 4 5\n2 3 5\n2 3 5\n", {"0 1 2"}));
    fs.push_back(make_fixture("fig12b", "core-stable variant of fig12",
                              "6 6 3\n0 3 4\n0 3 4\n1 4 5\n1 4 5\n2 3 5\n2 3\n",
                              {"0 1 2"}));
    fs.push_back(make_fixture("pjr_ias", "independence of approval swaps",
                              "4 7 6\n0 1 2\n0 1 5\n3 4 5 6\n3 4 5 6\n",
                              {"0 2 3 4 5 6"}));
    fs.push_back(make_fixture("price_ias",
                              "priceability and independence of approval swaps",
                              "4 3 2\n0 1\n0 2\n1 2\n2\n", {"0 1"}));
    fs.push_back(make_fixture("price_wf", "priceability witness functions",
                              "4 4 3\n0 1 2\n0\n0 3\n0 3\n", {"0 1 2"}));
    fs.push_back(make_fixture("price_mp", "priceability and merge-proofness",
                              "4 4 3\n0 1\n2\n2\n3\n", {"0 1 2"}));
    fs.push_back(make_fixture("weak_rfsv",
                              "weak-EJR+/PJR+ vs fully satisfied voters",
                              "4 5 4\n0\n0\n0 1 2 3 4\n1 2 3 4\n",
                              {"1 2 3 4"}));
    fs.push_back(make_fixture("diff_iol",
                              "difference variants vs independence of losers",
                              "4 4 2\n0 1\n0\n2 3\n2 3\n", {"2 3"}));
    fs.push_back(make_fixture("equal_mono", "equal-EJR+ vs monotonicity",
                              "3 3 2\n0 2\n1 2\n2\n", {"0 1"}));
    fs.push_back(make_fixture("ejrppar", "EJR+ with external Pareto optimality",
                              "4 4 2\n0\n0 1 2\n0 1 3\n1\n", {"2 3"}));
    fs.push_back(make_fixture("droop", "Hare vs Droop quota on two parties",
                              "5 3 2\n0 1\n0 1\n0 1\n2\n2\n", {"0 1"}));
    fs.push_back(make_fixture("price100",
                              "two-party instance where priceability fails",
                              price100_text(), {"0 2"}));
    return fs;
  }();
  return all;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : fixtures()) out.push_back(f.name);
    return out;
  }();
  return names;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : fixtures()) {
    if (f.name == name) return f;
  }
  throw PreconditionError("unknown fixture: " + name);
}

namespace {

class FactChecker {
 public:
  explicit FactChecker(const std::string& name) { report_.name = name; }

  void add(const std::string& desc, bool pass) {
    report_.facts.push_back({desc, pass});
    report_.all_pass &= pass;
  }

  template <typename Fn>
  void add_try(const std::string& desc, Fn&& fn) {
    bool pass = false;
    try {
      pass = fn();
    } catch (const std::exception&) {
      pass = false;
    }
    add(desc, pass);
  }

  FixtureReport take() { return std::move(report_); }

 private:
  FixtureReport report_;
};

bool sat(NotionId id, const Instance& inst, const Committee& w) {
  return verify(id, inst, w).satisfied;
}

bool axiom_violated(NotionId notion, AxiomId axiom, const Instance& inst,
                    const Committee& w) {
  return check_axiom(notion, axiom, inst, w).status ==
         AxiomVerdict::Status::Violated;
}

FixtureReport facts_fig2(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("instance is not a party list (candidate 2 overlaps)",
        !party_list_structure(inst).has_value());
  auto restricted = restrict_candidates(inst, full_set(inst.m) & ~set_with(0, 2));
  auto parties = party_list_structure(restricted.instance);
  c.add("removing candidate 2 yields a two-party instance",
        parties.has_value() && parties->parties.size() == 2);
  CandSet w_new = 0;
  for (int cd : set_to_vector(w.members))
    w_new = set_with(w_new, restricted.new_of_old[cd]);
  c.add_try("the bolded committee misses lower quota after the removal", [&] {
    return !satisfies_lower_quota(restricted.instance, Committee{w_new});
  });
  auto pjrp = verify_pjrp_fast(inst, w);
  c.add("PJR+ fails", !pjrp.satisfied);
  c.add("PJR+ witness anchors at candidate 0 with group {0,1} and l = 2",
        pjrp.witness && pjrp.witness->anchors == set_with(0, 0) &&
            pjrp.witness->group == std::vector<int>{0, 1} &&
            pjrp.witness->ell == 2);
  c.add("witness replays", pjrp.witness && replay_witness(inst, w, *pjrp.witness));
  c.add("JR fails", !sat(NotionId::JR, inst, w));
  return c.take();
}

FixtureReport facts_fig3(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("PJR holds", sat(NotionId::PJR, inst, w));
  c.add("EJR holds", sat(NotionId::EJR, inst, w));
  auto ejrp = verify_ejrp_fast(inst, w);
  c.add("EJR+ fails", !ejrp.satisfied);
  c.add("EJR+ witness is candidate 1 with voters {0,1} and l = 3",
        ejrp.witness && ejrp.witness->anchors == set_with(0, 1) &&
            ejrp.witness->group == std::vector<int>{0, 1} &&
            ejrp.witness->ell == 3);
  c.add("PJR+ fails too", !sat(NotionId::PJRplus, inst, w));
  c.add("FJR holds", sat(NotionId::FJR, inst, w));
  c.add("FPJR holds", sat(NotionId::FPJR, inst, w));
  Instance edited = inst;
  edited.ballots[1] = set_with(edited.ballots[1], 2);
  c.add("after voter 1 adds candidate 2, PJR fails",
        !sat(NotionId::PJR, edited, w));
  c.add("after voter 1 adds candidate 2, EJR fails",
        !sat(NotionId::EJR, edited, w));
  c.add_try("monotonicity of PJR is violated here",
            [&] { return axiom_violated(NotionId::PJR, AxiomId::Monotonicity,
                                        inst, w); });
  c.add_try("monotonicity of EJR is violated here",
            [&] { return axiom_violated(NotionId::EJR, AxiomId::Monotonicity,
                                        inst, w); });
  c.add_try("monotonicity of FJR is violated here",
            [&] { return axiom_violated(NotionId::FJR, AxiomId::Monotonicity,
                                        inst, w); });
  c.add_try("monotonicity of FPJR is violated here",
            [&] { return axiom_violated(NotionId::FPJR, AxiomId::Monotonicity,
                                        inst, w); });
  return c.take();
}

FixtureReport facts_fig4(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  ViolationWitness witness;
  witness.kind = NotionId::PJRplus;
  witness.group = {0, 1};
  witness.ell = 2;
  witness.anchors = set_with(0, 4);
  c.add("the walkthrough witness (d, l=2, voters {0,1}) replays",
        replay_witness(inst, w, witness));
  c.add_try("refutation chain gives a two-party instance breaking lower quota",
            [&] {
              auto refuted = refute_via_party_list(inst, w, witness);
              auto parties = party_list_structure(refuted.instance);
              if (!parties || parties->parties.size() != 2) return false;
              std::vector<int> sizes;
              for (CandSet p : parties->parties) sizes.push_back(set_size(p));
              std::sort(sizes.begin(), sizes.end());
              return sizes == std::vector<int>{2, 3} &&
                     !satisfies_lower_quota(refuted.instance,
                                            refuted.committee);
            });
  c.add_try("the monotone extension breaks plain PJR", [&] {
    Instance extended = pjr_violation_from_plus(inst, w, witness);
    return !verify(NotionId::PJR, extended, w).satisfied;
  });
  return c.take();
}

FixtureReport facts_fig5(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  EmbeddingSide left{&inst, {0, 1, 2}, f.committees[0]};
  EmbeddingSide right{&inst, {3, 4, 5}, f.committees[1]};
  c.add_try("({0,1,2}, {c0,c1,c2}) embeds into ({3,4,5}, {c3,c4,c0})", [&] {
    auto emb = find_local_embedding(left, right);
    return emb && embedding_valid(left, right, *emb);
  });
  c.add_try("the reverse embedding does not exist", [&] {
    return !find_local_embedding(right, left).has_value();
  });
  c.add_try("the identity embedding exists", [&] {
    return find_local_embedding(left, left).has_value();
  });
  return c.take();
}

FixtureReport facts_fig6(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  std::vector<int> group = {0, 1, 2, 3};
  c.add("EJR fails", !sat(NotionId::EJR, inst, w));
  c.add("voters {0..3} are a natural EJR witness",
        group_is_natural_witness(NotionId::EJR, inst, w, group));
  c.add_try("merge-proofness of the EJR witness fails", [&] {
    return check_merge_proofness(NotionId::EJR, inst, w, group).verdict ==
           MergeVerdict::Fails;
  });
  Instance merged = inst;
  for (int i : group) merged.ballots[i] = set_from_vector({0, 1, 3, 4});
  c.add("the all-absorbing merge kills the witness",
        !group_is_natural_witness(NotionId::EJR, merged, w, group));
  c.add("EJR+ fails as well", !sat(NotionId::EJRplus, inst, w));
  c.add_try("merge-proofness violation registers for EJR", [&] {
    return axiom_violated(NotionId::EJR, AxiomId::MergeProofness, inst, w);
  });
  c.add_try("merge-proofness violation registers for EJR+", [&] {
    return axiom_violated(NotionId::EJRplus, AxiomId::MergeProofness, inst, w);
  });
  return c.take();
}

FixtureReport facts_fig7(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("EJR+ holds", sat(NotionId::EJRplus, inst, w));
  c.add("priceability fails", !verify_priceable(inst, w).first);
  c.add("FPJR fails", !sat(NotionId::FPJR, inst, w));
  c.add("sub-core fails", !sat(NotionId::SubCore, inst, w));
  c.add_try("no cohesive witness exists for FPJR here", [&] {
    return axiom_violated(NotionId::FPJR, AxiomId::CohesivenessBased, inst, w);
  });
  c.add_try("no cohesive witness exists for the sub-core here", [&] {
    return axiom_violated(NotionId::SubCore, AxiomId::CohesivenessBased, inst,
                          w);
  });
  return c.take();
}

FixtureReport facts_fig8(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("EJR+ holds", sat(NotionId::EJRplus, inst, w));
  c.add("NPR fails", !sat(NotionId::NPR, inst, w));
  ViolationWitness grand;
  grand.kind = NotionId::NPR;
  grand.group = {0, 1, 2, 3};
  grand.ell = 4;
  grand.anchors = set_with(0, 0);
  c.add("the grand group with l = 4 replays as an NPR witness",
        replay_witness(inst, w, grand));
  Rational avg = 0;
  for (int i = 0; i < inst.n; ++i)
    avg += set_size(inst.ballots[i] & w.members);
  avg /= inst.n;
  c.add("its average utility is exactly 5/2", avg == Rational(5, 2));
  c.add_try("individual discontentment fails for NPR", [&] {
    return axiom_violated(NotionId::NPR, AxiomId::IndividualDiscontentment,
                          inst, w);
  });
  c.add_try("merge-proofness fails for NPR", [&] {
    return axiom_violated(NotionId::NPR, AxiomId::MergeProofness, inst, w);
  });
  return c.take();
}

FixtureReport facts_fig9(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("PJR fails", !sat(NotionId::PJR, inst, w));
  // with n = k the lone voter 1 is already a 1-large violation, so the
  // committee fails JR and with it overlap-PJR at l = 1
  c.add("JR fails (voter 1 is unrepresented and 1-large)",
        !sat(NotionId::JR, inst, w));
  c.add("overlap-PJR fails at l = 1 under the literal definition",
        !sat(NotionId::OverlapPJR, inst, w));
  c.add("the pair {0,1} is not an overlap witness (unequal overlaps)",
        !group_is_natural_witness(NotionId::OverlapPJR, inst, w, {0, 1}));
  Instance edited = inst;
  edited.ballots[1] = set_with(edited.ballots[1], 2);
  c.add("after voter 1 approves candidate 2, {0,1} is an overlap witness",
        group_is_natural_witness(NotionId::OverlapPJR, edited, w, {0, 1}));
  return c.take();
}

FixtureReport facts_overlap_mono(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("overlap-PJR holds", sat(NotionId::OverlapPJR, inst, w));
  Instance edited = inst;
  edited.ballots[3] = set_with(edited.ballots[3], 1);
  c.add("after voter 3 approves candidate 1, overlap-PJR fails",
        !sat(NotionId::OverlapPJR, edited, w));
  c.add_try("monotonicity of overlap-PJR is violated here", [&] {
    return axiom_violated(NotionId::OverlapPJR, AxiomId::Monotonicity, inst, w);
  });
  return c.take();
}

FixtureReport facts_fig10(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("JR holds", sat(NotionId::JR, inst, w));
  c.add("the instance is a party list",
        party_list_structure(inst).has_value());
  c.add_try("the committee misses lower quota",
            [&] { return !satisfies_lower_quota(inst, w); });
  c.add_try("committee {0,1,3,4} meets lower quota",
            [&] { return satisfies_lower_quota(inst, f.committees[1]); });
  c.add("PJR fails (party-list coincidence)", !sat(NotionId::PJR, inst, w));
  c.add_try("lower quota for party-lists is violated for JR here", [&] {
    return axiom_violated(NotionId::JR, AxiomId::LowerQuotaPartyLists, inst, w);
  });
  return c.take();
}

FixtureReport facts_fig11(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  auto [ok, prices] = verify_priceable(inst, w);
  c.add("the committee is priceable", ok);
  c.add("the solver certificate replays against C1-C5",
        ok && prices && price_system_valid(inst, w, *prices));
  PriceSystem hand;
  hand.budget = 4;
  hand.payments.resize(4);
  hand.payments[0][1] = 1;
  hand.payments[1][0] = 1;
  hand.payments[2][2] = 1;
  c.add("the budget-4 certificate replays", price_system_valid(inst, w, hand));
  Instance shrunk = inst;
  shrunk.ballots[1] = set_with(0, 2);
  shrunk.ballots[2] = set_with(0, 2);
  c.add("after voters 1 and 2 shrink to {2}, priceability fails",
        !verify_priceable(shrunk, w).first);
  c.add_try("robustness to fully satisfied voters is violated here", [&] {
    return axiom_violated(NotionId::Priceable, AxiomId::RobustnessFSV, inst, w);
  });
  return c.take();
}

FixtureReport facts_fig12(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  auto core = verify(NotionId::Core, inst, w);
  c.add("core stability fails", !core.satisfied);
  ViolationWitness grand;
  grand.kind = NotionId::Core;
  grand.group = {0, 1, 2, 3, 4, 5};
  grand.ell = 3;
  grand.anchors = set_from_vector({3, 4, 5});
  c.add("the grand coalition deviates with {c3,c4,c5}",
        replay_witness(inst, w, grand));
  c.add("FJR fails too", !sat(NotionId::FJR, inst, w));
  c.add_try("no cohesive witness exists for the core here", [&] {
    return axiom_violated(NotionId::Core, AxiomId::CohesivenessBased, inst, w);
  });
  c.add_try("merge-proofness fails for the core here", [&] {
    return axiom_violated(NotionId::Core, AxiomId::MergeProofness, inst, w);
  });
  c.add_try("no cohesive witness exists for FJR here", [&] {
    return axiom_violated(NotionId::FJR, AxiomId::CohesivenessBased, inst, w);
  });
  c.add_try("merge-proofness fails for FJR here", [&] {
    return axiom_violated(NotionId::FJR, AxiomId::MergeProofness, inst, w);
  });
  c.add_try("strong independence of losers fails for the core here", [&] {
    return axiom_violated(NotionId::Core, AxiomId::StrongIoL, inst, w);
  });
  const Fixture& b = fixture("fig12b");
  c.add("the trimmed variant is core-stable",
        sat(NotionId::Core, b.instance, b.committees[0]));
  return c.take();
}

FixtureReport facts_pjr_ias(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  for (NotionId id : {NotionId::PJR, NotionId::EJR, NotionId::PJRplus,
                      NotionId::Core, NotionId::FJR, NotionId::FPJR,
                      NotionId::SubCore}) {
    c.add(to_string(id) + " holds before the swap", sat(id, inst, w));
  }
  Instance swapped = inst;
  swapped.ballots[1] = set_from_vector({0, 1, 2});
  for (NotionId id : {NotionId::PJR, NotionId::EJR, NotionId::PJRplus,
                      NotionId::Core, NotionId::FJR, NotionId::FPJR,
                      NotionId::SubCore}) {
    c.add(to_string(id) + " fails after voter 1 swaps c5 for c2",
          !sat(id, swapped, w));
  }
  c.add_try("independence of approval swaps is violated for PJR here", [&] {
    return axiom_violated(NotionId::PJR, AxiomId::IndependenceOfApprovalSwaps,
                          inst, w);
  });
  return c.take();
}

FixtureReport facts_price_ias(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("the committee is priceable", verify_priceable(inst, w).first);
  Instance swapped = inst;
  swapped.ballots[2] = set_from_vector({0, 2});
  c.add("after voter 2 swaps c1 for c0, priceability fails",
        !verify_priceable(swapped, w).first);
  c.add_try("independence of approval swaps is violated here", [&] {
    return axiom_violated(NotionId::Priceable,
                          AxiomId::IndependenceOfApprovalSwaps, inst, w);
  });
  return c.take();
}

FixtureReport facts_price_wf(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("the committee is not priceable", !verify_priceable(inst, w).first);
  c.add_try("the trivial witness is not cohesive", [&] {
    return axiom_violated(NotionId::Priceable, AxiomId::CohesivenessBased, inst,
                          w);
  });
  c.add_try("individual discontentment fails for priceability here", [&] {
    return axiom_violated(NotionId::Priceable,
                          AxiomId::IndividualDiscontentment, inst, w);
  });
  return c.take();
}

FixtureReport facts_price_mp(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("the committee is not priceable", !verify_priceable(inst, w).first);
  Instance merged = inst;
  merged.ballots[3] = set_from_vector({2, 3});
  c.add("after voter 3 absorbs c2 the committee is priceable",
        verify_priceable(merged, w).first);
  c.add_try("merge-proofness fails for priceability here", [&] {
    return axiom_violated(NotionId::Priceable, AxiomId::MergeProofness, inst,
                          w);
  });
  return c.take();
}

FixtureReport facts_weak_rfsv(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("weak-EJR+ holds", sat(NotionId::WeakEJRplus, inst, w));
  c.add("weak-PJR+ holds", sat(NotionId::WeakPJRplus, inst, w));
  c.add("EJR+ fails", !sat(NotionId::EJRplus, inst, w));
  c.add("PJR+ fails", !sat(NotionId::PJRplus, inst, w));
  Instance shrunk = inst;
  shrunk.ballots[2] = set_from_vector({1, 2, 3, 4});
  c.add("after voter 2 drops c0, weak-EJR+ fails",
        !sat(NotionId::WeakEJRplus, shrunk, w));
  c.add("after voter 2 drops c0, weak-PJR+ fails",
        !sat(NotionId::WeakPJRplus, shrunk, w));
  c.add_try("robustness to fully satisfied voters fails for weak-EJR+", [&] {
    return axiom_violated(NotionId::WeakEJRplus, AxiomId::RobustnessFSV, inst,
                          w);
  });
  return c.take();
}

FixtureReport facts_diff_iol(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("difference-EJR+ holds", sat(NotionId::DiffEJRplus, inst, w));
  c.add("difference-PJR+ holds", sat(NotionId::DiffPJRplus, inst, w));
  c.add("EJR+ fails", !sat(NotionId::EJRplus, inst, w));
  auto restricted = restrict_candidates(inst, full_set(inst.m) & ~set_with(0, 1));
  CandSet w_new = 0;
  for (int cd : set_to_vector(w.members))
    w_new = set_with(w_new, restricted.new_of_old[cd]);
  c.add("after candidate 1 leaves, difference-EJR+ fails",
        !sat(NotionId::DiffEJRplus, restricted.instance, Committee{w_new}));
  c.add_try("independence of losers fails for difference-EJR+", [&] {
    return axiom_violated(NotionId::DiffEJRplus, AxiomId::IndependenceOfLosers,
                          inst, w);
  });
  c.add_try("independence of losers fails for difference-PJR+", [&] {
    return axiom_violated(NotionId::DiffPJRplus, AxiomId::IndependenceOfLosers,
                          inst, w);
  });
  return c.take();
}

FixtureReport facts_equal_mono(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("equal-EJR+ holds", sat(NotionId::EqualEJRplus, inst, w));
  c.add("EJR+ fails", !sat(NotionId::EJRplus, inst, w));
  Instance edited = inst;
  edited.ballots[2] = set_with(edited.ballots[2], 1);
  c.add("after voter 2 approves candidate 1, equal-EJR+ fails",
        !sat(NotionId::EqualEJRplus, edited, w));
  c.add_try("monotonicity fails for equal-EJR+", [&] {
    return axiom_violated(NotionId::EqualEJRplus, AxiomId::Monotonicity, inst,
                          w);
  });
  return c.take();
}

FixtureReport facts_ejrppar(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("EJR+ holds", sat(NotionId::EJRplus, inst, w));
  auto result = verify(NotionId::EJRplusExPareto, inst, w);
  c.add("external Pareto optimality fails", !result.satisfied);
  c.add("the dominating disjoint committee is {0,1}",
        result.witness && result.witness->anchors == set_from_vector({0, 1}));
  return c.take();
}

FixtureReport facts_droop(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add_try("two seats for the large party meet lower quota",
            [&] { return satisfies_lower_quota(inst, w); });
  c.add("lq verdict agrees", sat(NotionId::LQPartyList, inst, w));
  c.add("Hare EJR+ holds", sat(NotionId::EJRplus, inst, w));
  auto droop = verify(NotionId::DroopEJRplus, inst, w);
  c.add("Droop-EJR+ fails", !droop.satisfied);
  c.add("the Droop witness is the small party at l = 1",
        droop.witness && droop.witness->ell == 1 &&
            droop.witness->anchors == set_with(0, 2));
  return c.take();
}

FixtureReport facts_price100(const Fixture& f) {
  FactChecker c(f.name);
  const Instance& inst = f.instance;
  Committee w = f.committees[0];
  c.add("the instance is a party list", party_list_structure(inst).has_value());
  c.add_try("one seat each meets lower quota",
            [&] { return satisfies_lower_quota(inst, w); });
  c.add("the committee is not priceable", !verify_priceable(inst, w).first);
  return c.take();
}

}  // namespace

FixtureReport replay_fixture(const std::string& name) {
  const Fixture& f = fixture(name);
  if (name == "fig2") return facts_fig2(f);
  if (name == "fig3") return facts_fig3(f);
  if (name == "fig4") return facts_fig4(f);
  if (name == "fig5") return facts_fig5(f);
  if (name == "fig6") return facts_fig6(f);
  if (name == "fig7") return facts_fig7(f);
  if (name == "fig8") return facts_fig8(f);
  if (name == "fig9") return facts_fig9(f);
  if (name == "overlap_mono") return facts_overlap_mono(f);
  if (name == "fig10") return facts_fig10(f);
  if (name == "fig11") return facts_fig11(f);
  if (name == "fig12") return facts_fig12(f);
  if (name == "fig12b") {
    FactChecker c(name);
    c.add("core stability holds",
          sat(NotionId::Core, f.instance, f.committees[0]));
    return c.take();
  }
  if (name == "pjr_ias") return facts_pjr_ias(f);
  if (name == "price_ias") return facts_price_ias(f);
  if (name == "price_wf") return facts_price_wf(f);
  if (name == "price_mp") return facts_price_mp(f);
  if (name == "weak_rfsv") return facts_weak_rfsv(f);
  if (name == "diff_iol") return facts_diff_iol(f);
  if (name == "equal_mono") return facts_equal_mono(f);
  if (name == "ejrppar") return facts_ejrppar(f);
  if (name == "droop") return facts_droop(f);
  if (name == "price100") return facts_price100(f);
  throw PreconditionError("unknown fixture: " + name);
}

std::vector<FixtureReport> replay_all_fixtures() {
  std::vector<FixtureReport> out;
  for (const auto& name : fixture_names()) out.push_back(replay_fixture(name));
  return out;
}

void write_corpus(const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& f : fixtures()) {
    write_instance_file(f.instance, directory + "/" + f.name + ".abci");
    std::ofstream side(directory + "/" + f.name + ".committees");
    for (const auto& w : f.committees) side << serialize_committee(w) << "\n";
  }
}

const std::vector<FingerprintRow>& fingerprint_rows() {
  static const std::vector<FingerprintRow> rows = {
      {"lq-party-lists", {AxiomId::LowerQuotaPartyLists}},
      {"lq-extension", {AxiomId::LowerQuotaExtension}},
      {"monotonicity", {AxiomId::Monotonicity}},
      {"rfsv", {AxiomId::RobustnessFSV}},
      {"ioas", {AxiomId::IndependenceOfApprovalSwaps}},
      {"iol", {AxiomId::IndependenceOfLosers}},
      {"witness-based",
       {AxiomId::Anonymity, AxiomId::Neutrality,
        AxiomId::IndependenceOfUnapprovedCandidates,
        AxiomId::IndependenceOfLosers}},
      {"cohesiveness-based", {AxiomId::CohesivenessBased}},
      {"individual-discontentment", {AxiomId::IndividualDiscontentment}},
      {"merge-proofness", {AxiomId::MergeProofness}},
  };
  return rows;
}

const std::vector<NotionId>& fingerprint_notions() {
  static const std::vector<NotionId> notions = {
      NotionId::JR,      NotionId::PJR,     NotionId::EJR,
      NotionId::PJRplus, NotionId::EJRplus, NotionId::SubCore,
      NotionId::FPJR,    NotionId::FJR,     NotionId::Core,
      NotionId::Priceable, NotionId::NPR};
  return notions;
}

namespace {

// Transcribed expected verdicts, row by row in fingerprint_rows() order and
// column order JR, PJR, EJR, PJR+, EJR+, Sub-Core, FPJR, FJR, Core, Price,
// NPR.
constexpr bool kExpected[10][11] = {
    {false, true, true, true, true, true, true, true, true, true, true},
    {false, true, true, true, true, true, true, true, true, false, true},
    {true, false, false, true, true, true, false, false, true, true, true},
    {true, true, true, true, true, true, true, true, true, false, true},
    {true, false, false, false, true, false, false, false, false, false, true},
    {true, true, true, true, true, true, true, true, true, true, true},
    {true, true, true, true, true, true, true, true, true, true, true},
    {true, true, true, true, true, false, false, false, false, false, true},
    {true, true, true, true, true, true, true, true, true, false, false},
    {true, true, false, true, false, true, true, false, false, false, false},
};

struct CellEvidence {
  int row;
  NotionId notion;
  const char* fixture_name;
};

const std::vector<CellEvidence>& failure_evidence() {
  static const std::vector<CellEvidence> table = {
      {0, NotionId::JR, "fig10"},
      {1, NotionId::JR, "fig10"},
      {1, NotionId::Priceable, "price100"},
      {2, NotionId::PJR, "fig3"},
      {2, NotionId::EJR, "fig3"},
      {2, NotionId::FPJR, "fig3"},
      {2, NotionId::FJR, "fig3"},
      {3, NotionId::Priceable, "fig11"},
      {4, NotionId::PJR, "pjr_ias"},
      {4, NotionId::EJR, "pjr_ias"},
      {4, NotionId::PJRplus, "pjr_ias"},
      {4, NotionId::SubCore, "pjr_ias"},
      {4, NotionId::FPJR, "pjr_ias"},
      {4, NotionId::FJR, "pjr_ias"},
      {4, NotionId::Core, "pjr_ias"},
      {4, NotionId::Priceable, "price_ias"},
      {7, NotionId::SubCore, "fig7"},
      {7, NotionId::FPJR, "fig7"},
      {7, NotionId::FJR, "fig12"},
      {7, NotionId::Core, "fig12"},
      {7, NotionId::Priceable, "price_wf"},
      {8, NotionId::Priceable, "price_wf"},
      {8, NotionId::NPR, "fig8"},
      {9, NotionId::EJR, "fig6"},
      {9, NotionId::EJRplus, "fig6"},
      {9, NotionId::FJR, "fig12"},
      {9, NotionId::Core, "fig12"},
      {9, NotionId::Priceable, "price_mp"},
      {9, NotionId::NPR, "fig8"},
  };
  return table;
}

}  // namespace

bool expected_cell(const FingerprintRow& row, NotionId notion) {
  const auto& rows = fingerprint_rows();
  const auto& notions = fingerprint_notions();
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].label != row.label) continue;
    for (size_t c = 0; c < notions.size(); ++c) {
      if (notions[c] == notion) return kExpected[r][c];
    }
  }
  throw PreconditionError("cell outside the fingerprint tables");
}

FingerprintResult fingerprint(const FingerprintOptions& options) {
  const auto& rows = fingerprint_rows();
  const auto& notions = fingerprint_notions();
  FingerprintResult result;
  result.cells.assign(rows.size(),
                      std::vector<FingerprintCell>(notions.size()));

  // scans shared between rows (independence of losers appears twice)
  std::map<std::pair<NotionId, AxiomId>, SearchOutcome> scan_cache;
  auto run_scan = [&](NotionId notion, AxiomId axiom) -> const SearchOutcome& {
    auto key = std::make_pair(notion, axiom);
    auto it = scan_cache.find(key);
    if (it != scan_cache.end()) return it->second;
    SearchOptions sopts;
    sopts.jobs = options.jobs;
    SearchOutcome outcome =
        search_axiom_violation(notion, axiom, options.family, sopts);
    return scan_cache.emplace(key, std::move(outcome)).first->second;
  };

  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < notions.size(); ++c) {
      FingerprintCell& cell = result.cells[r][c];
      cell.expected = kExpected[r][c];
      NotionId notion = notions[c];

      // expected failures: replay the designated fixture
      bool replayed = false;
      for (const auto& ev : failure_evidence()) {
        if (ev.row != static_cast<int>(r) || ev.notion != notion) continue;
        const Fixture& f = fixture(ev.fixture_name);
        for (AxiomId axiom : rows[r].components) {
          AxiomVerdict verdict =
              check_axiom(notion, axiom, f.instance, f.committees[0]);
          if (verdict.status == AxiomVerdict::Status::Violated) {
            cell.holds = false;
            cell.evidence = std::string("fixture ") + ev.fixture_name;
            replayed = true;
            break;
          }
        }
        if (replayed) break;
      }
      if (replayed) continue;

      // otherwise: holds-on-family certificate (or a search hit)
      cell.holds = true;
      long long checked = 0;
      for (AxiomId axiom : rows[r].components) {
        if (axiom == AxiomId::Anonymity || axiom == AxiomId::Neutrality) {
          continue;  // covered jointly by the orbit pass below
        }
        const SearchOutcome& outcome = run_scan(notion, axiom);
        checked += outcome.pairs_checked;
        if (outcome.violated) {
          cell.holds = false;
          cell.evidence = "family search hit (" + to_string(axiom) + ")";
          break;
        }
      }
      bool needs_permutations =
          cell.holds &&
          std::count(rows[r].components.begin(), rows[r].components.end(),
                     AxiomId::Anonymity) > 0;
      if (needs_permutations) {
        auto perm = check_permutation_invariance(
            notion, options.family, options.jobs,
            notion == NotionId::Priceable
                ? std::max(97, options.permutation_stride_priceable)
                : 97);
        checked += perm.pairs_checked;
        if (!perm.holds) {
          cell.holds = false;
          cell.evidence = "family search hit (permutation orbit)";
        }
      }
      if (cell.holds) {
        cell.evidence = "holds on family (" + std::to_string(checked) +
                        " pairs)";
      }
      result.pairs_checked += checked;
    }
  }

  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < notions.size(); ++c) {
      if (result.cells[r][c].holds != result.cells[r][c].expected)
        result.matches_expected = false;
    }
  }
  return result;
}

std::string fingerprint_tsv(const FingerprintResult& result) {
  const auto& rows = fingerprint_rows();
  const auto& notions = fingerprint_notions();
  std::ostringstream out;
  out << "axiom";
  for (NotionId id : notions) out << "\t" << to_string(id);
  out << "\n";
  for (size_t r = 0; r < rows.size(); ++r) {
    out << rows[r].label;
    for (size_t c = 0; c < notions.size(); ++c) {
      const auto& cell = result.cells[r][c];
      out << "\t" << (cell.holds ? "yes" : "no");
      if (!cell.evidence.empty()) out << "[" << cell.evidence << "]";
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::string grid_for(const FingerprintResult& result,
                     const std::vector<std::string>& row_labels,
                     const std::vector<NotionId>& cols) {
  const auto& rows = fingerprint_rows();
  const auto& notions = fingerprint_notions();
  std::ostringstream out;
  size_t width = 0;
  for (const auto& label : row_labels) width = std::max(width, label.size());
  out << std::string(width, ' ');
  for (NotionId id : cols) out << "  " << to_string(id);
  out << "\n";
  for (const auto& label : row_labels) {
    size_t r = 0;
    while (r < rows.size() && rows[r].label != label) ++r;
    out << label << std::string(width - label.size(), ' ');
    for (NotionId id : cols) {
      size_t c = 0;
      while (c < notions.size() && notions[c] != id) ++c;
      const auto& cell = result.cells[r][c];
      std::string mark = cell.holds ? "+" : "x";
      if (cell.holds != cell.expected) mark += "!";
      std::string head = to_string(id);
      size_t pad = head.size() > mark.size() ? head.size() - mark.size() : 0;
      out << "  " << mark << std::string(pad, ' ');
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string fingerprint_grid(const FingerprintResult& result) {
  std::vector<std::string> labels;
  for (const auto& row : fingerprint_rows()) labels.push_back(row.label);
  return grid_for(result, labels, fingerprint_notions());
}

std::string roadmap_grid(const FingerprintResult& result) {
  return grid_for(result,
                  {"lq-party-lists", "iol", "rfsv", "monotonicity", "ioas"},
                  {NotionId::PJR, NotionId::EJR, NotionId::PJRplus,
                   NotionId::EJRplus});
}

}  // namespace abcv
