#ifndef ABCV_AXIOMS_HPP
#define ABCV_AXIOMS_HPP

#include <functional>
#include <optional>
#include <string>

#include "abcv/oracle.hpp"
#include "abcv/witness.hpp"

namespace abcv {

enum class AxiomId {
  Monotonicity,
  IndependenceOfLosers,
  StrongIoL,
  RobustnessFSV,
  IndependenceOfApprovalSwaps,
  LowerQuotaPartyLists,
  LowerQuotaExtension,
  Anonymity,
  Neutrality,
  IndependenceOfUnapprovedCandidates,
  CohesivenessBased,
  IndividualDiscontentment,
  MergeProofness,
};

const std::vector<AxiomId>& all_axioms();
std::string to_string(AxiomId id);
std::optional<AxiomId> axiom_from_string(const std::string& name);

struct TransformOptions {
  long long max_exhaustive = 1 << 16;
  int sample_count = 256;
  std::uint64_t seed = 1;
  bool allow_sampling = true;
};

// One admissible transformed test point: the instance I' and the committee to
// re-check there (sigma(W) under neutrality, W itself otherwise).
struct TransformedPair {
  Instance instance;
  Committee committee;
  std::string move;
};

// Streams the transformation-shaped axioms' admissible instances (exhaustive
// below max_exhaustive, seeded sample beyond). Returns true iff exhaustive.
// Axioms that are not transformation-shaped raise PreconditionError.
bool transform(AxiomId axiom, const Instance& inst, const Committee& w,
               const TransformOptions& opts,
               const std::function<bool(const TransformedPair&)>& fn);

struct AxiomVerdict {
  enum class Status { Holds, Violated, NotApplicable };
  Status status = Status::Holds;
  bool exhaustive = true;  // false when sampling had to kick in
  std::optional<Instance> transformed;
  std::optional<Committee> transformed_committee;
  std::optional<std::vector<int>> witness_group;
  std::string detail;
};

// Single-pair verdict. Transformation axioms are conditionals on W in f(I)
// (on W notin f(I) for independence of unapproved candidates); witness-level
// axioms evaluate the natural witnesses of a violating pair; lower-quota
// axioms compare against LQ membership on party-list instances; strong
// independence of losers checks the single-candidate-justification
// equivalence at this pair.
AxiomVerdict check_axiom(NotionId notion, AxiomId axiom, const Instance& inst,
                         const Committee& w,
                         const TransformOptions& opts = {});

struct SearchOutcome {
  bool violated = false;
  long long pairs_checked = 0;
  std::optional<Instance> instance;  // shrunk counterexample
  std::optional<Committee> committee;
  AxiomVerdict verdict;
  std::string note;
};

struct SearchOptions {
  int jobs = 0;
  bool shrink = true;
  // permutation-group axioms get full enumeration only on pairs selected by
  // this seeded rate when the notion is expensive; 1 = every pair
  int anonymity_sample_stride = 1;
  std::uint64_t seed = 1;
};

// Scans (I, W in f(I)) pairs over the family. First violation in canonical
// order is returned with a greedily shrunk counterexample. For the
// profile-editing axioms the scan applies single-edit moves; over an
// exhaustive family every definitional violation flips some single edit, so
// this is complete at the family bounds.
SearchOutcome search_axiom_violation(NotionId notion, AxiomId axiom,
                                     const InstanceFamily& family,
                                     const SearchOptions& opts = {});

struct PartyListRefutation {
  Instance instance;   // the party-list instance I3
  Committee committee; // W reindexed to I3's candidate set
};

// Constructive chain behind the PJR+ refinement characterization: restrict
// to W cup {c}, let the witness group agree on S cup {c}, everyone else on
// W minus S. The output is a party-list instance on which W misses lower
// quota. Requires a replaying PJR+ witness with a proper voter subset.
PartyListRefutation refute_via_party_list(const Instance& inst,
                                          const Committee& w,
                                          const ViolationWitness& witness);

// Monotone extension turning a PJR+ violation into a plain PJR violation:
// every witness voter absorbs the group's committee approvals.
Instance pjr_violation_from_plus(const Instance& inst, const Committee& w,
                                 const ViolationWitness& witness);

struct ChainResult {
  Instance i2;          // individual-discontentment copy / merged profile
  Instance i3;          // party-list instance on W cup ballot
  Committee w3;         // W reindexed to i3
  LocalEmbedding embedding;  // (group, W) in i2 -> (group, w3) in i3
};

// Coarsening-side chains: given a cohesive witness group against a committee
// that satisfies EJR+ (resp. PJR+), builds the two-party instance where W
// meets lower quota and the witness embeds unchanged.
ChainResult coarsening_chain(NotionId id, const Instance& inst,
                             const Committee& w, const std::vector<int>& group);

struct PermutationInvarianceOutcome {
  bool holds = true;
  long long pairs_checked = 0;
  long long orbits = 0;
  std::optional<Instance> instance;
  std::optional<Committee> committee;
  std::string detail;
};

// Joint anonymity/neutrality certificate over the family: the verdict must be
// constant on every orbit under candidate relabelings composed with voter
// reordering (orbits are keyed by the minimal relabeled sorted profile).
// Additionally, every anonymity_stride-th pair gets an explicit sweep over
// all voter permutations of the ballot list.
PermutationInvarianceOutcome check_permutation_invariance(
    NotionId notion, const InstanceFamily& family, int jobs = 0,
    int anonymity_stride = 97, std::uint64_t seed = 1);

struct StrongIolOutcome {
  bool holds = true;
  long long pairs_checked = 0;
  std::optional<Instance> instance;
  std::optional<Committee> committee;
};

// W in f(I) iff no single c outside W justifies a violation on W cup {c}.
StrongIolOutcome check_strong_iol(NotionId notion, const InstanceFamily& family,
                                  int jobs = 0);

}  // namespace abcv

#endif  // ABCV_AXIOMS_HPP
