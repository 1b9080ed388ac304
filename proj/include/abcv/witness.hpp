#ifndef ABCV_WITNESS_HPP
#define ABCV_WITNESS_HPP

#include <optional>
#include <vector>

#include "abcv/notions.hpp"

namespace abcv {

struct WitnessSet {
  NotionId notion;
  std::vector<std::vector<int>> groups;
};

// Every N' certifying a violation of the notion's defining condition
// (exponential sweep, work-bounded). Universal and Empty have no natural
// witness semantics and raise PreconditionError; priceability uses the
// trivial whole-electorate witness.
WitnessSet natural_witnesses(NotionId id, const Instance& inst,
                             const Committee& w, WorkBudget* budget = nullptr);

// One side of a local-embedding query: a voter group and committee in an
// instance.
struct EmbeddingSide {
  const Instance* inst;
  std::vector<int> group;
  Committee committee;
};

struct LocalEmbedding {
  std::vector<std::pair<int, int>> voter_map;      // N' -> N^'
  std::vector<std::pair<int, int>> candidate_map;  // domain -> target
};

// Backtracking search for a bijection on voters and an injection on
// candidates mapping W onto W^ and preserving approvals of the group over
// W plus everything the group approves. Returns a mapping or certified
// absence. Requires |group| == |target group| and equal committee sizes.
std::optional<LocalEmbedding> find_local_embedding(const EmbeddingSide& from,
                                                   const EmbeddingSide& to,
                                                   WorkBudget* budget = nullptr);

// Re-checks both invariants of a claimed embedding.
bool embedding_valid(const EmbeddingSide& from, const EmbeddingSide& to,
                     const LocalEmbedding& embedding);

// True iff every natural witness of the (violated) pair shares an approved
// candidate outside W. Vacuously true on satisfied committees.
bool check_cohesiveness_based(NotionId id, const Instance& inst,
                              const Committee& w, WorkBudget* budget = nullptr);

// Builds I^(j) for every j in the witness (the whole group adopts A_j) and
// re-checks witness membership.
bool check_individual_discontentment(NotionId id, const Instance& inst,
                                     const Committee& w,
                                     const std::vector<int>& group,
                                     WorkBudget* budget = nullptr);

enum class MergeVerdict { Holds, Fails, Exhausted };

struct MergeResult {
  MergeVerdict verdict = MergeVerdict::Holds;
  std::vector<CandSet> failing_profile;  // set iff verdict == Fails
};

// Sweeps admissible merged profiles (ballots grow within the group's union).
// Full enumeration up to `enumeration_cap` profiles; beyond that, seeded
// sampling that can only answer Fails or Exhausted, never Holds.
MergeResult check_merge_proofness(NotionId id, const Instance& inst,
                                  const Committee& w,
                                  const std::vector<int>& group,
                                  long long enumeration_cap = 1 << 20,
                                  std::uint64_t seed = 1,
                                  WorkBudget* budget = nullptr);

}  // namespace abcv

#endif  // ABCV_WITNESS_HPP
