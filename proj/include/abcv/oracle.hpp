#ifndef ABCV_ORACLE_HPP
#define ABCV_ORACLE_HPP

#include <functional>
#include <optional>

#include "abcv/notions.hpp"

namespace abcv {

// Bounded instance universe. Exhaustive mode enumerates every ballot profile
// with n <= max_voters, m <= max_candidates, k <= min(m, max_k), canonical
// under voter permutation (ballots sorted ascending as masks). Seeded mode
// draws `count` random instances within the same bounds.
struct InstanceFamily {
  int max_voters = 4;
  int max_candidates = 5;
  int max_k = 3;

  enum class Mode { Exhaustive, SeededRandom };
  Mode mode = Mode::Exhaustive;
  int count = 0;          // SeededRandom only
  std::uint64_t seed = 0; // SeededRandom only
};

// Calls fn for each instance in deterministic order; fn returning false stops
// the enumeration early.
void for_each_instance(const InstanceFamily& family,
                       const std::function<bool(const Instance&)>& fn);

std::vector<Instance> family_instances(const InstanceFamily& family);

// Calls fn for every k-subset of candidates, ascending lexicographic.
void for_each_committee(const Instance& inst,
                        const std::function<bool(const Committee&)>& fn);

// Definition-literal exponential reference: quantifiers over groups N' are
// swept as voter-subset masks (needs n <= 25), candidate sets exhaustively.
// Priceability goes through Fourier-Motzkin as the independent route.
bool verify_bruteforce(NotionId id, const Instance& inst, const Committee& w,
                       WorkBudget* budget = nullptr);

// Exactly { W : verify_bruteforce(id, I, W) }.
std::vector<Committee> enumerate_satisfying(NotionId id, const Instance& inst,
                                            WorkBudget* budget = nullptr);

struct RefinementOutcome {
  bool confirmed = true;
  std::optional<std::pair<Instance, Committee>> counterexample;
  long long pairs_checked = 0;
};

// Confirms f_a(I) subseteq f_b(I) over the family, or returns the first
// (instance, committee) in canonical order with W in f_a(I) \ f_b(I).
RefinementOutcome refinement_report(NotionId coarse_from, NotionId into,
                                    const InstanceFamily& family,
                                    int jobs = 0);

// One TSV row: notionA, notionB, verdict, counterexample path (written in
// the instance file format when a counterexample exists, "-" otherwise).
std::string refinement_tsv_row(NotionId coarse_from, NotionId into,
                               const RefinementOutcome& outcome,
                               const std::string& counterexample_path);

}  // namespace abcv

#endif  // ABCV_ORACLE_HPP
