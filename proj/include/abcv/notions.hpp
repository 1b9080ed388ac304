#ifndef ABCV_NOTIONS_HPP
#define ABCV_NOTIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abcv/lp.hpp"
#include "abcv/model.hpp"

namespace abcv {

enum class NotionId {
  JR,
  PJR,
  EJR,
  PJRplus,
  EJRplus,
  Core,
  FJR,
  FPJR,
  SubCore,
  Priceable,
  NPR,
  LQPartyList,
  WeakEJRplus,
  WeakPJRplus,
  DiffEJRplus,
  DiffPJRplus,
  EqualEJRplus,
  DroopEJRplus,
  OverlapPJR,
  EJRplusExPareto,
  Universal,
  Empty,
};

const std::vector<NotionId>& all_notions();
std::string to_string(NotionId id);
std::optional<NotionId> notion_from_string(const std::string& name);

// A structured certificate of a violation. `group` is the voter set N',
// `ell` the demanded representation level (beta for FJR/FPJR, 0 where the
// notion has no level), and `anchors` the candidate set the violation points
// to: {c} for the "+"-style notions, the cohesion/deviation set T or C' for
// PJR/EJR/Core/FJR/FPJR/sub-core, empty for priceability.
struct ViolationWitness {
  NotionId kind = NotionId::Empty;
  std::vector<int> group;
  int ell = 0;
  CandSet anchors = 0;
};

struct VerificationResult {
  bool satisfied = true;
  std::optional<ViolationWitness> witness;
};

// Re-derives the violation from the notion's definition with the witness's
// own parameters. Every witness returned by this module replays.
bool replay_witness(const Instance& inst, const Committee& w,
                    const ViolationWitness& witness);

// Decision procedure for every notion in the catalog. EJR+ and PJR+ run the
// polynomial fast paths; Core/FJR/FPJR/sub-core enumerate deviating candidate
// sets exhaustively (work-bounded); priceability solves an exact rational LP.
VerificationResult verify(NotionId id, const Instance& inst,
                          const Committee& w, WorkBudget* budget = nullptr);

// Per-candidate counting path for EJR+: a violation at (c, l) exists iff the
// supporters of c with utility < l form an l-large set.
VerificationResult verify_ejrp_fast(const Instance& inst, const Committee& w);

// Max-weight-closure path for PJR+: for each c outside W, supporters are
// items with profit k requiring their approved winners (cost n); a violation
// at c exists iff the maximum closure value reaches n.
VerificationResult verify_pjrp_fast(const Instance& inst, const Committee& w);

// Priceability certificate: budget B and supporter payments for winners.
struct PriceSystem {
  Rational budget;
  std::vector<std::map<int, Rational>> payments;  // per voter: winner -> p(i,c)
};

std::pair<bool, std::optional<PriceSystem>> verify_priceable(
    const Instance& inst, const Committee& w);

// Exact re-evaluation of conditions C1-C5 for a claimed price system.
bool price_system_valid(const Instance& inst, const Committee& w,
                        const PriceSystem& prices);

// The feasibility system behind verify_priceable: variable 0 is the budget,
// then one payment variable per (voter, approved winner) pair as listed in
// var_of_voter. Exposed so the oracle can run an independent solver over the
// same system.
RationalLP priceability_system(
    const Instance& inst, const Committee& w,
    std::vector<std::vector<std::pair<int, int>>>* var_of_voter = nullptr);

// True iff `group` (with some parameters) certifies a violation of `id`;
// this is the existential form used by the natural-witness machinery.
bool group_is_natural_witness(NotionId id, const Instance& inst,
                              const Committee& w, const std::vector<int>& group,
                              WorkBudget* budget = nullptr);

std::string witness_to_json(const ViolationWitness& witness);

}  // namespace abcv

#endif  // ABCV_NOTIONS_HPP
