#ifndef ABCV_RULES_HPP
#define ABCV_RULES_HPP

#include <optional>
#include <string>

#include "abcv/model.hpp"

namespace abcv {

enum class RuleId { MES, PAVexhaustive };

std::optional<RuleId> rule_from_string(const std::string& name);

// Method of Equal Shares with uniform budgets and a fixed per-candidate
// price (budget/price ratio k/n). Rounds buy the candidate with the smallest
// per-voter price rho among supporters with remaining budget; ties break by
// candidate index. If fewer than k candidates are bought, the committee is
// completed greedily by approval score (ties again by index).
Committee mes(const Instance& inst);

// Exact-rational PAV optimum over all k-subsets (harmonic scores), ties by
// lexicographic committee order.
Committee pav_exhaustive(const Instance& inst, WorkBudget* budget = nullptr);

Rational pav_score(const Instance& inst, const Committee& w);

// Independent Bernoulli approvals, byte-identical across runs for a fixed
// seed. approval_ppm is the approval probability in parts per million.
// With require_nonempty, all-empty ballots are resampled.
Instance random_instance(int n, int m, int k, int approval_ppm,
                         std::uint64_t seed, bool require_nonempty = false);

}  // namespace abcv

#endif  // ABCV_RULES_HPP
