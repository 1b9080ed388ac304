#ifndef ABCV_LP_HPP
#define ABCV_LP_HPP

#include <optional>
#include <vector>

#include "abcv/base.hpp"

namespace abcv {

enum class Relation { LessEq, Eq, GreaterEq };

struct LinearConstraint {
  std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
  Relation rel = Relation::LessEq;
  Rational rhs = 0;
};

// Pure feasibility system over nonnegative variables, exact rational
// arithmetic throughout. Upper bounds go in as ordinary constraints.
struct RationalLP {
  int num_vars = 0;
  std::vector<LinearConstraint> constraints;
};

// Phase-1 simplex with Bland's rule. Returns a satisfying point (exact, zero
// slack on re-substitution) or nullopt for provable infeasibility.
std::optional<std::vector<Rational>> lp_feasible(const RationalLP& lp);

// Exact re-substitution check.
bool lp_point_satisfies(const RationalLP& lp, const std::vector<Rational>& x);

// Fourier-Motzkin elimination; an independent feasibility route used to
// cross-check simplex verdicts on small systems. Work-bounded: throws
// WorkBoundExceeded if the intermediate systems grow past the budget.
bool fm_feasible(const RationalLP& lp, WorkBudget* budget = nullptr);

}  // namespace abcv

#endif  // ABCV_LP_HPP
