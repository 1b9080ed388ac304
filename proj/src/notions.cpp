#include "abcv/notions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "abcv/flow.hpp"
#include "abcv/lp.hpp"

namespace abcv {

const std::vector<NotionId>& all_notions() {
  static const std::vector<NotionId> ids = {
      NotionId::JR,          NotionId::PJR,
      NotionId::EJR,         NotionId::PJRplus,
      NotionId::EJRplus,     NotionId::Core,
      NotionId::FJR,         NotionId::FPJR,
      NotionId::SubCore,     NotionId::Priceable,
      NotionId::NPR,         NotionId::LQPartyList,
      NotionId::WeakEJRplus, NotionId::WeakPJRplus,
      NotionId::DiffEJRplus, NotionId::DiffPJRplus,
      NotionId::EqualEJRplus, NotionId::DroopEJRplus,
      NotionId::OverlapPJR,  NotionId::EJRplusExPareto,
      NotionId::Universal,   NotionId::Empty};
  return ids;
}

std::string to_string(NotionId id) {
  switch (id) {
    case NotionId::JR: return "jr";
    case NotionId::PJR: return "pjr";
    case NotionId::EJR: return "ejr";
    case NotionId::PJRplus: return "pjr+";
    case NotionId::EJRplus: return "ejr+";
    case NotionId::Core: return "core";
    case NotionId::FJR: return "fjr";
    case NotionId::FPJR: return "fpjr";
    case NotionId::SubCore: return "subcore";
    case NotionId::Priceable: return "priceable";
    case NotionId::NPR: return "npr";
    case NotionId::LQPartyList: return "lq";
    case NotionId::WeakEJRplus: return "weak-ejr+";
    case NotionId::WeakPJRplus: return "weak-pjr+";
    case NotionId::DiffEJRplus: return "diff-ejr+";
    case NotionId::DiffPJRplus: return "diff-pjr+";
    case NotionId::EqualEJRplus: return "equal-ejr+";
    case NotionId::DroopEJRplus: return "droop-ejr+";
    case NotionId::OverlapPJR: return "overlap-pjr";
    case NotionId::EJRplusExPareto: return "ejr+expareto";
    case NotionId::Universal: return "universal";
    case NotionId::Empty: return "empty";
  }
  return "?";
}

std::optional<NotionId> notion_from_string(const std::string& name) {
  for (NotionId id : all_notions()) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

namespace {

std::vector<int> utilities(const Instance& inst, const Committee& w) {
  std::vector<int> util(inst.n);
  for (int i = 0; i < inst.n; ++i)
    util[i] = set_size(inst.ballots[i] & w.members);
  return util;
}

CandSet group_union_in_w(const Instance& inst, const Committee& w,
                         const std::vector<int>& group) {
  CandSet u = 0;
  for (int i : group) u |= inst.ballots[i] & w.members;
  return u;
}

CandSet group_intersection(const Instance& inst,
                           const std::vector<int>& group) {
  CandSet common = full_set(inst.m);
  for (int i : group) common &= inst.ballots[i];
  return common;
}

// Enumerates size-t candidate subsets of `pool` in ascending lexicographic
// order of member lists; fn returns true to stop.
template <typename Fn>
bool for_each_combination(const std::vector<int>& pool, int t, Fn&& fn) {
  if (t > static_cast<int>(pool.size())) return false;
  std::vector<int> idx(t);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    CandSet mask = 0;
    for (int j : idx) mask = set_with(mask, pool[j]);
    if (fn(mask)) return true;
    int pos = t - 1;
    while (pos >= 0 &&
           idx[pos] == static_cast<int>(pool.size()) - t + pos)
      --pos;
    if (pos < 0) return false;
    ++idx[pos];
    for (int j = pos + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

ViolationWitness make_witness(NotionId kind, std::vector<int> group, int ell,
                              CandSet anchors) {
  ViolationWitness w;
  w.kind = kind;
  w.group = std::move(group);
  w.ell = ell;
  w.anchors = anchors;
  return w;
}

std::optional<ViolationWitness> check_jr(const Instance& inst,
                                         const Committee& w) {
  auto util = utilities(inst, w);
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::vector<int> group;
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c) && util[i] == 0) group.push_back(i);
    }
    if (is_ell_large(static_cast<long long>(group.size()), 1, inst.n, inst.k))
      return make_witness(NotionId::JR, group, 1, set_with(0, c));
  }
  return std::nullopt;
}

// PJR / EJR / Core / FJR / FPJR all quantify over candidate sets T; groups
// can be taken maximal for the per-voter conditions, and union conditions
// reduce to enumerating the union target S inside W.
std::optional<ViolationWitness> check_pjr(const Instance& inst,
                                          const Committee& w,
                                          WorkBudget& budget) {
  std::vector<int> all_cands(inst.m);
  std::iota(all_cands.begin(), all_cands.end(), 0);
  auto w_members = set_to_vector(w.members);
  for (int ell = 1; ell <= inst.k; ++ell) {
    std::optional<ViolationWitness> found;
    for_each_combination(all_cands, ell, [&](CandSet t) {
      for (CandSet s = 0;; s = ((s | ~w.members) + 1) & w.members) {
        if (set_size(s) < ell) {
          budget.charge();
          std::vector<int> group;
          for (int i = 0; i < inst.n; ++i) {
            if ((inst.ballots[i] & t) == t &&
                (inst.ballots[i] & w.members & ~s) == 0)
              group.push_back(i);
          }
          if (is_ell_large(static_cast<long long>(group.size()), ell, inst.n,
                           inst.k)) {
            found = make_witness(NotionId::PJR, group, ell, t);
            return true;
          }
        }
        if (s == w.members) break;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_ejr(const Instance& inst,
                                          const Committee& w,
                                          WorkBudget& budget) {
  auto util = utilities(inst, w);
  std::vector<int> all_cands(inst.m);
  std::iota(all_cands.begin(), all_cands.end(), 0);
  for (int ell = 1; ell <= inst.k; ++ell) {
    std::optional<ViolationWitness> found;
    for_each_combination(all_cands, ell, [&](CandSet t) {
      budget.charge();
      std::vector<int> group;
      for (int i = 0; i < inst.n; ++i) {
        if ((inst.ballots[i] & t) == t && util[i] < ell) group.push_back(i);
      }
      if (is_ell_large(static_cast<long long>(group.size()), ell, inst.n,
                       inst.k)) {
        found = make_witness(NotionId::EJR, group, ell, t);
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_core(const Instance& inst,
                                           const Committee& w,
                                           WorkBudget& budget) {
  auto util = utilities(inst, w);
  std::vector<int> all_cands(inst.m);
  std::iota(all_cands.begin(), all_cands.end(), 0);
  for (int ell = 1; ell <= inst.k; ++ell) {
    std::optional<ViolationWitness> found;
    for_each_combination(all_cands, ell, [&](CandSet t) {
      budget.charge();
      std::vector<int> group;
      for (int i = 0; i < inst.n; ++i) {
        if (set_size(inst.ballots[i] & t) > util[i]) group.push_back(i);
      }
      if (is_ell_large(static_cast<long long>(group.size()), ell, inst.n,
                       inst.k)) {
        found = make_witness(NotionId::Core, group, ell, t);
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_fjr(const Instance& inst,
                                          const Committee& w,
                                          WorkBudget& budget, bool union_form) {
  auto util = utilities(inst, w);
  std::vector<int> all_cands(inst.m);
  std::iota(all_cands.begin(), all_cands.end(), 0);
  NotionId kind = union_form ? NotionId::FPJR : NotionId::FJR;
  for (int t_size = 1; t_size <= inst.k; ++t_size) {
    std::optional<ViolationWitness> found;
    for_each_combination(all_cands, t_size, [&](CandSet t) {
      for (int beta = 1; beta <= t_size; ++beta) {
        if (!union_form) {
          budget.charge();
          std::vector<int> group;
          for (int i = 0; i < inst.n; ++i) {
            if (set_size(inst.ballots[i] & t) >= beta && util[i] < beta)
              group.push_back(i);
          }
          if (is_ell_large(static_cast<long long>(group.size()), t_size,
                           inst.n, inst.k)) {
            found = make_witness(kind, group, beta, t);
            return true;
          }
        } else {
          for (CandSet s = 0;; s = ((s | ~w.members) + 1) & w.members) {
            if (set_size(s) < beta) {
              budget.charge();
              std::vector<int> group;
              for (int i = 0; i < inst.n; ++i) {
                if (set_size(inst.ballots[i] & t) >= beta &&
                    (inst.ballots[i] & w.members & ~s) == 0)
                  group.push_back(i);
              }
              if (is_ell_large(static_cast<long long>(group.size()), t_size,
                               inst.n, inst.k)) {
                found = make_witness(kind, group, beta, t);
                return true;
              }
            }
            if (s == w.members) break;
          }
        }
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// Equivalent sub-core form: some C' outside W, an l-large group of its
// supporters, and a collective utility of at most l - |C'|.
std::optional<ViolationWitness> check_subcore(const Instance& inst,
                                              const Committee& w,
                                              WorkBudget& budget) {
  CandSet outside = full_set(inst.m) & ~w.members;
  for (CandSet cp = outside & (~outside + 1);;
       cp = ((cp | ~outside) + 1) & outside) {
    if (cp == 0) break;
    int cp_size = set_size(cp);
    for (CandSet s = 0;; s = ((s | ~w.members) + 1) & w.members) {
      budget.charge();
      std::vector<int> group;
      CandSet group_union = 0;
      for (int i = 0; i < inst.n; ++i) {
        if ((inst.ballots[i] & cp) != 0 &&
            (inst.ballots[i] & w.members & ~s) == 0) {
          group.push_back(i);
          group_union |= inst.ballots[i] & w.members;
        }
      }
      int u = set_size(group_union);
      for (int ell = 1; ell <= inst.k; ++ell) {
        if (u <= ell - cp_size &&
            is_ell_large(static_cast<long long>(group.size()), ell, inst.n,
                         inst.k)) {
          return make_witness(NotionId::SubCore, group, ell, cp);
        }
      }
      if (s == w.members) break;
    }
    if (cp == outside) break;
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_npr(const Instance& inst,
                                          const Committee& w) {
  auto util = utilities(inst, w);
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::vector<int> supporters;
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c)) supporters.push_back(i);
    }
    // minimum-size groups are extremal: the average of the s smallest
    // utilities is non-decreasing in s
    std::sort(supporters.begin(), supporters.end(), [&](int a, int b) {
      return util[a] != util[b] ? util[a] < util[b] : a < b;
    });
    std::vector<long long> prefix(supporters.size() + 1, 0);
    for (size_t j = 0; j < supporters.size(); ++j)
      prefix[j + 1] = prefix[j] + util[supporters[j]];
    for (int ell = 1; ell <= inst.k; ++ell) {
      int s = min_ell_large_size(ell, inst.n, inst.k);
      if (s < 1 || s > static_cast<int>(supporters.size())) continue;
      if (prefix[s] <= static_cast<long long>(ell - 1) * s) {
        std::vector<int> group(supporters.begin(), supporters.begin() + s);
        std::sort(group.begin(), group.end());
        return make_witness(NotionId::NPR, group, ell, set_with(0, c));
      }
    }
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_lq(const Instance& inst,
                                         const Committee& w) {
  auto parties = party_list_structure(inst);
  if (!parties) throw PreconditionError("not a party-list instance");
  auto quotas = lower_quota_seats(*parties, inst.n, inst.k);
  for (size_t x = 0; x < parties->parties.size(); ++x) {
    if (set_size(parties->parties[x] & w.members) < quotas[x]) {
      return make_witness(NotionId::LQPartyList, parties->party_voters[x],
                          quotas[x], parties->parties[x]);
    }
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_weak_plus(const Instance& inst,
                                                const Committee& w,
                                                bool union_form) {
  auto util = utilities(inst, w);
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::vector<int> nc;
    CandSet u = 0;
    int max_util = -1;
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c)) {
        nc.push_back(i);
        u |= inst.ballots[i] & w.members;
        max_util = std::max(max_util, util[i]);
      }
    }
    if (nc.empty()) continue;
    int level = union_form ? set_size(u) : max_util;
    for (int ell = level + 1; ell <= inst.k; ++ell) {
      if (is_ell_large(static_cast<long long>(nc.size()), ell, inst.n,
                       inst.k)) {
        return make_witness(
            union_form ? NotionId::WeakPJRplus : NotionId::WeakEJRplus, nc,
            ell, set_with(0, c));
      }
    }
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_diff_ejrp(const Instance& inst,
                                                const Committee& w) {
  auto util = utilities(inst, w);
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::map<CandSet, std::vector<int>> classes;  // by A_i \ W
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c))
        classes[inst.ballots[i] & ~w.members].push_back(i);
    }
    for (const auto& [key, members] : classes) {
      for (int ell = 1; ell <= inst.k; ++ell) {
        std::vector<int> group;
        for (int i : members) {
          if (util[i] < ell) group.push_back(i);
        }
        if (is_ell_large(static_cast<long long>(group.size()), ell, inst.n,
                         inst.k)) {
          return make_witness(NotionId::DiffEJRplus, group, ell,
                              set_with(0, c));
        }
      }
    }
  }
  return std::nullopt;
}

// Shared closure reduction: a PJR+-style violation anchored at c restricted
// to the given supporter pool. Violation iff some N' in the pool satisfies
// |N'|*k - |union(A_i cap W)|*n >= n; witness l = floor(|N'|*k/n).
std::optional<ViolationWitness> closure_violation(const Instance& inst,
                                                  const Committee& w,
                                                  int candidate,
                                                  const std::vector<int>& pool,
                                                  NotionId kind) {
  if (pool.empty()) return std::nullopt;
  auto w_members = set_to_vector(w.members);
  std::vector<int> winner_item(inst.m, -1);
  ClosureProblem problem;
  for (size_t j = 0; j < w_members.size(); ++j) {
    winner_item[w_members[j]] = static_cast<int>(pool.size() + j);
  }
  for (int i : pool) {
    ClosureProblem::Item item;
    item.weight = inst.k;
    for (int c : set_to_vector(inst.ballots[i] & w.members))
      item.requires_items.push_back(winner_item[c]);
    problem.items.push_back(std::move(item));
  }
  for (size_t j = 0; j < w_members.size(); ++j) {
    problem.items.push_back({-inst.n, {}});
  }
  auto result = max_closure(problem);
  if (result.value < inst.n) return std::nullopt;
  std::vector<int> group;
  for (int item : result.chosen) {
    if (item < static_cast<int>(pool.size())) group.push_back(pool[item]);
  }
  int ell = static_cast<int>(static_cast<long long>(group.size()) * inst.k /
                             inst.n);
  return make_witness(kind, group, ell, set_with(0, candidate));
}

std::optional<ViolationWitness> check_pjrp_fast_impl(const Instance& inst,
                                                     const Committee& w) {
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::vector<int> pool;
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c)) pool.push_back(i);
    }
    if (auto found = closure_violation(inst, w, c, pool, NotionId::PJRplus))
      return found;
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_diff_pjrp(const Instance& inst,
                                                const Committee& w) {
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::map<CandSet, std::vector<int>> classes;
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c))
        classes[inst.ballots[i] & ~w.members].push_back(i);
    }
    for (const auto& [key, members] : classes) {
      if (auto found = closure_violation(inst, w, c, members,
                                         NotionId::DiffPJRplus))
        return found;
    }
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_equal_ejrp(const Instance& inst,
                                                 const Committee& w) {
  auto util = utilities(inst, w);
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::map<int, std::vector<int>> by_util;
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c)) by_util[util[i]].push_back(i);
    }
    for (const auto& [u, members] : by_util) {
      for (int ell = u + 1; ell <= inst.k; ++ell) {
        if (is_ell_large(static_cast<long long>(members.size()), ell, inst.n,
                         inst.k)) {
          return make_witness(NotionId::EqualEJRplus, members, ell,
                              set_with(0, c));
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_droop_ejrp(const Instance& inst,
                                                 const Committee& w) {
  auto util = utilities(inst, w);
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::vector<int> supporters;
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c)) supporters.push_back(i);
    }
    std::sort(supporters.begin(), supporters.end(), [&](int a, int b) {
      return util[a] != util[b] ? util[a] < util[b] : a < b;
    });
    for (int ell = 1; ell <= inst.k; ++ell) {
      int low = 0;
      while (low < static_cast<int>(supporters.size()) &&
             util[supporters[low]] < ell)
        ++low;
      if (!is_droop_ell_large(low, ell, inst.n, inst.k)) continue;
      int s = static_cast<int>(static_cast<long long>(ell) * inst.n /
                               (inst.k + 1)) +
              1;
      std::vector<int> group(supporters.begin(), supporters.begin() + s);
      std::sort(group.begin(), group.end());
      return make_witness(NotionId::DroopEJRplus, group, ell, set_with(0, c));
    }
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_overlap_pjr(const Instance& inst,
                                                  const Committee& w,
                                                  WorkBudget& budget) {
  auto util = utilities(inst, w);
  std::vector<int> all_cands(inst.m);
  std::iota(all_cands.begin(), all_cands.end(), 0);
  for (int ell = 1; ell <= inst.k; ++ell) {
    std::optional<ViolationWitness> found;
    for_each_combination(all_cands, ell, [&](CandSet t) {
      budget.charge();
      std::map<CandSet, std::vector<int>> classes;  // by exact A_i cap W
      for (int i = 0; i < inst.n; ++i) {
        if ((inst.ballots[i] & t) == t && util[i] < ell)
          classes[inst.ballots[i] & w.members].push_back(i);
      }
      for (const auto& [key, members] : classes) {
        if (is_ell_large(static_cast<long long>(members.size()), ell, inst.n,
                         inst.k)) {
          found = make_witness(NotionId::OverlapPJR, members, ell, t);
          return true;
        }
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<ViolationWitness> check_expareto(const Instance& inst,
                                               const Committee& w,
                                               WorkBudget& budget) {
  auto util = utilities(inst, w);
  std::vector<int> outside = set_to_vector(full_set(inst.m) & ~w.members);
  std::optional<ViolationWitness> found;
  for_each_combination(outside, inst.k, [&](CandSet wp) {
    budget.charge();
    for (int i = 0; i < inst.n; ++i) {
      if (util[i] >= set_size(inst.ballots[i] & wp)) return false;
    }
    std::vector<int> group(inst.n);
    std::iota(group.begin(), group.end(), 0);
    found = make_witness(NotionId::EJRplusExPareto, group, 0, wp);
    return true;
  });
  return found;
}

RationalLP priceability_lp(const Instance& inst, const Committee& w,
                           std::vector<std::vector<std::pair<int, int>>>&
                               var_of_voter /* (winner, var) per voter */) {
  // var 0 = B; then one payment variable per (voter, approved winner) pair
  // (C1 and C4 already eliminate all other payments)
  RationalLP lp;
  var_of_voter.assign(inst.n, {});
  int next = 1;
  for (int i = 0; i < inst.n; ++i) {
    for (int c : set_to_vector(inst.ballots[i] & w.members)) {
      var_of_voter[i].push_back({c, next++});
    }
  }
  lp.num_vars = next;

  Rational inv_n = Rational(1) / inst.n;
  for (int i = 0; i < inst.n; ++i) {
    // p(i,c) <= 1 and C2: total spend <= B/n
    LinearConstraint spend;
    for (const auto& [c, v] : var_of_voter[i]) {
      lp.constraints.push_back({{{v, 1}}, Relation::LessEq, 1});
      spend.terms.push_back({v, 1});
    }
    spend.terms.push_back({0, -inv_n});
    spend.rel = Relation::LessEq;
    spend.rhs = 0;
    lp.constraints.push_back(std::move(spend));
  }
  // C3: winners fully funded
  for (int c : set_to_vector(w.members)) {
    LinearConstraint funded;
    for (int i = 0; i < inst.n; ++i) {
      for (const auto& [cand, v] : var_of_voter[i]) {
        if (cand == c) funded.terms.push_back({v, 1});
      }
    }
    funded.rel = Relation::Eq;
    funded.rhs = 1;
    lp.constraints.push_back(std::move(funded));
  }
  // C5: supporters of an unelected candidate keep at most one unit of slack
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    LinearConstraint leftover;
    int supporters = 0;
    for (int i = 0; i < inst.n; ++i) {
      if (!set_contains(inst.ballots[i], c)) continue;
      ++supporters;
      for (const auto& [cand, v] : var_of_voter[i]) {
        leftover.terms.push_back({v, -1});
      }
    }
    if (supporters == 0) continue;
    leftover.terms.push_back({0, Rational(supporters) * inv_n});
    leftover.rel = Relation::LessEq;
    leftover.rhs = 1;
    lp.constraints.push_back(std::move(leftover));
  }
  return lp;
}

}  // namespace

RationalLP priceability_system(
    const Instance& inst, const Committee& w,
    std::vector<std::vector<std::pair<int, int>>>* var_of_voter) {
  std::vector<std::vector<std::pair<int, int>>> local;
  auto& vars = var_of_voter ? *var_of_voter : local;
  return priceability_lp(inst, w, vars);
}

std::pair<bool, std::optional<PriceSystem>> verify_priceable(
    const Instance& inst, const Committee& w) {
  require_committee(inst, w);
  // quick exact rejections before the LP:
  //  - a winner nobody approves cannot be funded (C3);
  //  - summing C5 with p(i,c) <= 1 and B >= k (which follows from C2+C3)
  //    gives |N_c|*k - n * sum of supporter utilities <= n for every c
  //    outside W.
  {
    CandSet approved = 0;
    for (CandSet b : inst.ballots) approved |= b;
    if ((w.members & ~approved) != 0) return {false, std::nullopt};
    for (int c = 0; c < inst.m; ++c) {
      if (set_contains(w.members, c)) continue;
      long long supporters = 0, total_util = 0;
      for (int i = 0; i < inst.n; ++i) {
        if (set_contains(inst.ballots[i], c)) {
          ++supporters;
          total_util += set_size(inst.ballots[i] & w.members);
        }
      }
      if (supporters * inst.k - static_cast<long long>(inst.n) * total_util >
          inst.n)
        return {false, std::nullopt};
    }
  }
  std::vector<std::vector<std::pair<int, int>>> vars;
  RationalLP lp = priceability_lp(inst, w, vars);
  auto point = lp_feasible(lp);
  if (!point) return {false, std::nullopt};
  PriceSystem prices;
  prices.budget = (*point)[0];
  prices.payments.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    for (const auto& [c, v] : vars[i]) {
      if ((*point)[v] != 0) prices.payments[i][c] = (*point)[v];
    }
  }
  if (!price_system_valid(inst, w, prices)) {
    throw std::logic_error("LP produced an invalid price system");
  }
  return {true, std::move(prices)};
}

bool price_system_valid(const Instance& inst, const Committee& w,
                        const PriceSystem& prices) {
  if (prices.budget <= 0) return false;
  if (static_cast<int>(prices.payments.size()) != inst.n) return false;
  Rational share = prices.budget / inst.n;
  for (int i = 0; i < inst.n; ++i) {
    Rational spent = 0;
    for (const auto& [c, p] : prices.payments[i]) {
      if (p < 0 || p > 1) return false;
      if (!set_contains(inst.ballots[i], c)) return false;  // C1
      if (!set_contains(w.members, c)) return false;        // C4
      spent += p;
    }
    if (spent > share) return false;  // C2
  }
  for (int c : set_to_vector(w.members)) {  // C3
    Rational total = 0;
    for (int i = 0; i < inst.n; ++i) {
      auto it = prices.payments[i].find(c);
      if (it != prices.payments[i].end()) total += it->second;
    }
    if (total != 1) return false;
  }
  for (int c = 0; c < inst.m; ++c) {  // C5
    if (set_contains(w.members, c)) continue;
    Rational leftover = 0;
    bool any = false;
    for (int i = 0; i < inst.n; ++i) {
      if (!set_contains(inst.ballots[i], c)) continue;
      any = true;
      Rational spent = 0;
      for (const auto& [cand, p] : prices.payments[i]) spent += p;
      leftover += share - spent;
    }
    if (any && leftover > 1) return false;
  }
  return true;
}

VerificationResult verify_ejrp_fast(const Instance& inst, const Committee& w) {
  require_committee(inst, w);
  auto util = utilities(inst, w);
  for (int c = 0; c < inst.m; ++c) {
    if (set_contains(w.members, c)) continue;
    std::vector<int> supporters;
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], c)) supporters.push_back(i);
    }
    std::sort(supporters.begin(), supporters.end(), [&](int a, int b) {
      return util[a] != util[b] ? util[a] < util[b] : a < b;
    });
    for (int ell = 1; ell <= inst.k; ++ell) {
      int low = 0;
      while (low < static_cast<int>(supporters.size()) &&
             util[supporters[low]] < ell)
        ++low;
      if (static_cast<long long>(low) * inst.k <
          static_cast<long long>(ell) * inst.n)
        continue;
      int s = min_ell_large_size(ell, inst.n, inst.k);
      std::vector<int> group(supporters.begin(), supporters.begin() + s);
      std::sort(group.begin(), group.end());
      return {false, make_witness(NotionId::EJRplus, group, ell,
                                  set_with(0, c))};
    }
  }
  return {true, std::nullopt};
}

VerificationResult verify_pjrp_fast(const Instance& inst, const Committee& w) {
  require_committee(inst, w);
  if (auto found = check_pjrp_fast_impl(inst, w)) return {false, *found};
  return {true, std::nullopt};
}

VerificationResult verify(NotionId id, const Instance& inst,
                          const Committee& w, WorkBudget* budget) {
  require_committee(inst, w);
  WorkBudget local;
  WorkBudget& wb = budget ? *budget : local;
  std::optional<ViolationWitness> witness;
  switch (id) {
    case NotionId::JR: witness = check_jr(inst, w); break;
    case NotionId::PJR: witness = check_pjr(inst, w, wb); break;
    case NotionId::EJR: witness = check_ejr(inst, w, wb); break;
    case NotionId::PJRplus: return verify_pjrp_fast(inst, w);
    case NotionId::EJRplus: return verify_ejrp_fast(inst, w);
    case NotionId::Core: witness = check_core(inst, w, wb); break;
    case NotionId::FJR: witness = check_fjr(inst, w, wb, false); break;
    case NotionId::FPJR: witness = check_fjr(inst, w, wb, true); break;
    case NotionId::SubCore: witness = check_subcore(inst, w, wb); break;
    case NotionId::Priceable: {
      auto [ok, prices] = verify_priceable(inst, w);
      if (ok) return {true, std::nullopt};
      std::vector<int> group(inst.n);
      std::iota(group.begin(), group.end(), 0);
      return {false, make_witness(NotionId::Priceable, group, 0, 0)};
    }
    case NotionId::NPR: witness = check_npr(inst, w); break;
    case NotionId::LQPartyList: witness = check_lq(inst, w); break;
    case NotionId::WeakEJRplus: witness = check_weak_plus(inst, w, false); break;
    case NotionId::WeakPJRplus: witness = check_weak_plus(inst, w, true); break;
    case NotionId::DiffEJRplus: witness = check_diff_ejrp(inst, w); break;
    case NotionId::DiffPJRplus: witness = check_diff_pjrp(inst, w); break;
    case NotionId::EqualEJRplus: witness = check_equal_ejrp(inst, w); break;
    case NotionId::DroopEJRplus: witness = check_droop_ejrp(inst, w); break;
    case NotionId::OverlapPJR: witness = check_overlap_pjr(inst, w, wb); break;
    case NotionId::EJRplusExPareto: {
      auto ejrp = verify_ejrp_fast(inst, w);
      if (!ejrp.satisfied) {
        ejrp.witness->kind = NotionId::EJRplusExPareto;
        return ejrp;
      }
      witness = check_expareto(inst, w, wb);
      break;
    }
    case NotionId::Universal: return {true, std::nullopt};
    case NotionId::Empty: {
      std::vector<int> group(inst.n);
      std::iota(group.begin(), group.end(), 0);
      return {false, make_witness(NotionId::Empty, group, 0, 0)};
    }
  }
  if (witness) return {false, *witness};
  return {true, std::nullopt};
}

bool replay_witness(const Instance& inst, const Committee& w,
                    const ViolationWitness& witness) {
  const auto& group = witness.group;
  if (group.empty() && witness.kind != NotionId::Empty) return false;
  for (int i : group) {
    if (i < 0 || i >= inst.n) return false;
  }
  auto util = utilities(inst, w);
  long long gsize = static_cast<long long>(group.size());
  const int ell = witness.ell;
  CandSet t = witness.anchors;
  auto all_support = [&](int c) {
    for (int i : group) {
      if (!set_contains(inst.ballots[i], c)) return false;
    }
    return true;
  };
  switch (witness.kind) {
    case NotionId::JR: {
      if (set_size(t) != 1 || ell != 1) return false;
      int c = lowest_member(t);
      if (set_contains(w.members, c) || !all_support(c)) return false;
      for (int i : group)
        if (util[i] != 0) return false;
      return is_ell_large(gsize, 1, inst.n, inst.k);
    }
    case NotionId::PJR: {
      if (set_size(t) != ell || ell < 1 || ell > inst.k) return false;
      for (int i : group)
        if ((inst.ballots[i] & t) != t) return false;
      return is_ell_large(gsize, ell, inst.n, inst.k) &&
             set_size(group_union_in_w(inst, w, group)) < ell;
    }
    case NotionId::EJR: {
      if (set_size(t) != ell || ell < 1 || ell > inst.k) return false;
      for (int i : group) {
        if ((inst.ballots[i] & t) != t || util[i] >= ell) return false;
      }
      return is_ell_large(gsize, ell, inst.n, inst.k);
    }
    case NotionId::PJRplus: {
      if (set_size(t) != 1 || ell < 1 || ell > inst.k) return false;
      int c = lowest_member(t);
      if (set_contains(w.members, c) || !all_support(c)) return false;
      return is_ell_large(gsize, ell, inst.n, inst.k) &&
             set_size(group_union_in_w(inst, w, group)) < ell;
    }
    case NotionId::EJRplus: {
      if (set_size(t) != 1 || ell < 1 || ell > inst.k) return false;
      int c = lowest_member(t);
      if (set_contains(w.members, c) || !all_support(c)) return false;
      for (int i : group)
        if (util[i] >= ell) return false;
      return is_ell_large(gsize, ell, inst.n, inst.k);
    }
    case NotionId::Core: {
      if (set_size(t) != ell || ell < 1 || ell > inst.k) return false;
      for (int i : group) {
        if (set_size(inst.ballots[i] & t) <= util[i]) return false;
      }
      return is_ell_large(gsize, ell, inst.n, inst.k);
    }
    case NotionId::FJR: {
      int beta = ell;
      if (t == 0 || beta < 1 || beta > set_size(t)) return false;
      for (int i : group) {
        if (set_size(inst.ballots[i] & t) < beta || util[i] >= beta)
          return false;
      }
      return is_ell_large(gsize, set_size(t), inst.n, inst.k);
    }
    case NotionId::FPJR: {
      int beta = ell;
      if (t == 0 || beta < 1 || beta > set_size(t)) return false;
      for (int i : group) {
        if (set_size(inst.ballots[i] & t) < beta) return false;
      }
      return is_ell_large(gsize, set_size(t), inst.n, inst.k) &&
             set_size(group_union_in_w(inst, w, group)) < beta;
    }
    case NotionId::SubCore: {
      if (t == 0 || (t & w.members) != 0 || ell < 1 || ell > inst.k)
        return false;
      for (int i : group) {
        if ((inst.ballots[i] & t) == 0) return false;
      }
      return is_ell_large(gsize, ell, inst.n, inst.k) &&
             set_size(group_union_in_w(inst, w, group)) <= ell - set_size(t);
    }
    case NotionId::Priceable: {
      return !verify_priceable(inst, w).first &&
             static_cast<int>(group.size()) == inst.n;
    }
    case NotionId::NPR: {
      if (set_size(t) != 1 || ell < 1 || ell > inst.k) return false;
      int c = lowest_member(t);
      if (set_contains(w.members, c) || !all_support(c)) return false;
      long long sum = 0;
      for (int i : group) sum += util[i];
      return is_ell_large(gsize, ell, inst.n, inst.k) &&
             sum <= static_cast<long long>(ell - 1) * gsize;
    }
    case NotionId::LQPartyList: {
      auto parties = party_list_structure(inst);
      if (!parties) return false;
      for (size_t x = 0; x < parties->parties.size(); ++x) {
        if (parties->parties[x] == t) {
          long long quota = std::min<long long>(
              static_cast<long long>(inst.k) * parties->party_sizes[x] /
                  inst.n,
              set_size(t));
          return set_size(t & w.members) < quota;
        }
      }
      return false;
    }
    case NotionId::WeakEJRplus:
    case NotionId::WeakPJRplus: {
      if (set_size(t) != 1 || ell < 1 || ell > inst.k) return false;
      int c = lowest_member(t);
      if (set_contains(w.members, c)) return false;
      auto nc = support(inst, c);
      if (nc != group) return false;
      if (!is_ell_large(gsize, ell, inst.n, inst.k)) return false;
      if (witness.kind == NotionId::WeakPJRplus)
        return set_size(group_union_in_w(inst, w, group)) < ell;
      for (int i : group)
        if (util[i] >= ell) return false;
      return true;
    }
    case NotionId::DiffEJRplus:
    case NotionId::DiffPJRplus: {
      if (set_size(t) != 1 || ell < 1 || ell > inst.k) return false;
      int c = lowest_member(t);
      if (set_contains(w.members, c) || !all_support(c)) return false;
      CandSet diff = inst.ballots[group[0]] & ~w.members;
      for (int i : group) {
        if ((inst.ballots[i] & ~w.members) != diff) return false;
      }
      if (!is_ell_large(gsize, ell, inst.n, inst.k)) return false;
      if (witness.kind == NotionId::DiffPJRplus)
        return set_size(group_union_in_w(inst, w, group)) < ell;
      for (int i : group)
        if (util[i] >= ell) return false;
      return true;
    }
    case NotionId::EqualEJRplus: {
      if (set_size(t) != 1 || ell < 1 || ell > inst.k) return false;
      int c = lowest_member(t);
      if (set_contains(w.members, c) || !all_support(c)) return false;
      for (int i : group) {
        if (util[i] != util[group[0]] || util[i] >= ell) return false;
      }
      return is_ell_large(gsize, ell, inst.n, inst.k);
    }
    case NotionId::DroopEJRplus: {
      if (set_size(t) != 1 || ell < 1 || ell > inst.k) return false;
      int c = lowest_member(t);
      if (set_contains(w.members, c) || !all_support(c)) return false;
      for (int i : group)
        if (util[i] >= ell) return false;
      return is_droop_ell_large(gsize, ell, inst.n, inst.k);
    }
    case NotionId::OverlapPJR: {
      if (set_size(t) != ell || ell < 1 || ell > inst.k) return false;
      CandSet overlap = inst.ballots[group[0]] & w.members;
      for (int i : group) {
        if ((inst.ballots[i] & t) != t) return false;
        if ((inst.ballots[i] & w.members) != overlap) return false;
        if (util[i] >= ell) return false;
      }
      return is_ell_large(gsize, ell, inst.n, inst.k);
    }
    case NotionId::EJRplusExPareto: {
      if (ell >= 1) {
        ViolationWitness as_ejrp = witness;
        as_ejrp.kind = NotionId::EJRplus;
        return replay_witness(inst, w, as_ejrp);
      }
      if (set_size(t) != inst.k || (t & w.members) != 0) return false;
      if (static_cast<int>(group.size()) != inst.n) return false;
      for (int i = 0; i < inst.n; ++i) {
        if (util[i] >= set_size(inst.ballots[i] & t)) return false;
      }
      return true;
    }
    case NotionId::Universal: return false;
    case NotionId::Empty: return static_cast<int>(group.size()) == inst.n;
  }
  return false;
}

bool group_is_natural_witness(NotionId id, const Instance& inst,
                              const Committee& w, const std::vector<int>& group,
                              WorkBudget* budget) {
  if (group.empty()) return false;
  WorkBudget local;
  WorkBudget& wb = budget ? *budget : local;
  auto util = utilities(inst, w);
  long long gsize = static_cast<long long>(group.size());
  int max_util = 0, sum_util = 0;
  for (int i : group) {
    max_util = std::max(max_util, util[i]);
    sum_util += util[i];
  }
  CandSet common = group_intersection(inst, group);
  CandSet common_out = common & ~w.members;
  CandSet uni = group_union_in_w(inst, w, group);
  int u = set_size(uni);

  auto ell_large_exists = [&](int ell_min) {
    // largeness is anti-monotone in ell, so the smallest level decides
    return ell_min >= 1 && ell_min <= inst.k &&
           is_ell_large(gsize, ell_min, inst.n, inst.k);
  };

  switch (id) {
    case NotionId::JR:
      return common != 0 && max_util == 0 &&
             is_ell_large(gsize, 1, inst.n, inst.k);
    case NotionId::PJR:
      return set_size(common) >= u + 1 && ell_large_exists(u + 1);
    case NotionId::EJR:
      return set_size(common) >= max_util + 1 && ell_large_exists(max_util + 1);
    case NotionId::PJRplus:
      return common_out != 0 && ell_large_exists(u + 1);
    case NotionId::EJRplus:
      return common_out != 0 && ell_large_exists(max_util + 1);
    case NotionId::Core: {
      CandSet pool = 0;
      for (int i : group) pool |= inst.ballots[i];
      auto pool_v = set_to_vector(pool);
      for (int ell = 1; ell <= inst.k; ++ell) {
        if (!is_ell_large(gsize, ell, inst.n, inst.k)) break;
        bool found = for_each_combination(pool_v, ell, [&](CandSet t) {
          wb.charge();
          for (int i : group) {
            if (set_size(inst.ballots[i] & t) <= util[i]) return false;
          }
          return true;
        });
        if (found) return true;
      }
      return false;
    }
    case NotionId::FJR:
    case NotionId::FPJR: {
      CandSet pool = 0;
      for (int i : group) pool |= inst.ballots[i];
      auto pool_v = set_to_vector(pool);
      for (int t_size = 1; t_size <= inst.k; ++t_size) {
        if (!is_ell_large(gsize, t_size, inst.n, inst.k)) break;
        bool found = for_each_combination(pool_v, t_size, [&](CandSet t) {
          wb.charge();
          int min_in_t = inst.m + 1;
          for (int i : group)
            min_in_t = std::min(min_in_t, set_size(inst.ballots[i] & t));
          int bound = (id == NotionId::FJR) ? max_util : u;
          // witness needs some beta <= min_in_t with bound < beta
          return min_in_t > bound;
        });
        if (found) return true;
      }
      return false;
    }
    case NotionId::SubCore: {
      CandSet pool = 0;
      for (int i : group) pool |= inst.ballots[i] & ~w.members;
      if (pool == 0) return false;
      // need C' outside W hitting every ballot, with u <= ell - |C'|
      for (CandSet cp = pool & (~pool + 1);; cp = ((cp | ~pool) + 1) & pool) {
        if (cp == 0) break;
        wb.charge();
        bool hits_all = true;
        for (int i : group) {
          if ((inst.ballots[i] & cp) == 0) {
            hits_all = false;
            break;
          }
        }
        if (hits_all) {
          int ell_min = u + set_size(cp);
          if (ell_large_exists(ell_min)) return true;
        }
        if (cp == pool) break;
      }
      return false;
    }
    case NotionId::Priceable:
      return static_cast<int>(group.size()) == inst.n &&
             !verify_priceable(inst, w).first;
    case NotionId::NPR: {
      if (common_out == 0) return false;
      for (int ell = 1; ell <= inst.k; ++ell) {
        if (is_ell_large(gsize, ell, inst.n, inst.k) &&
            sum_util <= static_cast<long long>(ell - 1) * gsize)
          return true;
      }
      return false;
    }
    case NotionId::LQPartyList: {
      auto parties = party_list_structure(inst);
      if (!parties) return false;
      auto quotas = lower_quota_seats(*parties, inst.n, inst.k);
      for (size_t x = 0; x < parties->parties.size(); ++x) {
        if (parties->party_voters[x] == group)
          return set_size(parties->parties[x] & w.members) < quotas[x];
      }
      return false;
    }
    case NotionId::WeakEJRplus:
    case NotionId::WeakPJRplus: {
      for (int c : set_to_vector(common_out)) {
        if (support(inst, c) != group) continue;
        int bound = (id == NotionId::WeakEJRplus) ? max_util : u;
        if (ell_large_exists(bound + 1)) return true;
      }
      return false;
    }
    case NotionId::DiffEJRplus:
    case NotionId::DiffPJRplus: {
      if (common_out == 0) return false;
      CandSet diff = inst.ballots[group[0]] & ~w.members;
      for (int i : group) {
        if ((inst.ballots[i] & ~w.members) != diff) return false;
      }
      int bound = (id == NotionId::DiffEJRplus) ? max_util : u;
      return ell_large_exists(bound + 1);
    }
    case NotionId::EqualEJRplus: {
      if (common_out == 0) return false;
      for (int i : group) {
        if (util[i] != util[group[0]]) return false;
      }
      return ell_large_exists(max_util + 1);
    }
    case NotionId::DroopEJRplus:
      return common_out != 0 && max_util + 1 <= inst.k &&
             is_droop_ell_large(gsize, max_util + 1, inst.n, inst.k);
    case NotionId::OverlapPJR: {
      CandSet overlap = inst.ballots[group[0]] & w.members;
      for (int i : group) {
        if ((inst.ballots[i] & w.members) != overlap) return false;
      }
      return set_size(common) >= max_util + 1 && ell_large_exists(max_util + 1);
    }
    case NotionId::EJRplusExPareto: {
      if (common_out != 0 && ell_large_exists(max_util + 1)) return true;
      if (static_cast<int>(group.size()) != inst.n) return false;
      return check_expareto(inst, w, wb).has_value();
    }
    case NotionId::Universal: return false;
    case NotionId::Empty: return static_cast<int>(group.size()) == inst.n;
  }
  return false;
}

std::string witness_to_json(const ViolationWitness& witness) {
  std::ostringstream out;
  out << "{\"notion\":\"" << to_string(witness.kind) << "\",\"group\":[";
  for (size_t j = 0; j < witness.group.size(); ++j) {
    if (j) out << ",";
    out << witness.group[j];
  }
  out << "],\"ell\":" << witness.ell << ",\"anchors\":[";
  auto anchors = set_to_vector(witness.anchors);
  for (size_t j = 0; j < anchors.size(); ++j) {
    if (j) out << ",";
    out << anchors[j];
  }
  out << "]}";
  return out.str();
}

}  // namespace abcv
