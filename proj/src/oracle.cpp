#include "abcv/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <random>
#include <thread>

#include "abcv/lp.hpp"

namespace abcv {

namespace {

// Non-decreasing ballot tuples = voter-permutation canonical profiles.
template <typename Fn>
bool enumerate_profiles(int n, int m, int k, Fn&& fn) {
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.k = k;
  inst.ballots.assign(n, 0);
  const CandSet top = full_set(m);
  while (true) {
    if (!fn(inst)) return false;
    int pos = n - 1;
    while (pos >= 0 && inst.ballots[pos] == top) --pos;
    if (pos < 0) return true;
    CandSet next = inst.ballots[pos] + 1;
    for (int j = pos; j < n; ++j) inst.ballots[j] = next;
  }
}

}  // namespace

void for_each_instance(const InstanceFamily& family,
                       const std::function<bool(const Instance&)>& fn) {
  if (family.mode == InstanceFamily::Mode::Exhaustive) {
    for (int n = 1; n <= family.max_voters; ++n) {
      for (int m = 1; m <= family.max_candidates; ++m) {
        for (int k = 1; k <= std::min(m, family.max_k); ++k) {
          if (!enumerate_profiles(n, m, k, fn)) return;
        }
      }
    }
    return;
  }
  std::mt19937_64 rng(family.seed);
  for (int t = 0; t < family.count; ++t) {
    Instance inst;
    inst.n = 1 + static_cast<int>(rng() % family.max_voters);
    inst.m = 1 + static_cast<int>(rng() % family.max_candidates);
    inst.k = 1 + static_cast<int>(rng() % std::min(inst.m, family.max_k));
    inst.ballots.resize(inst.n);
    for (int i = 0; i < inst.n; ++i) {
      inst.ballots[i] = rng() & full_set(inst.m);
    }
    inst = voter_canonical(inst);
    if (!fn(inst)) return;
  }
}

std::vector<Instance> family_instances(const InstanceFamily& family) {
  std::vector<Instance> out;
  for_each_instance(family, [&](const Instance& inst) {
    out.push_back(inst);
    return true;
  });
  return out;
}

void for_each_committee(const Instance& inst,
                        const std::function<bool(const Committee&)>& fn) {
  std::vector<int> idx(inst.k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    CandSet mask = 0;
    for (int c : idx) mask = set_with(mask, c);
    if (!fn(Committee{mask})) return;
    int pos = inst.k - 1;
    while (pos >= 0 && idx[pos] == inst.m - inst.k + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int j = pos + 1; j < inst.k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

namespace {

// Sweeps every nonempty voter group as a mask.
template <typename Fn>
bool any_group(const Instance& inst, WorkBudget& budget, Fn&& fn) {
  if (inst.n > 25) throw PreconditionError("group sweep needs n <= 25");
  const std::uint32_t limit = 1u << inst.n;
  std::vector<int> group;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    budget.charge();
    group.clear();
    for (int i = 0; i < inst.n; ++i) {
      if ((mask >> i) & 1) group.push_back(i);
    }
    if (fn(group)) return true;
  }
  return false;
}

template <typename Fn>
bool any_candidate_subset(const Instance& inst, int size, WorkBudget& budget,
                          Fn&& fn) {
  std::vector<int> all(inst.m);
  std::iota(all.begin(), all.end(), 0);
  if (size > inst.m) return false;
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    budget.charge();
    CandSet mask = 0;
    for (int j : idx) mask = set_with(mask, all[j]);
    if (fn(mask)) return true;
    int pos = size - 1;
    while (pos >= 0 && idx[pos] == inst.m - size + pos) --pos;
    if (pos < 0) return false;
    ++idx[pos];
    for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool verify_bruteforce(NotionId id, const Instance& inst, const Committee& w,
                       WorkBudget* budget) {
  require_committee(inst, w);
  WorkBudget local;
  WorkBudget& wb = budget ? *budget : local;

  std::vector<int> util(inst.n);
  for (int i = 0; i < inst.n; ++i)
    util[i] = set_size(inst.ballots[i] & w.members);
  auto group_stats = [&](const std::vector<int>& g, CandSet& common,
                         CandSet& common_out, CandSet& uni, int& max_util,
                         long long& sum_util) {
    common = full_set(inst.m);
    uni = 0;
    max_util = 0;
    sum_util = 0;
    for (int i : g) {
      common &= inst.ballots[i];
      uni |= inst.ballots[i] & w.members;
      max_util = std::max(max_util, util[i]);
      sum_util += util[i];
    }
    common_out = common & ~w.members;
  };

  switch (id) {
    case NotionId::JR:
      return !any_group(inst, wb, [&](const std::vector<int>& g) {
        CandSet common, common_out, uni;
        int mx;
        long long sm;
        group_stats(g, common, common_out, uni, mx, sm);
        return common != 0 && mx == 0 &&
               is_ell_large(static_cast<long long>(g.size()), 1, inst.n,
                            inst.k);
      });
    case NotionId::PJR:
    case NotionId::EJR:
      return !any_group(inst, wb, [&](const std::vector<int>& g) {
        CandSet common, common_out, uni;
        int mx;
        long long sm;
        group_stats(g, common, common_out, uni, mx, sm);
        for (int ell = 1; ell <= inst.k; ++ell) {
          if (!is_ell_large(static_cast<long long>(g.size()), ell, inst.n,
                            inst.k))
            break;
          if (set_size(common) < ell) continue;
          int have = (id == NotionId::PJR) ? set_size(uni) : mx;
          if (have < ell) return true;
        }
        return false;
      });
    case NotionId::PJRplus:
    case NotionId::EJRplus:
      return !any_group(inst, wb, [&](const std::vector<int>& g) {
        CandSet common, common_out, uni;
        int mx;
        long long sm;
        group_stats(g, common, common_out, uni, mx, sm);
        if (common_out == 0) return false;
        for (int ell = 1; ell <= inst.k; ++ell) {
          if (!is_ell_large(static_cast<long long>(g.size()), ell, inst.n,
                            inst.k))
            break;
          int have = (id == NotionId::PJRplus) ? set_size(uni) : mx;
          if (have < ell) return true;
        }
        return false;
      });
    case NotionId::Core: {
      for (int ell = 1; ell <= inst.k; ++ell) {
        bool deviates = any_candidate_subset(
            inst, ell, wb, [&](CandSet t) {
              long long eligible = 0;
              for (int i = 0; i < inst.n; ++i) {
                if (set_size(inst.ballots[i] & t) > util[i]) ++eligible;
              }
              return is_ell_large(eligible, ell, inst.n, inst.k);
            });
        if (deviates) return false;
      }
      return true;
    }
    case NotionId::FJR:
    case NotionId::FPJR: {
      for (int t_size = 1; t_size <= inst.k; ++t_size) {
        bool deviates = any_candidate_subset(
            inst, t_size, wb, [&](CandSet t) {
              for (int beta = 1; beta <= t_size; ++beta) {
                bool hit = any_group(inst, wb, [&](const std::vector<int>& g) {
                  if (!is_ell_large(static_cast<long long>(g.size()), t_size,
                                    inst.n, inst.k))
                    return false;
                  CandSet uni = 0;
                  for (int i : g) {
                    if (set_size(inst.ballots[i] & t) < beta) return false;
                    uni |= inst.ballots[i] & w.members;
                  }
                  if (id == NotionId::FJR) {
                    for (int i : g) {
                      if (util[i] >= beta) return false;
                    }
                    return true;
                  }
                  return set_size(uni) < beta;
                });
                if (hit) return true;
              }
              return false;
            });
        if (deviates) return false;
      }
      return true;
    }
    case NotionId::SubCore: {
      // original formulation: some C' with |C'| <= l where every group member
      // strictly extends their winner set inside C'
      for (int ell = 1; ell <= inst.k; ++ell) {
        for (int cp_size = 1; cp_size <= ell && cp_size <= inst.m; ++cp_size) {
          bool deviates = any_candidate_subset(
              inst, cp_size, wb, [&](CandSet cp) {
                long long eligible = 0;
                for (int i = 0; i < inst.n; ++i) {
                  CandSet in_cp = inst.ballots[i] & cp;
                  CandSet in_w = inst.ballots[i] & w.members;
                  if ((in_cp & in_w) == in_w && in_cp != in_w) ++eligible;
                }
                return is_ell_large(eligible, ell, inst.n, inst.k);
              });
          if (deviates) return false;
        }
      }
      return true;
    }
    case NotionId::Priceable: {
      RationalLP lp = priceability_system(inst, w);
      return fm_feasible(lp, &wb);
    }
    case NotionId::NPR:
      return !any_group(inst, wb, [&](const std::vector<int>& g) {
        CandSet common, common_out, uni;
        int mx;
        long long sm;
        group_stats(g, common, common_out, uni, mx, sm);
        if (common_out == 0) return false;
        for (int ell = 1; ell <= inst.k; ++ell) {
          if (!is_ell_large(static_cast<long long>(g.size()), ell, inst.n,
                            inst.k))
            break;
          if (sm <= static_cast<long long>(ell - 1) *
                        static_cast<long long>(g.size()))
            return true;
        }
        return false;
      });
    case NotionId::LQPartyList:
      return satisfies_lower_quota(inst, w);
    case NotionId::WeakEJRplus:
    case NotionId::WeakPJRplus: {
      for (int c = 0; c < inst.m; ++c) {
        if (set_contains(w.members, c)) continue;
        wb.charge();
        std::vector<int> nc;
        CandSet uni = 0;
        int mx = 0;
        for (int i = 0; i < inst.n; ++i) {
          if (set_contains(inst.ballots[i], c)) {
            nc.push_back(i);
            uni |= inst.ballots[i] & w.members;
            mx = std::max(mx, util[i]);
          }
        }
        if (nc.empty()) continue;
        int have = (id == NotionId::WeakPJRplus) ? set_size(uni) : mx;
        for (int ell = have + 1; ell <= inst.k; ++ell) {
          if (is_ell_large(static_cast<long long>(nc.size()), ell, inst.n,
                           inst.k))
            return false;
        }
      }
      return true;
    }
    case NotionId::DiffEJRplus:
    case NotionId::DiffPJRplus:
      return !any_group(inst, wb, [&](const std::vector<int>& g) {
        CandSet common, common_out, uni;
        int mx;
        long long sm;
        group_stats(g, common, common_out, uni, mx, sm);
        if (common_out == 0) return false;
        CandSet diff = inst.ballots[g[0]] & ~w.members;
        for (int i : g) {
          if ((inst.ballots[i] & ~w.members) != diff) return false;
        }
        int have = (id == NotionId::DiffPJRplus) ? set_size(uni) : mx;
        for (int ell = have + 1; ell <= inst.k; ++ell) {
          if (is_ell_large(static_cast<long long>(g.size()), ell, inst.n,
                           inst.k))
            return true;
        }
        return false;
      });
    case NotionId::EqualEJRplus:
      return !any_group(inst, wb, [&](const std::vector<int>& g) {
        CandSet common, common_out, uni;
        int mx;
        long long sm;
        group_stats(g, common, common_out, uni, mx, sm);
        if (common_out == 0) return false;
        for (int i : g) {
          if (util[i] != util[g[0]]) return false;
        }
        for (int ell = mx + 1; ell <= inst.k; ++ell) {
          if (is_ell_large(static_cast<long long>(g.size()), ell, inst.n,
                           inst.k))
            return true;
        }
        return false;
      });
    case NotionId::DroopEJRplus:
      return !any_group(inst, wb, [&](const std::vector<int>& g) {
        CandSet common, common_out, uni;
        int mx;
        long long sm;
        group_stats(g, common, common_out, uni, mx, sm);
        if (common_out == 0) return false;
        for (int ell = mx + 1; ell <= inst.k; ++ell) {
          if (is_droop_ell_large(static_cast<long long>(g.size()), ell, inst.n,
                                 inst.k))
            return true;
        }
        return false;
      });
    case NotionId::OverlapPJR:
      return !any_group(inst, wb, [&](const std::vector<int>& g) {
        CandSet common, common_out, uni;
        int mx;
        long long sm;
        group_stats(g, common, common_out, uni, mx, sm);
        CandSet overlap = inst.ballots[g[0]] & w.members;
        for (int i : g) {
          if ((inst.ballots[i] & w.members) != overlap) return false;
        }
        for (int ell = mx + 1; ell <= inst.k && ell <= set_size(common);
             ++ell) {
          if (is_ell_large(static_cast<long long>(g.size()), ell, inst.n,
                           inst.k))
            return true;
        }
        return false;
      });
    case NotionId::EJRplusExPareto: {
      if (!verify_bruteforce(NotionId::EJRplus, inst, w, &wb)) return false;
      CandSet outside = full_set(inst.m) & ~w.members;
      if (set_size(outside) < inst.k) return true;
      bool dominated = any_candidate_subset(
          inst, inst.k, wb, [&](CandSet wp) {
            if ((wp & w.members) != 0) return false;
            for (int i = 0; i < inst.n; ++i) {
              if (util[i] >= set_size(inst.ballots[i] & wp)) return false;
            }
            return true;
          });
      return !dominated;
    }
    case NotionId::Universal: return true;
    case NotionId::Empty: return false;
  }
  return false;
}

std::vector<Committee> enumerate_satisfying(NotionId id, const Instance& inst,
                                            WorkBudget* budget) {
  std::vector<Committee> out;
  for_each_committee(inst, [&](const Committee& w) {
    if (verify_bruteforce(id, inst, w, budget)) out.push_back(w);
    return true;
  });
  return out;
}

std::string refinement_tsv_row(NotionId coarse_from, NotionId into,
                               const RefinementOutcome& outcome,
                               const std::string& counterexample_path) {
  std::string row = to_string(coarse_from) + "\t" + to_string(into) + "\t";
  if (outcome.confirmed) {
    row += "confirmed\t-";
  } else {
    row += "counterexample\t" + counterexample_path;
    if (outcome.counterexample && !counterexample_path.empty()) {
      write_instance_file(outcome.counterexample->first, counterexample_path);
      std::ofstream side(counterexample_path + ".committee");
      side << serialize_committee(outcome.counterexample->second) << "\n";
    }
  }
  return row + "\n";
}

RefinementOutcome refinement_report(NotionId coarse_from, NotionId into,
                                    const InstanceFamily& family, int jobs) {
  auto instances = family_instances(family);
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, 64));

  std::atomic<long long> best_hit{static_cast<long long>(instances.size())};
  std::vector<std::optional<Committee>> hits(instances.size());
  std::atomic<long long> pairs{0};
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    long long local_pairs = 0;
    while (true) {
      size_t idx = next.fetch_add(1);
      if (idx >= instances.size()) break;
      if (static_cast<long long>(idx) > best_hit.load()) continue;
      const Instance& inst = instances[idx];
      std::optional<Committee> found;
      for_each_committee(inst, [&](const Committee& w) {
        ++local_pairs;
        if (verify_bruteforce(coarse_from, inst, w) &&
            !verify_bruteforce(into, inst, w)) {
          found = w;
          return false;
        }
        return true;
      });
      if (found) {
        hits[idx] = found;
        long long cur = best_hit.load();
        while (static_cast<long long>(idx) < cur &&
               !best_hit.compare_exchange_weak(cur, idx)) {
        }
      }
    }
    pairs += local_pairs;
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  RefinementOutcome out;
  out.pairs_checked = pairs.load();
  long long first = best_hit.load();
  if (first < static_cast<long long>(instances.size()) && hits[first]) {
    out.confirmed = false;
    out.counterexample = {instances[first], *hits[first]};
  }
  return out;
}

}  // namespace abcv
