#include "abcv/rules.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace abcv {

std::optional<RuleId> rule_from_string(const std::string& name) {
  if (name == "mes") return RuleId::MES;
  if (name == "pav") return RuleId::PAVexhaustive;
  return std::nullopt;
}

Committee mes(const Instance& inst) {
  validate_instance(inst);
  // scaled so starting budgets are integers: budget n*k per voter, price n^2
  // per candidate (ratio k/n as in the usual formulation)
  const Rational price = Rational(inst.n) * inst.n;
  std::vector<Rational> budget(inst.n, Rational(inst.n) * inst.k);
  CandSet chosen = 0;

  while (set_size(chosen) < inst.k) {
    int best_cand = -1;
    Rational best_rho = 0;
    for (int c = 0; c < inst.m; ++c) {
      if (set_contains(chosen, c)) continue;
      std::vector<Rational> funds;
      for (int i = 0; i < inst.n; ++i) {
        if (set_contains(inst.ballots[i], c) && budget[i] > 0)
          funds.push_back(budget[i]);
      }
      Rational total = 0;
      for (const auto& f : funds) total += f;
      if (total < price) continue;  // not affordable
      // waterfilling: poorest supporters pay everything, the rest pay rho
      std::sort(funds.begin(), funds.end());
      Rational paid_in_full = 0;
      Rational rho = 0;
      for (size_t j = 0; j < funds.size(); ++j) {
        Rational remaining = price - paid_in_full;
        Rational level = remaining / Rational(funds.size() - j);
        if (level <= funds[j]) {
          rho = level;
          break;
        }
        paid_in_full += funds[j];
      }
      if (best_cand < 0 || rho < best_rho) {
        best_cand = c;
        best_rho = rho;
      }
    }
    if (best_cand < 0) break;  // budgets exhausted
    for (int i = 0; i < inst.n; ++i) {
      if (set_contains(inst.ballots[i], best_cand) && budget[i] > 0)
        budget[i] -= std::min(budget[i], best_rho);
    }
    chosen = set_with(chosen, best_cand);
  }

  // greedy approval-score completion
  while (set_size(chosen) < inst.k) {
    int best_cand = -1;
    int best_score = -1;
    for (int c = 0; c < inst.m; ++c) {
      if (set_contains(chosen, c)) continue;
      int score = 0;
      for (int i = 0; i < inst.n; ++i) {
        if (set_contains(inst.ballots[i], c)) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best_cand = c;
      }
    }
    chosen = set_with(chosen, best_cand);
  }
  return Committee{chosen};
}

Rational pav_score(const Instance& inst, const Committee& w) {
  Rational total = 0;
  for (int i = 0; i < inst.n; ++i) {
    int u = set_size(inst.ballots[i] & w.members);
    for (int t = 1; t <= u; ++t) total += Rational(1) / t;
  }
  return total;
}

Committee pav_exhaustive(const Instance& inst, WorkBudget* budget) {
  validate_instance(inst);
  WorkBudget local;
  WorkBudget& wb = budget ? *budget : local;

  std::vector<int> idx(inst.k);
  std::iota(idx.begin(), idx.end(), 0);
  std::optional<Committee> best;
  Rational best_score = -1;
  while (true) {
    wb.charge(inst.n);
    CandSet mask = 0;
    for (int c : idx) mask = set_with(mask, c);
    Committee w{mask};
    Rational score = pav_score(inst, w);
    if (!best || score > best_score) {
      best = w;
      best_score = score;
    }
    int pos = inst.k - 1;
    while (pos >= 0 && idx[pos] == inst.m - inst.k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < inst.k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return *best;  // lexicographic enumeration makes ties lexicographic-least
}

Instance random_instance(int n, int m, int k, int approval_ppm,
                         std::uint64_t seed, bool require_nonempty) {
  if (n <= 0 || k <= 0 || m < k || m > kMaxCandidates ||
      approval_ppm < 0 || approval_ppm > 1'000'000)
    throw PreconditionError("invalid random-instance parameters");
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.k = k;
  std::mt19937_64 rng(seed);
  // avoid distribution objects: raw modulo draws are identical everywhere
  auto approve = [&]() {
    return static_cast<int>(rng() % 1'000'000) < approval_ppm;
  };
  inst.ballots.assign(n, 0);
  while (true) {
    bool any = false;
    for (int i = 0; i < n; ++i) {
      CandSet b = 0;
      for (int c = 0; c < m; ++c) {
        if (approve()) b = set_with(b, c);
      }
      inst.ballots[i] = b;
      any |= b != 0;
    }
    if (!require_nonempty || any || approval_ppm == 0) break;
  }
  return inst;
}

}  // namespace abcv
