// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Bounds, tolerances, and counts are pinned here.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>
#include <thread>

#include "abcv/corpus.hpp"
#include "abcv/flow.hpp"
#include "abcv/rules.hpp"

using namespace abcv;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string what)
      : number_(number), what_(std::move(what)),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& detail) {
    if (!ok) {
      problems_.push_back(detail);
    }
  }

  bool finish(double max_seconds) {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    bool ok = problems_.empty() && elapsed < max_seconds;
    std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL",
                number_, what_.c_str(), elapsed);
    if (elapsed >= max_seconds) {
      std::printf("       runtime bound %gs exceeded\n", max_seconds);
    }
    for (const auto& p : problems_) {
      std::printf("       %s\n", p.c_str());
    }
    if (!ok) ++failures;
    std::fflush(stdout);
    return ok;
  }

 private:
  int number_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> problems_;
};

InstanceFamily pinned_family() {
  InstanceFamily f;
  f.max_voters = 4;
  f.max_candidates = 5;
  f.max_k = 3;
  return f;
}

void criterion1_fixture_replay() {
  Criterion c(1, "fixture replay: every transcribed figure fact passes");
  int facts = 0;
  for (const auto& report : replay_all_fixtures()) {
    for (const auto& fact : report.facts) {
      ++facts;
      c.expect(fact.pass, report.name + ": " + fact.description);
    }
  }
  c.expect(facts >= 25, "expected at least 25 facts, saw " +
                            std::to_string(facts));
  c.finish(10.0);
}

// parallel sweep over the pinned family
template <typename Fn>
long long family_parallel(const InstanceFamily& family, Fn&& fn) {
  auto instances = family_instances(family);
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> next{0};
  std::atomic<long long> pairs{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      long long local = 0;
      while (true) {
        size_t idx = next.fetch_add(1);
        if (idx >= instances.size()) break;
        local += fn(instances[idx]);
      }
      pairs += local;
    });
  }
  for (auto& t : pool) t.join();
  return pairs.load();
}

void criterion2_oracle_equivalence() {
  Criterion c(2, "fast EJR+/PJR+ verifiers agree with brute force on the "
                 "exhaustive family");
  std::atomic<long long> mismatches{0};
  long long pairs = family_parallel(pinned_family(), [&](const Instance& inst) {
    long long local = 0;
    for_each_committee(inst, [&](const Committee& w) {
      ++local;
      if (verify_ejrp_fast(inst, w).satisfied !=
          verify_bruteforce(NotionId::EJRplus, inst, w))
        ++mismatches;
      if (verify_pjrp_fast(inst, w).satisfied !=
          verify_bruteforce(NotionId::PJRplus, inst, w))
        ++mismatches;
      return true;
    });
    return local;
  });
  c.expect(mismatches.load() == 0,
           std::to_string(mismatches.load()) + " mismatching pairs");
  c.expect(pairs > 1'000'000, "family smaller than expected: " +
                                  std::to_string(pairs));
  c.finish(600.0);
}

void criterion3_party_list_coincidence() {
  Criterion c(3, "PJR/EJR/PJR+/EJR+/core coincide with lower quota on party "
                 "lists");
  std::atomic<long long> mismatches{0};
  std::atomic<long long> party_lists{0};
  family_parallel(pinned_family(), [&](const Instance& inst) {
    if (!party_list_structure(inst)) return 0ll;
    ++party_lists;
    long long local = 0;
    for_each_committee(inst, [&](const Committee& w) {
      ++local;
      bool lq = satisfies_lower_quota(inst, w);
      for (NotionId id : {NotionId::PJR, NotionId::EJR, NotionId::PJRplus,
                          NotionId::EJRplus, NotionId::Core}) {
        if (verify_bruteforce(id, inst, w) != lq) ++mismatches;
      }
      return true;
    });
    return local;
  });
  c.expect(mismatches.load() == 0,
           std::to_string(mismatches.load()) + " cells diverge from LQ");
  c.expect(party_lists.load() > 100,
           "party-list slice unexpectedly small: " +
               std::to_string(party_lists.load()));
  c.finish(600.0);
}

void criterion4_refinement_lattice() {
  Criterion c(4, "refinement lattice confirmations and the EJR/PJR+ "
                 "incomparability");
  InstanceFamily family = pinned_family();
  const std::pair<NotionId, NotionId> confirmations[] = {
      {NotionId::EJRplus, NotionId::EJR},
      {NotionId::EJRplus, NotionId::PJRplus},
      {NotionId::PJRplus, NotionId::PJR},
      {NotionId::EJR, NotionId::PJR},
      {NotionId::Core, NotionId::EJR},
      {NotionId::NPR, NotionId::EJRplus},
      {NotionId::SubCore, NotionId::PJRplus},
      {NotionId::SubCore, NotionId::FPJR},
  };
  for (auto [a, b] : confirmations) {
    auto outcome = refinement_report(a, b, family);
    c.expect(outcome.confirmed, to_string(a) + " into " + to_string(b) +
                                    " produced a counterexample");
  }
  auto ejr_not_pjrp = refinement_report(NotionId::EJR, NotionId::PJRplus, family);
  c.expect(!ejr_not_pjrp.confirmed, "EJR into PJR+ unexpectedly confirmed");
  if (ejr_not_pjrp.counterexample) {
    auto& [inst, w] = *ejr_not_pjrp.counterexample;
    c.expect(verify_bruteforce(NotionId::EJR, inst, w) &&
                 !verify_bruteforce(NotionId::PJRplus, inst, w),
             "EJR/PJR+ counterexample does not replay");
  }
  auto pjrp_not_ejr = refinement_report(NotionId::PJRplus, NotionId::EJR, family);
  c.expect(!pjrp_not_ejr.confirmed, "PJR+ into EJR unexpectedly confirmed");
  if (pjrp_not_ejr.counterexample) {
    auto& [inst, w] = *pjrp_not_ejr.counterexample;
    c.expect(verify_bruteforce(NotionId::PJRplus, inst, w) &&
                 !verify_bruteforce(NotionId::EJR, inst, w),
             "PJR+/EJR counterexample does not replay");
  }
  // priceability refines PJR+ as well; the LP verdicts feed the fast-path
  // PJR+ verifier validated in criterion 2
  std::atomic<long long> price_leaks{0};
  family_parallel(family, [&](const Instance& inst) {
    long long local = 0;
    for_each_committee(inst, [&](const Committee& w) {
      ++local;
      if (verify_priceable(inst, w).first &&
          !verify_pjrp_fast(inst, w).satisfied)
        ++price_leaks;
      return true;
    });
    return local;
  });
  c.expect(price_leaks.load() == 0,
           std::to_string(price_leaks.load()) +
               " priceable committees violate PJR+");
  c.finish(900.0);
}

void criterion5_fingerprint() {
  Criterion c(5, "fingerprint reproduces the compliance tables cell-for-cell");
  FingerprintOptions options;
  options.family = pinned_family();
  auto result = fingerprint(options);
  const auto& rows = fingerprint_rows();
  const auto& notions = fingerprint_notions();
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t cc = 0; cc < notions.size(); ++cc) {
      const auto& cell = result.cells[r][cc];
      c.expect(cell.holds == cell.expected,
               rows[r].label + " / " + to_string(notions[cc]) + ": got " +
                   (cell.holds ? "holds" : "violated") + " [" + cell.evidence +
                   "]");
      if (!cell.expected) {
        c.expect(!cell.evidence.empty(), "missing counterexample evidence at " +
                                             rows[r].label + " / " +
                                             to_string(notions[cc]));
      }
    }
  }
  c.finish(1800.0);
}

void criterion6_constructive_chains() {
  Criterion c(6, "constructive chains: refutation, PJR violation, coarsening");
  std::mt19937_64 rng(2024);
  int refutations = 0;
  while (refutations < 200) {
    int n = 2 + static_cast<int>(rng() % 6);
    int m = 3 + static_cast<int>(rng() % 4);
    int k = 2 + static_cast<int>(rng() % std::min(m - 1, 3));
    Instance inst = random_instance(n, m, k, 300000 + rng() % 500000, rng());
    bool used = false;
    for_each_committee(inst, [&](const Committee& w) {
      auto result = verify_pjrp_fast(inst, w);
      if (result.satisfied) return true;
      // the two-party construction needs a proper voter complement; pairs
      // whose extracted witness spans the electorate are resampled
      if (static_cast<int>(result.witness->group.size()) == inst.n)
        return true;
      try {
        auto refuted = refute_via_party_list(inst, w, *result.witness);
        if (!party_list_structure(refuted.instance) ||
            satisfies_lower_quota(refuted.instance, refuted.committee)) {
          c.expect(false, "refutation chain left lower quota intact");
        }
        Instance extended = pjr_violation_from_plus(inst, w, *result.witness);
        if (verify(NotionId::PJR, extended, w).satisfied) {
          c.expect(false, "monotone extension kept PJR intact");
        }
      } catch (const std::exception& e) {
        c.expect(false, std::string("chain raised: ") + e.what());
      }
      used = true;
      return false;
    });
    if (used) ++refutations;
  }
  c.expect(refutations == 200, "failed to reach 200 refutation pairs");

  // coarsening chains on pairs satisfying EJR+ (resp. PJR+) with a cohesive
  // witness group
  for (NotionId id : {NotionId::EJRplus, NotionId::PJRplus}) {
    std::mt19937_64 gen(id == NotionId::EJRplus ? 7 : 8);
    int chains = 0;
    while (chains < 200) {
      int n = 2 + static_cast<int>(gen() % 6);
      int m = 3 + static_cast<int>(gen() % 4);
      int k = 2 + static_cast<int>(gen() % std::min(m - 1, 3));
      Instance inst = random_instance(n, m, k, 300000 + gen() % 500000, gen());
      bool used = false;
      for_each_committee(inst, [&](const Committee& w) {
        if (!verify(id, inst, w).satisfied) return true;
        // witness group: supporters of some unselected candidate
        for (int cand = 0; cand < inst.m; ++cand) {
          if (set_contains(w.members, cand)) continue;
          auto supporters = support(inst, cand);
          if (supporters.empty()) continue;
          if (static_cast<int>(supporters.size()) == inst.n) {
            // keep only when the chain stays a party list (single party)
            CandSet base = 0;
            if (id == NotionId::EJRplus) {
              int pick = supporters[0];
              for (int i : supporters) {
                if (set_size(inst.ballots[i] & w.members) >
                    set_size(inst.ballots[pick] & w.members))
                  pick = i;
              }
              base = inst.ballots[pick];
            } else {
              for (int i : supporters) base |= inst.ballots[i];
            }
            if ((w.members & ~base) != 0) continue;
          }
          try {
            auto chain = coarsening_chain(id, inst, w, supporters);
            if (!party_list_structure(chain.i3) ||
                !satisfies_lower_quota(chain.i3, chain.w3)) {
              c.expect(false, "coarsening chain broke its contract");
            }
            if (!embedding_valid({&chain.i2, supporters, w},
                                 {&chain.i3, supporters, chain.w3},
                                 chain.embedding)) {
              c.expect(false, "coarsening chain produced a bad embedding");
            }
          } catch (const std::exception& e) {
            c.expect(false, std::string("coarsening chain raised: ") + e.what());
          }
          used = true;
          return false;
        }
        return true;
      });
      if (used) ++chains;
    }
    c.expect(chains == 200, "failed to reach 200 coarsening pairs");
  }
  c.finish(600.0);
}

void criterion7_rule_properties() {
  Criterion c(7, "MES satisfies EJR+ on 1000 seeded instances; PAV satisfies "
                 "NPR on the family");
  std::atomic<int> mes_failures{0};
  {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        while (true) {
          int seed = next.fetch_add(1);
          if (seed >= 1000) break;
          std::mt19937_64 gen(seed + 1);
          int n = 1 + static_cast<int>(gen() % 20);
          int m = 1 + static_cast<int>(gen() % 12);
          int k = 1 + static_cast<int>(gen() % std::min(m, 6));
          Instance inst =
              random_instance(n, m, k, 200000 + gen() % 600000, gen());
          Committee w = mes(inst);
          if (!verify_ejrp_fast(inst, w).satisfied) ++mes_failures;
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  c.expect(mes_failures.load() == 0,
           std::to_string(mes_failures.load()) + " MES committees violate EJR+");

  std::atomic<long long> pav_failures{0};
  family_parallel(pinned_family(), [&](const Instance& inst) {
    Committee w = pav_exhaustive(inst);
    if (!verify(NotionId::NPR, inst, w).satisfied) ++pav_failures;
    return 1ll;
  });
  c.expect(pav_failures.load() == 0,
           std::to_string(pav_failures.load()) + " PAV committees violate NPR");
  c.finish(900.0);
}

void criterion8_exact_arithmetic() {
  Criterion c(8, "exact certificates: price systems replay, closure duality "
                 "holds on every solve");
  // priceability certificates across fixtures and seeded committees
  long long feasible = 0;
  for (const auto& name : fixture_names()) {
    const Fixture& f = fixture(name);
    for (const auto& w : f.committees) {
      auto [ok, prices] = verify_priceable(f.instance, w);
      if (ok) {
        ++feasible;
        c.expect(prices && price_system_valid(f.instance, w, *prices),
                 name + ": certificate fails exact replay");
      }
    }
  }
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = random_instance(2 + rng() % 5, 2 + rng() % 4,
                                    1 + rng() % 2, 500000, rng(), true);
    for_each_committee(inst, [&](const Committee& w) {
      auto [ok, prices] = verify_priceable(inst, w);
      if (ok) {
        ++feasible;
        c.expect(prices && price_system_valid(inst, w, *prices),
                 "random certificate fails exact replay");
      }
      return true;
    });
  }
  c.expect(feasible > 100, "too few feasible price systems exercised: " +
                               std::to_string(feasible));

  // closure duality: max_closure throws if the identity ever fails; check a
  // batch here explicitly as well
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 500; ++trial) {
    int items = 1 + static_cast<int>(gen() % 12);
    ClosureProblem p;
    for (int i = 0; i < items; ++i) {
      ClosureProblem::Item item;
      item.weight = static_cast<long long>(gen() % 19) - 9;
      for (int j = 0; j < i; ++j) {
        if (gen() % 3 == 0) item.requires_items.push_back(j);
      }
      p.items.push_back(item);
    }
    auto result = max_closure(p);
    c.expect(result.min_cut_value + result.value == result.positive_sum,
             "duality identity failed");
    long long check = 0;
    for (int i : result.chosen) check += p.items[i].weight;
    c.expect(check == result.value, "chosen set value mismatch");
  }
  c.finish(300.0);
}

}  // namespace

int main() {
  criterion1_fixture_replay();
  criterion2_oracle_equivalence();
  criterion3_party_list_coincidence();
  criterion4_refinement_lattice();
  criterion5_fingerprint();
  criterion6_constructive_chains();
  criterion7_rule_properties();
  criterion8_exact_arithmetic();
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
