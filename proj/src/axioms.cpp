#include "abcv/axioms.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

namespace abcv {

const std::vector<AxiomId>& all_axioms() {
  static const std::vector<AxiomId> ids = {
      AxiomId::Monotonicity,
      AxiomId::IndependenceOfLosers,
      AxiomId::StrongIoL,
      AxiomId::RobustnessFSV,
      AxiomId::IndependenceOfApprovalSwaps,
      AxiomId::LowerQuotaPartyLists,
      AxiomId::LowerQuotaExtension,
      AxiomId::Anonymity,
      AxiomId::Neutrality,
      AxiomId::IndependenceOfUnapprovedCandidates,
      AxiomId::CohesivenessBased,
      AxiomId::IndividualDiscontentment,
      AxiomId::MergeProofness};
  return ids;
}

std::string to_string(AxiomId id) {
  switch (id) {
    case AxiomId::Monotonicity: return "monotonicity";
    case AxiomId::IndependenceOfLosers: return "iol";
    case AxiomId::StrongIoL: return "strong-iol";
    case AxiomId::RobustnessFSV: return "rfsv";
    case AxiomId::IndependenceOfApprovalSwaps: return "ioas";
    case AxiomId::LowerQuotaPartyLists: return "lq-party-lists";
    case AxiomId::LowerQuotaExtension: return "lq-extension";
    case AxiomId::Anonymity: return "anonymity";
    case AxiomId::Neutrality: return "neutrality";
    case AxiomId::IndependenceOfUnapprovedCandidates: return "iuc";
    case AxiomId::CohesivenessBased: return "cohesiveness-based";
    case AxiomId::IndividualDiscontentment: return "individual-discontentment";
    case AxiomId::MergeProofness: return "merge-proofness";
  }
  return "?";
}

std::optional<AxiomId> axiom_from_string(const std::string& name) {
  for (AxiomId id : all_axioms()) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

namespace {

bool is_transformation_axiom(AxiomId axiom) {
  switch (axiom) {
    case AxiomId::Monotonicity:
    case AxiomId::IndependenceOfLosers:
    case AxiomId::RobustnessFSV:
    case AxiomId::IndependenceOfApprovalSwaps:
    case AxiomId::Anonymity:
    case AxiomId::Neutrality:
    case AxiomId::IndependenceOfUnapprovedCandidates:
      return true;
    default:
      return false;
  }
}

// Product-space enumeration helper: per-voter option lists, full sweep when
// the product is small, seeded sampling otherwise.
bool enumerate_profiles(const Instance& inst, const Committee& w,
                        const std::vector<std::vector<CandSet>>& options,
                        const TransformOptions& opts, const std::string& label,
                        const std::function<bool(const TransformedPair&)>& fn) {
  double log_product = 0;
  for (const auto& o : options) log_product += std::log2(double(o.size()));
  bool exhaustive =
      log_product <= 40 &&
      static_cast<long long>(std::llround(std::pow(2.0, log_product))) <=
          opts.max_exhaustive;

  auto emit = [&](const std::vector<size_t>& pick) {
    Instance out = inst;
    bool changed = false;
    for (int i = 0; i < inst.n; ++i) {
      out.ballots[i] = options[i][pick[i]];
      changed |= out.ballots[i] != inst.ballots[i];
    }
    if (!changed) return true;
    return fn({out, w, label});
  };

  if (exhaustive) {
    std::vector<size_t> pick(inst.n, 0);
    while (true) {
      if (!emit(pick)) return exhaustive;
      int pos = inst.n - 1;
      while (pos >= 0 && pick[pos] + 1 == options[pos].size()) {
        pick[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++pick[pos];
    }
    return true;
  }
  if (!opts.allow_sampling)
    throw WorkBoundExceeded("transformation space too large");
  // sampled sweep; single-voter edits are always included first
  for (int i = 0; i < inst.n; ++i) {
    std::vector<size_t> pick(inst.n, 0);
    for (size_t j = 1; j < options[i].size(); ++j) {
      pick[i] = j;
      if (!emit(pick)) return false;
    }
  }
  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.sample_count; ++t) {
    std::vector<size_t> pick(inst.n);
    for (int i = 0; i < inst.n; ++i) pick[i] = rng() % options[i].size();
    if (!emit(pick)) return false;
  }
  return false;
}

std::vector<CandSet> submasks_of(CandSet mask) {
  std::vector<CandSet> out;
  CandSet s = 0;
  while (true) {
    out.push_back(s);
    if (s == mask) break;
    s = (s - mask) & mask;
  }
  return out;
}

}  // namespace

bool transform(AxiomId axiom, const Instance& inst, const Committee& w,
               const TransformOptions& opts,
               const std::function<bool(const TransformedPair&)>& fn) {
  require_committee(inst, w);
  switch (axiom) {
    case AxiomId::Monotonicity: {
      std::vector<std::vector<CandSet>> options(inst.n);
      for (int i = 0; i < inst.n; ++i) {
        for (CandSet add : submasks_of(w.members & ~inst.ballots[i]))
          options[i].push_back(inst.ballots[i] | add);
      }
      return enumerate_profiles(inst, w, options, opts, "monotone-addition",
                                fn);
    }
    case AxiomId::RobustnessFSV: {
      std::vector<std::vector<CandSet>> options(inst.n);
      for (int i = 0; i < inst.n; ++i) {
        options[i].push_back(inst.ballots[i]);
        for (CandSet sub : submasks_of(inst.ballots[i] & w.members)) {
          if (sub != inst.ballots[i]) options[i].push_back(sub);
        }
      }
      return enumerate_profiles(inst, w, options, opts, "fully-satisfied-shrink",
                                fn);
    }
    case AxiomId::IndependenceOfApprovalSwaps: {
      std::vector<std::vector<CandSet>> options(inst.n);
      for (int i = 0; i < inst.n; ++i) {
        CandSet outside = inst.ballots[i] & ~w.members;
        int seats = set_size(inst.ballots[i] & w.members);
        options[i].push_back(inst.ballots[i]);
        for (CandSet t : submasks_of(w.members)) {
          if (set_size(t) == seats && (outside | t) != inst.ballots[i])
            options[i].push_back(outside | t);
        }
      }
      return enumerate_profiles(inst, w, options, opts, "approval-swap", fn);
    }
    case AxiomId::IndependenceOfLosers: {
      for (int c = 0; c < inst.m; ++c) {
        if (set_contains(w.members, c) || inst.m - 1 < inst.k) continue;
        auto restricted =
            restrict_candidates(inst, full_set(inst.m) & ~set_with(0, c));
        CandSet new_w = 0;
        for (int cd : set_to_vector(w.members))
          new_w = set_with(new_w, restricted.new_of_old[cd]);
        if (!fn({restricted.instance, Committee{new_w},
                 "remove-loser-" + std::to_string(c)}))
          return true;
      }
      return true;
    }
    case AxiomId::IndependenceOfUnapprovedCandidates: {
      for (int c = 0; c < inst.m; ++c) {
        if (set_contains(w.members, c) || inst.m - 1 < inst.k) continue;
        if (!support(inst, c).empty()) continue;
        auto restricted =
            restrict_candidates(inst, full_set(inst.m) & ~set_with(0, c));
        CandSet new_w = 0;
        for (int cd : set_to_vector(w.members))
          new_w = set_with(new_w, restricted.new_of_old[cd]);
        if (!fn({restricted.instance, Committee{new_w},
                 "remove-unapproved-" + std::to_string(c)}))
          return true;
      }
      return true;
    }
    case AxiomId::Anonymity: {
      long long fact = 1;
      for (int i = 2; i <= inst.n; ++i) {
        fact *= i;
        if (fact > opts.max_exhaustive) break;
      }
      if (fact > opts.max_exhaustive) {
        if (!opts.allow_sampling)
          throw WorkBoundExceeded("too many voter permutations");
        std::mt19937_64 rng(opts.seed);
        std::vector<int> perm(inst.n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int t = 0; t < opts.sample_count; ++t) {
          std::shuffle(perm.begin(), perm.end(), rng);
          Instance out = inst;
          for (int i = 0; i < inst.n; ++i) out.ballots[perm[i]] = inst.ballots[i];
          if (out.ballots == inst.ballots) continue;
          if (!fn({out, w, "voter-permutation"})) return false;
        }
        return false;
      }
      std::vector<int> perm(inst.n);
      std::iota(perm.begin(), perm.end(), 0);
      std::set<std::vector<CandSet>> seen;
      seen.insert(inst.ballots);
      while (std::next_permutation(perm.begin(), perm.end())) {
        Instance out = inst;
        for (int i = 0; i < inst.n; ++i) out.ballots[perm[i]] = inst.ballots[i];
        if (!seen.insert(out.ballots).second) continue;
        if (!fn({out, w, "voter-permutation"})) return true;
      }
      return true;
    }
    case AxiomId::Neutrality: {
      long long fact = 1;
      for (int i = 2; i <= inst.m; ++i) {
        fact *= i;
        if (fact > opts.max_exhaustive) break;
      }
      bool exhaustive = fact <= opts.max_exhaustive;
      auto apply = [&](const std::vector<int>& sigma) {
        Instance out = inst;
        for (int i = 0; i < inst.n; ++i) {
          CandSet b = 0;
          for (int c : set_to_vector(inst.ballots[i]))
            b = set_with(b, sigma[c]);
          out.ballots[i] = b;
        }
        CandSet new_w = 0;
        for (int c : set_to_vector(w.members)) new_w = set_with(new_w, sigma[c]);
        return TransformedPair{out, Committee{new_w}, "candidate-relabeling"};
      };
      if (exhaustive) {
        std::vector<int> sigma(inst.m);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::set<std::pair<std::vector<CandSet>, CandSet>> seen;
        seen.insert({inst.ballots, w.members});
        while (std::next_permutation(sigma.begin(), sigma.end())) {
          auto pair = apply(sigma);
          if (!seen.insert({pair.instance.ballots, pair.committee.members})
                   .second)
            continue;
          if (!fn(pair)) return true;
        }
        return true;
      }
      if (!opts.allow_sampling)
        throw WorkBoundExceeded("too many candidate relabelings");
      std::mt19937_64 rng(opts.seed);
      std::vector<int> sigma(inst.m);
      std::iota(sigma.begin(), sigma.end(), 0);
      for (int t = 0; t < opts.sample_count; ++t) {
        std::shuffle(sigma.begin(), sigma.end(), rng);
        auto pair = apply(sigma);
        if (pair.instance.ballots == inst.ballots &&
            pair.committee.members == w.members)
          continue;
        if (!fn(pair)) return false;
      }
      return false;
    }
    default:
      throw PreconditionError("axiom is not transformation-shaped");
  }
}

namespace {

// Single-edit move streams used by the family scans. Over an exhaustive
// family every definitional violation flips along a path of these edits, so
// scanning single edits from every family member is complete at the bounds.
bool for_each_move(AxiomId axiom, const Instance& inst, const Committee& w,
                   const std::function<bool(const TransformedPair&)>& fn) {
  switch (axiom) {
    case AxiomId::Monotonicity: {
      for (int i = 0; i < inst.n; ++i) {
        for (int c : set_to_vector(w.members & ~inst.ballots[i])) {
          Instance out = inst;
          out.ballots[i] = set_with(out.ballots[i], c);
          if (!fn({out, w, "add"})) return false;
        }
      }
      return true;
    }
    case AxiomId::RobustnessFSV: {
      for (int i = 0; i < inst.n; ++i) {
        for (CandSet sub : submasks_of(inst.ballots[i] & w.members)) {
          if (sub == inst.ballots[i]) continue;
          Instance out = inst;
          out.ballots[i] = sub;
          if (!fn({out, w, "shrink"})) return false;
        }
      }
      return true;
    }
    case AxiomId::IndependenceOfApprovalSwaps: {
      for (int i = 0; i < inst.n; ++i) {
        CandSet outside = inst.ballots[i] & ~w.members;
        int seats = set_size(inst.ballots[i] & w.members);
        if (seats == 0) continue;
        for (CandSet t : submasks_of(w.members)) {
          if (set_size(t) != seats || (outside | t) == inst.ballots[i])
            continue;
          Instance out = inst;
          out.ballots[i] = outside | t;
          if (!fn({out, w, "swap"})) return false;
        }
      }
      return true;
    }
    case AxiomId::IndependenceOfLosers:
    case AxiomId::IndependenceOfUnapprovedCandidates:
    case AxiomId::Anonymity:
    case AxiomId::Neutrality: {
      TransformOptions opts;
      bool done = true;
      transform(axiom, inst, w, opts, [&](const TransformedPair& pair) {
        if (!fn(pair)) {
          done = false;
          return false;
        }
        return true;
      });
      return done;
    }
    default:
      throw PreconditionError("axiom has no move stream");
  }
}

bool notion_satisfied(NotionId notion, const Instance& inst,
                      const Committee& w) {
  return verify(notion, inst, w).satisfied;
}

}  // namespace

AxiomVerdict check_axiom(NotionId notion, AxiomId axiom, const Instance& inst,
                         const Committee& w, const TransformOptions& opts) {
  AxiomVerdict verdict;
  switch (axiom) {
    case AxiomId::Monotonicity:
    case AxiomId::IndependenceOfLosers:
    case AxiomId::RobustnessFSV:
    case AxiomId::IndependenceOfApprovalSwaps: {
      if (!notion_satisfied(notion, inst, w)) {
        verdict.status = AxiomVerdict::Status::NotApplicable;
        return verdict;
      }
      verdict.exhaustive =
          transform(axiom, inst, w, opts, [&](const TransformedPair& pair) {
            if (!notion_satisfied(notion, pair.instance, pair.committee)) {
              verdict.status = AxiomVerdict::Status::Violated;
              verdict.transformed = pair.instance;
              verdict.transformed_committee = pair.committee;
              verdict.detail = pair.move;
              return false;
            }
            return true;
          });
      return verdict;
    }
    case AxiomId::Anonymity:
    case AxiomId::Neutrality: {
      bool base = notion_satisfied(notion, inst, w);
      verdict.exhaustive =
          transform(axiom, inst, w, opts, [&](const TransformedPair& pair) {
            if (notion_satisfied(notion, pair.instance, pair.committee) !=
                base) {
              verdict.status = AxiomVerdict::Status::Violated;
              verdict.transformed = pair.instance;
              verdict.transformed_committee = pair.committee;
              verdict.detail = pair.move;
              return false;
            }
            return true;
          });
      return verdict;
    }
    case AxiomId::IndependenceOfUnapprovedCandidates: {
      if (notion_satisfied(notion, inst, w)) {
        verdict.status = AxiomVerdict::Status::NotApplicable;
        return verdict;
      }
      verdict.exhaustive =
          transform(axiom, inst, w, opts, [&](const TransformedPair& pair) {
            if (notion_satisfied(notion, pair.instance, pair.committee)) {
              verdict.status = AxiomVerdict::Status::Violated;
              verdict.transformed = pair.instance;
              verdict.transformed_committee = pair.committee;
              verdict.detail = pair.move;
              return false;
            }
            return true;
          });
      return verdict;
    }
    case AxiomId::LowerQuotaPartyLists: {
      if (!party_list_structure(inst) || !notion_satisfied(notion, inst, w)) {
        verdict.status = AxiomVerdict::Status::NotApplicable;
        return verdict;
      }
      if (!satisfies_lower_quota(inst, w)) {
        verdict.status = AxiomVerdict::Status::Violated;
        verdict.detail = "committee in notion but outside LQ";
      }
      return verdict;
    }
    case AxiomId::LowerQuotaExtension: {
      if (!party_list_structure(inst)) {
        verdict.status = AxiomVerdict::Status::NotApplicable;
        return verdict;
      }
      bool in_f = notion_satisfied(notion, inst, w);
      bool in_lq = satisfies_lower_quota(inst, w);
      if (in_f != in_lq) {
        verdict.status = AxiomVerdict::Status::Violated;
        verdict.detail = in_f ? "in notion, outside LQ" : "in LQ, outside notion";
      }
      return verdict;
    }
    case AxiomId::StrongIoL: {
      bool lhs = notion_satisfied(notion, inst, w);
      bool rhs = true;
      for (int c = 0; c < inst.m && rhs; ++c) {
        if (set_contains(w.members, c)) continue;
        auto restricted =
            restrict_candidates(inst, w.members | set_with(0, c));
        CandSet new_w = 0;
        for (int cd : set_to_vector(w.members))
          new_w = set_with(new_w, restricted.new_of_old[cd]);
        if (!notion_satisfied(notion, restricted.instance, Committee{new_w}))
          rhs = false;
      }
      if (lhs != rhs) {
        verdict.status = AxiomVerdict::Status::Violated;
        verdict.detail = lhs ? "satisfied but a single candidate justifies"
                             : "violated but no single candidate justifies";
      }
      return verdict;
    }
    case AxiomId::CohesivenessBased:
    case AxiomId::IndividualDiscontentment:
    case AxiomId::MergeProofness: {
      if (notion == NotionId::Universal || notion == NotionId::Empty ||
          notion_satisfied(notion, inst, w)) {
        verdict.status = AxiomVerdict::Status::NotApplicable;
        return verdict;
      }
      auto witnesses = natural_witnesses(notion, inst, w);
      for (const auto& group : witnesses.groups) {
        if (axiom == AxiomId::CohesivenessBased) {
          CandSet common = full_set(inst.m);
          for (int i : group) common &= inst.ballots[i];
          if ((common & ~w.members) == 0) {
            verdict.status = AxiomVerdict::Status::Violated;
            verdict.witness_group = group;
            verdict.detail = "witness shares no unselected candidate";
            return verdict;
          }
        } else if (axiom == AxiomId::IndividualDiscontentment) {
          if (!check_individual_discontentment(notion, inst, w, group)) {
            verdict.status = AxiomVerdict::Status::Violated;
            verdict.witness_group = group;
            verdict.detail = "witness dies under a ballot copy";
            return verdict;
          }
        } else {
          auto merge = check_merge_proofness(notion, inst, w, group,
                                             opts.max_exhaustive, opts.seed);
          if (merge.verdict == MergeVerdict::Fails) {
            verdict.status = AxiomVerdict::Status::Violated;
            verdict.witness_group = group;
            verdict.detail = "witness dies under an approval merge";
            Instance merged = inst;
            merged.ballots = merge.failing_profile;
            verdict.transformed = merged;
            verdict.transformed_committee = w;
            return verdict;
          }
          if (merge.verdict == MergeVerdict::Exhausted)
            verdict.exhaustive = false;
        }
      }
      return verdict;
    }
  }
  return verdict;
}

namespace {

bool pair_violates(NotionId notion, AxiomId axiom, const Instance& inst,
                   const Committee& w, AxiomVerdict* out) {
  // family-scan predicate: single-edit moves for the profile edits, full
  // enumeration elsewhere
  switch (axiom) {
    case AxiomId::Monotonicity:
    case AxiomId::RobustnessFSV:
    case AxiomId::IndependenceOfApprovalSwaps: {
      // a price system that stays valid after the edit already certifies
      // membership, so the LP only reruns when the transfer fails
      std::optional<PriceSystem> certificate;
      if (notion == NotionId::Priceable) {
        auto [ok, prices] = verify_priceable(inst, w);
        if (!ok) return false;
        certificate = std::move(prices);
      } else if (!notion_satisfied(notion, inst, w)) {
        return false;
      }
      bool violated = false;
      for_each_move(axiom, inst, w, [&](const TransformedPair& pair) {
        if (certificate &&
            price_system_valid(pair.instance, pair.committee, *certificate))
          return true;
        if (!notion_satisfied(notion, pair.instance, pair.committee)) {
          violated = true;
          if (out) {
            out->status = AxiomVerdict::Status::Violated;
            out->transformed = pair.instance;
            out->transformed_committee = pair.committee;
            out->detail = pair.move;
          }
          return false;
        }
        return true;
      });
      return violated;
    }
    case AxiomId::IndependenceOfLosers: {
      if (notion != NotionId::Priceable) break;
      auto [ok, prices] = verify_priceable(inst, w);
      if (!ok) return false;
      bool violated = false;
      for_each_move(axiom, inst, w, [&](const TransformedPair& pair) {
        // remap the certificate onto the restricted candidate indices
        PriceSystem moved;
        moved.budget = prices->budget;
        moved.payments.resize(inst.n);
        // the move removed exactly one loser; the index map follows from
        // matching committee members in order
        auto old_w = set_to_vector(w.members);
        auto new_w = set_to_vector(pair.committee.members);
        std::map<int, int> remap;
        for (size_t j = 0; j < old_w.size(); ++j) remap[old_w[j]] = new_w[j];
        for (int i = 0; i < inst.n; ++i) {
          for (const auto& [c, p] : prices->payments[i]) {
            moved.payments[i][remap.at(c)] = p;
          }
        }
        if (price_system_valid(pair.instance, pair.committee, moved))
          return true;
        if (!notion_satisfied(notion, pair.instance, pair.committee)) {
          violated = true;
          if (out) {
            out->status = AxiomVerdict::Status::Violated;
            out->transformed = pair.instance;
            out->transformed_committee = pair.committee;
            out->detail = pair.move;
          }
          return false;
        }
        return true;
      });
      return violated;
    }
    case AxiomId::MergeProofness: {
      // single approval absorptions; complete over an exhaustive family
      if (notion == NotionId::Universal || notion == NotionId::Empty)
        return false;
      if (notion_satisfied(notion, inst, w)) return false;
      auto witnesses = natural_witnesses(notion, inst, w);
      for (const auto& group : witnesses.groups) {
        CandSet pool = 0;
        for (int i : group) pool |= inst.ballots[i];
        for (int i : group) {
          for (int c : set_to_vector(pool & ~inst.ballots[i])) {
            Instance merged = inst;
            merged.ballots[i] = set_with(merged.ballots[i], c);
            if (!group_is_natural_witness(notion, merged, w, group)) {
              if (out) {
                out->status = AxiomVerdict::Status::Violated;
                out->witness_group = group;
                out->transformed = merged;
                out->transformed_committee = w;
                out->detail = "witness dies under an approval merge";
              }
              return true;
            }
          }
        }
      }
      return false;
    }
    default:
      break;
  }
  AxiomVerdict verdict = check_axiom(notion, axiom, inst, w);
  if (verdict.status == AxiomVerdict::Status::Violated) {
    if (out) *out = verdict;
    return true;
  }
  return false;
}

struct ShrinkState {
  Instance inst;
  Committee w;
};

// Greedy minimization: voters, then candidates outside W, then approvals,
// while the axiom violation still replays.
ShrinkState shrink_counterexample(NotionId notion, AxiomId axiom,
                                  ShrinkState state) {
  auto still_violated = [&](const Instance& inst, const Committee& w) {
    if (!is_valid_committee(inst, w)) return false;
    try {
      return pair_violates(notion, axiom, inst, w, nullptr);
    } catch (const std::exception&) {
      return false;
    }
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = state.inst.n - 1; i >= 0 && state.inst.n > 1; --i) {
      Instance smaller = state.inst;
      smaller.ballots.erase(smaller.ballots.begin() + i);
      smaller.n -= 1;
      if (still_violated(smaller, state.w)) {
        state.inst = smaller;
        changed = true;
      }
    }
    for (int c = state.inst.m - 1; c >= 0; --c) {
      if (set_contains(state.w.members, c)) continue;
      if (state.inst.m - 1 < state.inst.k) break;
      auto restricted = restrict_candidates(
          state.inst, full_set(state.inst.m) & ~set_with(0, c));
      CandSet new_w = 0;
      for (int cd : set_to_vector(state.w.members))
        new_w = set_with(new_w, restricted.new_of_old[cd]);
      if (still_violated(restricted.instance, Committee{new_w})) {
        state.inst = restricted.instance;
        state.w = Committee{new_w};
        changed = true;
      }
    }
    for (int i = 0; i < state.inst.n; ++i) {
      for (int c : set_to_vector(state.inst.ballots[i])) {
        Instance smaller = state.inst;
        smaller.ballots[i] = set_without(smaller.ballots[i], c);
        if (still_violated(smaller, state.w)) {
          state.inst = smaller;
          changed = true;
        }
      }
    }
  }
  return state;
}

}  // namespace

SearchOutcome search_axiom_violation(NotionId notion, AxiomId axiom,
                                     const InstanceFamily& family,
                                     const SearchOptions& opts) {
  auto instances = family_instances(family);
  int jobs = opts.jobs > 0
                 ? opts.jobs
                 : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, 64));

  std::atomic<long long> best{static_cast<long long>(instances.size())};
  std::vector<std::optional<std::pair<Committee, AxiomVerdict>>> hits(
      instances.size());
  std::atomic<long long> pairs{0};
  std::atomic<size_t> next{0};

  int stride = std::max(1, opts.anonymity_sample_stride);
  bool strided = (axiom == AxiomId::Anonymity || axiom == AxiomId::Neutrality) &&
                 stride > 1;

  auto worker = [&]() {
    long long local_pairs = 0;
    while (true) {
      size_t idx = next.fetch_add(1);
      if (idx >= instances.size()) break;
      if (static_cast<long long>(idx) > best.load()) continue;
      if (strided &&
          static_cast<long long>((idx + opts.seed) % stride) != 0)
        continue;
      const Instance& inst = instances[idx];
      std::optional<std::pair<Committee, AxiomVerdict>> found;
      for_each_committee(inst, [&](const Committee& w) {
        ++local_pairs;
        AxiomVerdict verdict;
        try {
          if (pair_violates(notion, axiom, inst, w, &verdict)) {
            found = {w, verdict};
            return false;
          }
        } catch (const PreconditionError&) {
          // e.g. LQ axioms outside party lists
        }
        return true;
      });
      if (found) {
        hits[idx] = found;
        long long cur = best.load();
        while (static_cast<long long>(idx) < cur &&
               !best.compare_exchange_weak(cur, idx)) {
        }
      }
    }
    pairs += local_pairs;
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  SearchOutcome out;
  out.pairs_checked = pairs.load();
  long long first = best.load();
  if (first < static_cast<long long>(instances.size()) && hits[first]) {
    out.violated = true;
    ShrinkState state{instances[first], hits[first]->first};
    if (opts.shrink) state = shrink_counterexample(notion, axiom, state);
    out.instance = state.inst;
    out.committee = state.w;
    pair_violates(notion, axiom, state.inst, state.w, &out.verdict);
    if (strided) out.note = "strided permutation scan";
  }
  return out;
}

PartyListRefutation refute_via_party_list(const Instance& inst,
                                          const Committee& w,
                                          const ViolationWitness& witness) {
  if (witness.kind != NotionId::PJRplus || !replay_witness(inst, w, witness))
    throw PreconditionError("witness does not replay as a PJR+ violation");
  if (static_cast<int>(witness.group.size()) == inst.n)
    throw PreconditionError(
        "witness covers every voter; the two-party construction needs a "
        "nonempty complement");
  int c = lowest_member(witness.anchors);
  CandSet s = 0;
  for (int i : witness.group) s |= inst.ballots[i] & w.members;
  // |S| < ell <= k, so S is a proper subset of W and both parties are
  // nonempty
  CandSet keep = w.members | set_with(0, c);
  auto restricted = restrict_candidates(inst, keep);
  CandSet s_new = 0;
  for (int cd : set_to_vector(s))
    s_new = set_with(s_new, restricted.new_of_old[cd]);
  CandSet w_new = 0;
  for (int cd : set_to_vector(w.members))
    w_new = set_with(w_new, restricted.new_of_old[cd]);
  CandSet party1 = s_new | set_with(0, restricted.new_of_old[c]);
  CandSet party2 = w_new & ~s_new;

  Instance i3 = restricted.instance;
  std::vector<bool> in_group(inst.n, false);
  for (int i : witness.group) in_group[i] = true;
  for (int i = 0; i < inst.n; ++i) i3.ballots[i] = in_group[i] ? party1 : party2;

  PartyListRefutation out{i3, Committee{w_new}};
  if (!party_list_structure(out.instance))
    throw std::logic_error("refutation chain did not produce a party list");
  if (satisfies_lower_quota(out.instance, out.committee))
    throw std::logic_error("refutation chain did not break lower quota");
  return out;
}

Instance pjr_violation_from_plus(const Instance& inst, const Committee& w,
                                 const ViolationWitness& witness) {
  if (witness.kind != NotionId::PJRplus || !replay_witness(inst, w, witness))
    throw PreconditionError("witness does not replay as a PJR+ violation");
  CandSet s = 0;
  for (int i : witness.group) s |= inst.ballots[i] & w.members;
  Instance out = inst;
  for (int i : witness.group) out.ballots[i] = (inst.ballots[i] & ~w.members) | s;
  if (verify(NotionId::PJR, out, w).satisfied)
    throw std::logic_error("monotone extension did not break PJR");
  return out;
}

ChainResult coarsening_chain(NotionId id, const Instance& inst,
                             const Committee& w,
                             const std::vector<int>& group) {
  if (id != NotionId::EJRplus && id != NotionId::PJRplus)
    throw PreconditionError("chain is defined for EJR+ and PJR+ only");
  if (group.empty()) throw PreconditionError("witness group must be nonempty");
  if (!verify(id, inst, w).satisfied)
    throw PreconditionError("committee must satisfy the notion");
  CandSet common = full_set(inst.m);
  for (int i : group) common &= inst.ballots[i];
  if ((common & ~w.members) == 0)
    throw PreconditionError("group must share an unselected candidate");

  int ell = static_cast<int>(static_cast<long long>(inst.k) * group.size() /
                             inst.n);  // possibly 0
  CandSet base;
  if (id == NotionId::EJRplus) {
    int pick = group[0];
    for (int i : group) {
      if (set_size(inst.ballots[i] & w.members) >
          set_size(inst.ballots[pick] & w.members))
        pick = i;
    }
    base = inst.ballots[pick];
    if (set_size(base & w.members) < ell)
      throw std::logic_error("EJR+ guarantee missing in chain");
  } else {
    base = 0;
    for (int i : group) base |= inst.ballots[i];
    if (set_size(base & w.members) < ell)
      throw std::logic_error("PJR+ guarantee missing in chain");
  }

  Instance i2 = inst;
  for (int i : group) i2.ballots[i] = base;

  CandSet keep = w.members | base;
  if (static_cast<int>(group.size()) < inst.n ||
      (w.members & ~base) == 0) {
    // fine: either a second party with voters, or a single party
  } else {
    throw PreconditionError(
        "group covers every voter but W is not inside the shared ballot");
  }
  auto restricted = restrict_candidates(inst, keep);
  CandSet base_new = 0;
  for (int c : set_to_vector(base))
    base_new = set_with(base_new, restricted.new_of_old[c]);
  CandSet w_new = 0;
  for (int c : set_to_vector(w.members))
    w_new = set_with(w_new, restricted.new_of_old[c]);
  CandSet other_party = w_new & ~base_new;

  Instance i3 = restricted.instance;
  std::vector<bool> in_group(inst.n, false);
  for (int i : group) in_group[i] = true;
  for (int i = 0; i < inst.n; ++i) {
    i3.ballots[i] =
        in_group[i] ? base_new : (other_party != 0 ? other_party : base_new);
  }

  ChainResult out;
  out.i2 = i2;
  out.i3 = i3;
  out.w3 = Committee{w_new};
  if (!party_list_structure(out.i3))
    throw std::logic_error("coarsening chain did not produce a party list");
  if (!satisfies_lower_quota(out.i3, out.w3))
    throw std::logic_error("coarsening chain broke lower quota");
  auto embedding = find_local_embedding({&out.i2, group, w},
                                        {&out.i3, group, out.w3});
  if (!embedding)
    throw std::logic_error("coarsening chain lost the witness embedding");
  out.embedding = *embedding;
  return out;
}

namespace {

// Packed orbit key: the lexicographically smallest (sorted ballots, W) over
// all candidate relabelings.
struct OrbitKey {
  std::array<CandSet, 8> data{};

  bool operator==(const OrbitKey&) const = default;
  bool operator<(const OrbitKey& o) const { return data < o.data; }
};

struct OrbitKeyHash {
  size_t operator()(const OrbitKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (CandSet v : k.data) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

OrbitKey orbit_key(const Instance& inst, const Committee& w) {
  if (inst.n > 6) throw PreconditionError("orbit keys need n <= 6");
  OrbitKey best;
  bool have = false;
  std::vector<int> sigma(inst.m);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::array<CandSet, 8> cur{};
  do {
    cur.fill(0);
    cur[0] = (static_cast<CandSet>(inst.n) << 16) |
             (static_cast<CandSet>(inst.m) << 8) | inst.k;
    for (int i = 0; i < inst.n; ++i) {
      CandSet b = 0;
      for (int c : set_to_vector(inst.ballots[i])) b = set_with(b, sigma[c]);
      cur[1 + i] = b;
    }
    std::sort(cur.begin() + 1, cur.begin() + 1 + inst.n);
    CandSet new_w = 0;
    for (int c : set_to_vector(w.members)) new_w = set_with(new_w, sigma[c]);
    cur[7] = new_w;
    if (!have || cur < best.data) {
      best.data = cur;
      have = true;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

}  // namespace

PermutationInvarianceOutcome check_permutation_invariance(
    NotionId notion, const InstanceFamily& family, int jobs,
    int anonymity_stride, std::uint64_t seed) {
  auto instances = family_instances(family);
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, 64));
  if (anonymity_stride < 1) anonymity_stride = 1;

  struct OrbitEntry {
    bool verdict;
    size_t instance_index;
    CandSet committee;
  };
  using Map = std::unordered_map<OrbitKey, OrbitEntry, OrbitKeyHash>;
  std::vector<Map> maps(jobs);
  std::vector<long long> counted(jobs, 0);

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::vector<PermutationInvarianceOutcome> failures(jobs);

  auto worker = [&](int tid) {
    Map& map = maps[tid];
    long long local = 0;
    while (!failed.load(std::memory_order_relaxed)) {
      size_t idx = next.fetch_add(1);
      if (idx >= instances.size()) break;
      const Instance& inst = instances[idx];
      for_each_committee(inst, [&](const Committee& w) {
        ++local;
        bool verdict = notion_satisfied(notion, inst, w);
        OrbitKey key = orbit_key(inst, w);
        auto [it, inserted] = map.try_emplace(key, OrbitEntry{verdict, idx,
                                                              w.members});
        if (!inserted && it->second.verdict != verdict) {
          failures[tid].holds = false;
          failures[tid].instance = inst;
          failures[tid].committee = w;
          failures[tid].detail = "verdict differs inside a relabeling orbit";
          failed.store(true);
          return false;
        }
        // explicit voter-permutation sweep, strided
        if ((local + static_cast<long long>(seed)) % anonymity_stride == 0) {
          Instance perm = inst;
          std::sort(perm.ballots.begin(), perm.ballots.end());
          while (std::next_permutation(perm.ballots.begin(),
                                       perm.ballots.end())) {
            if (notion_satisfied(notion, perm, w) != verdict) {
              failures[tid].holds = false;
              failures[tid].instance = perm;
              failures[tid].committee = w;
              failures[tid].detail = "verdict changed under a voter reorder";
              failed.store(true);
              return false;
            }
          }
        }
        return true;
      });
    }
    counted[tid] = local;
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
  for (auto& t : pool) t.join();

  PermutationInvarianceOutcome out;
  for (int t = 0; t < jobs; ++t) out.pairs_checked += counted[t];
  for (int t = 0; t < jobs; ++t) {
    if (!failures[t].holds) {
      failures[t].pairs_checked = out.pairs_checked;
      return failures[t];
    }
  }
  // merge per-thread orbit maps: verdicts must agree across threads too
  Map merged;
  for (auto& map : maps) {
    for (auto& [key, entry] : map) {
      auto [it, inserted] = merged.try_emplace(key, entry);
      if (!inserted && it->second.verdict != entry.verdict) {
        out.holds = false;
        out.instance = instances[entry.instance_index];
        out.committee = Committee{entry.committee};
        out.detail = "verdict differs inside a relabeling orbit";
        return out;
      }
    }
  }
  out.orbits = static_cast<long long>(merged.size());
  return out;
}

StrongIolOutcome check_strong_iol(NotionId notion, const InstanceFamily& family,
                                  int jobs) {
  auto instances = family_instances(family);
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, 64));

  std::atomic<long long> best{static_cast<long long>(instances.size())};
  std::vector<std::optional<Committee>> hits(instances.size());
  std::atomic<long long> pairs{0};
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    long long local = 0;
    while (true) {
      size_t idx = next.fetch_add(1);
      if (idx >= instances.size()) break;
      if (static_cast<long long>(idx) > best.load()) continue;
      const Instance& inst = instances[idx];
      std::optional<Committee> found;
      for_each_committee(inst, [&](const Committee& w) {
        ++local;
        AxiomVerdict verdict = check_axiom(notion, AxiomId::StrongIoL, inst, w);
        if (verdict.status == AxiomVerdict::Status::Violated) {
          found = w;
          return false;
        }
        return true;
      });
      if (found) {
        hits[idx] = found;
        long long cur = best.load();
        while (static_cast<long long>(idx) < cur &&
               !best.compare_exchange_weak(cur, idx)) {
        }
      }
    }
    pairs += local;
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  StrongIolOutcome out;
  out.pairs_checked = pairs.load();
  long long first = best.load();
  if (first < static_cast<long long>(instances.size()) && hits[first]) {
    out.holds = false;
    out.instance = instances[first];
    out.committee = hits[first];
  }
  return out;
}

}  // namespace abcv
