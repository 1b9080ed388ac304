#include "abcv/witness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace abcv {

WitnessSet natural_witnesses(NotionId id, const Instance& inst,
                             const Committee& w, WorkBudget* budget) {
  if (id == NotionId::Universal || id == NotionId::Empty)
    throw PreconditionError("notion has no natural witness semantics");
  require_committee(inst, w);
  if (inst.n > 25) throw PreconditionError("witness sweep needs n <= 25");
  WorkBudget local;
  WorkBudget& wb = budget ? *budget : local;
  WitnessSet out;
  out.notion = id;
  const std::uint32_t limit = 1u << inst.n;
  std::vector<int> group;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    wb.charge();
    group.clear();
    for (int i = 0; i < inst.n; ++i) {
      if ((mask >> i) & 1) group.push_back(i);
    }
    if (group_is_natural_witness(id, inst, w, group, &wb))
      out.groups.push_back(group);
  }
  return out;
}

namespace {

struct EmbeddingContext {
  const EmbeddingSide* from;
  const EmbeddingSide* to;
  std::vector<int> domain;       // candidates: W union group ballots
  std::vector<int> target;       // candidates: W^ union target ballots
  std::vector<int> from_order;   // group voters, most-constrained first
  std::vector<int> assigned_to;  // per from_order position, target voter
  std::vector<bool> used;        // target voters
  WorkBudget* budget;
};

// With the voter bijection fixed, a domain candidate can map to a target
// candidate iff their incidence signatures over the matched voters are
// identical and committee membership agrees. Counting per signature class
// decides matchability; any in-class injection then works.
std::optional<std::vector<std::pair<int, int>>> match_candidates(
    const EmbeddingContext& ctx, const std::vector<int>& voter_of_from) {
  const Instance& a = *ctx.from->inst;
  const Instance& b = *ctx.to->inst;
  std::map<std::pair<std::uint64_t, bool>, std::vector<int>> domain_classes,
      target_classes;
  for (int c : ctx.domain) {
    std::uint64_t sig = 0;
    for (size_t j = 0; j < ctx.from->group.size(); ++j) {
      if (set_contains(a.ballots[ctx.from->group[j]], c)) sig |= 1ull << j;
    }
    domain_classes[{sig, set_contains(ctx.from->committee.members, c)}]
        .push_back(c);
  }
  for (int c : ctx.target) {
    std::uint64_t sig = 0;
    for (size_t j = 0; j < ctx.from->group.size(); ++j) {
      if (set_contains(b.ballots[voter_of_from[j]], c)) sig |= 1ull << j;
    }
    target_classes[{sig, set_contains(ctx.to->committee.members, c)}]
        .push_back(c);
  }
  std::vector<std::pair<int, int>> mapping;
  for (const auto& [key, cands] : domain_classes) {
    auto it = target_classes.find(key);
    if (it == target_classes.end() || it->second.size() < cands.size())
      return std::nullopt;
    for (size_t j = 0; j < cands.size(); ++j)
      mapping.push_back({cands[j], it->second[j]});
  }
  std::sort(mapping.begin(), mapping.end());
  return mapping;
}

bool assign_voters(EmbeddingContext& ctx, size_t pos,
                   std::vector<int>& voter_of_from,
                   std::optional<LocalEmbedding>& result) {
  const Instance& a = *ctx.from->inst;
  const Instance& b = *ctx.to->inst;
  if (pos == ctx.from_order.size()) {
    // voter_of_from is indexed by group position, not search order
    auto mapping = match_candidates(ctx, voter_of_from);
    if (!mapping) return false;
    LocalEmbedding emb;
    for (size_t j = 0; j < ctx.from->group.size(); ++j)
      emb.voter_map.push_back({ctx.from->group[j], voter_of_from[j]});
    emb.candidate_map = *mapping;
    result = emb;
    return true;
  }
  int from_pos = ctx.from_order[pos];
  int voter = ctx.from->group[from_pos];
  int ballot_size = set_size(a.ballots[voter]);
  int in_w = set_size(a.ballots[voter] & ctx.from->committee.members);
  for (size_t t = 0; t < ctx.to->group.size(); ++t) {
    if (ctx.used[t]) continue;
    if (ctx.budget) ctx.budget->charge();
    int cand = ctx.to->group[t];
    // the image ballot must be able to carry the original one exactly:
    // equal committee utility, at least as many approvals overall
    if (set_size(b.ballots[cand] & ctx.to->committee.members) != in_w) continue;
    if (set_size(b.ballots[cand]) < ballot_size) continue;
    ctx.used[t] = true;
    voter_of_from[from_pos] = cand;
    if (assign_voters(ctx, pos + 1, voter_of_from, result)) return true;
    ctx.used[t] = false;
  }
  return false;
}

}  // namespace

std::optional<LocalEmbedding> find_local_embedding(const EmbeddingSide& from,
                                                   const EmbeddingSide& to,
                                                   WorkBudget* budget) {
  if (from.group.size() != to.group.size())
    throw PreconditionError("embedding needs |N'| == |N^'|");
  if (from.inst->k != to.inst->k)
    throw PreconditionError("embedding needs equal committee sizes");
  require_committee(*from.inst, from.committee);
  require_committee(*to.inst, to.committee);

  EmbeddingContext ctx;
  ctx.from = &from;
  ctx.to = &to;
  ctx.budget = budget;
  CandSet domain = from.committee.members;
  for (int i : from.group) domain |= from.inst->ballots[i];
  CandSet target = to.committee.members;
  for (int i : to.group) target |= to.inst->ballots[i];
  ctx.domain = set_to_vector(domain);
  ctx.target = set_to_vector(target);

  ctx.from_order.resize(from.group.size());
  std::iota(ctx.from_order.begin(), ctx.from_order.end(), 0);
  std::sort(ctx.from_order.begin(), ctx.from_order.end(), [&](int x, int y) {
    int bx = set_size(from.inst->ballots[from.group[x]]);
    int by = set_size(from.inst->ballots[from.group[y]]);
    if (bx != by) return bx > by;  // most-constrained (largest ballot) first
    return x < y;
  });
  ctx.used.assign(to.group.size(), false);

  std::vector<int> voter_of_from(from.group.size(), -1);
  std::optional<LocalEmbedding> result;
  assign_voters(ctx, 0, voter_of_from, result);
  if (result && !embedding_valid(from, to, *result)) {
    throw std::logic_error("embedding search produced an invalid map");
  }
  return result;
}

bool embedding_valid(const EmbeddingSide& from, const EmbeddingSide& to,
                     const LocalEmbedding& embedding) {
  const Instance& a = *from.inst;
  const Instance& b = *to.inst;
  std::map<int, int> vmap(embedding.voter_map.begin(),
                          embedding.voter_map.end());
  std::map<int, int> cmap(embedding.candidate_map.begin(),
                          embedding.candidate_map.end());

  // voter map: bijection group -> target group
  if (vmap.size() != from.group.size()) return false;
  std::vector<int> image;
  for (int i : from.group) {
    auto it = vmap.find(i);
    if (it == vmap.end()) return false;
    image.push_back(it->second);
  }
  std::sort(image.begin(), image.end());
  std::vector<int> target_sorted = to.group;
  std::sort(target_sorted.begin(), target_sorted.end());
  if (image != target_sorted) return false;

  // candidate map: injective on the domain, onto W^ from W
  CandSet domain = from.committee.members;
  for (int i : from.group) domain |= a.ballots[i];
  CandSet target_universe = to.committee.members;
  for (int i : to.group) target_universe |= b.ballots[i];
  std::vector<int> seen;
  CandSet w_image = 0;
  for (int c : set_to_vector(domain)) {
    auto it = cmap.find(c);
    if (it == cmap.end()) return false;
    if (!set_contains(target_universe, it->second)) return false;
    seen.push_back(it->second);
    if (set_contains(from.committee.members, c))
      w_image = set_with(w_image, it->second);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  if (w_image != to.committee.members) return false;

  // approval preservation over the group and the whole domain
  for (int j : from.group) {
    for (int c : set_to_vector(domain)) {
      bool before = set_contains(a.ballots[j], c);
      bool after = set_contains(b.ballots[vmap.at(j)], cmap.at(c));
      if (before != after) return false;
    }
  }
  return true;
}

bool check_cohesiveness_based(NotionId id, const Instance& inst,
                              const Committee& w, WorkBudget* budget) {
  auto witnesses = natural_witnesses(id, inst, w, budget);
  for (const auto& group : witnesses.groups) {
    CandSet common = full_set(inst.m);
    for (int i : group) common &= inst.ballots[i];
    if ((common & ~w.members) == 0) return false;
  }
  return true;
}

bool check_individual_discontentment(NotionId id, const Instance& inst,
                                     const Committee& w,
                                     const std::vector<int>& group,
                                     WorkBudget* budget) {
  if (!group_is_natural_witness(id, inst, w, group, budget))
    throw PreconditionError("group is not a natural witness");
  for (int j : group) {
    Instance copy = inst;
    for (int i : group) copy.ballots[i] = inst.ballots[j];
    if (!group_is_natural_witness(id, copy, w, group, budget)) return false;
  }
  return true;
}

MergeResult check_merge_proofness(NotionId id, const Instance& inst,
                                  const Committee& w,
                                  const std::vector<int>& group,
                                  long long enumeration_cap, std::uint64_t seed,
                                  WorkBudget* budget) {
  if (!group_is_natural_witness(id, inst, w, group, budget))
    throw PreconditionError("group is not a natural witness");
  CandSet pool = 0;
  for (int i : group) pool |= inst.ballots[i];
  std::vector<std::vector<int>> extras;  // addable candidates per member
  double log_total = 0;
  for (int i : group) {
    extras.push_back(set_to_vector(pool & ~inst.ballots[i]));
    log_total += static_cast<double>(extras.back().size());
  }
  // log_total counts bits: profiles = 2^log_total
  bool exhaustive = log_total <= 62 &&
                    (1ll << static_cast<long long>(log_total)) <=
                        enumeration_cap;

  auto apply = [&](const std::vector<CandSet>& additions) {
    Instance merged = inst;
    for (size_t j = 0; j < group.size(); ++j)
      merged.ballots[group[j]] = inst.ballots[group[j]] | additions[j];
    return merged;
  };

  if (exhaustive) {
    std::vector<CandSet> additions(group.size(), 0);
    std::function<std::optional<MergeResult>(size_t)> rec =
        [&](size_t pos) -> std::optional<MergeResult> {
      if (pos == group.size()) {
        if (budget) budget->charge();
        Instance merged = apply(additions);
        if (!group_is_natural_witness(id, merged, w, group, budget)) {
          MergeResult fail;
          fail.verdict = MergeVerdict::Fails;
          fail.failing_profile = merged.ballots;
          return fail;
        }
        return std::nullopt;
      }
      const auto& opts = extras[pos];
      const std::uint32_t subsets = 1u << opts.size();
      for (std::uint32_t s = 0; s < subsets; ++s) {
        CandSet add = 0;
        for (size_t b = 0; b < opts.size(); ++b) {
          if ((s >> b) & 1) add = set_with(add, opts[b]);
        }
        additions[pos] = add;
        if (auto fail = rec(pos + 1)) return fail;
      }
      additions[pos] = 0;
      return std::nullopt;
    };
    if (auto fail = rec(0)) return *fail;
    return {MergeVerdict::Holds, {}};
  }

  // sampled sweep: can refute but never certify
  std::mt19937_64 rng(seed);
  for (long long t = 0; t < enumeration_cap; ++t) {
    if (budget) budget->charge();
    std::vector<CandSet> additions(group.size(), 0);
    for (size_t j = 0; j < group.size(); ++j) {
      CandSet add = 0;
      for (int c : extras[j]) {
        if (rng() & 1) add = set_with(add, c);
      }
      additions[j] = add;
    }
    Instance merged = apply(additions);
    if (!group_is_natural_witness(id, merged, w, group, budget)) {
      MergeResult fail;
      fail.verdict = MergeVerdict::Fails;
      fail.failing_profile = merged.ballots;
      return fail;
    }
  }
  return {MergeVerdict::Exhausted, {}};
}

}  // namespace abcv
