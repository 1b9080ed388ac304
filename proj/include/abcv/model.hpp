#ifndef ABCV_MODEL_HPP
#define ABCV_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "abcv/base.hpp"

namespace abcv {

// An approval-based multiwinner voting instance: n voters with approval
// ballots over candidates 0..m-1, and a committee size k with m >= k.
struct Instance {
  int n = 0;
  int m = 0;
  int k = 0;
  std::vector<CandSet> ballots;  // one per voter

  bool operator==(const Instance&) const = default;
};

struct Committee {
  CandSet members = 0;

  bool operator==(const Committee&) const = default;
};

void validate_instance(const Instance& inst);
bool is_valid_committee(const Instance& inst, const Committee& w);
void require_committee(const Instance& inst, const Committee& w);

// Instance file format: line 1 is "n m k", then one ballot line per voter
// with ascending 0-based candidate indices (blank line = empty ballot).
// Lines starting with '#' are comments. Serialization is canonical, so
// parse(serialize(I)) == I.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);
Instance load_instance_file(const std::string& path);
void write_instance_file(const Instance& inst, const std::string& path);

Committee parse_committee(const std::string& text, const Instance& inst);
std::string serialize_committee(const Committee& w);

// Party-list structure: the distinct nonempty ballots partition the candidate
// set and every party has at least one voter. An instance with a candidate
// approved by nobody is not classified as a party list.
struct PartyListStructure {
  std::vector<CandSet> parties;
  std::vector<std::vector<int>> party_voters;
  std::vector<int> party_sizes;  // n_x
};

std::optional<PartyListStructure> party_list_structure(const Instance& inst);

// Hare lower quota with party-size cap: min(floor(k*n_x/n), |C_x|) per party.
std::vector<int> lower_quota_seats(const PartyListStructure& parties, int n,
                                   int k);

// Membership in LQ(I). Throws PreconditionError on non-party-list instances.
bool satisfies_lower_quota(const Instance& inst, const Committee& w);

enum class QuotaKind { Hare, Droop };

struct Quota {
  Rational value;
  QuotaKind kind;

  static Quota hare(int n, int k) {
    return Quota{Rational(n) / k, QuotaKind::Hare};
  }
  static Quota droop(int n, int k) {
    return Quota{Rational(n) / (k + 1), QuotaKind::Droop};
  }
};

// Group-size thresholds, in exact integer arithmetic.
// Hare:  |N'| >= l*n/k        <=>  |N'|*k >= l*n
// Droop: |N'| >  l*n/(k+1)    <=>  |N'|*(k+1) > l*n
inline bool is_ell_large(long long group_size, int ell, int n, int k) {
  return group_size * k >= static_cast<long long>(ell) * n;
}
inline bool is_droop_ell_large(long long group_size, int ell, int n, int k) {
  return group_size * (k + 1) > static_cast<long long>(ell) * n;
}
// Smallest group size that is l-large: ceil(l*n/k).
inline int min_ell_large_size(int ell, int n, int k) {
  return static_cast<int>((static_cast<long long>(ell) * n + k - 1) / k);
}

struct RestrictedInstance {
  Instance instance;
  std::vector<int> old_of_new;  // new index -> original index
  std::vector<int> new_of_old;  // original index -> new index, -1 if dropped
};

// I restricted to C': ballots intersected with C', candidates reindexed in
// ascending original order. Requires |C'| >= k.
RestrictedInstance restrict_candidates(const Instance& inst, CandSet keep);

std::vector<int> support(const Instance& inst, int candidate);
CandSet support_mask_in(const Instance& inst, int candidate);

// Canonical form under voter permutation: ballots sorted ascending as masks.
Instance voter_canonical(const Instance& inst);

}  // namespace abcv

#endif  // ABCV_MODEL_HPP
