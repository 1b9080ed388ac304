#ifndef ABCV_BASE_HPP
#define ABCV_BASE_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace abcv {

// Exact rational arithmetic for quotas, prices, and LP certificates.
// Quota boundary comparisons (>= vs >) are semantically load-bearing, so no
// floating point is used anywhere in the library.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Candidate sets are bitmasks; instances are capped at 64 candidates.
using CandSet = std::uint64_t;

constexpr int kMaxCandidates = 64;

inline int set_size(CandSet s) { return std::popcount(s); }
inline bool set_contains(CandSet s, int c) { return (s >> c) & 1u; }
inline CandSet set_with(CandSet s, int c) { return s | (CandSet{1} << c); }
inline CandSet set_without(CandSet s, int c) { return s & ~(CandSet{1} << c); }
inline CandSet full_set(int m) {
  return m == 64 ? ~CandSet{0} : (CandSet{1} << m) - 1;
}
inline int lowest_member(CandSet s) { return std::countr_zero(s); }

std::vector<int> set_to_vector(CandSet s);
CandSet set_from_vector(const std::vector<int>& v);
std::string set_to_string(CandSet s);

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what)
      : std::runtime_error(what) {}
};

class WorkBoundExceeded : public std::runtime_error {
 public:
  explicit WorkBoundExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

// Work accounting for the exponential reference paths. Oracles must never be
// approximate: exceeding the bound raises instead of truncating.
class WorkBudget {
 public:
  static constexpr long long kDefaultBound = 100'000'000;

  explicit WorkBudget(long long bound = kDefaultBound) : bound_(bound) {}

  void charge(long long units = 1) {
    used_ += units;
    if (used_ > bound_) {
      throw WorkBoundExceeded("work bound exceeded: " + std::to_string(used_) +
                              " > " + std::to_string(bound_));
    }
  }

  long long used() const { return used_; }
  long long bound() const { return bound_; }

 private:
  long long bound_;
  long long used_ = 0;
};

}  // namespace abcv

#endif  // ABCV_BASE_HPP
