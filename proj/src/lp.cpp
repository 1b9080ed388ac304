#include "abcv/lp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace abcv {

namespace {

struct FracOverflow {};

// Exact small fraction on int64 with overflow detection; the solver retries
// with big rationals when this throws.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n) : num(n), den(1) {}
  Frac(long long n, long long d) : num(n), den(d) { normalize(); }

  static long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw FracOverflow{};
    return static_cast<long long>(v);
  }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Frac make(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Frac f;
    f.num = checked(n);
    f.den = checked(d);
    return f;
  }

  friend Frac operator+(const Frac& x, const Frac& y) {
    return make(static_cast<__int128>(x.num) * y.den +
                    static_cast<__int128>(y.num) * x.den,
                static_cast<__int128>(x.den) * y.den);
  }
  friend Frac operator-(const Frac& x, const Frac& y) {
    return make(static_cast<__int128>(x.num) * y.den -
                    static_cast<__int128>(y.num) * x.den,
                static_cast<__int128>(x.den) * y.den);
  }
  friend Frac operator*(const Frac& x, const Frac& y) {
    return make(static_cast<__int128>(x.num) * y.num,
                static_cast<__int128>(x.den) * y.den);
  }
  friend Frac operator/(const Frac& x, const Frac& y) {
    if (y.num == 0) throw std::domain_error("division by zero");
    return make(static_cast<__int128>(x.num) * y.den,
                static_cast<__int128>(x.den) * y.num);
  }
  Frac operator-() const {
    Frac f;
    f.num = -num;
    f.den = den;
    return f;
  }
  friend bool operator==(const Frac& x, const Frac& y) {
    return x.num == y.num && x.den == y.den;
  }
  friend bool operator<(const Frac& x, const Frac& y) {
    return static_cast<__int128>(x.num) * y.den <
           static_cast<__int128>(y.num) * x.den;
  }
  friend bool operator>(const Frac& x, const Frac& y) { return y < x; }
  friend bool operator<=(const Frac& x, const Frac& y) { return !(y < x); }
  bool is_zero() const { return num == 0; }
  bool positive() const { return num > 0; }
  bool negative() const { return num < 0; }
};

Frac frac_from_rational(const Rational& r) {
  Rational n = numerator(r);
  Rational d = denominator(r);
  if (n < INT64_MIN || n > INT64_MAX || d > INT64_MAX) throw FracOverflow{};
  return Frac(static_cast<long long>(numerator(r)),
              static_cast<long long>(denominator(r)));
}

Rational rational_from_frac(const Frac& f) {
  return Rational(f.num) / f.den;
}

struct RatOps {
  using value = Rational;
  static value from_rational(const Rational& r) { return r; }
  static Rational to_rational(const value& v) { return v; }
  static bool is_zero(const value& v) { return v == 0; }
  static bool positive(const value& v) { return v > 0; }
};

struct FracOps {
  using value = Frac;
  static value from_rational(const Rational& r) { return frac_from_rational(r); }
  static Rational to_rational(const value& v) { return rational_from_frac(v); }
  static bool is_zero(const value& v) { return v.is_zero(); }
  static bool positive(const value& v) { return v.positive(); }
};

// Phase-1 simplex with Bland's rule over an exact number type.
template <typename Ops>
std::optional<std::vector<Rational>> simplex_phase1(const RationalLP& lp) {
  using Q = typename Ops::value;
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.constraints.size());

  std::vector<std::vector<Q>> rows(m, std::vector<Q>(n, Q(0)));
  std::vector<Q> rhs(m, Q(0));
  std::vector<Relation> rel(m);
  for (int r = 0; r < m; ++r) {
    const auto& c = lp.constraints[r];
    for (const auto& [v, coef] : c.terms) {
      if (v < 0 || v >= n) throw PreconditionError("LP variable out of range");
      rows[r][v] = rows[r][v] + Ops::from_rational(coef);
    }
    rhs[r] = Ops::from_rational(c.rhs);
    rel[r] = c.rel;
    if (rhs[r] < Q(0)) {
      for (auto& x : rows[r]) x = -x;
      rhs[r] = -rhs[r];
      if (rel[r] == Relation::LessEq)
        rel[r] = Relation::GreaterEq;
      else if (rel[r] == Relation::GreaterEq)
        rel[r] = Relation::LessEq;
    }
  }

  int num_slack = 0, num_art = 0;
  for (int r = 0; r < m; ++r) {
    if (rel[r] != Relation::Eq) ++num_slack;
    if (rel[r] != Relation::LessEq) ++num_art;
  }

  const int cols = n + num_slack + num_art;
  const int first_art = n + num_slack;
  std::vector<std::vector<Q>> a(m, std::vector<Q>(cols + 1, Q(0)));
  std::vector<int> basis(m, -1);

  int slack_at = n, art_at = first_art;
  for (int r = 0; r < m; ++r) {
    for (int v = 0; v < n; ++v) a[r][v] = rows[r][v];
    a[r][cols] = rhs[r];
    if (rel[r] == Relation::LessEq) {
      a[r][slack_at] = Q(1);
      basis[r] = slack_at++;
    } else if (rel[r] == Relation::GreaterEq) {
      a[r][slack_at] = Q(-1);
      ++slack_at;
      a[r][art_at] = Q(1);
      basis[r] = art_at++;
    } else {
      a[r][art_at] = Q(1);
      basis[r] = art_at++;
    }
  }

  // price out the artificial basics; minimize their sum
  std::vector<Q> obj(cols + 1, Q(0));
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= first_art) {
      for (int j = 0; j <= cols; ++j) obj[j] = obj[j] + a[r][j];
    }
  }

  auto pivot = [&](int pr, int pc) {
    Q p = a[pr][pc];
    for (int j = 0; j <= cols; ++j) {
      if (!Ops::is_zero(a[pr][j])) a[pr][j] = a[pr][j] / p;
    }
    for (int r = 0; r < m; ++r) {
      if (r == pr || Ops::is_zero(a[r][pc])) continue;
      Q f = a[r][pc];
      for (int j = 0; j <= cols; ++j) {
        if (!Ops::is_zero(a[pr][j])) a[r][j] = a[r][j] - f * a[pr][j];
      }
    }
    if (!Ops::is_zero(obj[pc])) {
      Q f = obj[pc];
      for (int j = 0; j <= cols; ++j) {
        if (!Ops::is_zero(a[pr][j])) obj[j] = obj[j] - f * a[pr][j];
      }
    }
    basis[pr] = pc;
  };

  while (true) {
    int entering = -1;
    for (int j = 0; j < first_art; ++j) {
      if (Ops::positive(obj[j])) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;
    int leaving = -1;
    Q best_ratio(0);
    for (int r = 0; r < m; ++r) {
      if (!Ops::positive(a[r][entering])) continue;
      Q ratio = a[r][cols] / a[r][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) {
      throw std::logic_error("phase-1 simplex reported unbounded");
    }
    pivot(leaving, entering);
  }

  if (!Ops::is_zero(obj[cols])) return std::nullopt;

  std::vector<Rational> x(n, 0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) x[basis[r]] = Ops::to_rational(a[r][cols]);
  }
  return x;
}

}  // namespace

std::optional<std::vector<Rational>> lp_feasible(const RationalLP& lp) {
  std::optional<std::vector<Rational>> x;
  try {
    x = simplex_phase1<FracOps>(lp);
  } catch (const FracOverflow&) {
    x = simplex_phase1<RatOps>(lp);
  }
  if (x && !lp_point_satisfies(lp, *x)) {
    throw std::logic_error("simplex produced a non-satisfying point");
  }
  return x;
}

bool lp_point_satisfies(const RationalLP& lp, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != lp.num_vars) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational lhs = 0;
    for (const auto& [v, coef] : c.terms) lhs += coef * x[v];
    switch (c.rel) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Eq:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

// One inequality sum(coef * x) <= rhs over the not-yet-eliminated variables.
struct FmRow {
  std::vector<Rational> coef;
  Rational rhs;
};

}  // namespace

bool fm_feasible(const RationalLP& lp, WorkBudget* budget) {
  WorkBudget local;
  WorkBudget& wb = budget ? *budget : local;

  const int n = lp.num_vars;
  std::vector<FmRow> rows;
  auto push = [&](const std::vector<Rational>& coef, const Rational& rhs) {
    rows.push_back({coef, rhs});
  };
  for (const auto& c : lp.constraints) {
    std::vector<Rational> coef(n, 0);
    for (const auto& [v, cf] : c.terms) coef[v] += cf;
    if (c.rel == Relation::LessEq || c.rel == Relation::Eq) push(coef, c.rhs);
    if (c.rel == Relation::GreaterEq || c.rel == Relation::Eq) {
      std::vector<Rational> neg(n, 0);
      for (int v = 0; v < n; ++v) neg[v] = -coef[v];
      push(neg, -c.rhs);
    }
  }
  // x >= 0
  for (int v = 0; v < n; ++v) {
    std::vector<Rational> coef(n, 0);
    coef[v] = -1;
    push(coef, 0);
  }

  auto normalize = [&](FmRow& r) {
    // scale so the first nonzero coefficient is +-1, for deduplication
    for (const Rational& c : r.coef) {
      if (c != 0) {
        Rational s = abs(c);
        for (auto& x : r.coef) x /= s;
        r.rhs /= s;
        return;
      }
    }
  };

  for (int v = 0; v < n; ++v) {
    std::vector<FmRow> pos, neg, rest;
    for (auto& r : rows) {
      if (r.coef[v] > 0)
        pos.push_back(std::move(r));
      else if (r.coef[v] < 0)
        neg.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        wb.charge(n);
        FmRow combo;
        combo.coef.assign(n, 0);
        Rational a = p.coef[v];
        Rational b = -q.coef[v];
        for (int j = 0; j < n; ++j)
          combo.coef[j] = p.coef[j] * b + q.coef[j] * a;
        combo.rhs = p.rhs * b + q.rhs * a;
        normalize(combo);
        rest.push_back(std::move(combo));
      }
    }
    std::sort(rest.begin(), rest.end(), [](const FmRow& x, const FmRow& y) {
      if (x.coef != y.coef) return x.coef < y.coef;
      return x.rhs < y.rhs;
    });
    // keep only the tightest rhs per coefficient vector
    std::vector<FmRow> dedup;
    for (auto& r : rest) {
      if (!dedup.empty() && dedup.back().coef == r.coef) continue;
      dedup.push_back(std::move(r));
    }
    rows = std::move(dedup);
  }

  for (const auto& r : rows) {
    if (r.rhs < 0) return false;  // 0 <= negative
  }
  return true;
}

}  // namespace abcv
