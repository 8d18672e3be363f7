// Independent reference implementations used to check the library from a
// second route. Everything here is deliberately naive and self-contained.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

// Small exact fraction on [0,1]; fine for denominators up to ~2^30.
struct Frac {
  long long num = 0, den = 1;
  Frac() = default;
  Frac(long long n, long long d) : num(n), den(d) {
    long long g = std::gcd(n, d);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Frac& a, const Frac& b) {
    return static_cast<__int128>(a.num) * b.den <
           static_cast<__int128>(b.num) * a.den;
  }
};

inline bool inside(const Frac& lo, const Frac& hi, const Frac& x) {
  return lo < x && x < hi;
}

// Exact period of p/(2^n - 1) under doubling.
inline int doubling_period(long long p, long long mod) {
  long long x = p % mod;
  int k = 1;
  long long y = 2 * x % mod;
  while (y != x) {
    y = 2 * y % mod;
    ++k;
  }
  return k;
}

// All angles of exact period n under doubling, ascending, as p/(2^n-1).
inline std::vector<Frac> doubling_angles(int n) {
  long long mod = (1LL << n) - 1;
  std::vector<Frac> out;
  for (long long p = 1; p < mod; ++p)
    if (doubling_period(p, mod) == n) out.emplace_back(p, mod);
  return out;
}

// The classical pairing scan for the quadratic lamination: periods ascend;
// the smallest unpaired angle joins the next unpaired angle whose chord
// crosses none of the chords drawn so far.
inline std::vector<std::pair<Frac, Frac>> lavaurs_pairs(int max_period) {
  std::vector<std::pair<Frac, Frac>> leaves;
  auto crosses = [&](const Frac& a, const Frac& b) {
    for (const auto& [lo, hi] : leaves)
      if (inside(a, b, lo) != inside(a, b, hi)) return true;
    return false;
  };
  for (int n = 2; n <= max_period; ++n) {
    auto angles = doubling_angles(n);
    std::vector<bool> used(angles.size(), false);
    for (std::size_t i = 0; i < angles.size(); ++i) {
      if (used[i]) continue;
      for (std::size_t j = i + 1; j < angles.size(); ++j) {
        if (used[j] || crosses(angles[i], angles[j])) continue;
        used[i] = used[j] = true;
        leaves.emplace_back(angles[i], angles[j]);
        break;
      }
      if (!used[i]) throw std::logic_error("lavaurs scan left an angle unpaired");
    }
  }
  return leaves;
}

// Count of exact-period-n angles by Moebius inversion over d^m - 1.
inline long long exact_period_angle_count(int degree, int n) {
  auto mu = [](int m) {
    int result = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        result = -result;
      }
    }
    if (m > 1) result = -result;
    return result;
  };
  long long total = 0;
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    long long dm = 1;
    for (int i = 0; i < m; ++i) dm *= degree;
    total += mu(n / m) * (dm - 1);
  }
  return total;
}

// Internal address from a star-free kneading sequence: each next entry is
// the first position where the sequence disagrees with its own shift.
inline std::vector<int> rho_address(const std::vector<int>& pre,
                                    const std::vector<int>& per, int bound) {
  auto nu = [&](int r) {  // 1-indexed
    if (r <= static_cast<int>(pre.size())) return pre[r - 1];
    return per[(r - pre.size() - 1) % per.size()];
  };
  int l = static_cast<int>(pre.size());
  int n = static_cast<int>(per.size());
  std::vector<int> entries{1};
  int s = 1;
  while (s <= bound) {
    int next = 0;
    for (int r = s + 1; r <= s + l + 2 * n; ++r) {
      if (nu(r) != nu(r - s)) {
        next = r;
        break;
      }
    }
    if (next == 0) break;  // the address terminates here
    if (next > bound) break;
    entries.push_back(next);
    s = next;
  }
  return entries;
}

// Multiplicative order of d modulo q (gcd(d, q) = 1).
inline int multiplicative_order(long long d, long long q) {
  if (q == 1) return 1;
  long long x = d % q;
  int k = 1;
  while (x != 1) {
    x = x * d % q;
    ++k;
  }
  return k;
}

}  // namespace oracle
