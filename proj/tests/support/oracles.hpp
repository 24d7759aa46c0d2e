#pragma once

// Reference implementations used only by tests. They follow the textbook
// definitions directly and share no code with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

/// Thue-Morse by the recursion t(0)=0, t(2i)=t(i), t(2i+1)=1-t(i).
inline int tau(std::uint64_t i) {
  if (i == 0) return 0;
  return i % 2 == 0 ? tau(i / 2) : 1 - tau(i / 2);
}

/// lambda_1 ... lambda_length from lambda_i = tau(i) - tau(i-1).
inline std::vector<int> lambda_prefix(std::size_t length) {
  std::vector<int> out;
  for (std::size_t i = 1; i <= length; ++i) out.push_back(tau(i) - tau(i - 1));
  return out;
}

/// Root of the increasing function f on [lo, hi] by plain bisection.
inline long double bisect(const std::function<long double(long double)>& f, long double lo, long double hi,
                          int iterations = 200) {
  for (int k = 0; k < iterations; ++k) {
    const long double mid = (lo + hi) / 2;
    if (f(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

/// Ladder word by direct string rewriting.
inline std::vector<int> ladder_word(int n) {
  std::vector<int> w{2};
  for (int k = 1; k < n; ++k) {
    std::vector<int> next(w);
    for (int d : w) next.push_back(2 - d);
    next.back() += 1;
    w = next;
  }
  return w;
}

/// Ladder root by bisection of 1 - sum w_i q^{-i} on [2, 3].
inline long double ladder_root(int n) {
  const std::vector<int> w = ladder_word(n);
  return bisect(
      [&](long double q) {
        long double s = 0, p = 1;
        for (int d : w) {
          p /= q;
          s += d * p;
        }
        return 1 - s;
      },
      2.0L, 3.0L);
}

/// sum_{i<N} s_i q^{-i} with s given by `digit(i)` (0-based), by direct summation.
inline long double partial_sum(const std::function<int(std::size_t)>& digit, long double q, std::size_t terms) {
  long double s = 0, p = 1;
  for (std::size_t i = 0; i < terms; ++i) {
    p /= q;
    s += digit(i) * p;
  }
  return s;
}

/// Lexicographically largest word d in {-1,0,1}^depth with
/// |x - sum d_i q^{-i}| <= q^{-depth}/(q-1), by exhaustive search.
inline std::optional<std::vector<int>> greedy_by_search(long double x, long double q, int depth) {
  const long double slack = std::pow(q, -static_cast<long double>(depth)) / (q - 1) * (1 + 1e-12L);
  std::vector<int> d(static_cast<std::size_t>(depth), 1);
  while (true) {
    long double s = 0, p = 1;
    for (int v : d) {
      p /= q;
      s += v * p;
    }
    if (std::fabs(x - s) <= slack) return d;
    int k = depth - 1;
    while (k >= 0 && d[static_cast<std::size_t>(k)] == -1) d[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) return std::nullopt;
    --d[static_cast<std::size_t>(k)];
  }
}

/// Quasi-greedy expansion of 1 over {0,1,2} in long double arithmetic.
inline std::vector<int> quasi_greedy(long double q, int depth) {
  std::vector<int> out;
  long double r = 1;
  for (int i = 0; i < depth; ++i) {
    const long double t = q * r;
    int d = static_cast<int>(std::ceil(t)) - 1;
    d = std::min(d, 2);
    out.push_back(d);
    r = t - d;
  }
  return out;
}

/// An eventually periodic ternary sequence, digits in {-1,0,1}.
struct Seq {
  std::vector<int> pre;
  std::vector<int> per;
  int at(std::size_t i) const { return i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()]; }
};

/// sum_{i>=k} s_i q^{-(i-k)} (0-based k), i.e. the value of the k-fold shift.
inline long double tail_value(const Seq& s, std::size_t k, long double q) {
  const std::size_t terms = 400 + s.pre.size() + 4 * s.per.size();
  return partial_sum([&](std::size_t i) { return s.at(i + k); }, q, terms);
}

/// Searches for a second expansion: at some position n a different digit d
/// leaves a remainder q*(tail) - d inside [-1/(q-1), 1/(q-1)]. Returns true if
/// no such branch exists, i.e. the expansion is unique. `margin` guards
/// against floating-point ties.
inline bool unique_by_branching(const Seq& s, long double q, long double margin = 1e-9L) {
  const long double bound = 1 / (q - 1);
  const std::size_t positions = s.pre.size() + s.per.size();
  for (std::size_t n = 0; n < positions; ++n) {
    const long double v = tail_value(s, n, q);  // value of s_n s_{n+1} ... scaled
    for (int d = -1; d <= 1; ++d) {
      if (d == s.at(n)) continue;
      const long double rest = q * v - d;
      if (std::fabs(rest) <= bound - margin) return false;
    }
  }
  return true;
}

/// (e_k E_k)^inf as an oracle sequence, k >= 0; k = -1 gives 0^inf.
inline Seq eps_pair(int k) {
  if (k < 0) return {{}, {0}};
  std::vector<int> e = lambda_prefix(std::size_t{1} << k);
  std::vector<int> per(e);
  for (int v : e) per.push_back(-v);
  return {{}, per};
}

inline long double log3_over_log(long double q) { return std::log(3.0L) / std::log(q); }

}  // namespace oracle
