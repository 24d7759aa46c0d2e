#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "gasket/words.hpp"

namespace gasket {

using Rational = boost::rational<std::int64_t>;

/// A raw pair of ternary digits. Pairs outside the difference alphabet
/// ((1,1) and (-1,-1)) are representable so that violations can be located.
struct PairDigit {
  Trit first = Trit::kZero;
  Trit second = Trit::kZero;
  friend bool operator==(const PairDigit&, const PairDigit&) = default;
};

constexpr bool in_omega2(PairDigit p) noexcept {
  return !((p.first == Trit::kPlus && p.second == Trit::kPlus) ||
           (p.first == Trit::kMinus && p.second == Trit::kMinus));
}
constexpr bool is_zero_pair(PairDigit p) noexcept { return p.first == Trit::kZero && p.second == Trit::kZero; }

using PairSeq = EventuallyPeriodic<PairDigit>;

std::string to_string(PairDigit p);

PairSeq zip(const TernarySeq& a, const TernarySeq& b);

struct MatchReport {
  bool matched = true;
  /// 1-based index of the first pair outside the difference alphabet.
  std::optional<std::size_t> first_violation_index;
  /// Frequency of (0,0) within one period.
  Rational zero_pair_density{0};
  bool zero_pair_in_period = false;
};

MatchReport analyze(const PairSeq& p);

/// (sigma^i((e_n E_n)^inf), (e_m E_m)^inf) with e_k = eps(k), E_k its reflection.
PairSeq e_seq(int n, int m, std::size_t i);

struct Witness {
  std::size_t i = 0;
  /// 1-based position of the term, 0 when none applies.
  std::size_t u = 0;
  PairDigit term;
};

struct LemmaReport {
  std::string lemma;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = true;
  std::vector<Witness> witnesses;
  std::vector<std::size_t> counterexamples;
  /// Shifts for which a finite scan neither matched nor found a witness.
  std::vector<std::size_t> inconclusive;
  /// Matched shifts outside the statement's scope (odd offsets in the block
  /// analysis, where aligned positions have opposite parity).
  std::vector<std::size_t> excluded;
};

inline constexpr int kDefaultMaxVerifyExponent = 12;

/// For all 0 < i < 2^{n+1}: i = 2^n gives a matched sequence with (0,0) in
/// the period; odd i gives no (0,0) anywhere; other even i are unmatched.
LemmaReport verify_lemma_3_1(int n, int max_n = kDefaultMaxVerifyExponent);

enum class BlockVariant { kMinus, kPlain };
std::string to_string(BlockVariant v);

/// Against (e_n E_n^+ E_n e_n^-)^inf (or e_n E_n^+ E_n e_n for kPlain), every
/// shift 0 < i < 2^{n+1} of (e_n E_n)^inf has a term (1,1) or (-1,-1) at
/// some 0 < u < 2^{n+2}, u != 2^{n+1}. For i = 2^n the report also records
/// the term at u = 2^{n+1} + 1.
LemmaReport verify_lemma_3_2(int n, BlockVariant variant, int max_n = kDefaultMaxVerifyExponent);

/// m == n: i = 2^n is matched with (0,0) in the period. m > n: every
/// 0 < i < 2^{n+1} is unmatched.
LemmaReport verify_lemma_3_4(int n, int m, int max_n = kDefaultMaxVerifyExponent);

/// B_1 = e E^+ E e^-, B_2 = e E^+ E e, B_3 = E e^- e E^+, B_4 = E e^- e E.
std::array<TernaryWord, 4> b_blocks(int n);

/// Concatenates B_{p_1} B_{p_2} ... for a pattern over {1,2,3,4}.
TernaryWord block_word(int n, const std::vector<int>& pattern);

/// Shifts the periodic B-concatenation `upper` by 0 < i < max_shift
/// (default 2^{n+1}) against `lower` and looks for a (1,1) or (-1,-1) term
/// within one joint period. Matched even shifts are inconclusive and fail
/// the report; matched odd shifts are listed as excluded.
LemmaReport verify_block_case(int n, const std::vector<int>& upper, const std::vector<int>& lower,
                              std::size_t max_shift = 0);

}  // namespace gasket

template <>
struct std::hash<gasket::PairDigit> {
  std::size_t operator()(const gasket::PairDigit& p) const noexcept {
    return static_cast<std::size_t>((gasket::value(p.first) + 1) * 3 + gasket::value(p.second) + 1);
  }
};
