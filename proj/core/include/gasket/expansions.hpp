#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gasket/bases.hpp"
#include "gasket/words.hpp"

namespace gasket {

/// Digits over {0, 1, 2}.
using DigitWord = std::vector<std::uint8_t>;
using DigitSeq = EventuallyPeriodic<std::uint8_t>;

struct ExpansionOptions {
  std::size_t alpha_horizon = 256;
  std::size_t max_alpha_horizon = 4096;
  mpfr_prec_t max_precision_bits = 1 << 16;
};

/// sum_i s_i q^{-i}, with the periodic tail summed in closed form. The
/// result is accurate to a few units in the last place of long double.
long double evaluate(const TernarySeq& s, long double q);
long double evaluate(const TernarySeq& s, const BaseValue& q);

/// Greedy expansion of x over {-1, 0, 1}: each digit is the largest one
/// leaving a residual in [-q^{-i}/(q-1), q^{-i}/(q-1)]. Uses the midpoint of
/// q. Throws DomainError when x lies outside [-1/(q-1), 1/(q-1)].
TernaryWord greedy_expand(long double x, const BaseValue& q, std::size_t depth);

/// Quasi-greedy expansion alpha(q) of 1 over {0, 1, 2}, first `depth`
/// digits. For an enclosure the digits are certified at both ends, and a
/// PrecisionError is raised if they disagree before `depth`. Ladder roots
/// and q_KL use their exact symbolic expansions.
DigitWord quasi_greedy_alpha(const BaseValue& q, std::size_t depth, const ExpansionOptions& options = {});

/// Certified digit bounds alpha(lo) <= alpha(q) <= alpha(hi), extended on
/// demand.
class AlphaBounds {
 public:
  explicit AlphaBounds(BaseValue q, mpfr_prec_t max_precision_bits = ExpansionOptions{}.max_precision_bits);

  /// Make at least `length` digits of both bounds available.
  void ensure(std::size_t length);

  const DigitWord& lower() const noexcept { return lower_; }
  const DigitWord& upper() const noexcept { return upper_; }
  /// Set when alpha(q) is eventually periodic and known exactly.
  const std::optional<DigitSeq>& exact_periodic() const noexcept { return periodic_; }
  bool is_exact() const noexcept { return exact_; }
  const BaseValue& base() const noexcept { return q_; }

 private:
  BaseValue q_;
  mpfr_prec_t max_bits_;
  bool exact_ = false;
  std::optional<DigitSeq> periodic_;
  DigitWord lower_, upper_;
};

struct UniquenessVerdict {
  enum class Clause { kNone, kBelowTop, kAboveBottom };
  bool unique = true;
  /// 1-based index n of the first failing shift.
  std::size_t failing_index = 0;
  /// kBelowTop: c_n < 2 but sigma^n(c) is not below alpha(q).
  /// kAboveBottom: c_n > 0 but the reflected shift is not below alpha(q).
  Clause clause = Clause::kNone;
  std::size_t horizon_used = 0;
};

std::string to_string(UniquenessVerdict::Clause clause);

/// Decides membership of eventually periodic sequences in the set of
/// unique expansions at a fixed base. Caches alpha(q); not thread-safe.
class UniquenessOracle {
 public:
  explicit UniquenessOracle(BaseValue q, ExpansionOptions options = {});

  /// With c = s + 1 over {0,1,2}, s is unique iff for every n >= 1:
  /// c_n < 2 implies sigma^n(c) < alpha(q), and c_n > 0 implies
  /// reflect(sigma^n(c)) < alpha(q), lexicographically.
  UniquenessVerdict check(const TernarySeq& s);
  bool is_unique(const TernarySeq& s) { return check(s).unique; }

  const BaseValue& base() const noexcept { return alpha_.base(); }
  AlphaBounds& alpha() noexcept { return alpha_; }

 private:
  enum class Order { kLess, kNotLess, kUndecided };
  Order compare(const DigitSeq& c, std::size_t horizon);

  AlphaBounds alpha_;
  ExpansionOptions options_;
};

UniquenessVerdict check_unique(const TernarySeq& s, const BaseValue& q, const ExpansionOptions& options = {});
bool is_unique_expansion(const TernarySeq& s, const BaseValue& q, const ExpansionOptions& options = {});

/// The catalogue tail (eps_{n-1} reflect(eps_{n-1}))^inf, n >= 0; n = 0 is 0^inf.
TernarySeq catalogue_tail(int n);

/// Searches the sequences 0^k tail, k = 0 .. max_prefix, for one accepted by
/// the oracle.
std::optional<TernarySeq> find_unique_with_tail(const TernarySeq& tail, UniquenessOracle& oracle,
                                                std::size_t max_prefix = 16);

/// Parameters of the concatenation
/// (e_0 E_0)^{j_0} (e_0 E_1)^{l_0} (e_1 E_1)^{j_1} (e_1 E_2)^{l_1} ...
/// with e_k = eps(k), E_k = reflect(eps(k)). Missing entries count as 0.
struct KLTailDescriptor {
  std::vector<std::uint64_t> j;
  std::vector<std::uint8_t> l;
  bool reflected = false;
  std::size_t length = 0;
};

inline constexpr std::size_t kDefaultMaxTailLength = std::size_t{1} << 26;

/// The first `desc.length` digits of the concatenation, or all of it if the
/// parameter lists run out first.
TernaryWord kl_tail(const KLTailDescriptor& desc, std::size_t max_length = kDefaultMaxTailLength);

}  // namespace gasket
