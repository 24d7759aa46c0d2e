#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gasket/bigfloat.hpp"

namespace gasket {

/// A base q given by a certified enclosure [lo, hi]. The origin records
/// whether the value is a ladder root q_n or the Komornik-Loreti constant,
/// so that classification at ladder points is exact.
class BaseValue {
 public:
  enum class Origin { kGiven, kLadderRoot, kKomornikLoreti };

  BaseValue(BigFloat lo, BigFloat hi, Origin origin = Origin::kGiven, int ladder_index = 0);

  /// The exact binary value of `q`.
  static BaseValue exact(double q);
  /// Decimal literal enclosed by outward rounding at 512 bits.
  static BaseValue parse(std::string_view decimal);

  const BigFloat& lo() const noexcept { return lo_; }
  const BigFloat& hi() const noexcept { return hi_; }
  BigFloat midpoint() const;
  double value() const;
  /// Upper bound on the half-width, rounded up to double.
  double radius() const;
  bool is_exact() const { return lo_ == hi_; }

  Origin origin() const noexcept { return origin_; }
  int ladder_index() const noexcept { return ladder_index_; }

  bool overlaps(const BaseValue& other) const { return !(hi_ < other.lo_ || other.hi_ < lo_); }
  bool contains(const BaseValue& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }

  /// Throws DomainError unless 2 < lo and hi < 3.
  void require_working_base() const;

  std::string to_string(int digits = 20) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
  Origin origin_;
  int ladder_index_;
};

struct BasesOptions {
  /// Requested enclosure half-width.
  double tolerance = 1e-12;
  int max_ladder_index = 16;
  mpfr_prec_t max_precision_bits = 1 << 17;
};

inline constexpr int kHardMaxLadderIndex = 26;

/// w_n over {0,1,2}: w_1 = 2, w_{n+1} = (w_n reflect(w_n))^+ with
/// reflect(b) = 2 - b. Length 2^{n-1}.
struct LadderWord {
  int n = 0;
  std::vector<std::uint8_t> digits;
};

LadderWord ladder_word(int n, int max_n = BasesOptions{}.max_ladder_index);
std::string to_string(const LadderWord& w);

/// The root in [2,3) of sum_i w_n[i] q^{-i} = 1, certified by a sign change
/// under directed rounding. The half-width is at most min(tolerance,
/// 2^{-(2^n + 16)}), which keeps consecutive ladder enclosures disjoint.
BaseValue base_root(int n, const BasesOptions& options = {});

/// q_KL enclosure together with the ladder data used to obtain it.
struct KLEnclosure {
  BaseValue value;
  /// Index N of the ladder root used as the certified lower bound.
  int ladder_index = 0;
  /// Measured gaps q_{k+1} - q_k, k = 1 .. N-1.
  std::vector<BigFloat> gaps;
};

/// Walks the ladder until |q_{n+1} - q_n| < tolerance/2. The lower end is
/// the ladder root q_{n+1}; the upper end is the certified root of the
/// truncated series sum_{i<=L} (1+lambda_i) q^{-i} + 2 q^{-L}/(q-1), which
/// dominates the expansion of 1 at q_KL.
KLEnclosure kl_enclosure(double tolerance, const BasesOptions& options = {});
BaseValue kl_constant(double tolerance, const BasesOptions& options = {});

/// Regime of a base q in (2,3).
struct RegimeLabel {
  enum class Kind { kFinite, kKomornikLoreti, kInterval };
  Kind kind = Kind::kFinite;
  int m = 0;

  static RegimeLabel finite(int m) { return {Kind::kFinite, m}; }
  static RegimeLabel komornik_loreti() { return {Kind::kKomornikLoreti, 0}; }
  static RegimeLabel interval() { return {Kind::kInterval, 0}; }

  std::string to_string() const;
  friend bool operator==(const RegimeLabel&, const RegimeLabel&) = default;
};

/// Finite(m) when q lies in (q_m, q_{m+1}], KomornikLoreti when the
/// enclosure of q meets the q_KL enclosure at `options.tolerance`, Interval
/// above it. Throws AmbiguousClassification rather than guessing.
RegimeLabel classify(const BaseValue& q, const BasesOptions& options = {});

/// Per-invocation memo of ladder roots. Not thread-safe; give each thread
/// its own instance.
class BaseLadder {
 public:
  explicit BaseLadder(BasesOptions options = {}) : options_(options) {}
  const BaseValue& root(int n);
  const BasesOptions& options() const noexcept { return options_; }

 private:
  BasesOptions options_;
  std::map<int, BaseValue> roots_;
};

}  // namespace gasket
