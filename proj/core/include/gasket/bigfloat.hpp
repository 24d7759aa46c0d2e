#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace gasket {

/// Owning wrapper around an MPFR number. Values carry their own precision;
/// every arithmetic entry point below takes an explicit rounding mode so
/// callers can build certified bounds.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 128);
  BigFloat(double v, mpfr_prec_t precision);
  BigFloat(long v, mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Parses a decimal literal, rounding in direction `rnd`.
  static BigFloat parse(std::string_view text, mpfr_prec_t precision, mpfr_rnd_t rnd);

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  /// Copy rounded to a new precision.
  BigFloat rounded(mpfr_prec_t precision, mpfr_rnd_t rnd) const;

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  long double to_long_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_ld(value_, rnd); }

  /// Decimal scientific notation with `digits` significant digits.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    const int c = mpfr_cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpfr_t value_;
};

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_prec_t precision, mpfr_rnd_t rnd);
BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t precision, mpfr_rnd_t rnd);
BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t precision, mpfr_rnd_t rnd);
BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_prec_t precision, mpfr_rnd_t rnd);

}  // namespace gasket
