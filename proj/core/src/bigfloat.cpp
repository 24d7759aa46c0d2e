#include "gasket/bigfloat.hpp"

#include <memory>
#include <utility>

#include "gasket/errors.hpp"

namespace gasket {

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long v, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::parse(std::string_view text, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  BigFloat out(precision);
  const std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(out.value_, s.c_str(), &end, 10, rnd);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DomainError("not a decimal number: '" + s + "'");
  }
  return out;
}

BigFloat BigFloat::rounded(mpfr_prec_t precision, mpfr_rnd_t rnd) const {
  BigFloat out(precision);
  mpfr_set(out.value_, value_, rnd);
  return out;
}

std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*R*e", digits - 1, rnd, value_) < 0) throw InternalError("mpfr_asprintf failed");
  std::unique_ptr<char, decltype(&mpfr_free_str)> guard(raw, &mpfr_free_str);
  return std::string(raw);
}

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  BigFloat out(precision);
  mpfr_add(out.get(), a.get(), b.get(), rnd);
  return out;
}

BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  BigFloat out(precision);
  mpfr_sub(out.get(), a.get(), b.get(), rnd);
  return out;
}

BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  BigFloat out(precision);
  mpfr_mul(out.get(), a.get(), b.get(), rnd);
  return out;
}

BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  BigFloat out(precision);
  mpfr_div(out.get(), a.get(), b.get(), rnd);
  return out;
}

}  // namespace gasket
