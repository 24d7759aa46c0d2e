#include "gasket/bases.hpp"

#include <bit>
#include <cmath>
#include <span>

#include "gasket/errors.hpp"

namespace gasket {

namespace {

constexpr mpfr_prec_t kParsePrecision = 512;

// H(x) = sum_{i=1}^{L} w_i x^i [+ 2 x^{L+1} / (1 - x)] with x = 1/q. H is
// increasing on (0, 1), so the ladder root is where H crosses 1.
struct Series {
  std::span<const std::uint8_t> digits;
  bool with_tail = false;
};

// Horner with every operation rounded in direction `rnd`. All coefficients
// and x are nonnegative, so RNDD yields a lower bound and RNDU an upper one.
BigFloat bound(const Series& s, const BigFloat& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat acc(prec);
  for (std::size_t i = s.digits.size(); i-- > 0;) {
    mpfr_add_ui(acc.get(), acc.get(), s.digits[i], rnd);
    mpfr_mul(acc.get(), acc.get(), x.get(), rnd);
  }
  if (s.with_tail) {
    const mpfr_rnd_t opposite = rnd == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD;
    BigFloat num(prec), den(prec);
    mpfr_pow_ui(num.get(), x.get(), s.digits.size() + 1, rnd);
    mpfr_ui_sub(den.get(), 1, x.get(), opposite);
    mpfr_div(num.get(), num.get(), den.get(), rnd);
    mpfr_mul_ui(num.get(), num.get(), 2, rnd);
    mpfr_add(acc.get(), acc.get(), num.get(), rnd);
  }
  return acc;
}

// H(x) - 1 and H'(x), round-to-nearest, for Newton steps.
void value_and_slope(const Series& s, const BigFloat& x, mpfr_prec_t prec, BigFloat& h, BigFloat& dh) {
  h = BigFloat(prec);
  dh = BigFloat(prec);
  // P(x) = x * Q(x), Q(x) = sum w_i x^{i-1}; run Horner on Q and Q'.
  BigFloat q(prec), dq(prec);
  for (std::size_t i = s.digits.size(); i-- > 0;) {
    mpfr_mul(dq.get(), dq.get(), x.get(), MPFR_RNDN);
    mpfr_add(dq.get(), dq.get(), q.get(), MPFR_RNDN);
    mpfr_mul(q.get(), q.get(), x.get(), MPFR_RNDN);
    mpfr_add_ui(q.get(), q.get(), s.digits[i], MPFR_RNDN);
  }
  // P = x Q, P' = Q + x Q'
  mpfr_mul(h.get(), q.get(), x.get(), MPFR_RNDN);
  mpfr_mul(dh.get(), dq.get(), x.get(), MPFR_RNDN);
  mpfr_add(dh.get(), dh.get(), q.get(), MPFR_RNDN);
  if (s.with_tail) {
    const unsigned long L = s.digits.size();
    BigFloat xl(prec), one_minus(prec), t(prec), dt(prec);
    mpfr_pow_ui(xl.get(), x.get(), L, MPFR_RNDN);  // x^L
    mpfr_ui_sub(one_minus.get(), 1, x.get(), MPFR_RNDN);
    // t = 2 x^{L+1} / (1-x)
    mpfr_mul(t.get(), xl.get(), x.get(), MPFR_RNDN);
    mpfr_div(t.get(), t.get(), one_minus.get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), 2, MPFR_RNDN);
    mpfr_add(h.get(), h.get(), t.get(), MPFR_RNDN);
    // t' = 2 [ (L+1) x^L (1-x) + x^{L+1} ] / (1-x)^2
    BigFloat a(prec);
    mpfr_mul_ui(a.get(), xl.get(), L + 1, MPFR_RNDN);
    mpfr_mul(a.get(), a.get(), one_minus.get(), MPFR_RNDN);
    mpfr_mul(dt.get(), xl.get(), x.get(), MPFR_RNDN);
    mpfr_add(dt.get(), dt.get(), a.get(), MPFR_RNDN);
    mpfr_div(dt.get(), dt.get(), one_minus.get(), MPFR_RNDN);
    mpfr_div(dt.get(), dt.get(), one_minus.get(), MPFR_RNDN);
    mpfr_mul_ui(dt.get(), dt.get(), 2, MPFR_RNDN);
    mpfr_add(dh.get(), dh.get(), dt.get(), MPFR_RNDN);
  }
  mpfr_sub_ui(h.get(), h.get(), 1, MPFR_RNDN);
}

long double rough_root(const Series& s) {
  auto h = [&](long double x) {
    long double acc = 0;
    for (std::size_t i = s.digits.size(); i-- > 0;) acc = (acc + s.digits[i]) * x;
    if (s.with_tail) acc += 2 * std::pow(x, static_cast<long double>(s.digits.size() + 1)) / (1 - x);
    return acc - 1;
  };
  long double lo = 1.0L / 3, hi = 0.5L;
  for (int i = 0; i < 80; ++i) {
    const long double mid = (lo + hi) / 2;
    (h(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

long ceil_log2_inverse(const BigFloat& r) {
  // smallest k with 2^-k <= r
  return -mpfr_get_exp(r.get()) + 1;
}

// Certified q-enclosure of the root of H = 1 with half-width <= radius.
BaseValue certified_root(const Series& s, const BigFloat& radius, mpfr_prec_t max_bits, int ladder_index,
                         BaseValue::Origin origin) {
  const long rbits = ceil_log2_inverse(radius);
  const mpfr_prec_t prec = rbits + 96 + std::bit_width(s.digits.size());
  if (prec > max_bits) {
    throw PrecisionError("ladder root needs " + std::to_string(prec) + " bits; cap is " +
                         std::to_string(max_bits));
  }
  BigFloat x(static_cast<double>(rough_root(s)), 64);
  BigFloat h, dh, step(prec);
  auto newton = [&](mpfr_prec_t p, int iterations) {
    x = x.rounded(p, MPFR_RNDN);
    for (int it = 0; it < iterations; ++it) {
      value_and_slope(s, x, p, h, dh);
      step = BigFloat(p);
      mpfr_div(step.get(), h.get(), dh.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
      if (mpfr_zero_p(step.get()) || mpfr_get_exp(step.get()) < -(p - 8)) break;
    }
  };
  for (mpfr_prec_t p = 128; p < prec; p *= 2) newton(p, 8);
  newton(prec, 8);
  if (x < BigFloat(0.3, 64) || x > BigFloat(0.51, 64)) throw InternalError("ladder Newton iteration diverged");

  // x-space half-width: q = 1/x and x >= 1/3, so |dq| <= 9 |dx|.
  BigFloat rx(prec);
  mpfr_div_ui(rx.get(), radius.get(), 16, MPFR_RNDD);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const BigFloat xl = sub(x, rx, prec, MPFR_RNDD);
    const BigFloat xh = add(x, rx, prec, MPFR_RNDU);
    const bool below = mpfr_cmp_ui(bound(s, xl, prec, MPFR_RNDU).get(), 1) < 0;
    const bool above = mpfr_cmp_ui(bound(s, xh, prec, MPFR_RNDD).get(), 1) > 0;
    if (below && above) {
      BigFloat one(1L, prec);
      return BaseValue(div(one, xh, prec, MPFR_RNDD), div(one, xl, prec, MPFR_RNDU), origin, ladder_index);
    }
    newton(prec, 4);
  }
  throw PrecisionError("could not certify a sign change around ladder root " + std::to_string(ladder_index));
}

BigFloat min_radius(double tolerance, long separation_bits) {
  BigFloat tol(tolerance * (1.0 - 1.0 / (1 << 20)), 64);
  BigFloat sep(64);
  mpfr_set_ui_2exp(sep.get(), 1, -separation_bits, MPFR_RNDN);
  return tol < sep ? tol : sep;
}

}  // namespace

BaseValue::BaseValue(BigFloat lo, BigFloat hi, Origin origin, int ladder_index)
    : lo_(std::move(lo)), hi_(std::move(hi)), origin_(origin), ladder_index_(ladder_index) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get()) || hi_ < lo_) throw DomainError("invalid base enclosure");
}

BaseValue BaseValue::exact(double q) {
  if (!std::isfinite(q)) throw DomainError("base must be finite");
  return BaseValue(BigFloat(q, 53), BigFloat(q, 53));
}

BaseValue BaseValue::parse(std::string_view decimal) {
  return BaseValue(BigFloat::parse(decimal, kParsePrecision, MPFR_RNDD),
                   BigFloat::parse(decimal, kParsePrecision, MPFR_RNDU));
}

BigFloat BaseValue::midpoint() const {
  const mpfr_prec_t p = std::max(lo_.precision(), hi_.precision()) + 1;
  BigFloat m = add(lo_, hi_, p, MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

double BaseValue::value() const { return midpoint().to_double(); }

double BaseValue::radius() const {
  const mpfr_prec_t p = std::max(lo_.precision(), hi_.precision());
  BigFloat w = sub(hi_, lo_, p, MPFR_RNDU);
  mpfr_div_2ui(w.get(), w.get(), 1, MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

void BaseValue::require_working_base() const {
  if (mpfr_cmp_ui(lo_.get(), 2) <= 0 || mpfr_cmp_ui(hi_.get(), 3) >= 0) {
    throw DomainError("base must lie strictly inside (2,3): " + to_string(17));
  }
}

std::string BaseValue::to_string(int digits) const {
  if (is_exact()) return lo_.to_string(digits);
  return "[" + lo_.to_string(digits, MPFR_RNDD) + ", " + hi_.to_string(digits, MPFR_RNDU) + "]";
}

LadderWord ladder_word(int n, int max_n) {
  if (n < 1) throw DomainError("ladder index starts at 1");
  if (n > max_n || n > kHardMaxLadderIndex) {
    throw ResourceError("ladder index " + std::to_string(n) + " exceeds cap " + std::to_string(max_n));
  }
  std::vector<std::uint8_t> w{2};
  for (int k = 1; k < n; ++k) {
    const std::size_t len = w.size();
    w.reserve(2 * len);
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<std::uint8_t>(2 - w[i]));
    if (w.back() == 2) throw InternalError("ladder word cannot be incremented");
    ++w.back();
  }
  return {n, std::move(w)};
}

std::string to_string(const LadderWord& w) {
  std::string s;
  s.reserve(w.digits.size());
  for (auto d : w.digits) s.push_back(static_cast<char>('0' + d));
  return s;
}

BaseValue base_root(int n, const BasesOptions& options) {
  if (options.tolerance <= 0) throw DomainError("tolerance must be positive");
  const LadderWord w = ladder_word(n, options.max_ladder_index);
  if (n == 1) return BaseValue(BigFloat(2L, 64), BigFloat(2L, 64), BaseValue::Origin::kLadderRoot, 1);
  const long length = static_cast<long>(w.digits.size());
  const BigFloat radius = min_radius(options.tolerance, 2 * length + 16);
  return certified_root(Series{w.digits, false}, radius, options.max_precision_bits, n,
                        BaseValue::Origin::kLadderRoot);
}

const BaseValue& BaseLadder::root(int n) {
  auto it = roots_.find(n);
  if (it == roots_.end()) it = roots_.emplace(n, base_root(n, options_)).first;
  return it->second;
}

KLEnclosure kl_enclosure(double tolerance, const BasesOptions& options) {
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  const double needed_bits = -std::log2(tolerance) + 128;
  if (needed_bits > static_cast<double>(options.max_precision_bits)) {
    throw PrecisionError("tolerance " + std::to_string(tolerance) + " is below the configured precision");
  }
  BasesOptions ladder_options = options;
  ladder_options.tolerance = std::min(options.tolerance, tolerance / 16);
  BaseLadder ladder(ladder_options);

  KLEnclosure out{BaseValue::exact(2.5), 0, {}};
  BigFloat half_tol(tolerance / 2, 64);
  BigFloat tol(tolerance, 64);
  for (int n = 1; n < options.max_ladder_index; ++n) {
    const BaseValue& lower = ladder.root(n);
    const BaseValue& upper = ladder.root(n + 1);
    const mpfr_prec_t p = std::max(upper.lo().precision(), lower.lo().precision()) + 2;
    BigFloat gap = sub(upper.midpoint(), lower.midpoint(), p, MPFR_RNDN);
    out.gaps.push_back(gap);
    if (!(gap < half_tol)) continue;

    const LadderWord w = ladder_word(n + 1, options.max_ladder_index);
    const long length = static_cast<long>(w.digits.size());
    const BigFloat radius = min_radius(ladder_options.tolerance, 2 * length + 16);
    const BaseValue tail_root = certified_root(Series{w.digits, true}, radius, options.max_precision_bits, 0,
                                               BaseValue::Origin::kGiven);
    BaseValue candidate(upper.lo(), tail_root.hi(), BaseValue::Origin::kKomornikLoreti, n + 1);
    BigFloat width = sub(candidate.hi(), candidate.lo(), p, MPFR_RNDU);
    mpfr_div_2ui(width.get(), width.get(), 1, MPFR_RNDU);
    if (width <= tol) {
      out.value = std::move(candidate);
      out.ladder_index = n + 1;
      return out;
    }
  }
  throw ResourceError("ladder cap " + std::to_string(options.max_ladder_index) +
                      " reached before q_KL was enclosed to the requested tolerance");
}

BaseValue kl_constant(double tolerance, const BasesOptions& options) {
  return kl_enclosure(tolerance, options).value;
}

std::string RegimeLabel::to_string() const {
  switch (kind) {
    case Kind::kFinite: return "Finite(" + std::to_string(m) + ")";
    case Kind::kKomornikLoreti: return "KomornikLoreti";
    case Kind::kInterval: return "Interval";
  }
  return "?";
}

RegimeLabel classify(const BaseValue& q, const BasesOptions& options) {
  q.require_working_base();
  if (q.origin() == BaseValue::Origin::kLadderRoot && q.ladder_index() >= 2) {
    return RegimeLabel::finite(q.ladder_index() - 1);
  }
  if (q.origin() == BaseValue::Origin::kKomornikLoreti) return RegimeLabel::komornik_loreti();

  const BaseValue kl = kl_constant(options.tolerance, options);
  if (q.overlaps(kl)) return RegimeLabel::komornik_loreti();
  if (kl.hi() < q.lo()) return RegimeLabel::interval();

  // q lies strictly below q_KL; find the band (q_m, q_{m+1}] holding it.
  BaseLadder ladder(options);
  for (int n = 2; n <= options.max_ladder_index; ++n) {
    BaseValue qn = ladder.root(n);
    BasesOptions refined = options;
    for (int round = 0; qn.overlaps(q) && round < 8; ++round) {
      refined.tolerance = std::ldexp(refined.tolerance, -64);
      qn = base_root(n, refined);
    }
    if (q.hi() < qn.lo()) return RegimeLabel::finite(n - 1);
    if (qn.hi() < q.lo()) continue;
    throw AmbiguousClassification("base enclosure " + q.to_string(25) + " straddles ladder root q_" +
                                  std::to_string(n));
  }
  throw ResourceError("ladder cap reached while classifying " + q.to_string(25));
}

}  // namespace gasket
