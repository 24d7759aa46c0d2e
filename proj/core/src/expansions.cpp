#include "gasket/expansions.hpp"

#include <cmath>

#include "gasket/errors.hpp"

namespace gasket {

namespace {

long double partial_sum(std::span<const Trit> digits, long double q) {
  long double acc = 0;
  for (std::size_t i = digits.size(); i-- > 0;) acc = (acc + value(digits[i])) / q;
  return acc;
}

std::uint8_t shifted_digit(Trit t, bool reflected) {
  return static_cast<std::uint8_t>((reflected ? -value(t) : value(t)) + 1);
}

DigitSeq to_digits(const TernarySeq& s, bool reflected) {
  return s.transformed([reflected](Trit t) { return shifted_digit(t, reflected); });
}

// Certified quasi-greedy digits of 1 at the exact base qe. Returns nullopt
// when `prec` bits cannot decide some digit within `length`.
std::optional<DigitWord> quasi_greedy_at(const BigFloat& qe, std::size_t length, mpfr_prec_t prec) {
  BigFloat rl(1L, prec), rh(1L, prec), tl(prec), th(prec), cl(prec), ch(prec);
  DigitWord out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    mpfr_mul(tl.get(), qe.get(), rl.get(), MPFR_RNDD);
    mpfr_mul(th.get(), qe.get(), rh.get(), MPFR_RNDU);
    mpfr_ceil(cl.get(), tl.get());
    mpfr_ceil(ch.get(), th.get());
    const long dl = std::min(2L, mpfr_get_si(cl.get(), MPFR_RNDN) - 1);
    const long dh = std::min(2L, mpfr_get_si(ch.get(), MPFR_RNDN) - 1);
    if (dl != dh || dl < 0) return std::nullopt;
    mpfr_sub_si(rl.get(), tl.get(), dl, MPFR_RNDD);
    mpfr_sub_si(rh.get(), th.get(), dl, MPFR_RNDU);
    out.push_back(static_cast<std::uint8_t>(dl));
  }
  return out;
}

DigitWord certified_alpha(const BigFloat& qe, std::size_t length, mpfr_prec_t max_bits) {
  for (mpfr_prec_t prec = std::max<mpfr_prec_t>(qe.precision(), 2 * static_cast<mpfr_prec_t>(length) + 64);;
       prec *= 2) {
    if (prec > max_bits) {
      throw PrecisionError("quasi-greedy digits of 1 need more than " + std::to_string(max_bits) + " bits");
    }
    if (auto digits = quasi_greedy_at(qe, length, prec)) return *std::move(digits);
  }
}

}  // namespace

long double evaluate(const TernarySeq& s, long double q) {
  const auto& pre = s.preperiod();
  const auto& per = s.period();
  const long double head = partial_sum(pre, q);
  const long double cycle = partial_sum(per, q);
  const long double tail = cycle / (1 - std::pow(q, -static_cast<long double>(per.size())));
  return head + std::pow(q, -static_cast<long double>(pre.size())) * tail;
}

long double evaluate(const TernarySeq& s, const BaseValue& q) {
  q.require_working_base();
  return evaluate(s, q.midpoint().to_long_double());
}

TernaryWord greedy_expand(long double x, const BaseValue& q, std::size_t depth) {
  q.require_working_base();
  const mpfr_prec_t prec = 64 + 2 * static_cast<mpfr_prec_t>(depth);
  const BigFloat qm = q.midpoint().rounded(prec, MPFR_RNDN);
  BigFloat bound(prec), r(prec), t(prec), c(prec);
  mpfr_sub_ui(bound.get(), qm.get(), 1, MPFR_RNDN);
  mpfr_ui_div(bound.get(), 1, bound.get(), MPFR_RNDN);  // 1/(q-1)
  const long double limit = bound.to_long_double();
  if (!(std::fabs(x) <= limit * (1 + 1e-12L))) {
    throw DomainError("x lies outside [-1/(q-1), 1/(q-1)]");
  }
  // Work with y = x + 1/(q-1) in [0, 2/(q-1)] over the digits {0,1,2}.
  mpfr_set_ld(r.get(), x, MPFR_RNDN);
  mpfr_add(r.get(), r.get(), bound.get(), MPFR_RNDN);
  if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
  mpfr_mul_2ui(t.get(), bound.get(), 1, MPFR_RNDN);
  if (mpfr_cmp(r.get(), t.get()) > 0) mpfr_set(r.get(), t.get(), MPFR_RNDN);

  TernaryWord out;
  out.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    mpfr_mul(t.get(), r.get(), qm.get(), MPFR_RNDN);
    mpfr_floor(c.get(), t.get());
    const long d = std::clamp(mpfr_get_si(c.get(), MPFR_RNDN), 0L, 2L);
    mpfr_sub_si(r.get(), t.get(), d, MPFR_RNDN);
    out.push_back(static_cast<Trit>(d - 1));
  }
  return out;
}

AlphaBounds::AlphaBounds(BaseValue q, mpfr_prec_t max_precision_bits)
    : q_(std::move(q)), max_bits_(max_precision_bits) {
  q_.require_working_base();
  if (q_.origin() == BaseValue::Origin::kLadderRoot && q_.ladder_index() >= 2) {
    LadderWord w = ladder_word(q_.ladder_index(), kHardMaxLadderIndex);
    --w.digits.back();
    periodic_.emplace(DigitWord{}, std::move(w.digits));
    exact_ = true;
  } else if (q_.origin() == BaseValue::Origin::kKomornikLoreti) {
    exact_ = true;
  }
}

void AlphaBounds::ensure(std::size_t length) {
  if (lower_.size() >= length) return;
  if (periodic_) {
    lower_ = periodic_->prefix(length);
    upper_ = lower_;
  } else if (exact_) {
    lower_.clear();
    for (std::uint64_t i = 1; i <= length; ++i) lower_.push_back(static_cast<std::uint8_t>(1 + value(lambda(i))));
    upper_ = lower_;
  } else {
    lower_ = certified_alpha(q_.lo(), length, max_bits_);
    upper_ = q_.is_exact() ? lower_ : certified_alpha(q_.hi(), length, max_bits_);
  }
}

DigitWord quasi_greedy_alpha(const BaseValue& q, std::size_t depth, const ExpansionOptions& options) {
  AlphaBounds bounds(q, options.max_precision_bits);
  bounds.ensure(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    if (bounds.lower()[i] != bounds.upper()[i]) {
      throw PrecisionError("alpha(q) is only certified to " + std::to_string(i) + " digits for q = " +
                           q.to_string(25));
    }
  }
  return DigitWord(bounds.lower().begin(), bounds.lower().begin() + static_cast<std::ptrdiff_t>(depth));
}

std::string to_string(UniquenessVerdict::Clause clause) {
  switch (clause) {
    case UniquenessVerdict::Clause::kNone: return "none";
    case UniquenessVerdict::Clause::kBelowTop: return "shift_not_below_alpha";
    case UniquenessVerdict::Clause::kAboveBottom: return "reflected_shift_not_below_alpha";
  }
  return "?";
}

UniquenessOracle::UniquenessOracle(BaseValue q, ExpansionOptions options)
    : alpha_(std::move(q), options.max_precision_bits), options_(options) {}

UniquenessOracle::Order UniquenessOracle::compare(const DigitSeq& c, std::size_t horizon) {
  if (const auto& a = alpha_.exact_periodic()) {
    const std::size_t span = std::max(c.preperiod_length(), a->preperiod_length()) +
                             std::lcm(c.period_length(), a->period_length());
    for (std::size_t i = 0; i < span; ++i) {
      if (c[i] != (*a)[i]) return c[i] < (*a)[i] ? Order::kLess : Order::kNotLess;
    }
    return Order::kNotLess;
  }
  alpha_.ensure(horizon);
  const auto& lo = alpha_.lower();
  const auto& hi = alpha_.upper();
  std::size_t i = 0;
  while (i < horizon && c[i] == lo[i]) ++i;
  if (i < horizon && c[i] < lo[i]) return Order::kLess;
  std::size_t k = 0;
  while (k < horizon && c[k] == hi[k]) ++k;
  if (k < horizon && c[k] > hi[k]) return Order::kNotLess;
  return Order::kUndecided;
}

UniquenessVerdict UniquenessOracle::check(const TernarySeq& s) {
  const DigitSeq c = to_digits(s, false);
  const DigitSeq r = to_digits(s, true);
  const std::size_t shifts = c.preperiod_length() + c.period_length();
  UniquenessVerdict verdict;
  verdict.horizon_used = options_.alpha_horizon;
  auto decide = [&](const DigitSeq& seq) {
    for (std::size_t h = options_.alpha_horizon;; h *= 2) {
      if (h > options_.max_alpha_horizon) {
        throw PrecisionError("uniqueness comparison undecided within " + std::to_string(options_.max_alpha_horizon) +
                             " digits of alpha(q); refine the base");
      }
      verdict.horizon_used = std::max(verdict.horizon_used, h);
      const Order o = compare(seq, h);
      if (o != Order::kUndecided) return o == Order::kLess;
    }
  };
  for (std::size_t n = 1; n <= shifts; ++n) {
    const std::uint8_t cn = c[n - 1];
    if (cn < 2 && !decide(c.shifted(n))) {
      verdict.unique = false;
      verdict.failing_index = n;
      verdict.clause = UniquenessVerdict::Clause::kBelowTop;
      return verdict;
    }
    if (cn > 0 && !decide(r.shifted(n))) {
      verdict.unique = false;
      verdict.failing_index = n;
      verdict.clause = UniquenessVerdict::Clause::kAboveBottom;
      return verdict;
    }
  }
  return verdict;
}

UniquenessVerdict check_unique(const TernarySeq& s, const BaseValue& q, const ExpansionOptions& options) {
  UniquenessOracle oracle(q, options);
  return oracle.check(s);
}

bool is_unique_expansion(const TernarySeq& s, const BaseValue& q, const ExpansionOptions& options) {
  return check_unique(s, q, options).unique;
}

TernarySeq catalogue_tail(int n) {
  if (n < 0) throw DomainError("catalogue index must be nonnegative");
  return eps_pair_tail(n - 1);
}

std::optional<TernarySeq> find_unique_with_tail(const TernarySeq& tail, UniquenessOracle& oracle,
                                                std::size_t max_prefix) {
  for (std::size_t k = 0; k <= max_prefix; ++k) {
    TernaryWord pre(k, Trit::kZero);
    pre.insert(pre.end(), tail.preperiod().begin(), tail.preperiod().end());
    TernarySeq candidate(std::move(pre), tail.period());
    if (oracle.is_unique(candidate)) return candidate;
  }
  return std::nullopt;
}

TernaryWord kl_tail(const KLTailDescriptor& desc, std::size_t max_length) {
  if (desc.length > max_length) {
    throw ResourceError("tail length " + std::to_string(desc.length) + " exceeds cap " + std::to_string(max_length));
  }
  for (auto bit : desc.l) {
    if (bit > 1) throw DomainError("l entries must be 0 or 1");
  }
  TernaryWord out;
  out.reserve(desc.length);
  const std::size_t levels = std::max(desc.j.size(), desc.l.size());
  auto append = [&](const TernaryWord& a, const TernaryWord& b, std::uint64_t times) {
    for (std::uint64_t t = 0; t < times && out.size() < desc.length; ++t) {
      out.insert(out.end(), a.begin(), a.end());
      out.insert(out.end(), b.begin(), b.end());
    }
  };
  TernaryWord e = eps(0);
  for (std::size_t k = 0; k < levels && out.size() < desc.length; ++k) {
    const TernaryWord e_next = eps(static_cast<int>(k) + 1);
    const std::uint64_t jk = k < desc.j.size() ? desc.j[k] : 0;
    const std::uint64_t lk = k < desc.l.size() ? desc.l[k] : 0;
    append(e, reflect(e), jk);
    append(e, reflect(e_next), lk);
    e = e_next;
  }
  if (out.size() > desc.length) out.resize(desc.length);
  return desc.reflected ? reflect(out) : out;
}

}  // namespace gasket
