#include "gasket/matching.hpp"

#include <numeric>

#include "gasket/errors.hpp"

namespace gasket {

namespace {

void check_exponent(int n, int lo, int max_n, const char* what) {
  if (n < lo) throw DomainError(std::string(what) + " must be at least " + std::to_string(lo));
  if (n > max_n) throw ResourceError(std::string(what) + " " + std::to_string(n) + " exceeds cap " + std::to_string(max_n));
}

// First 1-based position in [1, span) at which the pair is outside the
// difference alphabet, skipping `skip`.
std::optional<std::size_t> first_violation(const PairSeq& p, std::size_t span, std::size_t skip = 0) {
  for (std::size_t u = 1; u < span; ++u) {
    if (u != skip && !in_omega2(p[u - 1])) return u;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(PairDigit p) {
  return "(" + std::to_string(value(p.first)) + "," + std::to_string(value(p.second)) + ")";
}

PairSeq zip(const TernarySeq& a, const TernarySeq& b) {
  return zip_with(a, b, [](Trit x, Trit y) { return PairDigit{x, y}; });
}

MatchReport analyze(const PairSeq& p) {
  MatchReport r;
  const std::size_t total = p.preperiod_length() + p.period_length();
  for (std::size_t k = 0; k < total; ++k) {
    if (!in_omega2(p[k])) {
      r.matched = false;
      r.first_violation_index = k + 1;
      break;
    }
  }
  std::int64_t zeros = 0;
  for (const auto& d : p.period()) zeros += is_zero_pair(d) ? 1 : 0;
  r.zero_pair_in_period = zeros > 0;
  r.zero_pair_density = Rational(zeros, static_cast<std::int64_t>(p.period_length()));
  return r;
}

PairSeq e_seq(int n, int m, std::size_t i) {
  if (n < 1 || m < 1) throw DomainError("E sequence indices start at 1");
  const std::size_t period = std::size_t{1} << (n + 1);
  if (i >= period) throw DomainError("shift must be below 2^(n+1)");
  return zip(eps_pair_tail(n).shifted(i), eps_pair_tail(m));
}

std::string to_string(BlockVariant v) { return v == BlockVariant::kMinus ? "minus" : "plain"; }

LemmaReport verify_lemma_3_1(int n, int max_n) {
  check_exponent(n, 1, max_n, "n");
  LemmaReport report{"3.1", {{"n", std::to_string(n)}}, true, {}, {}, {}, {}};
  const std::size_t period = std::size_t{1} << (n + 1);
  const std::size_t half = period / 2;
  const TernarySeq base = eps_pair_tail(n);
  for (std::size_t i = 1; i < period; ++i) {
    const PairSeq p = zip(base.shifted(i), base);
    const MatchReport r = analyze(p);
    bool ok;
    if (i == half) {
      ok = r.matched && r.zero_pair_in_period;
      if (ok) report.witnesses.push_back({i, 0, PairDigit{}});
    } else if (i % 2 == 1) {
      ok = !r.zero_pair_in_period;
    } else {
      ok = !r.matched;
      if (ok) report.witnesses.push_back({i, *r.first_violation_index, p[*r.first_violation_index - 1]});
    }
    if (!ok) report.counterexamples.push_back(i);
  }
  report.pass = report.counterexamples.empty();
  return report;
}

LemmaReport verify_lemma_3_2(int n, BlockVariant variant, int max_n) {
  check_exponent(n, 3, max_n, "n");
  LemmaReport report{"3.2", {{"n", std::to_string(n)}, {"variant", to_string(variant)}}, true, {}, {}, {}, {}};
  const TernaryWord e = eps(n);
  const TernaryWord eb = reflect(e);
  const TernaryWord y = variant == BlockVariant::kMinus ? concat({e, inc_last(eb), eb, dec_last(e)})
                                                        : concat({e, inc_last(eb), eb, e});
  const TernarySeq lower({}, y);
  const TernarySeq base = eps_pair_tail(n);
  const std::size_t period = std::size_t{1} << (n + 1);
  const std::size_t window = 2 * period;
  for (std::size_t i = 1; i < period; ++i) {
    const PairSeq p = zip(base.shifted(i), lower);
    if (i == period / 2) {
      const std::size_t u = period + 1;
      const PairDigit term = p[u - 1];
      if (term == PairDigit{Trit::kMinus, Trit::kMinus}) {
        report.witnesses.push_back({i, u, term});
      } else {
        report.counterexamples.push_back(i);
      }
      continue;
    }
    if (auto u = first_violation(p, window, period)) {
      report.witnesses.push_back({i, *u, p[*u - 1]});
    } else {
      report.counterexamples.push_back(i);
    }
  }
  report.pass = report.counterexamples.empty();
  return report;
}

LemmaReport verify_lemma_3_4(int n, int m, int max_n) {
  check_exponent(n, 1, max_n, "n");
  check_exponent(m, n, max_n, "m");
  LemmaReport report{"3.4", {{"n", std::to_string(n)}, {"m", std::to_string(m)}}, true, {}, {}, {}, {}};
  const std::size_t period = std::size_t{1} << (n + 1);
  if (m == n) {
    const std::size_t i = period / 2;
    const MatchReport r = analyze(e_seq(n, m, i));
    if (r.matched && r.zero_pair_in_period) {
      report.witnesses.push_back({i, 0, PairDigit{}});
    } else {
      report.counterexamples.push_back(i);
    }
  } else {
    for (std::size_t i = 1; i < period; ++i) {
      const PairSeq p = e_seq(n, m, i);
      const MatchReport r = analyze(p);
      if (r.matched) {
        report.counterexamples.push_back(i);
      } else {
        report.witnesses.push_back({i, *r.first_violation_index, p[*r.first_violation_index - 1]});
      }
    }
  }
  report.pass = report.counterexamples.empty();
  return report;
}

std::array<TernaryWord, 4> b_blocks(int n) {
  if (n < 1) throw DomainError("block level must be at least 1");
  const TernaryWord e = eps(n);
  const TernaryWord eb = reflect(e);
  const TernaryWord ebp = inc_last(eb);
  const TernaryWord em = dec_last(e);
  return {concat({e, ebp, eb, em}), concat({e, ebp, eb, e}), concat({eb, em, e, ebp}), concat({eb, em, e, eb})};
}

TernaryWord block_word(int n, const std::vector<int>& pattern) {
  const auto blocks = b_blocks(n);
  TernaryWord out;
  for (int k : pattern) {
    if (k < 1 || k > 4) throw DomainError("block pattern entries must be in 1..4");
    const auto& b = blocks[static_cast<std::size_t>(k - 1)];
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

LemmaReport verify_block_case(int n, const std::vector<int>& upper, const std::vector<int>& lower,
                              std::size_t max_shift) {
  if (n < 3) throw DomainError("block case analysis needs n >= 3");
  if (upper.size() < 2 || lower.size() < 2) throw DomainError("block patterns need at least two entries");
  auto join = [](const std::vector<int>& p) {
    std::string s;
    for (int k : p) s += std::to_string(k);
    return s;
  };
  LemmaReport report{"blocks", {{"n", std::to_string(n)}, {"upper", join(upper)}, {"lower", join(lower)}},
                     true, {}, {}, {}, {}};
  if (max_shift == 0) max_shift = std::size_t{1} << (n + 1);
  const TernaryWord a = block_word(n, upper);
  const TernaryWord b = block_word(n, lower);
  const std::size_t span = std::lcm(a.size(), b.size());
  for (std::size_t i = 1; i < max_shift; ++i) {
    std::optional<Witness> found;
    for (std::size_t k = 0; k < span && !found; ++k) {
      const PairDigit d{a[(i + k) % a.size()], b[k % b.size()]};
      if (!in_omega2(d)) found = Witness{i, k + 1, d};
    }
    if (found) {
      report.witnesses.push_back(*found);
    } else if (i % 2 == 1) {
      report.excluded.push_back(i);
    } else {
      report.inconclusive.push_back(i);
    }
  }
  report.params.emplace_back("max_shift", std::to_string(max_shift));
  report.pass = report.inconclusive.empty();
  return report;
}

}  // namespace gasket
