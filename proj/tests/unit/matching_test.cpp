#include <gtest/gtest.h>

#include <random>

#include "gasket/errors.hpp"
#include "gasket/matching.hpp"
#include "oracles.hpp"

namespace {

using gasket::PairDigit;
using gasket::Rational;
using gasket::Trit;

struct PairScan {
  bool matched = true;
  std::size_t first_violation = 0;
  std::size_t zeros = 0;
  std::size_t period = 0;
};

// Pairs sigma^i((e_n E_n)^inf) with (e_m E_m)^inf term by term over one joint period.
PairScan scan(int n, int m, std::size_t i) {
  const oracle::Seq a = oracle::eps_pair(n), b = oracle::eps_pair(m);
  PairScan out;
  out.period = std::max(a.per.size(), b.per.size());
  for (std::size_t k = 0; k < out.period; ++k) {
    const int x = a.at(k + i), y = b.at(k);
    if (x == y && x != 0 && out.matched) {
      out.matched = false;
      out.first_violation = k + 1;
    }
    if (x == 0 && y == 0) ++out.zeros;
  }
  return out;
}

TEST(PairDigit, Alphabet) {
  EXPECT_FALSE(gasket::in_omega2({Trit::kPlus, Trit::kPlus}));
  EXPECT_FALSE(gasket::in_omega2({Trit::kMinus, Trit::kMinus}));
  EXPECT_TRUE(gasket::in_omega2({Trit::kPlus, Trit::kMinus}));
  EXPECT_TRUE(gasket::is_zero_pair({}));
  EXPECT_EQ(gasket::to_string(PairDigit{Trit::kMinus, Trit::kZero}), "(-1,0)");
}

TEST(Analyze, AgainstHandPairing) {
  for (int n = 1; n <= 5; ++n) {
    for (int m = n; m <= 6; ++m) {
      for (std::size_t i = 0; i < (std::size_t{1} << (n + 1)); ++i) {
        const PairScan expected = scan(n, m, i);
        const gasket::MatchReport r = gasket::analyze(gasket::e_seq(n, m, i));
        ASSERT_EQ(r.matched, expected.matched) << n << ' ' << m << ' ' << i;
        if (!expected.matched) {
          ASSERT_EQ(r.first_violation_index.value_or(0), expected.first_violation);
        } else {
          EXPECT_EQ(r.zero_pair_density, Rational(static_cast<std::int64_t>(expected.zeros),
                                                  static_cast<std::int64_t>(expected.period)));
          EXPECT_EQ(r.zero_pair_in_period, expected.zeros > 0);
        }
      }
    }
  }
}

TEST(Zip, PreperiodAndPeriod) {
  const auto a = gasket::parse_seq("+;0-^inf");
  const auto b = gasket::parse_seq("0^inf");
  const gasket::PairSeq p = gasket::zip(a, b);
  EXPECT_EQ(p.preperiod_length(), 1u);
  EXPECT_EQ(p.period_length(), 2u);
  const auto r = gasket::analyze(p);
  EXPECT_TRUE(r.matched);
  EXPECT_EQ(r.zero_pair_density, Rational(1, 2));
}

TEST(SelfShift, TrichotomyAgainstScan) {
  for (int n = 1; n <= 7; ++n) {
    const std::size_t half = std::size_t{1} << n;
    for (std::size_t i = 1; i < 2 * half; ++i) {
      const PairScan s = scan(n, n, i);
      if (i == half) {
        EXPECT_TRUE(s.matched && s.zeros > 0) << n << ' ' << i;
      } else if (i % 2 == 1) {
        EXPECT_EQ(s.zeros, 0u) << n << ' ' << i;
      } else {
        EXPECT_FALSE(s.matched) << n << ' ' << i;
      }
    }
  }
}

TEST(SelfShift, VerifierPasses) {
  for (int n = 1; n <= 10; ++n) {
    const gasket::LemmaReport r = gasket::verify_lemma_3_1(n);
    EXPECT_TRUE(r.pass) << n;
    EXPECT_TRUE(r.counterexamples.empty());
  }
  EXPECT_THROW(gasket::verify_lemma_3_1(13), gasket::ResourceError);
}

TEST(BlockWitness, VerifierPassesBothVariants) {
  for (int n = 3; n <= 10; ++n) {
    for (auto v : {gasket::BlockVariant::kMinus, gasket::BlockVariant::kPlain}) {
      const gasket::LemmaReport r = gasket::verify_lemma_3_2(n, v);
      ASSERT_TRUE(r.pass) << n << ' ' << gasket::to_string(v);
      const std::size_t window = std::size_t{1} << (n + 2);
      const std::size_t skip = std::size_t{1} << (n + 1);
      bool case_three = false;
      for (const auto& w : r.witnesses) {
        EXPECT_GT(w.u, 0u);
        EXPECT_LT(w.u, window);
        if (w.i == (std::size_t{1} << n) && w.u == skip + 1) {
          case_three = true;
          EXPECT_EQ(w.term, (PairDigit{Trit::kMinus, Trit::kMinus}));
          continue;
        }
        EXPECT_NE(w.u, skip);
        EXPECT_FALSE(gasket::in_omega2(w.term));
      }
      EXPECT_TRUE(case_three) << n;
    }
  }
}

TEST(BlockWitness, WitnessesCheckedByHand) {
  // Rebuild the lower block word from the oracle lambda and confirm each term.
  const int n = 4;
  const std::size_t len = std::size_t{1} << n;
  const auto lam = oracle::lambda_prefix(len);
  std::vector<int> e(lam), ebar;
  for (int v : e) ebar.push_back(-v);
  std::vector<int> lower;
  auto add = [&](std::vector<int> w, int delta) {
    w.back() += delta;
    lower.insert(lower.end(), w.begin(), w.end());
  };
  add(e, 0);
  add(ebar, 1);
  add(ebar, 0);
  add(e, -1);
  std::vector<int> upper(e);
  upper.insert(upper.end(), ebar.begin(), ebar.end());
  const gasket::LemmaReport r = gasket::verify_lemma_3_2(n, gasket::BlockVariant::kMinus);
  for (const auto& w : r.witnesses) {
    const int x = upper[(w.i + w.u - 1) % upper.size()];
    const int y = lower[(w.u - 1) % lower.size()];
    EXPECT_EQ(gasket::value(w.term.first), x) << w.i << ' ' << w.u;
    EXPECT_EQ(gasket::value(w.term.second), y) << w.i << ' ' << w.u;
  }
}

TEST(CrossLevel, VerifierPasses) {
  for (int m = 2; m <= 8; ++m)
    for (int n = 1; n < m; ++n) EXPECT_TRUE(gasket::verify_lemma_3_4(n, m).pass) << n << ' ' << m;
  for (int n = 1; n <= 8; ++n) EXPECT_TRUE(gasket::verify_lemma_3_4(n, n).pass) << n;
}

TEST(CrossLevel, UnmatchedAgainstScan) {
  for (int m = 2; m <= 7; ++m)
    for (int n = 1; n < m; ++n)
      for (std::size_t i = 1; i < (std::size_t{1} << (n + 1)); ++i) EXPECT_FALSE(scan(n, m, i).matched) << n << m << i;
}

TEST(Blocks, Shapes) {
  const auto b = gasket::b_blocks(3);
  for (const auto& w : b) EXPECT_EQ(w.size(), 32u);
  const gasket::TernaryWord e = gasket::eps(3);
  EXPECT_TRUE(std::equal(e.begin(), e.end(), b[0].begin()));
  EXPECT_EQ(gasket::block_word(3, {1, 2}).size(), 64u);
  EXPECT_THROW(gasket::block_word(3, {5}), gasket::DomainError);
}

TEST(Blocks, EvenShiftsCarryWitnesses) {
  for (int n = 3; n <= 6; ++n) {
    const gasket::LemmaReport r = gasket::verify_block_case(n, {1, 2}, {1, 3});
    EXPECT_TRUE(r.pass) << n;
    EXPECT_TRUE(r.inconclusive.empty());
    for (std::size_t i : r.excluded) EXPECT_EQ(i % 2, 1u);
  }
}

gasket::TernarySeq random_seq(std::mt19937& rng) {
  std::uniform_int_distribution<int> digit(-1, 1), len(0, 3), plen(1, 5);
  std::vector<Trit> pre, per;
  for (int k = len(rng); k > 0; --k) pre.push_back(gasket::make_trit(digit(rng)));
  for (int k = plen(rng); k > 0; --k) per.push_back(gasket::make_trit(digit(rng)));
  return {pre, per};
}

TEST(Analyze, MatchedIffNoForbiddenPair) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = random_seq(rng), b = random_seq(rng);
    const gasket::PairSeq p = gasket::zip(a, b);
    bool ok = true;
    for (std::size_t k = 0; k < p.preperiod_length() + p.period_length(); ++k) ok = ok && gasket::in_omega2(p[k]);
    const auto r = gasket::analyze(p);
    ASSERT_EQ(r.matched, ok);
    const auto rr = gasket::analyze(gasket::zip(gasket::reflect(a), gasket::reflect(b)));
    EXPECT_EQ(rr.matched, r.matched);
    EXPECT_EQ(rr.zero_pair_density, r.zero_pair_density);
    EXPECT_EQ(gasket::analyze(gasket::zip(b, a)).matched, r.matched);
  }
}

TEST(Analyze, HalfShiftDensityEqualsBlockDensity) {
  for (int n = 1; n <= 12; ++n) {
    const auto r = gasket::analyze(gasket::e_seq(n, n, std::size_t{1} << n));
    ASSERT_TRUE(r.matched);
    const gasket::TernaryWord e = gasket::eps(n);
    EXPECT_EQ(r.zero_pair_density,
              Rational(static_cast<std::int64_t>(gasket::count_zeros(e)), static_cast<std::int64_t>(e.size())));
  }
}

}  // namespace
