#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "gasket/errors.hpp"
#include "gasket/geometry.hpp"
#include "oracles.hpp"

namespace {

using gasket::BaseValue;
using gasket::PairDigit;
using gasket::PairSeq;
using gasket::Trit;

PairSeq pairs(const char* first, const char* second) {
  return gasket::zip(gasket::parse_seq(first), gasket::parse_seq(second));
}

TEST(BranchSet, AgainstBruteForce) {
  const std::vector<std::pair<int, int>> omega1{{0, 0}, {0, 1}, {1, 0}};
  for (int x = -1; x <= 1; ++x) {
    for (int y = -1; y <= 1; ++y) {
      const PairDigit t{gasket::make_trit(x), gasket::make_trit(y)};
      if (!gasket::in_omega2(t)) {
        EXPECT_THROW(gasket::branch_set(t), gasket::DomainError);
        continue;
      }
      std::vector<std::pair<int, int>> expected;
      for (auto [ax, ay] : omega1) {
        for (auto [bx, by] : omega1)
          if (ax - bx == x && ay - by == y) expected.emplace_back(ax, ay);
      }
      const auto got = gasket::branch_set(t);
      ASSERT_EQ(got.size(), expected.size()) << x << ',' << y;
      for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_EQ(got[k].x, expected[k].first);
        EXPECT_EQ(got[k].y, expected[k].second);
      }
    }
  }
}

TEST(Gasket, PointCountAndRange) {
  const BaseValue q = BaseValue::parse("2.5");
  const auto g = gasket::build_gasket(q, 5);
  EXPECT_EQ(g.points.size(), 243u);
  for (const auto& p : g.points) {
    EXPECT_GE(p.x, 0.0);
    EXPECT_GE(p.y, 0.0);
    EXPECT_LE(p.x + p.y, 1 / 1.5 + 1e-12);
  }
  EXPECT_THROW(gasket::build_gasket(q, 13), gasket::ResourceError);
}

TEST(Intersection, CountIsPowerOfThreeOfZeroPairs) {
  const BaseValue q = BaseValue::parse("2.6");
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> digit(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Trit> a, b;
    for (int k = 0; k < 8; ++k) {
      int x = digit(rng), y = digit(rng);
      if (x == y && x != 0) y = 0;
      a.push_back(gasket::make_trit(x));
      b.push_back(gasket::make_trit(y));
    }
    const PairSeq t = gasket::zip(gasket::TernarySeq(a, {Trit::kZero}), gasket::TernarySeq(b, {Trit::kZero}));
    for (std::size_t depth = 1; depth <= 8; ++depth) {
      std::size_t zeros = 0;
      for (std::size_t k = 0; k < depth; ++k) zeros += gasket::is_zero_pair(t[k]);
      const auto cloud = gasket::build_intersection(q, t, depth);
      EXPECT_EQ(cloud.points.size(), static_cast<std::size_t>(std::pow(3, zeros)));
    }
  }
}

TEST(Intersection, PointsLieInBothLayers) {
  const BaseValue q = BaseValue::parse("2.6");
  const PairSeq t = pairs("+0-0^inf", "0+0-^inf");
  const std::size_t depth = 6;
  const auto inter = gasket::build_intersection(q, t, depth);
  const auto gasket_pts = gasket::build_gasket(q, depth);
  const gasket::Point shift = gasket::translation(q, t);
  const double tail = std::pow(2.6, -static_cast<double>(depth)) / 1.6;
  for (const auto& p : inter.points) {
    // within a level-depth cylinder of E and of E + t
    bool in_e = false, in_translate = false;
    for (const auto& g : gasket_pts.points) {
      in_e |= std::fabs(p.x - g.x) <= tail && std::fabs(p.y - g.y) <= tail;
      in_translate |= std::fabs(p.x - shift.x - g.x) <= 2 * tail && std::fabs(p.y - shift.y - g.y) <= 2 * tail;
    }
    EXPECT_TRUE(in_e);
    EXPECT_TRUE(in_translate);
  }
}

TEST(Intersection, UnmatchedRejected) {
  EXPECT_THROW(gasket::build_intersection(BaseValue::parse("2.6"), pairs("+^inf", "+^inf"), 3), gasket::DomainError);
}

TEST(Translation, ClosedForm) {
  const BaseValue q = BaseValue::parse("2.5");
  const gasket::Point p = gasket::translation(q, pairs("+^inf", "-;0^inf"));
  EXPECT_NEAR(p.x, 1 / 1.5, 1e-15);
  EXPECT_NEAR(p.y, -0.4, 1e-15);
}

TEST(Render, DeterministicAndWellFormed) {
  const BaseValue q = BaseValue::parse("2.6");
  const PairSeq t = pairs("+0-0^inf", "0+0-^inf");
  const std::vector<gasket::PointCloud> layers{gasket::build_gasket(q, 4), gasket::build_translate(q, t, 4),
                                               gasket::build_intersection(q, t, 4)};
  const std::string a = gasket::render_svg(layers, 2.6);
  EXPECT_EQ(a, gasket::render_svg(layers, 2.6));
  EXPECT_EQ(a.rfind("<?xml", 0), 0u);
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_NE(a.find("#2e7d32"), std::string::npos);
  std::size_t circles = 0;
  for (std::size_t pos = a.find("<circle"); pos != std::string::npos; pos = a.find("<circle", pos + 1)) ++circles;
  EXPECT_EQ(circles, 81u + 81u + layers[2].points.size());
}

TEST(Render, GoldenSvg) {
  const BaseValue q = BaseValue::parse("2.6");
  const PairSeq t = pairs("-0+0^inf", "+0-0^inf");
  const std::vector<gasket::PointCloud> layers{gasket::build_gasket(q, 6), gasket::build_translate(q, t, 6),
                                               gasket::build_intersection(q, t, 6)};
  ASSERT_EQ(layers[2].points.size(), 27u);
  std::ifstream in(std::string(GASKET_GOLDEN_DIR) + "/render_q2.6_depth6.svg", std::ios::binary);
  ASSERT_TRUE(in) << "golden file missing";
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(gasket::render_svg(layers, 2.6), golden.str());
}

TEST(Render, Ppm) {
  const BaseValue q = BaseValue::parse("2.5");
  const auto ppm = gasket::render_ppm({gasket::build_gasket(q, 3)}, 2.5, 64);
  const std::string header = "P6\n64 64\n255\n";
  ASSERT_EQ(ppm.compare(0, header.size(), header), 0);
  EXPECT_EQ(ppm.size(), header.size() + 64u * 64u * 3u);
  EXPECT_THROW(gasket::emit_svg({}, 2.5, "/nonexistent-dir/x.svg"), gasket::IoError);
}

TEST(Intersection, SubsetOfGasketAndShiftedGasket) {
  const BaseValue q = BaseValue::parse("2.5");
  const PairSeq t = pairs("-0+0^inf", "+0-0^inf");
  const std::size_t depth = 6;
  const auto inter = gasket::build_intersection(q, t, depth);
  const auto cloud = gasket::build_gasket(q, depth);
  const gasket::Point shift = gasket::translation(q, t);
  const double tail = std::pow(2.5, -static_cast<double>(depth)) / 1.5;
  for (const auto& p : inter.points) {
    bool exact = false, shifted = false;
    for (const auto& g : cloud.points) {
      exact |= std::fabs(p.x - g.x) <= 1e-9 && std::fabs(p.y - g.y) <= 1e-9;
      shifted |= std::fabs(p.x - shift.x - g.x) <= tail + 1e-9 && std::fabs(p.y - shift.y - g.y) <= tail + 1e-9;
    }
    EXPECT_TRUE(exact);
    EXPECT_TRUE(shifted);
  }
}

}  // namespace
