#include "gasket_cli/selftest.hpp"

#include <cmath>
#include <functional>

#include "gasket/errors.hpp"
#include "gasket/geometry.hpp"
#include "gasket/spectrum.hpp"

namespace gasket::cli {

namespace {

using Check = std::function<std::string()>;

// Runs `check`; an empty string means pass, anything else is the failure
// detail.
SelftestItem run_item(std::string name, std::string range, const Check& check) {
  SelftestItem item{std::move(name), std::move(range), false, {}};
  try {
    item.detail = check();
    item.pass = item.detail.empty();
  } catch (const std::exception& e) {
    item.detail = std::string("error: ") + e.what();
  }
  return item;
}

std::string block_properties(const EpsProvider& eps_of, int max_n) {
  for (int n = 0; n < max_n; ++n) {
    const TernaryWord e = eps_of(n);
    const TernaryWord next = eps_of(n + 1);
    if (next != concat({e, inc_last(reflect(e))})) return "P1 fails at n=" + std::to_string(n);
    if (e.size() != (std::size_t{1} << n)) return "block length wrong at n=" + std::to_string(n);
    if (e.front() != Trit::kPlus) return "first digit is not 1 at n=" + std::to_string(n);
    const Trit last = n % 2 == 1 ? Trit::kZero : Trit::kPlus;
    if (e.back() != last) return "terminal digit rule fails at n=" + std::to_string(n);
    if (n >= 1 && count_zeros(e) == 0) return "no zero in block n=" + std::to_string(n);
    for (std::size_t i = 0; i < e.size(); i += 2) {
      if (e[i] == Trit::kZero) return "zero at odd position in block n=" + std::to_string(n);
    }
    for (std::size_t i = 1; i < e.size() / 2; ++i) {
      if (next[e.size() + i - 1] != negate(e[i - 1])) return "symmetry fails at n=" + std::to_string(n);
    }
  }
  return {};
}

}  // namespace

bool SelftestReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const SelftestItem& i) { return i.pass; });
}

SelftestReport run_selftest(const RunConfig& config, const EpsProvider& eps_provider) {
  const int max_exponent = config.max_block_exponent;
  const EpsProvider eps_of = eps_provider ? eps_provider : [max_exponent](int n) { return eps(n, max_exponent); };
  const SpectrumOptions options = config.spectrum_options();
  SelftestReport report;
  auto item = [&](std::string name, std::string range, const Check& check) {
    report.items.push_back(run_item(std::move(name), std::move(range), check));
  };

  item("block calculus", "0<=n<=16", [&] { return block_properties(eps_of, 16); });

  item("zero density of eps_n", "1<=n<=16", [&]() -> std::string {
    for (int n = 1; n <= 16; ++n) {
      if (d_star(eps_of(n)) != alternating_density(n)) return "mismatch at n=" + std::to_string(n);
    }
    return {};
  });

  item("lemma 3.1", "1<=n<=10", []() -> std::string {
    for (int n = 1; n <= 10; ++n) {
      if (!verify_lemma_3_1(n).pass) return "fails at n=" + std::to_string(n);
    }
    return {};
  });

  item("lemma 3.2", "3<=n<=10, minus and plain", []() -> std::string {
    for (int n = 3; n <= 10; ++n) {
      for (auto v : {BlockVariant::kMinus, BlockVariant::kPlain}) {
        if (!verify_lemma_3_2(n, v).pass) return "fails at n=" + std::to_string(n) + " " + to_string(v);
      }
    }
    return {};
  });

  item("lemma 3.4", "1<=n<=m<=8", []() -> std::string {
    for (int n = 1; n <= 8; ++n) {
      for (int m = n; m <= 8; ++m) {
        if (!verify_lemma_3_4(n, m).pass) return "fails at n=" + std::to_string(n) + " m=" + std::to_string(m);
      }
    }
    return {};
  });

  item("block case", "3<=n<=8, patterns 11,13,31,33", []() -> std::string {
    const std::vector<std::vector<int>> patterns{{1, 1}, {1, 3}, {3, 1}, {3, 3}};
    for (int n = 3; n <= 8; ++n) {
      for (const auto& u : patterns) {
        for (const auto& l : patterns) {
          if (!verify_block_case(n, u, l).pass) return "inconclusive shift at n=" + std::to_string(n);
        }
      }
    }
    return {};
  });

  item("base ladder", "1<=n<=12", [&]() -> std::string {
    BaseLadder ladder(config.bases_options());
    if (!(ladder.root(1).lo() == BigFloat(2L, 64)) || !ladder.root(1).is_exact()) return "q_1 is not exactly 2";
    for (int n = 1; n < 12; ++n) {
      if (!(ladder.root(n).hi() < ladder.root(n + 1).lo())) return "enclosures overlap at n=" + std::to_string(n);
    }
    const double q2 = 1 + std::sqrt(2.0);
    if (std::fabs(ladder.root(2).value() - q2) > 1e-12) return "q_2 differs from 1+sqrt(2)";
    return {};
  });

  item("classification", "q_{m+1} -> Finite(m), 1<=m<=8", [&]() -> std::string {
    for (int m = 1; m <= 8; ++m) {
      if (classify(base_root(m + 1, config.bases_options()), config.bases_options()) != RegimeLabel::finite(m)) {
        return "fails at m=" + std::to_string(m);
      }
    }
    if (classify(BaseValue::parse("2.9"), config.bases_options()) != RegimeLabel::interval()) return "2.9 not Interval";
    return {};
  });

  item("finite spectrum", "q=2.2 and q=q_3", [&]() -> std::string {
    const auto a = spectrum_of(BaseValue::parse("2.2"), options);
    if (a.isolated_densities != std::vector<Rational>{Rational(0), Rational(1)}) return "q=2.2 spectrum wrong";
    const auto b = spectrum_of(base_root(3, config.bases_options()), options);
    if (b.isolated_densities != std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)}) {
      return "q_3 spectrum wrong";
    }
    return {};
  });

  item("q_KL spectrum", "tolerance 1e-10, horizon 2^14", [&]() -> std::string {
    const auto s = spectrum_of(kl_constant(1e-10, config.bases_options()), options);
    if (s.regime != RegimeLabel::komornik_loreti()) return "regime is " + s.regime.to_string();
    if (s.isolated_densities != std::vector<Rational>{Rational(0), Rational(1, 3), Rational(1)}) {
      return "isolated densities wrong";
    }
    for (std::size_t k = 0; k < s.family->densities.size(); ++k) {
      const Rational gap = Rational(1, 3) - s.family->densities[k];
      const Rational expected(1, 3 * (std::int64_t{1} << (k + 1)));
      if (gap != expected && gap != -expected) return "family term " + std::to_string(k + 1) + " off";
    }
    const std::size_t horizon = std::size_t{1} << 14;
    if (!kl_density_check(default_kl_families(horizon), horizon, 6).pass) return "tail density check failed";
    return {};
  });

  item("interval spectrum", "q in {2.6, 2.75, 2.9}", [&]() -> std::string {
    for (const char* text : {"2.6", "2.75", "2.9"}) {
      const SFTSpec spec = sft_spec(BaseValue::parse(text), options);
      const SftDensities d = sft_densities(spec);
      const Rational mid = (d.d1 + d.d2) / Rational(2);
      const IntervalWitness w = interval_witness(spec, mid, 100000);
      const Rational miss = w.frequency() - mid;
      const Rational allowed(2, static_cast<std::int64_t>(d.u1_length));
      if (miss > allowed || -miss > allowed) return std::string("witness off target at q=") + text;
    }
    return {};
  });

  item("tail catalogue", "band midpoints, m<=6; accept n<=m, reject n=m+1", [&]() -> std::string {
    BaseLadder ladder(config.bases_options());
    std::string failures;
    for (int m = 1; m <= 6; ++m) {
      const BigFloat& a = ladder.root(m).midpoint();
      const BigFloat& b = ladder.root(m + 1).midpoint();
      BigFloat mid = gasket::add(a, b, std::max(a.precision(), b.precision()) + 2, MPFR_RNDN);
      mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
      UniquenessOracle oracle(BaseValue(mid, mid), config.expansion_options());
      for (int n = 0; n <= m; ++n) {
        if (!find_unique_with_tail(catalogue_tail(n), oracle)) {
          failures += " m=" + std::to_string(m) + ":n=" + std::to_string(n) + " rejected;";
        }
      }
      if (oracle.is_unique(catalogue_tail(m + 1))) failures += " m=" + std::to_string(m) + ": n=m+1 accepted;";
    }
    return failures;
  });

  item("geometry counting law", "depth 4..10", [&]() -> std::string {
    const BaseValue q = BaseValue::parse("2.5");
    for (std::size_t depth = 4; depth <= 10; ++depth) {
      const PairSeq t = e_seq(1, 1, 2);
      const PointCloud c = build_intersection(q, t, depth);
      std::size_t zeros = 0;
      for (std::size_t i = 0; i < depth; ++i) zeros += is_zero_pair(t[i]) ? 1 : 0;
      if (c.points.size() != static_cast<std::size_t>(std::pow(3, zeros))) {
        return "point count wrong at depth " + std::to_string(depth);
      }
    }
    return {};
  });

  return report;
}

}  // namespace gasket::cli
