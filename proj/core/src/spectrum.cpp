#include "gasket/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "gasket/errors.hpp"

namespace gasket {

namespace {

constexpr int kMaxFamilyTerms = 60;

Rational zero_frequency(std::span<const Trit> w) {
  if (w.empty()) throw DomainError("density of an empty word");
  return Rational(static_cast<std::int64_t>(count_zeros(w)), static_cast<std::int64_t>(w.size()));
}

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

// Every closed admissible path up to `max_length`, one per rotation class.
std::vector<LetterPath> closed_paths(int max_length) {
  std::vector<LetterPath> out;
  for (int len = 1; len <= max_length; ++len) {
    std::vector<int> idx(static_cast<std::size_t>(len), 0);
    while (true) {
      LetterPath path;
      for (int v : idx) path.push_back(static_cast<SftLetter>(v));
      bool minimal = true;
      for (int r = 1; r < len && minimal; ++r) {
        LetterPath rot(path);
        std::rotate(rot.begin(), rot.begin() + r, rot.end());
        minimal = !(rot < path);
      }
      if (minimal && admissible_cycle(path)) out.push_back(std::move(path));
      int k = len - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == 3) idx[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

std::vector<PairDigit> pair_word(const SFTSpec& spec, const LetterPath& first, const LetterPath& second) {
  const TernaryWord a = spell(spec, first);
  const TernaryWord b = spell(spec, second);
  if (a.size() != b.size()) throw InternalError("pair word coordinates differ in length");
  std::vector<PairDigit> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back({a[k], b[k]});
  return out;
}

}  // namespace

Rational d_star(std::span<const Trit> w) { return zero_frequency(w); }

Rational d_star(const TernarySeq& s) { return zero_frequency(s.period()); }

Rational alternating_density(int n) {
  if (n < 0 || n > kMaxFamilyTerms) throw DomainError("alternating density index out of range");
  Rational sum(0);
  Rational term(1);
  for (int i = 1; i <= n; ++i) {
    term *= Rational(-1, 2);
    sum -= term;
  }
  return sum;
}

Lemma22Report lemma_2_2_check(int max_n, int max_exponent) {
  Lemma22Report report;
  for (int n = 1; n <= max_n; ++n) {
    DensityRow row{n, d_star(eps(n, max_exponent)), alternating_density(n), false};
    row.pass = row.measured == row.expected;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

double full_dimension(const BaseValue& q) {
  q.require_working_base();
  return std::log(3.0L) / std::log(q.midpoint().to_long_double());
}

double dimension(const BaseValue& q, const Rational& d) {
  if (d < Rational(0) || d > Rational(1)) throw DomainError("density must lie in [0,1]");
  return static_cast<double>(full_dimension(q) * to_double(d));
}

double dimension(double q, const Rational& d) { return dimension(BaseValue::exact(q), d); }

std::string to_string(SftLetter l) {
  switch (l) {
    case SftLetter::kA: return "a";
    case SftLetter::kB: return "b";
    case SftLetter::kAbar: return "A";
    case SftLetter::kBbar: return "B";
  }
  return "?";
}

SFTSpec sft_letters(int n) {
  if (n < 1) throw DomainError("subshift level must be at least 1");
  const TernaryWord e = eps(n);
  TernaryWord a{Trit::kZero};
  a.insert(a.end(), e.begin(), e.end() - 1);
  TernaryWord b{Trit::kMinus};
  b.insert(b.end(), e.begin(), e.end() - 1);
  SFTSpec spec;
  spec.n = n;
  spec.letters = {a, b, reflect(a), reflect(b)};
  return spec;
}

bool admissible_cycle(const LetterPath& path, const TransitionMatrix& m) {
  if (path.empty()) return false;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto from = static_cast<std::size_t>(path[k]);
    const auto to = static_cast<std::size_t>(path[(k + 1) % path.size()]);
    if (m[from][to] == 0) return false;
  }
  return true;
}

TernaryWord spell(const SFTSpec& spec, const LetterPath& path) {
  TernaryWord out;
  for (SftLetter l : path) {
    const auto& w = spec.letter(l);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

SftWords sft_words() {
  using L = SftLetter;
  return {{L::kB, L::kAbar, L::kBbar, L::kA}, {L::kBbar, L::kA, L::kB, L::kAbar}, {L::kAbar, L::kA}, {L::kA, L::kAbar}};
}

SFTSpec sft_spec(const BaseValue& q, const SpectrumOptions& options) {
  const RegimeLabel regime = classify(q, options.bases);
  if (regime.kind != RegimeLabel::Kind::kInterval) {
    throw DomainError("subshift search needs a base above q_KL; got " + regime.to_string());
  }
  const SftWords words = sft_words();
  std::vector<LetterPath> paths{words.u1_first, words.u1_second, words.u2_first, words.u2_second};
  for (auto& p : closed_paths(options.sft_path_length)) paths.push_back(std::move(p));

  UniquenessOracle oracle(q, options.expansions);
  std::string last_failure;
  for (int n = 1; n <= options.max_sft_level; ++n) {
    SFTSpec spec = sft_letters(n);
    bool ok = true;
    for (const auto& path : paths) {
      const TernarySeq s({}, spell(spec, path));
      const UniquenessVerdict v = oracle.check(s);
      if (!v.unique) {
        ok = false;
        last_failure = "level " + std::to_string(n) + ": " + to_string(s) + " fails at shift " +
                       std::to_string(v.failing_index) + " (" + to_string(v.clause) + ")";
        break;
      }
    }
    if (ok) return spec;
  }
  throw CapabilityError("no subshift level <= " + std::to_string(options.max_sft_level) + " works; last failure " +
                        last_failure);
}

SftDensities sft_densities(const SFTSpec& spec) {
  const SftWords words = sft_words();
  for (const auto* p : {&words.u1_first, &words.u1_second, &words.u2_first, &words.u2_second}) {
    if (!admissible_cycle(*p, spec.transition)) throw InternalError("u-word is not a closed admissible path");
  }
  auto density = [&](const LetterPath& first, const LetterPath& second) {
    const auto w = pair_word(spec, first, second);
    const MatchReport r = analyze(PairSeq({}, w));
    if (!r.matched) throw InternalError("u-word is not matched at level " + std::to_string(spec.n));
    std::int64_t zeros = 0;
    for (const auto& d : w) zeros += is_zero_pair(d) ? 1 : 0;
    return std::pair{Rational(zeros, static_cast<std::int64_t>(w.size())), w.size()};
  };
  const auto [d1, len1] = density(words.u1_first, words.u1_second);
  const auto [d2, len2] = density(words.u2_first, words.u2_second);
  if (!(d1 < d2)) throw InternalError("expected d(u_1) < d(u_2) at level " + std::to_string(spec.n));
  return {d1, d2, len1, len2};
}

IntervalWitness interval_witness(const SFTSpec& spec, const Rational& target, std::size_t length) {
  const SftDensities dens = sft_densities(spec);
  if (target < dens.d1 || target > dens.d2) throw DomainError("target density outside [d(u_1), d(u_2)]");
  const SftWords words = sft_words();
  const std::array<std::vector<PairDigit>, 2> blocks{pair_word(spec, words.u1_first, words.u1_second),
                                                     pair_word(spec, words.u2_first, words.u2_second)};
  std::array<std::int64_t, 2> zeros{};
  for (std::size_t k = 0; k < 2; ++k) {
    for (const auto& d : blocks[k]) zeros[k] += is_zero_pair(d) ? 1 : 0;
  }
  IntervalWitness out;
  out.target = target;
  out.prefix.reserve(length + blocks[0].size());
  const std::int64_t a = target.numerator();
  const std::int64_t b = target.denominator();
  std::int64_t z = 0;
  while (out.prefix.size() < length) {
    const auto len = static_cast<std::int64_t>(out.prefix.size());
    auto miss = [&](std::size_t k) {
      return std::llabs((z + zeros[k]) * b - a * (len + static_cast<std::int64_t>(blocks[k].size())));
    };
    const std::size_t pick = miss(1) < miss(0) ? 1 : 0;
    z += zeros[pick];
    out.blocks.push_back(static_cast<std::uint8_t>(pick + 1));
    out.prefix.insert(out.prefix.end(), blocks[pick].begin(), blocks[pick].end());
  }
  out.zero_pairs = static_cast<std::size_t>(z);
  return out;
}

std::vector<KLFamily> default_kl_families(std::size_t horizon) {
  const std::size_t levels = 40;
  auto constant = [&](std::uint64_t j, std::uint8_t l) {
    return KLTailDescriptor{std::vector<std::uint64_t>(levels, j), std::vector<std::uint8_t>(levels, l), false,
                            horizon};
  };
  std::vector<KLFamily> out;
  out.push_back({"j=1,l=1", constant(1, 1), false});
  out.push_back({"j=1,l=0", constant(1, 0), false});
  out.push_back({"j=2,l=1", constant(2, 1), false});
  out.push_back({"j=0,l=1", constant(0, 1), false});
  KLTailDescriptor alternating = constant(1, 0);
  for (std::size_t k = 0; k < levels; ++k) {
    alternating.j[k] = k % 2 == 0 ? 2 : 1;
    alternating.l[k] = static_cast<std::uint8_t>(k % 2);
  }
  out.push_back({"j=2,1,2,1..,l=0,1,0,1..", alternating, false});
  KLTailDescriptor mirrored = constant(1, 1);
  mirrored.reflected = true;
  out.push_back({"j=1,l=1,reflected", mirrored, false});
  out.push_back({"(e0 E0)^inf", KLTailDescriptor{{horizon}, {}, false, horizon}, true});
  return out;
}

KLDensityReport kl_density_check(const std::vector<KLFamily>& families, std::size_t horizon, int level) {
  if (level < 1 || level > kMaxFamilyTerms - 2) throw DomainError("density level out of range");
  KLDensityReport report;
  report.level = level;
  report.horizon = horizon;
  report.bound = 1.0 / (3.0 * std::ldexp(1.0, level + 1));
  const Rational third(1, 3);
  for (const auto& f : families) {
    KLTailDescriptor desc = f.descriptor;
    desc.length = horizon;
    const TernaryWord w = kl_tail(desc);
    KLDensityRow row;
    row.family = f.name;
    row.length = w.size();
    row.excluded = f.excluded;
    row.frequency = zero_frequency(w);
    row.deviation = std::fabs(to_double(row.frequency - third));
    row.pass = f.excluded ? row.frequency == Rational(0) : (w.size() == horizon && row.deviation < report.bound);
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  for (int n = 1; n <= level; ++n) {
    const auto blocks = b_blocks(n);
    const Rational a = alternating_density(n);
    const Rational step1(1, std::int64_t{1} << (n + 1));
    const Rational step2(1, std::int64_t{1} << (n + 2));
    const bool odd = n % 2 == 1;
    const std::array<Rational, 4> expected{odd ? a - step1 : a + step1, odd ? a - step2 : a + step2,
                                           odd ? a - step1 : a + step1, odd ? a - step2 : a + step2};
    for (int k = 0; k < 4; ++k) {
      BlockDensityRow row{n, k + 1, d_star(blocks[static_cast<std::size_t>(k)]), expected[static_cast<std::size_t>(k)],
                          false};
      row.pass = row.measured == row.expected;
      report.pass = report.pass && row.pass;
      report.blocks.push_back(row);
    }
  }
  return report;
}

DimensionSpectrum spectrum_of(const BaseValue& q, const SpectrumOptions& options) {
  const RegimeLabel regime = classify(q, options.bases);
  DimensionSpectrum out{regime, q, full_dimension(q), {}, {}, std::nullopt, std::nullopt};
  std::vector<Rational> densities{Rational(0), Rational(1)};
  switch (regime.kind) {
    case RegimeLabel::Kind::kFinite: {
      FamilyPart family;
      for (int n = 1; n < regime.m; ++n) {
        family.densities.push_back(alternating_density(n));
        family.values.push_back(dimension(q, family.densities.back()));
        densities.push_back(family.densities.back());
      }
      out.family = std::move(family);
      break;
    }
    case RegimeLabel::Kind::kKomornikLoreti: {
      if (options.kl_terms < 1 || options.kl_terms > kMaxFamilyTerms) {
        throw DomainError("kl_terms must lie in 1.." + std::to_string(kMaxFamilyTerms));
      }
      FamilyPart family;
      for (int n = 1; n <= options.kl_terms; ++n) {
        family.densities.push_back(alternating_density(n));
        family.values.push_back(dimension(q, family.densities.back()));
      }
      family.accumulation_density = Rational(1, 3);
      family.accumulation = dimension(q, *family.accumulation_density);
      densities.push_back(Rational(1, 3));
      out.family = std::move(family);
      break;
    }
    case RegimeLabel::Kind::kInterval: {
      const SFTSpec spec = sft_spec(q, options);
      const SftDensities d = sft_densities(spec);
      out.interval = IntervalPart{dimension(q, d.d1), dimension(q, d.d2), true, d.d1, d.d2, spec.n};
      break;
    }
  }
  std::sort(densities.begin(), densities.end());
  densities.erase(std::unique(densities.begin(), densities.end()), densities.end());
  out.isolated_densities = densities;
  for (const auto& d : densities) out.isolated.push_back(dimension(q, d));
  return out;
}

}  // namespace gasket
