#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gasket/bases.hpp"
#include "gasket/expansions.hpp"
#include "gasket/matching.hpp"

namespace gasket {

/// Frequency of the digit 0.
Rational d_star(std::span<const Trit> w);
/// Frequency of 0 within one period.
Rational d_star(const TernarySeq& s);

/// -sum_{i=1}^n (-1/2)^i.
Rational alternating_density(int n);

struct DensityRow {
  int n = 0;
  Rational measured{0};
  Rational expected{0};
  bool pass = false;
};

struct Lemma22Report {
  bool pass = true;
  std::vector<DensityRow> rows;
};

/// d_star(eps(n)) == alternating_density(n) for 1 <= n <= max_n.
Lemma22Report lemma_2_2_check(int max_n, int max_exponent = kDefaultMaxBlockExponent);

/// log 3 / log q.
double full_dimension(const BaseValue& q);
/// (log 3 / log q) * d.
double dimension(const BaseValue& q, const Rational& d);
double dimension(double q, const Rational& d);

struct SpectrumOptions {
  BasesOptions bases;
  ExpansionOptions expansions;
  int kl_terms = 32;
  int max_sft_level = 12;
  /// Closed letter paths up to this length are checked for uniqueness.
  int sft_path_length = 6;
};

/// Letters a, b, reflect(a), reflect(b) at level n.
enum class SftLetter : int { kA = 0, kB = 1, kAbar = 2, kBbar = 3 };
std::string to_string(SftLetter l);

using TransitionMatrix = std::array<std::array<int, 4>, 4>;

/// Rows and columns ordered a, b, reflect(a), reflect(b).
inline constexpr TransitionMatrix kSftTransition{{{0, 1, 1, 0}, {0, 0, 1, 0}, {1, 0, 0, 1}, {1, 0, 0, 0}}};

struct SFTSpec {
  int n = 0;
  /// a_n = 0 lambda_1 ... lambda_{2^n - 1}, b_n = (-1) lambda_1 ... lambda_{2^n - 1},
  /// and their reflections.
  std::array<TernaryWord, 4> letters;
  TransitionMatrix transition = kSftTransition;

  const TernaryWord& letter(SftLetter l) const { return letters[static_cast<std::size_t>(l)]; }
};

SFTSpec sft_letters(int n);

using LetterPath = std::vector<SftLetter>;

/// Closed paths are admissible when every cyclic adjacency is allowed.
bool admissible_cycle(const LetterPath& path, const TransitionMatrix& m = kSftTransition);
TernaryWord spell(const SFTSpec& spec, const LetterPath& path);

/// Coordinates of u_1 = (b a' b' a, b' a b a') and u_2 = (a' a, a a'), where
/// x' is the reflection of x.
struct SftWords {
  LetterPath u1_first, u1_second, u2_first, u2_second;
};
SftWords sft_words();

/// Smallest level n <= options.max_sft_level whose subshift passes the
/// uniqueness oracle on (u_1)^inf, (u_2)^inf and every closed admissible
/// path of length <= options.sft_path_length. Requires the Interval regime.
/// Throws CapabilityError when no level works.
SFTSpec sft_spec(const BaseValue& q, const SpectrumOptions& options = {});

struct SftDensities {
  Rational d1{0};
  Rational d2{0};
  std::size_t u1_length = 0;
  std::size_t u2_length = 0;
};

/// Exact (0,0)-densities of the pair words u_1 and u_2. Throws InternalError
/// if either word is unmatched or d1 >= d2.
SftDensities sft_densities(const SFTSpec& spec);

struct IntervalWitness {
  /// Block choices in order, 1 for u_1 and 2 for u_2.
  std::vector<std::uint8_t> blocks;
  std::vector<PairDigit> prefix;
  std::size_t zero_pairs = 0;
  Rational target{0};

  Rational frequency() const {
    return Rational(static_cast<std::int64_t>(zero_pairs), static_cast<std::int64_t>(prefix.size()));
  }
};

/// Concatenates u_1 and u_2, each time appending the block that keeps the
/// running (0,0)-frequency closest to `target` (ties go to u_1), until at
/// least `length` pairs are emitted.
IntervalWitness interval_witness(const SFTSpec& spec, const Rational& target, std::size_t length);

struct KLFamily {
  std::string name;
  KLTailDescriptor descriptor;
  /// The all-(e_0 E_0) family, whose zero frequency is 0 and which the
  /// density claim excludes.
  bool excluded = false;
};

struct KLDensityRow {
  std::string family;
  std::size_t length = 0;
  Rational frequency{0};
  double deviation = 0;
  bool excluded = false;
  bool pass = false;
};

struct BlockDensityRow {
  int n = 0;
  int block = 0;
  Rational measured{0};
  Rational expected{0};
  bool pass = false;
};

struct KLDensityReport {
  int level = 0;
  double bound = 0;
  std::size_t horizon = 0;
  std::vector<KLDensityRow> rows;
  std::vector<BlockDensityRow> blocks;
  bool pass = true;
};

/// Deterministic sample of parameter families.
std::vector<KLFamily> default_kl_families(std::size_t horizon);

/// Zero frequency of each family's prefix of length `horizon` must lie
/// within 1/(3 * 2^{level+1}) of 1/3 (excluded families must have frequency
/// 0). Also checks d_star(B_k^inf) against the closed forms for 1 <= n <= level.
KLDensityReport kl_density_check(const std::vector<KLFamily>& families, std::size_t horizon, int level = 6);

struct FamilyPart {
  std::vector<Rational> densities;
  std::vector<double> values;
  std::optional<Rational> accumulation_density;
  std::optional<double> accumulation;
};

struct IntervalPart {
  double lo = 0;
  double hi = 0;
  bool containment_only = true;
  Rational d_lo{0};
  Rational d_hi{0};
  int sft_n = 0;
};

struct DimensionSpectrum {
  RegimeLabel regime;
  BaseValue q;
  double full_dimension = 0;
  /// Ascending.
  std::vector<double> isolated;
  std::vector<Rational> isolated_densities;
  std::optional<FamilyPart> family;
  std::optional<IntervalPart> interval;
};

DimensionSpectrum spectrum_of(const BaseValue& q, const SpectrumOptions& options = {});

}  // namespace gasket
