#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "gasket/bases.hpp"
#include "gasket/matching.hpp"

namespace gasket {

/// A vertex of the gasket's digit set {(0,0), (0,1), (1,0)}.
struct Omega1Digit {
  int x = 0;
  int y = 0;
  friend bool operator==(const Omega1Digit&, const Omega1Digit&) = default;
};

inline constexpr std::array<Omega1Digit, 3> kOmega1{{{0, 0}, {0, 1}, {1, 0}}};

/// Digits a with a and a - t both in {(0,0),(0,1),(1,0)}, in the order of
/// kOmega1. Throws DomainError for t = (1,1) or (-1,-1).
std::vector<Omega1Digit> branch_set(PairDigit t);

inline constexpr std::size_t kDefaultMaxDepth = 12;

struct Point {
  double x = 0;
  double y = 0;
};

struct PointCloud {
  enum class Kind { kGasket, kTranslate, kIntersection };
  Kind kind = Kind::kGasket;
  double q = 0;
  std::size_t depth = 0;
  /// Lexicographic in the digit choices.
  std::vector<Point> points;
};

std::string to_string(PointCloud::Kind kind);

/// All 3^depth points sum_{i<=depth} c_i q^{-i}.
PointCloud build_gasket(const BaseValue& q, std::size_t depth, std::size_t max_depth = kDefaultMaxDepth);

/// The gasket points translated by t = sum t_i q^{-i}, t read from both
/// coordinates of `t_expansion`.
PointCloud build_translate(const BaseValue& q, const PairSeq& t_expansion, std::size_t depth,
                           std::size_t max_depth = kDefaultMaxDepth);

/// Points sum_{i<=depth} a_i q^{-i} with a_i ranging over branch_set(t_i).
/// Throws DomainError if the expansion is not matched.
PointCloud build_intersection(const BaseValue& q, const PairSeq& t_expansion, std::size_t depth,
                              std::size_t max_depth = kDefaultMaxDepth);

/// Translation vector (sum x_i q^{-i}, sum y_i q^{-i}) of a pair expansion.
Point translation(const BaseValue& q, const PairSeq& t_expansion);

/// Layer colors: gasket #1f4e79, translate #c55a11, intersection #2e7d32.
std::string layer_color(PointCloud::Kind kind);

/// Deterministic SVG. The viewport spans [-1/(q-1), 2/(q-1)] on both axes
/// plus a 5% margin, with y pointing up; each point is a circle of radius
/// q^{-depth}/2. Output is byte-identical for identical input.
std::string render_svg(const std::vector<PointCloud>& clouds, double q);
void emit_svg(const std::vector<PointCloud>& clouds, double q, const std::filesystem::path& path);

/// Binary PPM (P6), `size` x `size` pixels over the same viewport as the
/// SVG; pixel (c, r) covers x in [x0 + c*h, x0 + (c+1)*h) with rows counted
/// from the top.
std::string render_ppm(const std::vector<PointCloud>& clouds, double q, int size = 512);
void emit_ppm(const std::vector<PointCloud>& clouds, double q, const std::filesystem::path& path, int size = 512);

}  // namespace gasket
