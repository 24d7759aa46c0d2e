#include "gasket/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "gasket/errors.hpp"
#include "gasket/expansions.hpp"

namespace gasket {

namespace {

void check_depth(std::size_t depth, std::size_t max_depth) {
  if (depth == 0) throw DomainError("depth must be positive");
  if (depth > max_depth) {
    throw ResourceError("depth " + std::to_string(depth) + " exceeds cap " + std::to_string(max_depth));
  }
}

double working_q(const BaseValue& q) {
  q.require_working_base();
  return q.value();
}

// Enumerates sum a_i q^{-i} over a_i in choices[i], lexicographically.
std::vector<Point> expand(const std::vector<std::vector<Omega1Digit>>& choices, double q, Point offset) {
  std::vector<Point> points{offset};
  double scale = 1.0;
  for (const auto& level : choices) {
    scale /= q;
    std::vector<Point> next;
    next.reserve(points.size() * level.size());
    for (const auto& p : points) {
      for (const auto& a : level) next.push_back({p.x + a.x * scale, p.y + a.y * scale});
    }
    points = std::move(next);
  }
  return points;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

struct Viewport {
  double x0 = 0;
  double width = 0;
};

Viewport viewport(double q) {
  const double lo = -1.0 / (q - 1.0);
  const double hi = 2.0 / (q - 1.0);
  const double margin = 0.05 * (hi - lo);
  return {lo - margin, hi - lo + 2 * margin};
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::vector<Omega1Digit> branch_set(PairDigit t) {
  if (!in_omega2(t)) throw DomainError("pair digit " + to_string(t) + " is not a difference of gasket digits");
  std::vector<Omega1Digit> out;
  for (const auto& a : kOmega1) {
    const Omega1Digit b{a.x - value(t.first), a.y - value(t.second)};
    for (const auto& c : kOmega1) {
      if (c == b) out.push_back(a);
    }
  }
  return out;
}

std::string to_string(PointCloud::Kind kind) {
  switch (kind) {
    case PointCloud::Kind::kGasket: return "gasket";
    case PointCloud::Kind::kTranslate: return "translate";
    case PointCloud::Kind::kIntersection: return "intersection";
  }
  return "?";
}

PointCloud build_gasket(const BaseValue& q, std::size_t depth, std::size_t max_depth) {
  check_depth(depth, max_depth);
  const double qv = working_q(q);
  const std::vector<std::vector<Omega1Digit>> choices(depth, {kOmega1.begin(), kOmega1.end()});
  return {PointCloud::Kind::kGasket, qv, depth, expand(choices, qv, {0, 0})};
}

Point translation(const BaseValue& q, const PairSeq& t) {
  const long double qv = working_q(q);
  auto sum = [&](auto pick) {
    std::vector<Trit> pre, per;
    for (const auto& d : t.preperiod()) pre.push_back(pick(d));
    for (const auto& d : t.period()) per.push_back(pick(d));
    return static_cast<double>(evaluate(TernarySeq(std::move(pre), std::move(per)), qv));
  };
  return {sum([](PairDigit d) { return d.first; }), sum([](PairDigit d) { return d.second; })};
}

PointCloud build_translate(const BaseValue& q, const PairSeq& t_expansion, std::size_t depth, std::size_t max_depth) {
  PointCloud cloud = build_gasket(q, depth, max_depth);
  const Point t = translation(q, t_expansion);
  for (auto& p : cloud.points) p = {p.x + t.x, p.y + t.y};
  cloud.kind = PointCloud::Kind::kTranslate;
  return cloud;
}

PointCloud build_intersection(const BaseValue& q, const PairSeq& t_expansion, std::size_t depth,
                              std::size_t max_depth) {
  check_depth(depth, max_depth);
  const double qv = working_q(q);
  const MatchReport report = analyze(t_expansion);
  if (!report.matched) {
    throw DomainError("expansion is unmatched at index " + std::to_string(*report.first_violation_index) +
                      "; the intersection is empty");
  }
  std::vector<std::vector<Omega1Digit>> choices;
  choices.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) choices.push_back(branch_set(t_expansion[i]));
  return {PointCloud::Kind::kIntersection, qv, depth, expand(choices, qv, {0, 0})};
}

std::string layer_color(PointCloud::Kind kind) {
  switch (kind) {
    case PointCloud::Kind::kGasket: return "#1f4e79";
    case PointCloud::Kind::kTranslate: return "#c55a11";
    case PointCloud::Kind::kIntersection: return "#2e7d32";
  }
  return "#000000";
}

std::string render_svg(const std::vector<PointCloud>& clouds, double q) {
  if (!(q > 2 && q < 3)) throw DomainError("base must lie in (2,3)");
  const Viewport v = viewport(q);
  // y is flipped: svg_y = -y, so the viewBox starts at -(x0 + width).
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" + fixed(v.x0) + " " +
         fixed(-(v.x0 + v.width)) + " " + fixed(v.width) + " " + fixed(v.width) + "\">\n";
  for (const auto& cloud : clouds) {
    const double r = 0.5 * std::pow(cloud.q, -static_cast<double>(cloud.depth));
    out += "<g id=\"" + to_string(cloud.kind) + "\" fill=\"" + layer_color(cloud.kind) + "\" fill-opacity=\"0.6\">\n";
    for (const auto& p : cloud.points) {
      out += "<circle cx=\"" + fixed(p.x) + "\" cy=\"" + fixed(-p.y) + "\" r=\"" + fixed(r) + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

void emit_svg(const std::vector<PointCloud>& clouds, double q, const std::filesystem::path& path) {
  write_file(path, render_svg(clouds, q));
}

std::string render_ppm(const std::vector<PointCloud>& clouds, double q, int size) {
  if (!(q > 2 && q < 3)) throw DomainError("base must lie in (2,3)");
  if (size < 1 || size > 8192) throw DomainError("raster size must lie in 1..8192");
  const Viewport v = viewport(q);
  const double h = v.width / size;
  const auto n = static_cast<std::size_t>(size);
  std::vector<std::array<unsigned char, 3>> pixels(n * n, {255, 255, 255});
  for (const auto& cloud : clouds) {
    const std::string hex = layer_color(cloud.kind);
    const std::array<unsigned char, 3> rgb{static_cast<unsigned char>(std::stoi(hex.substr(1, 2), nullptr, 16)),
                                           static_cast<unsigned char>(std::stoi(hex.substr(3, 2), nullptr, 16)),
                                           static_cast<unsigned char>(std::stoi(hex.substr(5, 2), nullptr, 16))};
    for (const auto& p : cloud.points) {
      const auto c = static_cast<long>(std::floor((p.x - v.x0) / h));
      const auto r = static_cast<long>(std::floor((v.x0 + v.width - p.y) / h));
      if (c < 0 || r < 0 || c >= size || r >= size) continue;
      pixels[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(c)] = rgb;
    }
  }
  std::string out = "P6\n" + std::to_string(size) + " " + std::to_string(size) + "\n255\n";
  out.reserve(out.size() + 3 * n * n);
  for (const auto& px : pixels) out.append(reinterpret_cast<const char*>(px.data()), 3);
  return out;
}

void emit_ppm(const std::vector<PointCloud>& clouds, double q, const std::filesystem::path& path, int size) {
  write_file(path, render_ppm(clouds, q, size));
}

}  // namespace gasket
