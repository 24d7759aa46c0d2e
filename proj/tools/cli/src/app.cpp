#include "gasket_cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gasket/errors.hpp"
#include "gasket/geometry.hpp"
#include "gasket/spectrum.hpp"
#include "gasket_cli/selftest.hpp"

namespace gasket::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CommandOutput {
  Json inputs = Json::object();
  Json result = Json::object();
  std::string text;
  int status = kExitOk;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string rat(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

Json enclosure_json(const BaseValue& q) {
  Json j;
  j["lo"] = q.lo().to_string(30, MPFR_RNDD);
  j["hi"] = q.hi().to_string(30, MPFR_RNDU);
  j["value"] = q.value();
  return j;
}

BaseValue parse_base(const std::string& text, const RunConfig& config) {
  if (text == "kl" || text == "KL") return kl_constant(config.tolerance, config.bases_options());
  if (text.size() > 1 && (text[0] == 'q' || text[0] == 'Q')) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(text.substr(1), &used);
      if (used != text.size() - 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw DomainError("base must be a decimal, qN or kl; got '" + text + "'");
    }
    return base_root(n, config.bases_options());
  }
  return BaseValue::parse(text);
}

PairSeq parse_pair_seq(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos) {
    throw DomainError("pair sequence must be written A|B with two ternary sequences");
  }
  return zip(parse_seq(text.substr(0, bar)), parse_seq(text.substr(bar + 1)));
}

std::string pair_seq_string(const PairSeq& p) {
  std::vector<Trit> a, b, pa, pb;
  for (const auto& d : p.preperiod()) {
    a.push_back(d.first);
    b.push_back(d.second);
  }
  for (const auto& d : p.period()) {
    pa.push_back(d.first);
    pb.push_back(d.second);
  }
  return to_string(a) + ";" + to_string(pa) + "^inf|" + to_string(b) + ";" + to_string(pb) + "^inf";
}

std::string truncated_word(const std::string& w, std::size_t limit = 64) {
  return w.size() <= limit ? w : w.substr(0, limit) + "...";
}

Json regime_json(const RegimeLabel& r) {
  Json j;
  j["label"] = r.to_string();
  switch (r.kind) {
    case RegimeLabel::Kind::kFinite: j["kind"] = "finite"; break;
    case RegimeLabel::Kind::kKomornikLoreti: j["kind"] = "komornik_loreti"; break;
    case RegimeLabel::Kind::kInterval: j["kind"] = "interval"; break;
  }
  if (r.kind == RegimeLabel::Kind::kFinite) j["m"] = r.m;
  return j;
}

Json lemma_json(const LemmaReport& r) {
  Json j;
  j["lemma"] = r.lemma;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["pass"] = r.pass;
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    Json x;
    x["i"] = w.i;
    x["u"] = w.u;
    x["term"] = w.u == 0 ? Json(nullptr) : Json(to_string(w.term));
    witnesses.push_back(x);
  }
  j["witnesses"] = witnesses;
  j["counterexamples"] = r.counterexamples;
  j["inconclusive"] = r.inconclusive;
  j["excluded"] = r.excluded;
  return j;
}

std::string lemma_text(const LemmaReport& r) {
  std::ostringstream s;
  s << "lemma " << r.lemma;
  for (const auto& [k, v] : r.params) s << " " << k << "=" << v;
  s << ": " << (r.pass ? "pass" : "FAIL") << " (" << r.witnesses.size() << " witnesses, " << r.counterexamples.size()
    << " counterexamples, " << r.inconclusive.size() << " inconclusive, " << r.excluded.size() << " excluded)\n";
  for (auto i : r.counterexamples) s << "  counterexample i=" << i << "\n";
  for (auto i : r.inconclusive) s << "  inconclusive i=" << i << "\n";
  return s.str();
}

std::vector<int> parse_pattern(const std::string& text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c < '1' || c > '4') throw DomainError("block pattern digits must be 1..4, got '" + text + "'");
    out.push_back(c - '0');
  }
  return out;
}

// ---- commands -------------------------------------------------------------

CommandOutput cmd_bases(const RunConfig& config, int max_n) {
  CommandOutput o;
  o.inputs["max_n"] = max_n;
  o.inputs["tolerance"] = config.tolerance;
  if (max_n < 1 || max_n > config.max_ladder_index) {
    throw ResourceError("max-n must lie in 1.." + std::to_string(config.max_ladder_index));
  }
  BaseLadder ladder(config.bases_options());
  Json rows = Json::array();
  std::ostringstream t;
  t << "n  w_n  q_n\n";
  for (int n = 1; n <= max_n; ++n) {
    const LadderWord w = ladder_word(n, config.max_ladder_index);
    const BaseValue& q = ladder.root(n);
    Json row;
    row["n"] = n;
    row["word"] = truncated_word(to_string(w));
    row["word_length"] = w.digits.size();
    row["q"] = enclosure_json(q);
    rows.push_back(row);
    t << n << "  " << truncated_word(to_string(w), 32) << "  " << q.to_string(25) << "\n";
  }
  o.result["ladder"] = rows;
  const KLEnclosure kl = kl_enclosure(config.tolerance, config.bases_options());
  Json k;
  k["q"] = enclosure_json(kl.value);
  k["ladder_index"] = kl.ladder_index;
  Json gaps = Json::array();
  for (const auto& g : kl.gaps) gaps.push_back(g.to_string(6));
  k["gaps"] = gaps;
  o.result["kl"] = k;
  t << "q_KL  " << kl.value.to_string(25) << "  (lower end q_" << kl.ladder_index << ")\n";
  for (std::size_t i = 0; i < kl.gaps.size(); ++i) {
    t << "gap q_" << i + 2 << " - q_" << i + 1 << " = " << kl.gaps[i].to_string(6) << "\n";
  }
  o.text = t.str();
  return o;
}

CommandOutput cmd_classify(const RunConfig& config, const std::string& qtext) {
  CommandOutput o;
  o.inputs["q"] = qtext;
  const BaseValue q = parse_base(qtext, config);
  const RegimeLabel r = classify(q, config.bases_options());
  o.result["regime"] = regime_json(r);
  o.result["q"] = enclosure_json(q);
  o.text = "q = " + q.to_string(20) + "\nregime " + r.to_string() + "\n";
  return o;
}

CommandOutput cmd_expand(const RunConfig& config, const std::string& qtext, const std::string& xtext,
                         std::size_t depth, bool with_alpha) {
  CommandOutput o;
  o.inputs["q"] = qtext;
  o.inputs["x"] = xtext;
  o.inputs["depth"] = depth;
  if (depth == 0 || depth > 4096) throw DomainError("depth must lie in 1..4096");
  const BaseValue q = parse_base(qtext, config);
  long double x = 0;
  try {
    std::size_t used = 0;
    x = std::stold(xtext, &used);
    if (used != xtext.size()) throw std::invalid_argument(xtext);
  } catch (const std::exception&) {
    throw DomainError("x must be a decimal number, got '" + xtext + "'");
  }
  const TernaryWord digits = greedy_expand(x, q, depth);
  o.result["greedy"] = to_string(digits);
  o.text = "greedy " + to_string(digits) + "\n";
  if (with_alpha) {
    const DigitWord alpha = quasi_greedy_alpha(q, depth, config.expansion_options());
    std::string a;
    for (auto d : alpha) a.push_back(static_cast<char>('0' + d));
    o.result["alpha"] = a;
    o.text += "alpha  " + a + "\n";
  }
  return o;
}

CommandOutput cmd_unique(const RunConfig& config, const std::string& qtext, const std::string& seqtext) {
  CommandOutput o;
  o.inputs["q"] = qtext;
  o.inputs["seq"] = seqtext;
  const BaseValue q = parse_base(qtext, config);
  const TernarySeq s = parse_seq(seqtext);
  const UniquenessVerdict v = check_unique(s, q, config.expansion_options());
  o.result["sequence"] = to_string(s);
  o.result["unique"] = v.unique;
  o.result["failing_index"] = v.unique ? Json(nullptr) : Json(v.failing_index);
  o.result["clause"] = v.unique ? Json(nullptr) : Json(to_string(v.clause));
  o.result["horizon_used"] = v.horizon_used;
  o.text = to_string(s) + (v.unique ? " is unique" : " is not unique") + "\n";
  if (!v.unique) o.text += "fails at n=" + std::to_string(v.failing_index) + " (" + to_string(v.clause) + ")\n";
  return o;
}

struct DensityArgs {
  std::string seq;
  std::string word;
  int eps_n = -1;
  int lemma_max_n = -1;
  std::size_t kl_horizon = 0;
  int level = 6;
  std::string sft_q;
};

CommandOutput cmd_density(const RunConfig& config, const DensityArgs& a) {
  CommandOutput o;
  const int modes = !a.seq.empty() + !a.word.empty() + (a.eps_n >= 0) + (a.lemma_max_n >= 0) + (a.kl_horizon > 0) +
                    !a.sft_q.empty();
  if (modes != 1) throw CLI::ValidationError("density: give exactly one of --seq, --word, --eps, --lemma-2.2, --kl-horizon, --sft");
  std::ostringstream t;
  if (!a.seq.empty() || !a.word.empty()) {
    const Rational d = a.seq.empty() ? d_star(parse_word(a.word)) : d_star(parse_seq(a.seq));
    o.inputs[a.seq.empty() ? "word" : "seq"] = a.seq.empty() ? a.word : a.seq;
    o.result["d_star"] = rat(d);
    t << "d* = " << rat(d) << "\n";
  } else if (a.eps_n >= 0) {
    o.inputs["eps"] = a.eps_n;
    const Rational d = d_star(eps(a.eps_n, config.max_block_exponent));
    o.result["d_star"] = rat(d);
    o.result["alternating_sum"] = rat(alternating_density(a.eps_n));
    t << "d*(eps_" << a.eps_n << ") = " << rat(d) << "\n";
  } else if (a.lemma_max_n >= 0) {
    o.inputs["lemma_2_2_max_n"] = a.lemma_max_n;
    const Lemma22Report r = lemma_2_2_check(a.lemma_max_n, config.max_block_exponent);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
      rows.push_back(Json{{"n", row.n}, {"measured", rat(row.measured)}, {"expected", rat(row.expected)},
                          {"pass", row.pass}});
      t << "n=" << row.n << "  " << rat(row.measured) << "  " << (row.pass ? "ok" : "MISMATCH") << "\n";
    }
    o.result["rows"] = rows;
    o.result["pass"] = r.pass;
    if (!r.pass) o.status = kExitFailure;
  } else if (a.kl_horizon > 0) {
    o.inputs["kl_horizon"] = a.kl_horizon;
    o.inputs["level"] = a.level;
    const KLDensityReport r = kl_density_check(default_kl_families(a.kl_horizon), a.kl_horizon, a.level);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
      rows.push_back(Json{{"family", row.family}, {"length", row.length}, {"frequency", rat(row.frequency)},
                          {"deviation", row.deviation}, {"excluded", row.excluded}, {"pass", row.pass}});
      t << row.family << "  " << rat(row.frequency) << "  |f-1/3|=" << num(row.deviation)
        << (row.excluded ? "  (excluded)" : "") << "  " << (row.pass ? "ok" : "FAIL") << "\n";
    }
    Json blocks = Json::array();
    for (const auto& b : r.blocks) {
      blocks.push_back(Json{{"n", b.n}, {"block", b.block}, {"measured", rat(b.measured)},
                            {"expected", rat(b.expected)}, {"pass", b.pass}});
    }
    o.result["bound"] = r.bound;
    o.result["rows"] = rows;
    o.result["blocks"] = blocks;
    o.result["pass"] = r.pass;
    t << "bound " << num(r.bound) << "  " << (r.pass ? "pass" : "FAIL") << "\n";
    if (!r.pass) o.status = kExitFailure;
  } else {
    o.inputs["sft_q"] = a.sft_q;
    const BaseValue q = parse_base(a.sft_q, config);
    const SFTSpec spec = sft_spec(q, config.spectrum_options());
    const SftDensities d = sft_densities(spec);
    Json letters = Json::object();
    for (int k = 0; k < 4; ++k) letters[to_string(static_cast<SftLetter>(k))] = to_string(spec.letters[static_cast<std::size_t>(k)]);
    o.result["n"] = spec.n;
    o.result["letters"] = letters;
    o.result["d_u1"] = rat(d.d1);
    o.result["d_u2"] = rat(d.d2);
    t << "level n=" << spec.n << "  d(u_1)=" << rat(d.d1) << "  d(u_2)=" << rat(d.d2) << "\n";
  }
  o.text = t.str();
  return o;
}

struct VerifyArgs {
  std::string lemma;
  int n = 0;
  int m = 0;
  std::string variant = "minus";
  std::string upper = "12";
  std::string lower = "12";
  std::size_t max_shift = 0;
};

CommandOutput cmd_verify(const RunConfig& config, const VerifyArgs& a) {
  CommandOutput o;
  o.inputs["lemma"] = a.lemma;
  o.inputs["n"] = a.n;
  const int cap = std::min(config.max_block_exponent, kDefaultMaxVerifyExponent);
  LemmaReport r;
  if (a.lemma == "3.1") {
    r = verify_lemma_3_1(a.n, cap);
  } else if (a.lemma == "3.2") {
    o.inputs["variant"] = a.variant;
    if (a.variant != "minus" && a.variant != "plain") throw DomainError("variant must be minus or plain");
    r = verify_lemma_3_2(a.n, a.variant == "minus" ? BlockVariant::kMinus : BlockVariant::kPlain, cap);
  } else if (a.lemma == "3.4") {
    o.inputs["m"] = a.m;
    r = verify_lemma_3_4(a.n, a.m, cap);
  } else if (a.lemma == "blocks") {
    o.inputs["upper"] = a.upper;
    o.inputs["lower"] = a.lower;
    o.inputs["max_shift"] = a.max_shift;
    if (a.n > cap) throw ResourceError("n exceeds cap " + std::to_string(cap));
    r = verify_block_case(a.n, parse_pattern(a.upper), parse_pattern(a.lower), a.max_shift);
  } else {
    throw DomainError("unknown lemma '" + a.lemma + "'");
  }
  o.result = lemma_json(r);
  o.text = lemma_text(r);
  if (!r.pass) o.status = kExitFailure;
  return o;
}

CommandOutput cmd_dq(const RunConfig& config, const std::string& qtext) {
  CommandOutput o;
  o.inputs["q"] = qtext;
  o.inputs["kl_terms"] = config.kl_terms;
  const BaseValue q = parse_base(qtext, config);
  const DimensionSpectrum s = spectrum_of(q, config.spectrum_options());
  std::ostringstream t;
  o.result["regime"] = regime_json(s.regime);
  o.result["dim_e"] = s.full_dimension;
  o.result["isolated"] = s.isolated;
  Json dens = Json::array();
  for (const auto& d : s.isolated_densities) dens.push_back(rat(d));
  o.result["isolated_densities"] = dens;
  t << "regime " << s.regime.to_string() << "\nq = " << q.to_string(20) << "\ndim E = " << num(s.full_dimension)
    << "\nisolated:";
  for (std::size_t i = 0; i < s.isolated.size(); ++i) {
    t << " " << num(s.isolated[i]) << " [" << rat(s.isolated_densities[i]) << "]";
  }
  t << "\n";
  if (s.family) {
    Json f;
    Json terms = Json::array();
    for (const auto& d : s.family->densities) terms.push_back(rat(d));
    f["terms"] = terms;
    f["values"] = s.family->values;
    f["accumulation"] = s.family->accumulation ? Json(*s.family->accumulation) : Json(nullptr);
    f["accumulation_density"] =
        s.family->accumulation_density ? Json(rat(*s.family->accumulation_density)) : Json(nullptr);
    o.result["family"] = f;
    t << "family: " << s.family->densities.size() << " terms";
    if (s.family->accumulation) t << ", accumulating at " << num(*s.family->accumulation);
    t << "\n";
  } else {
    o.result["family"] = nullptr;
  }
  Json prov;
  if (s.interval) {
    o.result["interval"] = Json{{"lo", s.interval->lo},
                                {"hi", s.interval->hi},
                                {"containment_only", s.interval->containment_only},
                                {"d_lo", rat(s.interval->d_lo)},
                                {"d_hi", rat(s.interval->d_hi)}};
    prov["n"] = s.interval->sft_n;
    t << "contains interval [" << num(s.interval->lo) << ", " << num(s.interval->hi) << "] (subshift level "
      << s.interval->sft_n << ")\n";
  } else {
    o.result["interval"] = nullptr;
  }
  if (s.regime.kind == RegimeLabel::Kind::kFinite) prov["m"] = s.regime.m;
  prov["q_enclosure"] = enclosure_json(q);
  o.result["provenance"] = prov;
  o.text = t.str();
  return o;
}

struct RenderArgs {
  std::string q;
  std::string t_seq;
  std::size_t depth = 6;
  std::string out;
  std::string layers = "e,et,int";
  std::string image;
  int raster_size = 512;
};

CommandOutput cmd_render(const RunConfig& config, const RenderArgs& a) {
  CommandOutput o;
  o.inputs["q"] = a.q;
  o.inputs["t_seq"] = a.t_seq;
  o.inputs["depth"] = a.depth;
  o.inputs["layers"] = a.layers;
  const BaseValue q = parse_base(a.q, config);
  const PairSeq t = parse_pair_seq(a.t_seq);
  std::vector<PointCloud> clouds;
  std::stringstream layers(a.layers);
  std::string layer;
  while (std::getline(layers, layer, ',')) {
    if (layer == "e") {
      clouds.push_back(build_gasket(q, a.depth));
    } else if (layer == "et") {
      clouds.push_back(build_translate(q, t, a.depth));
    } else if (layer == "int") {
      clouds.push_back(build_intersection(q, t, a.depth));
    } else {
      throw DomainError("unknown layer '" + layer + "' (expected e, et, int)");
    }
  }
  std::string image = a.image;
  if (image.empty()) image = a.out.size() >= 4 && a.out.substr(a.out.size() - 4) == ".ppm" ? "ppm" : "svg";
  if (image == "svg") {
    emit_svg(clouds, q.value(), a.out);
  } else if (image == "ppm") {
    emit_ppm(clouds, q.value(), a.out, a.raster_size);
  } else {
    throw DomainError("image format must be svg or ppm");
  }
  o.inputs["image"] = image;
  Json counts = Json::array();
  std::ostringstream txt;
  for (const auto& c : clouds) {
    counts.push_back(Json{{"layer", to_string(c.kind)}, {"points", c.points.size()}});
    txt << to_string(c.kind) << ": " << c.points.size() << " points\n";
  }
  o.result["expansion"] = pair_seq_string(t);
  o.result["layers"] = counts;
  o.result["out"] = a.out;
  txt << "wrote " << a.out << "\n";
  o.text = txt.str();
  return o;
}

CommandOutput cmd_selftest(const RunConfig& config, const EpsProvider& provider) {
  CommandOutput o;
  const SelftestReport r = run_selftest(config, provider);
  Json items = Json::array();
  std::ostringstream t;
  for (const auto& item : r.items) {
    items.push_back(Json{{"name", item.name}, {"range", item.range}, {"pass", item.pass}, {"detail", item.detail}});
    t << (item.pass ? "PASS " : "FAIL ") << item.name << " [" << item.range << "]";
    if (!item.detail.empty()) t << "  " << item.detail;
    t << "\n";
  }
  o.result["items"] = items;
  o.result["pass"] = r.all_pass();
  o.text = t.str();
  if (!r.all_pass()) o.status = kExitFailure;
  return o;
}

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const CLI::ParseError*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const PrecisionError*>(&e) != nullptr) return kExitPrecision;
  return kExitFailure;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliContext& ctx) {
  CLI::App app{"Intersections of the Sierpinski gasket with its translates in bases q in (2,3)", "gasket"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::string format_text;
  std::optional<std::string> config_file;
  bool timing = false;
  ConfigOverrides flags;
  app.add_option("--format", format_text, "Report format: text or json");
  app.add_option("--config", config_file, "JSON config file (keys: tolerance, max_block_exponent, max_n, kl_terms, "
                                          "alpha_horizon, format)");
  app.add_flag("--timing", timing, "Add elapsed milliseconds to the report");
  app.add_option("--tolerance", flags.tolerance, "Base enclosure tolerance (GS_TOLERANCE)");
  app.add_option("--max-block-exponent", flags.max_block_exponent, "Cap on block exponents (GS_MAX_BLOCK_EXPONENT)");
  app.add_option("--max-ladder-index", flags.max_ladder_index, "Cap on ladder indices (GS_MAX_N)");
  app.add_option("--kl-terms", flags.kl_terms, "Family terms reported at q_KL (GS_KL_TERMS)");
  app.add_option("--alpha-horizon", flags.alpha_horizon, "Initial digits of alpha(q) (GS_ALPHA_HORIZON)");

  const char* q_help = "Base: decimal, qN for the ladder root q_N, or kl";

  auto* bases = app.add_subcommand("bases", "Ladder words w_n, roots q_n and q_KL");
  int max_n = 8;
  bases->add_option("--max-n", max_n, "Largest ladder index")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "Regime of a base");
  std::string q_text;
  classify_cmd->add_option("--q", q_text, q_help)->required();

  auto* expand = app.add_subcommand("expand", "Greedy expansion of x and quasi-greedy expansion of 1");
  std::string x_text;
  std::size_t depth = 16;
  bool with_alpha = false;
  expand->add_option("--q", q_text, q_help)->required();
  expand->add_option("--x", x_text, "Point in [-1/(q-1), 1/(q-1)]")->required();
  expand->add_option("--depth", depth, "Number of digits")->capture_default_str();
  expand->add_flag("--alpha", with_alpha, "Also print alpha(q)");

  auto* unique = app.add_subcommand("unique", "Decide whether a sequence is a unique expansion");
  std::string seq_text;
  unique->add_option("--q", q_text, q_help)->required();
  unique->add_option("--seq", seq_text, "Sequence 'pre;per^inf' over - 0 +")->required();

  auto* density = app.add_subcommand("density", "Zero densities and density checks");
  DensityArgs dargs;
  density->add_option("--seq", dargs.seq, "Eventually periodic sequence");
  density->add_option("--word", dargs.word, "Finite word");
  density->add_option("--eps", dargs.eps_n, "Density of eps_n");
  density->add_option("--lemma-2.2", dargs.lemma_max_n, "Check the alternating-sum law for 1..N");
  density->add_option("--kl-horizon", dargs.kl_horizon, "Zero frequency of sampled tail families at this length");
  density->add_option("--level", dargs.level, "Block level for the tail-family bound")->capture_default_str();
  density->add_option("--sft", dargs.sft_q, "Subshift densities d(u_1), d(u_2) at this base");

  auto* verify = app.add_subcommand("verify", "Exhaustive matching verifiers");
  VerifyArgs vargs;
  verify->add_option("--lemma", vargs.lemma, "3.1, 3.2, 3.4 or blocks")->required();
  verify->add_option("--n", vargs.n, "Block level n")->required();
  verify->add_option("--m", vargs.m, "Second level m (3.4)");
  verify->add_option("--variant", vargs.variant, "minus or plain (3.2)")->capture_default_str();
  verify->add_option("--upper", vargs.upper, "Upper block pattern over 1..4 (blocks)")->capture_default_str();
  verify->add_option("--lower", vargs.lower, "Lower block pattern over 1..4 (blocks)")->capture_default_str();
  verify->add_option("--max-shift", vargs.max_shift, "Shift bound (blocks; 0 means 2^(n+1))");

  auto* dq = app.add_subcommand("dq", "Dimension spectrum D_q");
  dq->add_option("--q", q_text, q_help)->required();

  auto* render = app.add_subcommand("render", "Draw E, E+t and their intersection");
  RenderArgs rargs;
  render->add_option("--q", rargs.q, q_help)->required();
  render->add_option("--t-seq", rargs.t_seq, "Translation expansion 'A|B', one ternary sequence per coordinate")
      ->required();
  render->add_option("--depth", rargs.depth, "Construction depth")->capture_default_str();
  render->add_option("--out", rargs.out, "Output file")->required();
  render->add_option("--layers", rargs.layers, "Comma list of e, et, int")->capture_default_str();
  render->add_option("--image", rargs.image, "svg or ppm (default from the file extension)");
  render->add_option("--raster-size", rargs.raster_size, "PPM width and height")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "Run the built-in verification battery");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  try {
    if (!format_text.empty()) flags.output_format = parse_format(format_text);
    const RunConfig config =
        resolve_config(config_file ? std::optional<std::filesystem::path>(*config_file) : std::nullopt, ctx.env, flags);
    if (rargs.raster_size < 1) throw DomainError("raster size must be positive");

    CommandOutput o;
    if (sub == bases) {
      o = cmd_bases(config, max_n);
    } else if (sub == classify_cmd) {
      o = cmd_classify(config, q_text);
    } else if (sub == expand) {
      o = cmd_expand(config, q_text, x_text, depth, with_alpha);
    } else if (sub == unique) {
      o = cmd_unique(config, q_text, seq_text);
    } else if (sub == density) {
      o = cmd_density(config, dargs);
    } else if (sub == verify) {
      o = cmd_verify(config, vargs);
    } else if (sub == dq) {
      o = cmd_dq(config, q_text);
    } else if (sub == render) {
      o = cmd_render(config, rargs);
    } else if (sub == selftest) {
      o = cmd_selftest(config, ctx.eps_provider);
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (config.output_format == OutputFormat::kJson) {
      Json report;
      report["command"] = sub->get_name();
      report["version"] = kVersion;
      report["inputs"] = o.inputs;
      report["result"] = o.result;
      if (timing) report["timing_ms"] = elapsed;
      out << report.dump(2) << "\n";
    } else {
      out << o.text;
      if (timing) out << "elapsed " << num(elapsed) << " ms\n";
    }
    return o.status;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << sub->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace gasket::cli
