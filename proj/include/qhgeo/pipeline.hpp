#pragma once

#include "qhgeo/bounds.hpp"
#include "qhgeo/cache.hpp"
#include "qhgeo/coarse.hpp"
#include "qhgeo/presets.hpp"
#include "qhgeo/report.hpp"
#include "qhgeo/svg.hpp"
#include "qhgeo/threads.hpp"
#include "qhgeo/uniformization.hpp"

namespace qhgeo {

// Pinned verdict thresholds. Stability across a resolution doubling stands in
// for "the constant is finite": a measured sup that keeps growing under
// refinement is treated as infinite.
inline constexpr double kStabilityRatio = 1.25;
inline constexpr double kPropertyCeiling = 50.0;
inline constexpr double kConeCeiling = 50.0;
inline constexpr double kDominationSlack = 0.01;

struct PipelineConfig {
  std::string command;
  std::string preset;
  std::map<std::string, double> preset_params;
  std::string domain_file;
  double resolution = 64.0;  // lattice cells per domain diameter
  int levels = 4;
  double edge_radius_factor = 2.5;
  int pairs = 200;
  int triples = 120;
  std::uint64_t seed = 7;
  double epsilon = 0.2;
  std::string out_file, svg_file, csv_file, cache_dir;
  int threads = 1;
  bool override_tags = false;
  Point from, to;
  bool has_from = false, has_to = false;
  BoundInputs bound_inputs;

  SamplingParams sampling(double res_override = 0.0) const {
    SamplingParams sp;
    require(resolution >= 4.0 && resolution <= 4096.0, errc::config_parse,
            "resolution out of range [4, 4096]");
    sp.base_spacing = 1.0 / (res_override > 0.0 ? res_override : resolution);
    sp.boundary_refinement_levels = levels;
    sp.edge_radius_factor = edge_radius_factor;
    sp.seed = seed;
    return sp;
  }

  static PipelineConfig from_json(const nlohmann::json& j) {
    PipelineConfig c;
    try {
      c.command = j.value("command", "");
      c.preset = j.value("preset", "");
      if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) c.preset_params[k] = v.get<double>();
      c.domain_file = j.value("domain", "");
      c.resolution = j.value("resolution", 64.0);
      c.levels = j.value("levels", 4);
      c.edge_radius_factor = j.value("edge_radius_factor", 2.5);
      c.pairs = j.value("pairs", 200);
      c.triples = j.value("triples", 120);
      c.seed = j.value("seed", std::uint64_t{7});
      c.epsilon = j.value("epsilon", 0.2);
      c.out_file = j.value("out", "");
      c.svg_file = j.value("svg", "");
      c.csv_file = j.value("csv", "");
      c.cache_dir = j.value("cache_dir", "");
      c.threads = j.value("threads", 1);
      c.override_tags = j.value("override_tags", false);
      if (j.contains("from")) {
        c.from = {j.at("from").at(0).get<double>(), j.at("from").at(1).get<double>()};
        c.has_from = true;
      }
      if (j.contains("to")) {
        c.to = {j.at("to").at(0).get<double>(), j.at("to").at(1).get<double>()};
        c.has_to = true;
      }
      if (j.contains("bound")) {
        const auto& b = j.at("bound");
        c.bound_inputs.a = b.value("a", 1.0);
        c.bound_inputs.c = b.value("c", 1.0);
        c.bound_inputs.M = b.value("M", 1.0);
        c.bound_inputs.a1 = b.value("a1", 1.0);
        c.bound_inputs.a3 = b.value("a3", 1.0);
      }
    } catch (const nlohmann::json::exception& e) {
      fail(errc::config_parse, std::string("bad config: ") + e.what());
    }
    return c;
  }
};

namespace detail {

struct DomainBundle {
  std::shared_ptr<const Domain> domain;
  std::map<std::string, std::string> tags;
};

inline DomainBundle resolve_domain(const PipelineConfig& cfg) {
  DomainBundle b;
  if (!cfg.preset.empty()) {
    const Preset p = make_preset(cfg.preset, cfg.preset_params);
    b.domain = std::make_shared<Domain>(generate_domain(p));
    b.tags = p.tags;
  } else if (!cfg.domain_file.empty()) {
    b.domain = std::make_shared<Domain>(Domain::load(cfg.domain_file));
  } else {
    fail(errc::config_parse, "either a preset or a domain file is required");
  }
  return b;
}

inline Json sampling_json(const PipelineConfig& cfg, const SamplingParams& sp) {
  Json j;
  j["resolution"] = cfg.resolution;
  j["base_spacing"] = sp.base_spacing;
  j["boundary_refinement_levels"] = sp.boundary_refinement_levels;
  j["edge_radius_factor"] = sp.edge_radius_factor;
  return j;
}

inline Json graph_json(const QhGraph& g) {
  Json j;
  j["nodes"] = g.nodes().size();
  j["edges"] = g.edges().size();
  j["dropped_components"] = g.dropped_components();
  return j;
}

// Seeded pair suite: random distinct node pairs plus, for the adversarial
// tail, near-boundary nodes paired with their closest non-visible neighbor
// (the pairs that witness quasiconvexity breakdown across slits).
inline std::vector<std::pair<Point, Point>> pair_suite(const QhGraph& g, int n, std::uint64_t seed) {
  std::vector<std::pair<Point, Point>> out;
  for (const auto& [a, b] : sample_node_pairs(g, n, seed, "suite-pairs"))
    out.push_back({g.nodes()[a].p, g.nodes()[b].p});
  Rng rng(derive_seed(seed, "suite-adversarial"));
  const std::size_t nn = g.nodes().size();
  const int want = std::max(2, n / 8);
  int found = 0;
  for (int attempt = 0; attempt < 40 * want && found < want; ++attempt) {
    const auto u = static_cast<std::int32_t>(rng.next_below(nn));
    const GraphNode& nu = g.nodes()[u];
    if (nu.level < g.max_level()) continue;  // want nodes hugging the boundary
    const double cell = g.cell_size(nu.level);
    std::int32_t best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::int32_t v : g.nodes_within(nu.p, 8.0 * cell)) {
      if (v == u) continue;
      const double d = dist(nu.p, g.nodes()[v].p);
      if (d < best_d && !g.domain().segment_inside(nu.p, g.nodes()[v].p)) {
        best_d = d;
        best = v;
      }
    }
    if (best >= 0) {
      out.push_back({nu.p, g.nodes()[best].p});
      ++found;
    }
  }
  return out;
}

struct SuiteStats {
  double max_cone = 0.0;
  double max_uniform = 0.0;
  double max_qc_domain = 0.0;  // inner / euclidean over pairs
  double max_gh = 0.0;
  double max_gap = 0.0;                    // dyadic gaps over all geodesics
  std::vector<double> worst_gap_profile;   // gaps of the geodesic with the largest gap
  double implied_cone = 0.0;               // 4 G exp(G) for the suite gap bound G
  int domination_failures = 0;             // cone constants above the implied bound
  int degenerate = 0;
  Json pair_records = Json::array();
};

// Geodesic suite over a fixed set of endpoint pairs; the shared workhorse of
// both verification pipelines.
inline SuiteStats run_pair_suite(const Domain& domain, const QhGraph& g,
                                 const std::vector<std::pair<Point, Point>>& pts, int threads,
                                 bool keep_records) {
  SuiteStats stats;
  struct Row {
    bool ok = false;
    bool degenerate = false;
    double k = 0, ell = 0, cone = 0, qc = 0, gh = 0, uniform_c = 0, max_gap = 0, implied = 0;
    std::vector<double> gaps;
    Point a, b;
  };
  std::vector<Row> rows(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    Row& r = rows[i];
    r.a = pts[i].first;
    r.b = pts[i].second;
    if (r.a == r.b) {
      r.degenerate = true;
      return;
    }
    const Geodesic geo = qh_geodesic(g, r.a, r.b);
    r.k = geo.length_w;
    r.ell = geo.path.length();
    r.qc = r.ell / dist(r.a, r.b);
    const double inner = inner_distance(g, r.a, r.b);
    r.gh = inner > 0.0 ? r.ell / inner : 1.0;
    r.cone = cone_constant(domain, geo.path).value;
    r.uniform_c = std::max(r.cone, r.qc);

    Geodesic rev = geo;
    detail::reverse_geodesic(rev);
    const DyadicDecomposition fwd = dyadic_decompose(geo);
    const DyadicDecomposition bwd = dyadic_decompose(rev);
    for (double gap : fwd.gaps) r.max_gap = std::max(r.max_gap, gap);
    for (double gap : bwd.gaps) r.max_gap = std::max(r.max_gap, gap);
    r.gaps = fwd.gaps;
    r.gaps.insert(r.gaps.end(), bwd.gaps.begin(), bwd.gaps.end());
    // Per-subarc length verification against the pair's own gap bound.
    const ConeFromGaps cfg_fwd = cone_from_gaps(fwd, r.max_gap);
    const ConeFromGaps cfg_bwd = cone_from_gaps(bwd, r.max_gap);
    r.implied = std::max(cfg_fwd.implied_cone_constant, cfg_bwd.implied_cone_constant);
    r.ok = true;
  });
  // The telescoped bound uses one uniform gap bound for the whole suite, the
  // role a4 plays for the whole domain: G = max gap observed anywhere.
  for (const Row& r : rows)
    if (r.ok && !r.degenerate && r.max_gap > stats.max_gap) {
      stats.max_gap = r.max_gap;
      stats.worst_gap_profile = r.gaps;
    }
  stats.implied_cone = stats.max_gap < 500.0
                           ? 4.0 * stats.max_gap * std::exp(stats.max_gap)
                           : std::numeric_limits<double>::infinity();
  for (const Row& r : rows) {
    if (r.degenerate) {
      ++stats.degenerate;
      continue;
    }
    if (!r.ok) continue;
    stats.max_cone = std::max(stats.max_cone, r.cone);
    stats.max_uniform = std::max(stats.max_uniform, r.uniform_c);
    stats.max_gh = std::max(stats.max_gh, r.gh);
    if (r.cone > stats.implied_cone * (1.0 + kDominationSlack) + 1e-9) ++stats.domination_failures;
    if (keep_records) {
      Json rec;
      rec["x1"] = r.a.x;
      rec["y1"] = r.a.y;
      rec["x2"] = r.b.x;
      rec["y2"] = r.b.y;
      rec["k"] = r.k;
      rec["ell"] = r.ell;
      rec["cone"] = r.cone;
      rec["qc"] = r.qc;
      rec["gh_ratio"] = r.gh;
      stats.pair_records.push_back(rec);
    }
  }
  return stats;
}

// Domain quasiconvexity over a pair suite: inner distance / Euclidean
// distance, a sampled lower bound of the true constant.
inline double domain_quasiconvexity(const QhGraph& g, const std::vector<std::pair<Point, Point>>& pts,
                                    int threads) {
  std::vector<double> vals(pts.size(), 0.0);
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    const auto& [a, b] = pts[i];
    if (a == b) return;
    vals[i] = inner_distance(g, a, b) / dist(a, b);
  });
  double worst = 0.0;
  for (double v : vals) worst = std::max(worst, v);
  return worst;
}

inline bool stable(double v1, double v2, double ratio = kStabilityRatio) {
  const double lo = std::min(v1, v2), hi = std::max(v1, v2);
  if (hi <= 1e-9) return true;
  return hi / std::max(lo, 1e-12) <= ratio;
}

inline void maybe_write_outputs(const PipelineConfig& cfg, const Json& report) {
  if (!cfg.out_file.empty()) {
    std::ofstream f(cfg.out_file, std::ios::binary);
    require(f.good(), errc::io_error, "cannot write " + cfg.out_file);
    const std::string text = report.dump(2) + "\n";
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  if (!cfg.csv_file.empty() && report.contains("pairs")) {
    std::ofstream f(cfg.csv_file, std::ios::binary);
    require(f.good(), errc::io_error, "cannot write " + cfg.csv_file);
    const std::string text = pairs_csv(report["pairs"]);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline Json verify_thm1(const PipelineConfig& cfg) {
  auto [domain, tags] = detail::resolve_domain(cfg);
  if (!cfg.override_tags) {
    const auto jt = tags.find("john");
    const auto ht = tags.find("hyperbolic");
    require(jt == tags.end() || jt->second != "no", errc::invalid_params,
            "domain tagged non-John; pass override_tags to force");
    require(ht == tags.end() || ht->second != "no", errc::invalid_params,
            "domain tagged non-hyperbolic; pass override_tags to force");
  }
  const SamplingParams sp = cfg.sampling();
  const QhGraph coarse = build_graph_cached(domain, sp, cfg.cache_dir);
  const QhGraph fine = build_graph_cached(domain, cfg.sampling(2.0 * cfg.resolution), cfg.cache_dir);

  Json rep = new_report("verify-thm1", cfg.seed, *domain, tags);
  rep["sampling"] = detail::sampling_json(cfg, sp);
  rep["graph"] = detail::graph_json(coarse);
  rep["graph_fine"] = detail::graph_json(fine);

  const ConstantReport john = john_estimate(*domain, coarse, std::min(cfg.pairs, 80), cfg.seed);
  const DeltaEstimate delta = thin_triangle_delta(coarse, cfg.triples, cfg.seed);
  const StarlikenessEstimate star = rough_starlikeness(coarse, coarse.nodes()[max_depth_node(coarse)].p);

  const auto pts = detail::pair_suite(coarse, cfg.pairs, cfg.seed);
  const auto s1 = detail::run_pair_suite(*domain, coarse, pts, cfg.threads, true);
  const auto s2 = detail::run_pair_suite(*domain, fine, pts, cfg.threads, false);

  rep["constants"] = Json{{"john", constant_json(john)}};
  rep["delta_thin"] = Json{{"value", delta.delta_thin},
                           {"samples", delta.samples},
                           {"witness", Json::array({point_json(delta.witness_triple[0]),
                                                    point_json(delta.witness_triple[1]),
                                                    point_json(delta.witness_triple[2])})}};
  rep["rough_starlike_K"] =
      Json{{"value", star.K}, {"witness", point_json(star.worst_point)}, {"base", point_json(star.base)}};

  Json gaps = Json::array();
  for (double gv : s1.worst_gap_profile) gaps.push_back(gv);
  rep["bounds"] = Json{{"dyadic_gaps", gaps},
                       {"max_gap", s1.max_gap},
                       {"max_gap_fine", s2.max_gap},
                       {"implied_cone_constant", s1.implied_cone}};

  const bool stable_cone = detail::stable(s1.max_cone, s2.max_cone);
  const bool dominated = s1.domination_failures == 0 && s2.domination_failures == 0;
  const bool under_ceiling = std::max(s1.max_cone, s2.max_cone) <= kConeCeiling;
  const bool pass = stable_cone && dominated && under_ceiling;

  rep["thm1"] = Json{{"max_cone", s1.max_cone},
                     {"max_cone_fine", s2.max_cone},
                     {"stable", stable_cone},
                     {"stability_ratio_limit", kStabilityRatio},
                     {"cone_ceiling", kConeCeiling},
                     {"domination_failures", s1.domination_failures + s2.domination_failures},
                     {"degenerate_pairs", s1.degenerate},
                     {"pairs", static_cast<int>(pts.size())}};
  rep["pairs"] = s1.pair_records;
  rep["verdicts"] = Json{{"thm1", pass ? "PASS" : "FAIL"}, {"exit_code", pass ? 0 : 1}};
  detail::maybe_write_outputs(cfg, rep);
  return rep;
}

inline Json verify_thm2(const PipelineConfig& cfg) {
  auto [domain, tags] = detail::resolve_domain(cfg);
  const SamplingParams sp = cfg.sampling();
  const QhGraph coarse = build_graph_cached(domain, sp, cfg.cache_dir);
  const QhGraph fine = build_graph_cached(domain, cfg.sampling(2.0 * cfg.resolution), cfg.cache_dir);

  Json rep = new_report("verify-thm2", cfg.seed, *domain, tags);
  rep["sampling"] = detail::sampling_json(cfg, sp);
  rep["graph"] = detail::graph_json(coarse);
  rep["graph_fine"] = detail::graph_json(fine);

  struct PropertyRow {
    double v1 = 0.0, v2 = 0.0;
    bool yes() const { return detail::stable(v1, v2) && std::max(v1, v2) <= kPropertyCeiling; }
  };
  PropertyRow john_row, llc1_row, llc2_row, qc_row, delta_row, uniform_row;

  const int n_john = std::min(cfg.pairs, 80);
  for (int pass = 0; pass < 2; ++pass) {
    const QhGraph& g = pass == 0 ? coarse : fine;
    const auto pts = detail::pair_suite(g, cfg.pairs, cfg.seed);
    const auto stats = detail::run_pair_suite(*domain, g, pts, cfg.threads, pass == 0);
    const ConstantReport john = john_estimate(*domain, g, n_john, cfg.seed);
    const LlcReport llc = llc_check(*domain, g, 10, 4, cfg.seed);
    const double qc = detail::domain_quasiconvexity(g, pts, cfg.threads);
    const DeltaEstimate delta = thin_triangle_delta(g, cfg.triples, cfg.seed);
    const auto slot = [&](PropertyRow& r) -> double& { return pass == 0 ? r.v1 : r.v2; };
    slot(john_row) = john.value;
    slot(llc1_row) = llc.c1;
    slot(llc2_row) = llc.c2;
    slot(qc_row) = qc;
    slot(delta_row) = delta.delta_thin;
    slot(uniform_row) = stats.max_uniform;
    if (pass == 0) {
      rep["constants"] = Json{{"john", constant_json(john)}};
      rep["pairs"] = stats.pair_records;
      rep["delta_thin"] = Json{{"value", delta.delta_thin}, {"samples", delta.samples}};
    }
  }

  const bool john_yes = john_row.yes();
  const bool llc_yes = llc1_row.yes() && llc2_row.yes();
  const bool qc_yes = qc_row.yes();
  const bool delta_yes = delta_row.yes();
  const bool uniform_yes = uniform_row.yes();
  const bool left = (john_yes || llc_yes) && qc_yes && delta_yes;
  const bool consistent = left == uniform_yes;

  auto row_json = [](const PropertyRow& r) {
    return Json{{"value", std::max(r.v1, r.v2)}, {"coarse", r.v1}, {"fine", r.v2}, {"verdict", r.yes()}};
  };
  rep["thm2"] = Json{{"john", row_json(john_row)},
                     {"llc1", row_json(llc1_row)},
                     {"llc2", row_json(llc2_row)},
                     {"quasiconvex", row_json(qc_row)},
                     {"hyperbolic", row_json(delta_row)},
                     {"uniform", row_json(uniform_row)},
                     {"left_side", left},
                     {"right_side", uniform_yes},
                     {"property_ceiling", kPropertyCeiling},
                     {"stability_ratio_limit", kStabilityRatio}};
  rep["verdicts"] = Json{{"thm2", consistent ? "CONSISTENT" : "INCONSISTENT"},
                         {"exit_code", consistent ? 0 : 1}};
  detail::maybe_write_outputs(cfg, rep);
  return rep;
}

// Full measurement pass: every property constant, the hyperbolicity and
// starlikeness estimates, the deformation band at the configured epsilon, and
// the cone-constant chain evaluated from the measured inputs (a = John,
// c = uniform_const_eps, M = M_empirical, a1 = a3 = a1_like), each
// CLI-overridable through the `bound` command.
inline Json run_check(const PipelineConfig& cfg) {
  auto [domain, tags] = detail::resolve_domain(cfg);
  const SamplingParams sp = cfg.sampling();
  const QhGraph g = build_graph_cached(domain, sp, cfg.cache_dir);

  Json rep = new_report("check", cfg.seed, *domain, tags);
  rep["sampling"] = detail::sampling_json(cfg, sp);
  rep["graph"] = detail::graph_json(g);

  const auto pts = detail::pair_suite(g, cfg.pairs, cfg.seed);
  const auto stats = detail::run_pair_suite(*domain, g, pts, cfg.threads, true);
  const ConstantReport john = john_estimate(*domain, g, std::min(cfg.pairs, 80), cfg.seed);
  const ConstantReport gh = gehring_hayman(*domain, g, cfg.pairs, cfg.seed);
  const ConstantReport bs = ball_separation(*domain, g, std::min(cfg.pairs, 80), cfg.seed);
  const LlcReport llc = llc_check(*domain, g, 10, 4, cfg.seed);
  const double annular = annular_quasiconvexity(*domain, g, 12, cfg.seed);
  const double qc = detail::domain_quasiconvexity(g, pts, cfg.threads);

  // Shape diagnostic over a few geodesics.
  double a1_like = 0.0;
  Rng rng(derive_seed(cfg.seed, "shape-suite"));
  for (int i = 0; i < std::min(cfg.pairs, 24); ++i) {
    const auto a = static_cast<std::int32_t>(rng.next_below(g.nodes().size()));
    const auto b = static_cast<std::int32_t>(rng.next_below(g.nodes().size()));
    if (a == b) continue;
    const Geodesic geo = qh_geodesic(g, g.nodes()[a].p, g.nodes()[b].p);
    if (!geo.path.degenerate())
      a1_like = std::max(a1_like, solid_arc_shape(*domain, geo.path).value);
  }

  const DeltaEstimate delta = thin_triangle_delta(g, cfg.triples, cfg.seed);
  const StarlikenessEstimate star = rough_starlikeness(g, g.nodes()[max_depth_node(g)].p);
  const DeformedSpace ds = deform(g, g.nodes()[max_depth_node(g)].p, cfg.epsilon);
  const BandReport band = band_report(ds, std::min(cfg.pairs, 100), cfg.seed);
  const double uniform_eps = uniformity_of_deformation(ds, std::min(cfg.pairs, 60), cfg.seed);

  rep["constants"] = Json{{"john", constant_json(john)},
                          {"gehring_hayman", constant_json(gh)},
                          {"ball_separation", constant_json(bs)},
                          {"llc", Json{{"c1", llc.c1}, {"c2", llc.c2}, {"direction", "lower_bound"}}},
                          {"annular_quasiconvexity", Json{{"value", annular}, {"direction", "lower_bound"}}},
                          {"quasiconvexity", Json{{"value", qc}, {"direction", "lower_bound"}}},
                          {"uniform", Json{{"value", stats.max_uniform}, {"direction", "lower_bound"}}},
                          {"max_cone", Json{{"value", stats.max_cone}, {"direction", "lower_bound"}}},
                          {"a1_like", Json{{"value", a1_like}, {"direction", "lower_bound"}}}};
  rep["delta_thin"] = Json{{"value", delta.delta_thin},
                           {"samples", delta.samples},
                           {"witness", Json::array({point_json(delta.witness_triple[0]),
                                                    point_json(delta.witness_triple[1]),
                                                    point_json(delta.witness_triple[2])})}};
  rep["rough_starlike_K"] =
      Json{{"value", star.K}, {"witness", point_json(star.worst_point)}, {"base", point_json(star.base)}};
  rep["uniformization"] = Json{{"epsilon", cfg.epsilon},
                               {"diam_eps", band.diam_eps},
                               {"band_upper_ok", band.upper_violations == 0},
                               {"c0_empirical", band.c0_empirical},
                               {"M_empirical", band.M_empirical},
                               {"uniform_const_eps", uniform_eps}};

  BoundInputs measured;
  measured.a = std::max(1.0, john.value);
  measured.c = std::max(1.0, uniform_eps);
  measured.M = std::max(1.0, band.M_empirical);
  measured.a1 = std::max(1.0, a1_like);
  measured.a3 = std::max(1.0, a1_like);
  const BoundChain chain = cone_bound_chain(measured);
  rep["bounds"] = Json{{"inputs", Json{{"a", measured.a},
                                       {"c", measured.c},
                                       {"M", measured.M},
                                       {"a1", measured.a1},
                                       {"a3", measured.a3}}},
                       {"ln_a6", chain.ln_a6},
                       {"ln_a5", chain.ln_a5},
                       {"ln_a4", chain.ln_a4},
                       {"ln_ln_b", chain.ln_ln_b},
                       {"max_gap", stats.max_gap},
                       {"implied_cone_constant", stats.implied_cone}};
  rep["pairs"] = stats.pair_records;
  rep["verdicts"] = Json{{"exit_code", 0}};
  detail::maybe_write_outputs(cfg, rep);
  return rep;
}

inline Json run_delta(const PipelineConfig& cfg) {
  auto [domain, tags] = detail::resolve_domain(cfg);
  const SamplingParams sp = cfg.sampling();
  const QhGraph g = build_graph_cached(domain, sp, cfg.cache_dir);
  Json rep = new_report("delta", cfg.seed, *domain, tags);
  rep["sampling"] = detail::sampling_json(cfg, sp);
  rep["graph"] = detail::graph_json(g);

  const DeltaEstimate thin = thin_triangle_delta(g, cfg.triples, cfg.seed);
  Rng rng(derive_seed(cfg.seed, "delta-matrix"));
  std::vector<std::int32_t> ids;
  while (ids.size() < std::min<std::size_t>(32, g.nodes().size()))
    ids.push_back(static_cast<std::int32_t>(rng.next_below(g.nodes().size())));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const double d4 = four_point_delta(k_matrix(g, ids), cfg.seed);
  const StarlikenessEstimate star = rough_starlikeness(g, g.nodes()[max_depth_node(g)].p);

  rep["delta_thin"] = Json{{"value", thin.delta_thin},
                           {"samples", thin.samples},
                           {"witness", Json::array({point_json(thin.witness_triple[0]),
                                                    point_json(thin.witness_triple[1]),
                                                    point_json(thin.witness_triple[2])})}};
  rep["delta_4pt"] = Json{{"value", d4}, {"samples", static_cast<int>(ids.size())}};
  rep["rough_starlike_K"] =
      Json{{"value", star.K}, {"witness", point_json(star.worst_point)}, {"base", point_json(star.base)}};
  rep["verdicts"] = Json{{"exit_code", 0}};
  detail::maybe_write_outputs(cfg, rep);
  return rep;
}

inline Json run_uniformize(const PipelineConfig& cfg) {
  auto [domain, tags] = detail::resolve_domain(cfg);
  const SamplingParams sp = cfg.sampling();
  const QhGraph g = build_graph_cached(domain, sp, cfg.cache_dir);
  Json rep = new_report("uniformize", cfg.seed, *domain, tags);
  rep["sampling"] = detail::sampling_json(cfg, sp);
  rep["graph"] = detail::graph_json(g);

  const Point w = g.nodes()[max_depth_node(g)].p;
  std::vector<double> sweep{0.05, 0.1, 0.2, 0.4};
  if (std::find(sweep.begin(), sweep.end(), cfg.epsilon) == sweep.end()) sweep.push_back(cfg.epsilon);
  std::sort(sweep.begin(), sweep.end());

  Json sweep_json = Json::array();
  Json main_entry;
  for (double eps : sweep) {
    const DeformedSpace ds = deform(g, w, eps);
    const BandReport band = band_report(ds, cfg.pairs, cfg.seed);
    const double uc = uniformity_of_deformation(ds, std::min(cfg.pairs, 60), cfg.seed);
    Json e;
    e["epsilon"] = eps;
    e["diam_eps"] = band.diam_eps;
    e["diam_bound"] = 2.0 / eps;
    e["band_upper_ok"] = band.upper_violations == 0;
    e["upper_violations"] = band.upper_violations;
    e["c0_empirical"] = band.c0_empirical;
    e["max_band_ratio"] = band.max_band_ratio;
    e["M_empirical"] = band.M_empirical;
    e["uniform_const_eps"] = uc;
    e["pairs_tested"] = band.pairs_tested;
    sweep_json.push_back(e);
    if (eps == cfg.epsilon) main_entry = e;
  }
  rep["uniformization"] = main_entry;
  rep["uniformization_sweep"] = sweep_json;

  bool ok = true;
  for (const auto& e : sweep_json)
    ok = ok && e["band_upper_ok"].get<bool>() && e["c0_empirical"].get<double>() > 0.0;
  rep["verdicts"] = Json{{"exit_code", ok ? 0 : 1}};
  detail::maybe_write_outputs(cfg, rep);
  return rep;
}

inline Json run_bound(const PipelineConfig& cfg) {
  const BoundChain ch = cone_bound_chain(cfg.bound_inputs);
  Json rep;
  rep["qhgeo_version"] = kVersion;
  rep["schema_version"] = kReportSchemaVersion;
  rep["command"] = "bound";
  rep["seed"] = cfg.seed;
  rep["domain"] = Json{{"name", "none"}, {"hash", "none"}};
  rep["bounds"] = Json{{"inputs", Json{{"a", cfg.bound_inputs.a},
                                       {"c", cfg.bound_inputs.c},
                                       {"M", cfg.bound_inputs.M},
                                       {"a1", cfg.bound_inputs.a1},
                                       {"a3", cfg.bound_inputs.a3}}},
                       {"ln_a6", ch.ln_a6},
                       {"ln_a5", ch.ln_a5},
                       {"ln_a4", ch.ln_a4},
                       {"ln_ln_b", ch.ln_ln_b}};
  rep["verdicts"] = Json{{"exit_code", 0}};
  detail::maybe_write_outputs(cfg, rep);
  return rep;
}

inline Json run_distance(const PipelineConfig& cfg, bool want_geodesic) {
  require(cfg.has_from && cfg.has_to, errc::config_parse, "distance/geodesic need --from and --to");
  auto [domain, tags] = detail::resolve_domain(cfg);
  const SamplingParams sp = cfg.sampling();
  const QhGraph g = build_graph_cached(domain, sp, cfg.cache_dir);
  Json rep = new_report(want_geodesic ? "geodesic" : "distance", cfg.seed, *domain, tags);
  rep["sampling"] = detail::sampling_json(cfg, sp);
  rep["graph"] = detail::graph_json(g);

  const Geodesic geo = qh_geodesic(g, cfg.from, cfg.to);
  rep["query"] = Json{{"from", point_json(cfg.from)},
                      {"to", point_json(cfg.to)},
                      {"k", geo.length_w},
                      {"euclidean_length", geo.path.length()},
                      {"snap_from", geo.snap_from},
                      {"snap_to", geo.snap_to},
                      {"snap_flagged", geo.snap_flagged}};
  if (want_geodesic) {
    Json verts = Json::array();
    for (const Point& p : geo.path.points()) verts.push_back(point_json(p));
    rep["query"]["path"] = verts;
  }
  if (!cfg.svg_file.empty()) {
    SvgWriter w(*domain);
    w.add_curve(geo.path, "geodesic");
    w.add_marker(cfg.from);
    w.add_marker(cfg.to);
    w.write(cfg.svg_file);
  }
  rep["verdicts"] = Json{{"exit_code", 0}};
  detail::maybe_write_outputs(cfg, rep);
  return rep;
}

inline Json run_render(const PipelineConfig& cfg) {
  auto [domain, tags] = detail::resolve_domain(cfg);
  require(!cfg.svg_file.empty(), errc::config_parse, "render needs --svg");
  Json rep = new_report("render", cfg.seed, *domain, tags);
  std::vector<Polyline> curves;
  if (cfg.pairs > 0 && cfg.resolution > 0) {
    const QhGraph g = build_graph_cached(domain, cfg.sampling(), cfg.cache_dir);
    for (const auto& [a, b] : sample_node_pairs(g, std::min(cfg.pairs, 12), cfg.seed, "render-pairs"))
      curves.push_back(qh_geodesic(g, g.nodes()[a].p, g.nodes()[b].p).path);
  }
  render_svg(*domain, curves, cfg.svg_file);
  rep["svg"] = cfg.svg_file;
  rep["curves"] = static_cast<int>(curves.size());
  rep["verdicts"] = Json{{"exit_code", 0}};
  detail::maybe_write_outputs(cfg, rep);
  return rep;
}

inline Json dispatch(const PipelineConfig& cfg) {
  if (cfg.command == "verify-thm1") return verify_thm1(cfg);
  if (cfg.command == "verify-thm2") return verify_thm2(cfg);
  if (cfg.command == "check") return run_check(cfg);
  if (cfg.command == "delta") return run_delta(cfg);
  if (cfg.command == "uniformize") return run_uniformize(cfg);
  if (cfg.command == "bound") return run_bound(cfg);
  if (cfg.command == "distance") return run_distance(cfg, false);
  if (cfg.command == "geodesic") return run_distance(cfg, true);
  if (cfg.command == "render") return run_render(cfg);
  fail(errc::config_parse, "unknown command '" + cfg.command + "'");
}

// Full pipeline from a JSON config file; the report's verdicts carry the
// process exit code (0 pass, 1 verdict failure; parse errors throw).
inline Json run_pipeline(const std::string& config_path) {
  std::ifstream f(config_path);
  require(f.good(), errc::config_parse, "cannot open config " + config_path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::config_parse, std::string("bad config json: ") + e.what());
  }
  const PipelineConfig cfg = PipelineConfig::from_json(j);
  require(!cfg.command.empty(), errc::config_parse, "config missing 'command'");
  return dispatch(cfg);
}

inline int exit_code_for(const error& e) {
  switch (e.code()) {
    case errc::config_parse:
    case errc::invalid_params:
    case errc::io_error:
      return 2;
    default:
      return 3;
  }
}

}  // namespace qhgeo
