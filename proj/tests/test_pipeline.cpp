#include <catch2/catch.hpp>

#include <fstream>

#include "test_helpers.hpp"

using namespace qtest;

TEST_CASE("presets generate valid tagged domains", "[pipeline]") {
  for (const std::string kind :
       {"disk", "square", "slit_disk", "l_shape", "comb", "rooms_corridor", "annulus_sector"}) {
    const Preset p = make_preset(kind);
    const Domain d = generate_domain(p);
    CHECK(d.diameter() > 0.0);
    CHECK(p.tags.count("john") == 1);
    CHECK(p.tags.count("uniform") == 1);
    CHECK(p.tags.count("quasiconvex") == 1);
    CHECK(p.tags.count("hyperbolic") == 1);
  }
  SECTION("disk is a convex polygon with the requested vertex count") {
    const Domain d = generate_domain("disk", {{"vertices", 512}});
    CHECK(d.outer().size() == 512);
    const Preset p = make_preset("disk");
    CHECK(p.tags.at("john") == "yes");
    CHECK(p.tags.at("uniform") == "yes");
  }
  SECTION("slit disk carries the non-uniform tags") {
    const Preset p = make_preset("slit_disk", {{"slit_len", 0.95}});
    CHECK(p.tags.at("john") == "yes");
    CHECK(p.tags.at("uniform") == "no");
    CHECK(p.tags.at("quasiconvex") == "no");
    CHECK(p.tags.at("hyperbolic") == "yes");
    const Domain d = generate_domain(p);
    CHECK(d.slits().size() == 1);
  }
  SECTION("comb vertex structure") {
    const Domain d = generate_domain("comb", {{"teeth", 16}});
    CHECK(d.outer().size() == 4 * 16 + 4);
    CHECK(d.name() == "comb16");
  }
  SECTION("invalid parameters are rejected") {
    CHECK_THROWS_AS(generate_domain("slit_disk", {{"slit_len", 1.5}}), error);
    CHECK_THROWS_AS(generate_domain("comb", {{"teeth", 0}}), error);
    CHECK_THROWS_AS(generate_domain("rooms_corridor", {{"corridor_width", 2.0}}), error);
  }
  SECTION("unknown presets raise config errors") {
    CHECK_THROWS_AS(make_preset("pentagon_of_doom"), error);
    try {
      make_preset("pentagon_of_doom");
    } catch (const error& e) {
      CHECK(e.code() == errc::config_parse);
      CHECK(exit_code_for(e) == 2);
    }
  }
}

TEST_CASE("svg rendering is deterministic", "[pipeline]") {
  auto dom = shared_domain("slit_disk", {{"vertices", 64}});
  const Polyline curve({{0.2, 0.3}, {-0.4, 0.1}, {-0.2, -0.5}});
  render_svg(*dom, {curve}, "svg_a.svg");
  render_svg(*dom, {curve}, "svg_b.svg");
  auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  };
  const std::string a = slurp("svg_a.svg"), b = slurp("svg_b.svg");
  CHECK(a == b);
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("<polyline") != std::string::npos);  // slit + curve strokes
  CHECK(a.find("<text") != std::string::npos);      // legend

  SECTION("boundary-only output has no curve strokes") {
    render_svg(*shared_domain("square"), {}, "svg_c.svg");
    const std::string c = slurp("svg_c.svg");
    CHECK(c.find("curve 0") == std::string::npos);
  }
}

TEST_CASE("reports validate against the shipped schema", "[pipeline]") {
  PipelineConfig cfg;
  cfg.command = "check";
  cfg.preset = "square";
  cfg.resolution = 16;
  cfg.levels = 3;
  cfg.pairs = 8;
  cfg.triples = 10;
  cfg.cache_dir = "qhgeo_test_cache";
  const Json rep = run_check(cfg);
  CHECK_NOTHROW(validate_report(rep));
  CHECK(rep["verdicts"]["exit_code"] == 0);

  SECTION("csv columns match the published order") {
    const std::string csv = pairs_csv(rep["pairs"]);
    CHECK(csv.rfind("x1,y1,x2,y2,k,ell,cone,qc,gh_ratio\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rep["pairs"].size()) + 1);
  }
}

TEST_CASE("pipeline determinism", "[pipeline]") {
  const char* cfg_text = R"({
    "command": "check",
    "preset": "square",
    "resolution": 16,
    "levels": 3,
    "pairs": 8,
    "triples": 10,
    "seed": 99,
    "cache_dir": "qhgeo_test_cache"
  })";
  std::ofstream("det_config.json") << cfg_text;
  const Json a = run_pipeline("det_config.json");
  const Json b = run_pipeline("det_config.json");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("config errors", "[pipeline]") {
  SECTION("missing file") { CHECK_THROWS_AS(run_pipeline("no_such_config.json"), error); }
  SECTION("bad json") {
    std::ofstream("bad_config.json") << "{ nope";
    CHECK_THROWS_AS(run_pipeline("bad_config.json"), error);
  }
  SECTION("missing command") {
    std::ofstream("cmdless_config.json") << R"({"preset": "square"})";
    CHECK_THROWS_AS(run_pipeline("cmdless_config.json"), error);
  }
  SECTION("unknown preset propagates as config error") {
    std::ofstream("ghost_config.json") << R"({"command": "check", "preset": "ghost"})";
    try {
      run_pipeline("ghost_config.json");
      FAIL("expected an error");
    } catch (const error& e) {
      CHECK(exit_code_for(e) == 2);
    }
  }
  SECTION("distance requires endpoints") {
    PipelineConfig cfg;
    cfg.command = "distance";
    cfg.preset = "square";
    CHECK_THROWS_AS(run_distance(cfg, false), error);
  }
}

TEST_CASE("cone-arc pipeline passes on the disk", "[pipeline]") {
  PipelineConfig cfg;
  cfg.command = "verify-thm1";
  cfg.preset = "disk";
  cfg.resolution = 24;
  cfg.pairs = 30;
  cfg.triples = 20;
  cfg.seed = 7;
  cfg.cache_dir = "qhgeo_test_cache";
  const Json rep = verify_thm1(cfg);
  CHECK(rep["verdicts"]["thm1"] == "PASS");
  CHECK(rep["thm1"]["domination_failures"] == 0);
  CHECK(rep["bounds"]["max_gap"].get<double>() > 0.0);
  CHECK_NOTHROW(validate_report(rep));
}

TEST_CASE("uniformize command sweeps epsilon", "[pipeline]") {
  PipelineConfig cfg;
  cfg.command = "uniformize";
  cfg.preset = "square";
  cfg.resolution = 16;
  cfg.levels = 3;
  cfg.pairs = 20;
  cfg.cache_dir = "qhgeo_test_cache";
  const Json rep = run_uniformize(cfg);
  CHECK(rep["uniformization_sweep"].size() >= 4);
  CHECK(rep["uniformization"]["epsilon"].get<double>() == 0.2);
  CHECK(rep["uniformization"]["c0_empirical"].get<double>() > 0.0);
  CHECK(rep["verdicts"]["exit_code"] == 0);
  CHECK_NOTHROW(validate_report(rep));
}

TEST_CASE("bound command report", "[pipeline]") {
  PipelineConfig cfg;
  cfg.command = "bound";
  const Json rep = run_bound(cfg);
  CHECK(rep["bounds"]["ln_a4"].get<double>() == Approx(1064.674).margin(1e-2));
  CHECK_NOTHROW(validate_report(rep));
}

TEST_CASE("distance and geodesic commands", "[pipeline]") {
  PipelineConfig cfg;
  cfg.command = "geodesic";
  cfg.preset = "square";
  cfg.resolution = 16;
  cfg.levels = 3;
  cfg.cache_dir = "qhgeo_test_cache";
  cfg.from = {0.2, 0.5};
  cfg.to = {0.8, 0.5};
  cfg.has_from = cfg.has_to = true;
  cfg.svg_file = "geodesic_smoke.svg";
  const Json rep = run_distance(cfg, true);
  CHECK(rep["query"]["k"].get<double>() > 0.0);
  CHECK(rep["query"]["path"].size() >= 2);
  CHECK_NOTHROW(validate_report(rep));
}
