// qhgeo: quasihyperbolic geometry toolkit for bounded planar domains.
//
// Subcommands build a discrete model of the quasihyperbolic metric on a
// domain (preset or JSON file), then measure distances, geodesics, domain
// constants, hyperbolicity estimates, conformal deformations, and run the
// end-to-end verification pipelines. Exit codes: 0 all checks pass,
// 1 verdict failure, 2 usage/config error, 3 numeric failure.

#include <iostream>

#include <CLI11.hpp>

#include "qhgeo/qhgeo.hpp"

namespace {

struct CliOptions {
  qhgeo::PipelineConfig cfg;
  std::vector<std::string> params;
  std::vector<double> from_xy, to_xy;
  std::string config_file;
};

void add_common(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--domain", o.cfg.domain_file, "domain JSON file");
  cmd->add_option("--preset", o.cfg.preset,
                  "preset name (disk, square, slit_disk, l_shape, comb, rooms_corridor, annulus_sector)");
  cmd->add_option("--param", o.params, "preset parameter k=v (repeatable)");
  cmd->add_option("--resolution", o.cfg.resolution, "lattice cells per domain diameter (default 64)");
  cmd->add_option("--levels", o.cfg.levels, "boundary refinement levels (default 4)");
  cmd->add_option("--pairs", o.cfg.pairs, "sampled pair count");
  cmd->add_option("--triples", o.cfg.triples, "sampled triangle count for delta");
  cmd->add_option("--seed", o.cfg.seed, "master seed");
  cmd->add_option("--epsilon", o.cfg.epsilon, "deformation parameter");
  cmd->add_option("--out", o.cfg.out_file, "write the report JSON here");
  cmd->add_option("--csv", o.cfg.csv_file, "write per-pair CSV here");
  cmd->add_option("--svg", o.cfg.svg_file, "write an SVG rendering here");
  cmd->add_option("--cache-dir", o.cfg.cache_dir, "graph cache directory");
  cmd->add_option("--threads", o.cfg.threads, "worker threads for pair loops");
  cmd->add_option("--config", o.config_file, "JSON config file (flags given on the command line win)");
  cmd->add_flag("--override-tags", o.cfg.override_tags, "run even if preset tags advise otherwise");
}

void parse_preset_params(CliOptions& o) {
  for (const std::string& kv : o.params) {
    const auto eq = kv.find('=');
    qhgeo::require(eq != std::string::npos, qhgeo::errc::config_parse, "expected k=v, got " + kv);
    try {
      o.cfg.preset_params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      qhgeo::fail(qhgeo::errc::config_parse, "bad numeric value in " + kv);
    }
  }
}

// Config file fills any field still at its default; explicit flags win.
void merge_config_file(CliOptions& o, const CLI::App* cmd) {
  if (o.config_file.empty()) return;
  std::ifstream f(o.config_file);
  qhgeo::require(f.good(), qhgeo::errc::config_parse, "cannot open config " + o.config_file);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    qhgeo::fail(qhgeo::errc::config_parse, std::string("bad config json: ") + e.what());
  }
  qhgeo::PipelineConfig file_cfg = qhgeo::PipelineConfig::from_json(j);
  auto unset = [&](const std::string& flag) { return cmd->count(flag) == 0; };
  if (unset("--domain")) o.cfg.domain_file = file_cfg.domain_file;
  if (unset("--preset")) o.cfg.preset = file_cfg.preset;
  if (o.cfg.preset_params.empty()) o.cfg.preset_params = file_cfg.preset_params;
  if (unset("--resolution")) o.cfg.resolution = file_cfg.resolution;
  if (unset("--levels")) o.cfg.levels = file_cfg.levels;
  if (unset("--pairs")) o.cfg.pairs = file_cfg.pairs;
  if (unset("--triples")) o.cfg.triples = file_cfg.triples;
  if (unset("--seed")) o.cfg.seed = file_cfg.seed;
  if (unset("--epsilon")) o.cfg.epsilon = file_cfg.epsilon;
  if (unset("--out")) o.cfg.out_file = file_cfg.out_file;
  if (unset("--csv")) o.cfg.csv_file = file_cfg.csv_file;
  if (unset("--svg")) o.cfg.svg_file = file_cfg.svg_file;
  if (unset("--cache-dir")) o.cfg.cache_dir = file_cfg.cache_dir;
  if (unset("--threads")) o.cfg.threads = file_cfg.threads;
  if (file_cfg.has_from && !o.cfg.has_from) {
    o.cfg.from = file_cfg.from;
    o.cfg.has_from = true;
  }
  if (file_cfg.has_to && !o.cfg.has_to) {
    o.cfg.to = file_cfg.to;
    o.cfg.has_to = true;
  }
}

int emit(const qhgeo::Json& report, const qhgeo::PipelineConfig& cfg) {
  if (cfg.out_file.empty()) std::cout << report.dump(2) << "\n";
  return report["verdicts"]["exit_code"].get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasihyperbolic geometry toolkit"};
  app.require_subcommand(1);

  CliOptions o;
  std::string run_config;

  auto* c_distance = app.add_subcommand("distance", "quasihyperbolic distance between two points");
  auto* c_geodesic = app.add_subcommand("geodesic", "quasihyperbolic geodesic between two points");
  for (auto* cmd : {c_distance, c_geodesic}) {
    add_common(cmd, o);
    cmd->add_option("--from", o.from_xy, "source point x y")->expected(2);
    cmd->add_option("--to", o.to_xy, "target point x y")->expected(2);
  }
  auto* c_check = app.add_subcommand("check", "measure the domain property constants");
  auto* c_delta = app.add_subcommand("delta", "Gromov hyperbolicity and rough starlikeness");
  auto* c_uniformize = app.add_subcommand("uniformize", "conformal deformation band checks");
  auto* c_thm1 = app.add_subcommand("verify-thm1", "cone-arc verification pipeline for geodesics");
  auto* c_thm2 = app.add_subcommand("verify-thm2", "uniformity characterization matrix");
  auto* c_render = app.add_subcommand("render", "render the domain (and sample geodesics) as SVG");
  for (auto* cmd : {c_check, c_delta, c_uniformize, c_thm1, c_thm2, c_render}) add_common(cmd, o);

  auto* c_bound = app.add_subcommand("bound", "evaluate the cone-constant chain in log space");
  c_bound->add_option("--a", o.cfg.bound_inputs.a, "John constant");
  c_bound->add_option("--c", o.cfg.bound_inputs.c, "uniformity constant of the deformed space");
  c_bound->add_option("--M", o.cfg.bound_inputs.M, "quasihyperbolic distortion");
  c_bound->add_option("--a1", o.cfg.bound_inputs.a1, "shape constant a1");
  c_bound->add_option("--a3", o.cfg.bound_inputs.a3, "shape constant a3");
  c_bound->add_option("--out", o.cfg.out_file, "write the report JSON here");

  auto* c_run = app.add_subcommand("run", "run a pipeline from a JSON config file");
  c_run->add_option("config", run_config, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_run->parsed()) {
      const qhgeo::Json rep = qhgeo::run_pipeline(run_config);
      std::cout << rep.dump(2) << "\n";
      return rep["verdicts"]["exit_code"].get<int>();
    }
    parse_preset_params(o);
    CLI::App* active = app.get_subcommands().front();
    o.cfg.command = active->get_name();
    merge_config_file(o, active);
    if (o.from_xy.size() == 2) {
      o.cfg.from = {o.from_xy[0], o.from_xy[1]};
      o.cfg.has_from = true;
    }
    if (o.to_xy.size() == 2) {
      o.cfg.to = {o.to_xy[0], o.to_xy[1]};
      o.cfg.has_to = true;
    }
    return emit(qhgeo::dispatch(o.cfg), o.cfg);
  } catch (const qhgeo::error& e) {
    std::cerr << "qhgeo: " << e.what() << "\n";
    return qhgeo::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "qhgeo: " << e.what() << "\n";
    return 3;
  }
}
