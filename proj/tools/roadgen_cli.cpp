#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "roadgen/bench.hpp"
#include "roadgen/evo.hpp"
#include "roadgen/fitness.hpp"
#include "roadgen/json.hpp"
#include "roadgen/metrics.hpp"
#include "roadgen/render.hpp"
#include "roadgen/swarm.hpp"
#include "roadgen/wfc.hpp"

using namespace roadgen;
namespace fs = std::filesystem;

namespace {

struct SolverOptions {
  int attempts = WfcConfig{}.max_attempts;
  bool hard_boundary = false;
  bool allow_empty = false;
  int generations = 200;
  int population = SwarmConfig{}.population;
  double inertia = SwarmConfig{}.inertia;
  double c1 = SwarmConfig{}.c1;
  double c2 = SwarmConfig{}.c2;
  std::string gwo_third = "worst";
  int mu = EvoConfig{}.mu;
  int lambda = EvoConfig{}.lambda;
  int tournament = EvoConfig{}.tournament_size;
  std::string weights_file;

  void add_to(CLI::App& app) {
    app.add_option("--attempts", attempts, "WFC restart budget")->check(CLI::PositiveNumber);
    app.add_flag("--hard-boundary", hard_boundary, "WFC: forbid tiles pointing off the grid");
    app.add_flag("--allow-empty", allow_empty, "WFC: keep the empty tile in the alphabet");
    app.add_option("--generations", generations, "Generations for swarm and evolutionary methods")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--population", population, "Swarm size")->check(CLI::PositiveNumber);
    app.add_option("--w", inertia, "PSO inertia");
    app.add_option("--c1", c1, "PSO cognitive coefficient");
    app.add_option("--c2", c2, "PSO social coefficient");
    app.add_option("--gwo-third", gwo_third, "GWO third leader")->check(CLI::IsMember({"worst", "delta"}));
    app.add_option("--mu", mu, "EA parents")->check(CLI::PositiveNumber);
    app.add_option("--lambda", lambda, "EA offspring")->check(CLI::PositiveNumber);
    app.add_option("--tournament", tournament, "EA tournament size")->check(CLI::PositiveNumber);
    app.add_option("--config", weights_file, "Fitness weights JSON")->check(CLI::ExistingFile);
  }

  FitnessWeights weights() const { return weights_file.empty() ? FitnessWeights{} : load_weights(weights_file); }

  WfcConfig wfc(std::uint64_t seed) const {
    WfcConfig cfg;
    cfg.max_attempts = attempts;
    cfg.hard_boundary = hard_boundary;
    cfg.allow_empty = allow_empty;
    cfg.seed = seed;
    return cfg;
  }

  SwarmConfig swarm(std::uint64_t seed) const {
    SwarmConfig cfg;
    cfg.population = population;
    cfg.generations = generations;
    cfg.inertia = inertia;
    cfg.c1 = c1;
    cfg.c2 = c2;
    cfg.gwo_third = gwo_third == "delta" ? GwoThirdLeader::Delta : GwoThirdLeader::Worst;
    cfg.seed = seed;
    return cfg;
  }

  EvoConfig evo(std::uint64_t seed, bool map_elites) const {
    EvoConfig cfg;
    cfg.mu = mu;
    cfg.lambda = lambda;
    cfg.generations = generations;
    cfg.tournament_size = tournament;
    cfg.map_elites = map_elites;
    cfg.seed = seed;
    return cfg;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_trace(const fs::path& path, const std::vector<double>& trace) {
  std::string csv = "generation,best_fitness\n";
  for (std::size_t i = 0; i < trace.size(); ++i) csv += fmt::format("{},{:.17g}\n", i + 1, trace[i]);
  write_text(path, csv);
}

int cmd_generate(const std::string& method_name, const std::string& size, std::uint64_t seed,
                 const SolverOptions& opt, const std::string& out_dir) {
  const Method method = parse_method(method_name);
  const auto [h, w] = parse_size(size);
  const FitnessWeights weights = opt.weights();

  Grid grid;
  std::vector<double> trace;
  std::optional<nlohmann::json> archive;
  switch (method) {
    case Method::Wfc: {
      const WfcResult res = wfc_generate(h, w, opt.wfc(seed));
      if (!res.ok()) {
        std::cerr << "error: " << describe(res.failure) << '\n';
        return 2;
      }
      grid = *res.grid;
      break;
    }
    case Method::Pso:
    case Method::Gwo: {
      SwarmResult res = run_swarm(method == Method::Pso ? SwarmMethod::Pso : SwarmMethod::Gwo, h, w, opt.swarm(seed),
                                  weights);
      grid = std::move(res.best);
      trace = std::move(res.trace);
      break;
    }
    case Method::Ea:
    case Method::MapElites: {
      EvoResult res = evolve(h, w, opt.evo(seed, method == Method::MapElites), weights);
      grid = res.best.grid;
      trace = std::move(res.trace);
      if (method == Method::MapElites) archive = archive_to_json(res.archive);
      break;
    }
  }

  const MetricReport report = full_report(grid);
  const nlohmann::json summary = {{"method", to_string(method)},
                                  {"seed", seed},
                                  {"grid", grid_to_json(grid)},
                                  {"metrics", to_json(report)},
                                  {"fitness", fitness(report, weights).value}};
  if (out_dir.empty()) {
    std::cout << summary.dump(2) << '\n';
    return 0;
  }
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  save_grid(grid, (dir / "grid.json").string());
  write_text(dir / "metrics.json", summary.dump(2) + "\n");
  if (!trace.empty()) write_trace(dir / "trace.csv", trace);
  if (archive) write_text(dir / "archive.json", archive->dump(2) + "\n");
  std::cout << fmt::format("{} {}x{} seed {}: fitness {:.6g}, components {}, dead ends {}, written to {}\n",
                           to_string(method), h, w, seed, fitness(report, weights).value,
                           report.connected_components, report.dead_ends, dir.string());
  return 0;
}

int cmd_metrics(const std::string& grid_file, const std::string& weights_file) {
  const Grid g = load_grid(grid_file);
  const FitnessWeights weights = weights_file.empty() ? FitnessWeights{} : load_weights(weights_file);
  const MetricReport report = full_report(g);
  const nlohmann::json out = {{"metrics", to_json(report)},
                              {"descriptor", to_json(behavior_descriptor(report))},
                              {"mismatches", mismatch_count(g)},
                              {"fitness", fitness(report, weights).value}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_render(const std::string& grid_file, const std::string& tileset_dir, bool synthetic, int tile_px,
               std::uint64_t seed, bool variants, const std::string& out_dir, const std::string& save_tiles) {
  Rng rng(seed);
  const TileSet tiles = synthetic ? synth_tileset(tile_px, rng) : load_tileset(tileset_dir);
  if (!save_tiles.empty()) save_tileset(tiles, save_tiles);
  if (grid_file.empty()) return 0;
  RenderOptions options;
  options.random_variants = variants;
  options.seed = seed;
  const RenderedMap map = render(load_grid(grid_file), tiles, options);
  write_rendered(map, out_dir);
  std::cout << fmt::format("rendered {}x{} px to {}\n", map.rgb.cols(), map.rgb.rows(), out_dir);
  return 0;
}

int cmd_bench(const std::string& methods, const std::vector<std::string>& sizes, int runs, std::uint64_t seed,
              const SolverOptions& opt, const std::string& out_dir) {
  ExperimentSpec spec;
  spec.methods = parse_methods(methods);
  spec.sizes.clear();
  for (const std::string& s : sizes) spec.sizes.push_back(parse_size(s));
  spec.runs = runs;
  spec.master_seed = seed;
  spec.weights = opt.weights();
  spec.wfc = opt.wfc(0);
  spec.swarm = opt.swarm(0);
  spec.evo = opt.evo(0, false);
  spec.record_dir = fs::path(out_dir);

  const auto records = run_experiment(spec, [](const RunRecord& r) {
    std::cerr << fmt::format("{:>10} {}x{} run {:>2}: {} ({:.2f} s)\n", to_string(r.method), r.height, r.width, r.run,
                             r.success ? fmt::format("fitness {:.6g}", r.fitness) : "failed", r.wall_time);
  });
  const auto tables = summarize(records);
  const fs::path dir(out_dir);
  write_text(dir / "summary.csv", to_csv(tables));
  write_text(dir / "summary.md", to_markdown(tables));

  std::string verdicts;
  for (const StatTable& t : tables) {
    verdicts += fmt::format("# {}x{}\n", t.height, t.width);
    if (t.rows.size() < kAllMethods.size()) {
      verdicts += "rank check skipped: it needs all five methods\n";
      continue;
    }
    verdicts += format_verdicts(rank_check(t));
  }
  write_text(dir / "verdicts.txt", verdicts);
  std::cout << to_markdown(tables) << verdicts;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tile-based road network generation, scoring and rendering"};
  app.require_subcommand(1);

  SolverOptions gen_opt;
  std::string method = "ea";
  std::string size = "12x12";
  std::uint64_t seed = 0;
  std::string out_dir;
  auto* generate = app.add_subcommand("generate", "Generate one road network");
  generate->add_option("--method", method, "wfc, pso, gwo, ea or map-elites")
      ->check(CLI::IsMember({"wfc", "pso", "gwo", "ea", "map-elites"}));
  generate->add_option("--size", size, "Grid size HxW");
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--out", out_dir, "Output directory (default: print JSON)");
  gen_opt.add_to(*generate);

  std::string grid_file;
  std::string weights_file;
  auto* metrics = app.add_subcommand("metrics", "Score a grid JSON file");
  metrics->add_option("--grid", grid_file, "Grid JSON")->required()->check(CLI::ExistingFile);
  metrics->add_option("--config", weights_file, "Fitness weights JSON")->check(CLI::ExistingFile);

  std::string render_grid;
  std::string tileset_dir;
  bool synthetic = false;
  int tile_px = 128;
  std::uint64_t render_seed = 0;
  bool variants = false;
  std::string render_out = "render";
  std::string save_tiles;
  auto* render_cmd = app.add_subcommand("render", "Compose a map image and segmentation masks");
  render_cmd->add_option("--grid", render_grid, "Grid JSON")->check(CLI::ExistingFile);
  auto* tileset_opt = render_cmd->add_option("--tileset", tileset_dir, "Tileset directory")->check(CLI::ExistingDirectory);
  auto* synthetic_opt = render_cmd->add_flag("--synthetic", synthetic, "Use the procedural tileset");
  tileset_opt->excludes(synthetic_opt);
  render_cmd->add_option("--tile-px", tile_px, "Synthetic tile side in pixels")->check(CLI::Range(32, 4096));
  render_cmd->add_option("--seed", render_seed, "Palette and variant seed");
  render_cmd->add_flag("--variants", variants, "Pick tile variants at random");
  render_cmd->add_option("--out", render_out, "Output directory");
  render_cmd->add_option("--save-tileset", save_tiles, "Also write the tileset in loader layout");

  SolverOptions bench_opt;
  std::string bench_methods = "wfc,pso,gwo,ea,map-elites";
  std::vector<std::string> bench_sizes = {"12x12"};
  int runs = 4;
  std::uint64_t bench_seed = 0;
  std::string bench_out = "bench";
  auto* bench = app.add_subcommand("bench", "Run the method comparison");
  bench->add_option("--methods", bench_methods, "Comma-separated methods");
  bench->add_option("--size", bench_sizes, "Grid size HxW (repeatable)");
  bench->add_option("--runs", runs, "Runs per method and size")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "Master seed");
  bench->add_option("--out", bench_out, "Output directory");
  bench_opt.add_to(*bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(method, size, seed, gen_opt, out_dir);
    if (*metrics) return cmd_metrics(grid_file, weights_file);
    if (*render_cmd) {
      if (!synthetic && tileset_dir.empty()) throw std::invalid_argument("render needs --tileset DIR or --synthetic");
      if (render_grid.empty() && save_tiles.empty()) throw std::invalid_argument("render needs --grid");
      return cmd_render(render_grid, tileset_dir, synthetic, tile_px, render_seed, variants, render_out, save_tiles);
    }
    if (*bench) return cmd_bench(bench_methods, bench_sizes, runs, bench_seed, bench_opt, bench_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
