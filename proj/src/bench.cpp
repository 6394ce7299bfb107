#include "roadgen/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "roadgen/json.hpp"

namespace roadgen {

namespace fs = std::filesystem;

std::string to_string(Method m) {
  switch (m) {
    case Method::Wfc: return "wfc";
    case Method::Pso: return "pso";
    case Method::Gwo: return "gwo";
    case Method::Ea: return "ea";
    case Method::MapElites: return "map-elites";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected wfc, pso, gwo, ea or map-elites)");
}

std::vector<Method> parse_methods(std::string_view comma_list) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= comma_list.size()) {
    const std::size_t end = std::min(comma_list.find(',', start), comma_list.size());
    const std::string_view item = comma_list.substr(start, end - start);
    if (!item.empty()) {
      const Method m = parse_method(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    start = end + 1;
  }
  if (out.empty()) throw std::invalid_argument("no methods given");
  return out;
}

void validate(const ExperimentSpec& spec) {
  if (spec.methods.empty()) throw std::invalid_argument("experiment needs at least one method");
  if (spec.sizes.empty()) throw std::invalid_argument("experiment needs at least one grid size");
  if (spec.runs < 1) throw std::invalid_argument("runs must be >= 1");
  for (const auto& [h, w] : spec.sizes) {
    if (h < 2 || w < 2) throw std::invalid_argument("grid sizes must be at least 2x2");
  }
  validate(spec.weights);
  validate(spec.swarm);
  validate(spec.evo);
  if (spec.wfc.max_attempts < 1) throw std::invalid_argument("WFC attempts must be >= 1");
}

std::uint64_t run_seed(std::uint64_t master, Method method, int run) {
  return derive_seed(master, static_cast<std::uint64_t>(method) + 1, static_cast<std::uint64_t>(run));
}

bool RunRecord::same_outcome(const RunRecord& o) const {
  return method == o.method && run == o.run && seed == o.seed && height == o.height && width == o.width &&
         success == o.success && failure == o.failure && hard_boundary == o.hard_boundary && grid == o.grid &&
         report == o.report && fitness == o.fitness && cyclomatic_spread == o.cyclomatic_spread &&
         archive_size == o.archive_size && trace == o.trace;
}

nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json doc = {{"method", to_string(r.method)},
                        {"run", r.run},
                        {"seed", r.seed},
                        {"height", r.height},
                        {"width", r.width},
                        {"success", r.success},
                        {"hard_boundary", r.hard_boundary},
                        {"wall_time", r.wall_time}};
  if (r.success) {
    doc["grid"] = grid_to_json(r.grid);
    doc["metrics"] = to_json(r.report);
    doc["fitness"] = r.fitness;
  } else {
    doc["failure"] = r.failure;
  }
  if (r.cyclomatic_spread) doc["cyclomatic_iqr"] = *r.cyclomatic_spread;
  if (r.archive_size > 0) doc["archive_size"] = r.archive_size;
  if (!r.trace.empty()) doc["trace"] = r.trace;
  return doc;
}

RunRecord record_from_json(const nlohmann::json& doc) {
  RunRecord r;
  r.method = parse_method(doc.at("method").get<std::string>());
  r.run = doc.at("run").get<int>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.height = doc.at("height").get<int>();
  r.width = doc.at("width").get<int>();
  r.success = doc.at("success").get<bool>();
  r.hard_boundary = doc.value("hard_boundary", false);
  r.wall_time = doc.value("wall_time", 0.0);
  if (r.success) {
    r.grid = grid_from_json(doc.at("grid"));
    r.report = report_from_json(doc.at("metrics"));
    r.fitness = doc.at("fitness").get<double>();
  } else {
    r.grid = Grid(r.height, r.width);
    r.failure = doc.value("failure", std::string{});
  }
  if (doc.contains("cyclomatic_iqr")) r.cyclomatic_spread = doc["cyclomatic_iqr"].get<double>();
  r.archive_size = doc.value("archive_size", 0);
  if (doc.contains("trace")) r.trace = doc["trace"].get<std::vector<double>>();
  return r;
}

std::string record_file_name(const RunRecord& r) {
  return fmt::format("{}_{}x{}_run{:02}.json", to_string(r.method), r.height, r.width, r.run);
}

std::vector<RunRecord> load_records(const fs::path& records_dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(records_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> out;
  for (const fs::path& f : files) {
    std::ifstream in(f);
    try {
      out.push_back(record_from_json(nlohmann::json::parse(in)));
    } catch (const std::exception& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  return out;
}

namespace {

double cyclomatic_iqr(std::span<const Individual> population) {
  std::vector<double> values;
  values.reserve(population.size());
  for (const Individual& x : population) values.push_back(x.report.cyclomatic_complexity);
  return summarize_values(std::move(values)).iqr();
}

void persist(const RunRecord& r, const fs::path& dir) {
  const fs::path records = dir / "records";
  fs::create_directories(records);
  std::ofstream out(records / record_file_name(r));
  if (!out) throw std::runtime_error("cannot write " + (records / record_file_name(r)).string());
  out << to_json(r).dump(2) << '\n';
}

}  // namespace

RunRecord run_single(Method method, int height, int width, int run, const ExperimentSpec& spec) {
  RunRecord r;
  r.method = method;
  r.run = run;
  r.seed = run_seed(spec.master_seed, method, run);
  r.height = height;
  r.width = width;
  r.grid = Grid(height, width);

  const auto start = std::chrono::steady_clock::now();
  switch (method) {
    case Method::Wfc: {
      WfcConfig cfg = spec.wfc;
      cfg.seed = r.seed;
      r.hard_boundary = cfg.hard_boundary;
      const WfcResult res = wfc_generate(height, width, cfg);
      if (res.ok()) {
        r.grid = *res.grid;
      } else {
        r.success = false;
        r.failure = describe(res.failure);
      }
      break;
    }
    case Method::Pso:
    case Method::Gwo: {
      SwarmConfig cfg = spec.swarm;
      cfg.seed = r.seed;
      SwarmResult res =
          run_swarm(method == Method::Pso ? SwarmMethod::Pso : SwarmMethod::Gwo, height, width, cfg, spec.weights);
      r.grid = std::move(res.best);
      r.trace = std::move(res.trace);
      break;
    }
    case Method::Ea:
    case Method::MapElites: {
      EvoConfig cfg = spec.evo;
      cfg.seed = r.seed;
      cfg.map_elites = method == Method::MapElites;
      EvoResult res = evolve(height, width, cfg, spec.weights);
      r.grid = res.best.grid;
      r.trace = std::move(res.trace);
      if (cfg.map_elites) {
        r.archive_size = static_cast<int>(res.archive.size());
        if (!res.archive.empty()) r.cyclomatic_spread = archive_spread(res.archive).cyclomatic.iqr();
      } else {
        r.cyclomatic_spread = cyclomatic_iqr(res.population);
      }
      break;
    }
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.success) {
    r.report = full_report(r.grid);
    r.fitness = fitness(r.report, spec.weights).value;
  }
  return r;
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const RunCallback& on_record) {
  validate(spec);
  std::vector<RunRecord> records;
  for (Method m : spec.methods) {
    for (const auto& [h, w] : spec.sizes) {
      for (int run = 0; run < spec.runs; ++run) {
        RunRecord r = run_single(m, h, w, run, spec);
        if (spec.record_dir) persist(r, *spec.record_dir);
        if (on_record) on_record(r);
        records.push_back(std::move(r));
      }
    }
  }
  return records;
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::Components: return "components";
    case Metric::DeadEnds: return "dead_ends";
    case Metric::Cyclomatic: return "cyclomatic";
    case Metric::BoundaryViolations: return "boundary_violations";
    case Metric::AdjacentCrossings: return "adjacent_crossing_violation";
    case Metric::Coverage: return "coverage";
    case Metric::Crossings: return "crossings";
    case Metric::StraightRuns: return "straight_run_score";
    case Metric::AdjacentTurns: return "adjacent_turns";
    case Metric::Fitness: return "fitness";
    case Metric::WallTime: return "wall_time_s";
  }
  return "?";
}

double metric_value(const RunRecord& r, Metric m) {
  const MetricReport& x = r.report;
  switch (m) {
    case Metric::Components: return x.connected_components;
    case Metric::DeadEnds: return x.dead_ends;
    case Metric::Cyclomatic: return x.cyclomatic_complexity;
    case Metric::BoundaryViolations: return x.boundary_violations;
    case Metric::AdjacentCrossings: return x.adjacent_crossing_violation_score;
    case Metric::Coverage: return x.coverage;
    case Metric::Crossings: return x.crossings;
    case Metric::StraightRuns: return x.straight_run_score;
    case Metric::AdjacentTurns: return x.adjacent_turns;
    case Metric::Fitness: return r.fitness;
    case Metric::WallTime: return r.wall_time;
  }
  return 0.0;
}

const MethodStats* StatTable::find(Method m) const {
  for (const MethodStats& row : rows) {
    if (row.method == m) return &row;
  }
  return nullptr;
}

std::vector<StatTable> summarize(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no run records to summarize");
  std::vector<StatTable> tables;
  for (const RunRecord& r : records) {
    auto table = std::find_if(tables.begin(), tables.end(),
                              [&](const StatTable& t) { return t.height == r.height && t.width == r.width; });
    if (table == tables.end()) {
      tables.push_back({r.height, r.width, {}});
      table = std::prev(tables.end());
    }
    if (table->find(r.method) == nullptr) {
      MethodStats row;
      row.method = r.method;
      table->rows.push_back(std::move(row));
    }
  }
  for (StatTable& table : tables) {
    for (MethodStats& row : table.rows) {
      std::map<Metric, std::vector<double>> columns;
      for (const RunRecord& r : records) {
        if (r.method != row.method || r.height != table.height || r.width != table.width) continue;
        ++row.runs;
        row.hard_boundary = row.hard_boundary || r.hard_boundary;
        if (!r.success) continue;
        ++row.successes;
        for (Metric m : kAllMetrics) columns[m].push_back(metric_value(r, m));
      }
      if (row.successes == 0) {
        throw std::invalid_argument(fmt::format("method {} has no successful run at {}x{}", to_string(row.method),
                                                table.height, table.width));
      }
      for (auto& [m, values] : columns) row.metrics[m] = summarize_values(std::move(values));
    }
  }
  return tables;
}

namespace {

std::string num(double v) { return fmt::format("{:.4g}", v); }

std::string sigma(const Summary& s) { return s.n < 2 ? "0 (n=1)" : num(s.stddev); }

Verdict verdict(std::string id, std::string claim) {
  Verdict v;
  v.id = std::move(id);
  v.claim = std::move(claim);
  return v;
}

}  // namespace

std::string to_csv(const std::vector<StatTable>& tables) {
  std::ostringstream out;
  out << "size,method,metric,n,mean,sd,q1,median,q3,runs,successes,success_rate\n";
  for (const StatTable& t : tables) {
    for (const MethodStats& row : t.rows) {
      for (const auto& [m, s] : row.metrics) {
        out << fmt::format("{}x{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{},{:.6g}\n", t.height,
                           t.width, to_string(row.method), to_string(m), s.n, s.mean, s.stddev, s.q1, s.median,
                           s.q3, row.runs, row.successes, row.success_rate());
      }
    }
  }
  return out.str();
}

std::string to_markdown(const std::vector<StatTable>& tables) {
  struct Group {
    const char* title;
    std::array<std::pair<Metric, const char*>, 3> columns;
  };
  static const std::array<Group, 4> groups = {{
      {"Connectivity", {{{Metric::Components, "CO"}, {Metric::DeadEnds, "DE"}, {Metric::Cyclomatic, "CY"}}}},
      {"Constraints", {{{Metric::BoundaryViolations, "BV"}, {Metric::AdjacentCrossings, "ACV"},
                        {Metric::Coverage, "CV"}}}},
      {"Layout", {{{Metric::Crossings, "CR"}, {Metric::StraightRuns, "SR"}, {Metric::AdjacentTurns, "AT"}}}},
      {"Search", {{{Metric::Fitness, "fitness"}, {Metric::WallTime, "time [s]"}, {Metric::Cyclomatic, "CY IQR"}}}},
  }};

  std::ostringstream out;
  for (const StatTable& t : tables) {
    out << fmt::format("## {}x{}\n\n", t.height, t.width);
    for (const Group& g : groups) {
      const bool search = std::string_view(g.title) == "Search";
      out << "### " << g.title << "\n\n| method |";
      for (std::size_t i = 0; i < g.columns.size(); ++i) {
        const char* label = g.columns[i].second;
        out << (search && i == 2 ? fmt::format(" {} | CY median |", label)
                                 : fmt::format(" {} mu | {} sigma |", label, label));
      }
      if (search) out << " success |";
      out << "\n|---|";
      for (std::size_t i = 0; i < g.columns.size(); ++i) out << "---:|---:|";
      if (search) out << "---:|";
      out << '\n';
      for (const MethodStats& row : t.rows) {
        out << "| " << to_string(row.method) << " |";
        for (std::size_t i = 0; i < g.columns.size(); ++i) {
          const Summary& s = row.metrics.at(g.columns[i].first);
          if (search && i == 2) {
            out << fmt::format(" {} | {} |", num(s.iqr()), num(s.median));
          } else {
            out << fmt::format(" {} | {} |", num(s.mean), sigma(s));
          }
        }
        if (search) out << fmt::format(" {}/{} |", row.successes, row.runs);
        out << '\n';
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "PASS";
    case VerdictStatus::Fail: return "FAIL";
    case VerdictStatus::ExpectedFail: return "EXPECTED-FAIL";
    case VerdictStatus::NotApplicable: return "N/A";
  }
  return "?";
}

bool RankCheck::all_applicable_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) {
    return v.status == VerdictStatus::Pass || v.status == VerdictStatus::NotApplicable ||
           v.status == VerdictStatus::ExpectedFail;
  });
}

RankCheck rank_check(const StatTable& table) {
  std::map<Method, const MethodStats*> rows;
  for (Method m : kAllMethods) {
    const MethodStats* row = table.find(m);
    if (row == nullptr) throw std::invalid_argument("rank check needs all five methods; missing " + to_string(m));
    rows[m] = row;
  }
  const auto mean = [&](Method m, Metric metric) { return rows[m]->metrics.at(metric).mean; };
  const auto pass_if = [](bool ok) { return ok ? VerdictStatus::Pass : VerdictStatus::Fail; };

  RankCheck check;
  const std::array<Method, 4> searchers = {Method::Ea, Method::MapElites, Method::Pso, Method::Gwo};

  {
    Verdict v = verdict("i", "boundary violations are zero for ea, map-elites, pso, gwo and positive for soft-boundary wfc");
    bool others_zero = true;
    std::string detail;
    for (Method m : searchers) {
      others_zero = others_zero && mean(m, Metric::BoundaryViolations) == 0.0;
      detail += fmt::format("{}={} ", to_string(m), num(mean(m, Metric::BoundaryViolations)));
    }
    const double wfc_bv = mean(Method::Wfc, Metric::BoundaryViolations);
    detail += fmt::format("wfc={}", num(wfc_bv));
    if (!others_zero) {
      v.status = VerdictStatus::Fail;
    } else if (rows[Method::Wfc]->hard_boundary) {
      v.status = wfc_bv > 0.0 ? VerdictStatus::Fail : VerdictStatus::ExpectedFail;
      detail += "; wfc ran with hard boundaries, which remove boundary violations by construction";
    } else {
      v.status = pass_if(wfc_bv > 0.0);
    }
    v.detail = detail;
    check.verdicts.push_back(v);
  }
  {
    Verdict v = verdict("ii", "coverage is 1 for every method");
    bool ok = true;
    for (Method m : kAllMethods) {
      ok = ok && mean(m, Metric::Coverage) == 1.0;
      v.detail += fmt::format("{}{}={}", v.detail.empty() ? "" : " ", to_string(m), num(mean(m, Metric::Coverage)));
    }
    v.status = pass_if(ok);
    check.verdicts.push_back(v);
  }
  {
    Verdict v = verdict("iii", "wfc has the strictly largest dead-end mean");
    const double wfc = mean(Method::Wfc, Metric::DeadEnds);
    bool ok = true;
    v.detail = fmt::format("wfc={}", num(wfc));
    for (Method m : searchers) {
      ok = ok && wfc > mean(m, Metric::DeadEnds);
      v.detail += fmt::format(" {}={}", to_string(m), num(mean(m, Metric::DeadEnds)));
    }
    v.status = pass_if(ok);
    check.verdicts.push_back(v);
  }
  {
    Verdict v = verdict("iv", "ea adjacent-crossing score mean is below pso's and gwo's");
    const double ea = mean(Method::Ea, Metric::AdjacentCrossings);
    const double pso = mean(Method::Pso, Metric::AdjacentCrossings);
    const double gwo = mean(Method::Gwo, Metric::AdjacentCrossings);
    v.status = pass_if(ea < pso && ea < gwo);
    v.detail = fmt::format("ea={} pso={} gwo={}", num(ea), num(pso), num(gwo));
    check.verdicts.push_back(v);
  }
  {
    Verdict v = verdict("v", "map-elites has the widest cyclomatic IQR");
    const bool quartiles = std::all_of(rows.begin(), rows.end(), [](const auto& kv) { return kv.second->has_quartiles; });
    if (!quartiles) {
      v.status = VerdictStatus::NotApplicable;
      v.detail = "quartiles unavailable (table holds means and deviations only)";
    } else {
      const double me = rows[Method::MapElites]->metrics.at(Metric::Cyclomatic).iqr();
      bool ok = true;
      v.detail = fmt::format("map-elites={}", num(me));
      for (Method m : {Method::Wfc, Method::Pso, Method::Gwo, Method::Ea}) {
        const double iqr = rows[m]->metrics.at(Metric::Cyclomatic).iqr();
        ok = ok && me >= iqr;
        v.detail += fmt::format(" {}={}", to_string(m), num(iqr));
      }
      v.status = pass_if(ok);
    }
    check.verdicts.push_back(v);
  }

  int min_n = table.rows.front().successes;
  for (const MethodStats& row : table.rows) min_n = std::min(min_n, row.successes);
  if (min_n < kRecommendedRuns) {
    check.warnings.push_back(fmt::format(
        "only {} successful run(s) for some method; at least {} are recommended before trusting ordinal and IQR claims",
        min_n, kRecommendedRuns));
  }
  return check;
}

std::string format_verdicts(const RankCheck& check) {
  std::ostringstream out;
  for (const Verdict& v : check.verdicts) {
    out << fmt::format("[{}] ({}) {}: {}\n", to_string(v.status), v.id, v.claim, v.detail);
  }
  for (const std::string& w : check.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace roadgen
