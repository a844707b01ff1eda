#include "cancoord/cli/commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cancoord/cli/svg.hpp"
#include "cancoord/conflicts.hpp"
#include "cancoord/reference.hpp"
#include "cancoord/scenario_json.hpp"

namespace cancoord::cli {

using nlohmann::json;

namespace {

Scenario load(const std::filesystem::path& path) {
  try {
    return load_scenario(path);
  } catch (const ScenarioIoError& e) {
    throw CliError(kExitIo, e.what());
  }
}

void write_artifact(const std::filesystem::path& path, const std::string& content) {
  try {
    write_text_file(path, content);
  } catch (const std::exception& e) {
    throw CliError(kExitIo, e.what());
  }
}

Configuration apply_overrides(const Scenario& scenario, Configuration base,
                              const Overrides& overrides) {
  for (const auto& [name, value] : overrides) {
    scenario.parameter(name);
    base = base.with(name, value);
  }
  scenario.validate(base);
  return base;
}

DisagreementPoint disagreement_from(const Scenario& scenario, const Overrides& d) {
  DisagreementPoint point({d.begin(), d.end()});
  point.check(scenario);
  return point;
}

json config_json(const Scenario& scenario, const Configuration& config) {
  json out = json::object();
  for (const auto& p : scenario.parameters()) out[p.name] = json_number(config.at(p.name));
  return out;
}

json objectives_json(const ObjectiveValues& values) {
  json out = json::object();
  for (const auto& [k, v] : values) out[k] = json_number(v);
  return out;
}

json record_json(const ConflictRecord& r) {
  return json{{"category", std::string(to_string(r.category))},
              {"functions", {r.functions.first, r.functions.second}},
              {"subject", r.subject},
              {"path", r.path},
              {"explanation", r.explanation}};
}

json summary_json(const std::map<ConflictCategory, std::size_t>& summary) {
  json out = json::object();
  for (const auto& [c, n] : summary) out[std::string(to_string(c))] = n;
  return out;
}

json profile_list(const std::vector<Profile>& ps) {
  json out = json::array();
  for (const auto& p : ps) {
    out.push_back({std::string(to_string(p.first)), std::string(to_string(p.second))});
  }
  return out;
}

json matrix_json(const PayoffMatrix& m) {
  return json{{"r1", json_number(m.r1)},
              {"r2", json_number(m.r2)},
              {"r3", json_number(m.r3)},
              {"r4", json_number(m.r4)}};
}

json analysis_json(const PayoffMatrix& m, const GameAnalysis& a) {
  return json{{"payoffs", matrix_json(m)},
              {"is_pd", a.is_pd},
              {"dominant", a.dominant ? json(std::string(to_string(*a.dominant))) : json(nullptr)},
              {"pure_nash", profile_list(a.pure_nash)},
              {"social_optimum", profile_list(a.social_optimum)},
              {"coordination_gain", json_number(a.coordination_gain)}};
}

json derivation_json(const PayoffDerivation& d) {
  json players = json::array();
  for (const auto& p : d.players) {
    players.push_back({{"function", p.function},
                       {"preferred_value", json_number(p.preferred_value)},
                       {"payoffs", matrix_json(p.matrix)}});
  }
  json grid = json::array();
  for (double v : d.grid) grid.push_back(json_number(v));
  return json{{"parameter", d.parameter},
              {"baseline_value", json_number(d.baseline_value)},
              {"grid", grid},
              {"players", players},
              {"symmetric", matrix_json(d.symmetric)}};
}

std::string_view method_name(BargainMethod m) {
  switch (m) {
    case BargainMethod::Sequential: return "sequential";
    case BargainMethod::Ascent: return "ascent";
    case BargainMethod::Brute: return "brute";
  }
  return "?";
}

std::string summary_table(const std::map<ConflictCategory, std::size_t>& summary) {
  std::ostringstream os;
  os << "category  count\n";
  for (const auto& [c, n] : summary) {
    os << to_string(c) << std::string(10 - to_string(c).size(), ' ') << n << '\n';
  }
  return os.str();
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

PayoffMatrix parse_payoffs(const std::string& text) {
  std::vector<double> r;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) {
      throw CliError(kExitUsage, "--payoffs expects four numbers r1,r2,r3,r4");
    }
    r.push_back(v);
  }
  if (r.size() != 4) throw CliError(kExitUsage, "--payoffs expects four numbers r1,r2,r3,r4");
  return PayoffMatrix::make(r[0], r[1], r[2], r[3]);
}

std::string sweep_svg(const CsvTable& table, const std::string& title) {
  std::vector<Series> series;
  std::vector<double> xs;
  for (const auto& row : table.rows) xs.push_back(row[0]);
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    Series s{table.header[c], xs, {}};
    for (const auto& row : table.rows) s.y.push_back(row[c]);
    series.push_back(std::move(s));
  }
  return svg_line_plot(title, table.header[0], "value", series);
}

}  // namespace

json RunReport::to_json() const {
  return json{{"command", command},
              {"scenario_path", scenario_path ? json(*scenario_path) : json(nullptr)},
              {"results", results},
              {"artifacts", artifacts},
              {"tool_version", tool_version}};
}

Overrides parse_assignments(const std::vector<std::string>& items, const std::string& flag) {
  Overrides out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CliError(kExitUsage, flag + " expects name=value, got '" + item + "'");
    }
    const auto name = item.substr(0, eq);
    const auto text = item.substr(eq + 1);
    std::size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != text.size() || !std::isfinite(value)) {
      throw CliError(kExitUsage, flag + " value for '" + name + "' is not a finite number");
    }
    out[name] = value;
  }
  return out;
}

RunReport cmd_detect(const std::filesystem::path& scenario_path, OutputFormat format,
                     std::ostream& out) {
  const auto scenario = load(scenario_path);
  const auto records = detect_conflicts(scenario);
  const auto summary = conflict_summary(records);

  if (format == OutputFormat::Json) {
    for (const auto& r : records) out << record_json(r).dump() << '\n';
  } else {
    out << "category,function_a,function_b,subject,path\n";
    for (const auto& r : records) {
      out << to_string(r.category) << ',' << r.functions.first << ',' << r.functions.second << ','
          << r.subject << ',' << join(r.path, ">") << '\n';
    }
  }
  out << '\n' << summary_table(summary);

  RunReport report;
  report.command = "detect";
  report.scenario_path = scenario_path.string();
  json recs = json::array();
  for (const auto& r : records) recs.push_back(record_json(r));
  report.results = {{"records", recs}, {"summary", summary_json(summary)}};
  return report;
}

RunReport cmd_game(const PayoffMatrix& payoffs) {
  RunReport report;
  report.command = "game";
  report.results = {{"analysis", analysis_json(payoffs, analyze(payoffs))}};
  return report;
}

RunReport cmd_game(const std::filesystem::path& scenario_path, std::size_t conflict_index,
                   const Overrides& base_overrides) {
  const auto scenario = load(scenario_path);
  const auto records = detect_conflicts(scenario);
  if (conflict_index >= records.size()) {
    throw CliError(kExitUsage, "conflict index " + std::to_string(conflict_index) +
                                   " out of range (scenario has " +
                                   std::to_string(records.size()) + " conflicts)");
  }
  const auto config = apply_overrides(scenario, scenario.defaults(), base_overrides);
  const auto derivation = derive_payoffs(scenario, records[conflict_index], config);

  RunReport report;
  report.command = "game";
  report.scenario_path = scenario_path.string();
  report.results = {{"conflict", record_json(records[conflict_index])},
                    {"config", config_json(scenario, config)},
                    {"derivation", derivation_json(derivation)},
                    {"analysis", analysis_json(derivation.symmetric, analyze(derivation.symmetric))}};
  return report;
}

json outcome_json(const Scenario& scenario, const BargainOutcome& outcome, std::string_view method) {
  return json{{"method", std::string(method)},
              {"config", config_json(scenario, outcome.config)},
              {"nash_product", outcome.nash_product},
              {"per_objective", objectives_json(outcome.per_objective)},
              {"trace_length", outcome.trace.size()},
              {"converged", outcome.converged},
              {"iterations", outcome.iterations}};
}

RunReport cmd_bargain(const BargainOptions& options) {
  const auto scenario = load(options.scenario_path);
  const auto d = disagreement_from(scenario, options.disagreement);

  if (!options.order.empty() && options.method != BargainMethod::Sequential) {
    throw CliError(kExitUsage, "--order only applies to --method sequential");
  }

  BargainOutcome outcome;
  json meta = json::object();
  switch (options.method) {
    case BargainMethod::Sequential: {
      auto order = options.order;
      if (order.empty()) {
        for (const auto& p : scenario.parameters()) order.push_back(p.name);
      }
      outcome = sequential_nbs(scenario, order, d);
      meta["order"] = order;
      break;
    }
    case BargainMethod::Ascent: {
      const auto start = apply_overrides(scenario, scenario.defaults(), options.start);
      outcome = coordinate_ascent(scenario, start, d, options.max_iters, options.tol);
      meta["start"] = config_json(scenario, start);
      meta["max_iters"] = options.max_iters;
      meta["tol"] = options.tol;
      break;
    }
    case BargainMethod::Brute: {
      const auto cap = grid_cap_from_env();
      outcome = brute_force_nbs(scenario, d, cap);
      meta["grid_cap"] = cap;
      break;
    }
  }

  json dis = json::object();
  for (const auto& o : scenario.objectives()) dis[o.name] = json_number(d.at(o.name));
  meta["disagreement"] = dis;

  RunReport report;
  report.command = "bargain";
  report.scenario_path = options.scenario_path.string();
  report.results = outcome_json(scenario, outcome, method_name(options.method));
  report.results["metadata"] = meta;
  if (options.out) {
    report.artifacts.push_back(options.out->string());
    write_artifact(*options.out, canonical_dump(report.to_json()));
  }
  return report;
}

CsvTable sweep_table(const Scenario& scenario, const std::string& param,
                     const Configuration& base, const DisagreementPoint& d) {
  const auto grid = candidate_set(scenario.parameter(param)).values;
  CsvTable table;
  table.header.push_back(param);
  for (const auto& o : scenario.objectives()) table.header.push_back(o.name);
  table.header.push_back("product");
  for (const auto& row : sweep(scenario, param, grid, base)) {
    std::vector<double> cells{row.value};
    for (const auto& o : scenario.objectives()) cells.push_back(row.objectives.at(o.name));
    cells.push_back(nash_product(scenario, base.with(param, row.value), d));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

RunReport cmd_sweep(const SweepOptions& options, std::ostream& out) {
  const auto scenario = load(options.scenario_path);
  if (!scenario.is_parameter(options.param)) {
    throw CliError(kExitUsage, "unknown parameter '" + options.param + "'");
  }
  const auto base = apply_overrides(scenario, scenario.defaults(), options.base);
  const auto d = disagreement_from(scenario, options.disagreement);
  const auto table = sweep_table(scenario, options.param, base, d);

  RunReport report;
  report.command = "sweep";
  report.scenario_path = options.scenario_path.string();
  if (options.out_csv) {
    write_artifact(*options.out_csv, table.render());
    report.artifacts.push_back(options.out_csv->string());
  } else {
    out << table.render();
  }
  if (options.svg) {
    write_artifact(*options.svg, sweep_svg(table, "sweep of " + options.param));
    report.artifacts.push_back(options.svg->string());
  }
  json grid = json::array();
  for (const auto& row : table.rows) grid.push_back(json_number(row[0]));
  report.results = {{"param", options.param},
                    {"base", config_json(scenario, base)},
                    {"grid", grid},
                    {"rows", table.rows.size()}};
  return report;
}

RunReport cmd_reproduce(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw CliError(kExitIo, "cannot create output directory '" + out_dir.string() + "'" +
                                (ec ? ": " + ec.message() : std::string()));
  }

  RunReport report;
  report.command = "reproduce-paper";
  const auto emit = [&](const std::string& name, const std::string& content) {
    write_artifact(out_dir / name, content);
    report.artifacts.push_back(name);
  };

  const auto scenario = reference_scenario();
  const auto defaults = scenario.defaults();
  const DisagreementPoint d;
  emit("scenario.json", canonical_dump(to_json(scenario)));

  // structural conflicts
  const auto records = detect_conflicts(scenario);
  const auto summary = conflict_summary(records);
  json recs = json::array();
  for (const auto& r : records) recs.push_back(record_json(r));
  emit("conflicts.json", canonical_dump({{"records", recs}, {"summary", summary_json(summary)}}));

  // game on the shared-input conflict
  json game = json::object();
  for (const auto& r : records) {
    if (r.category != ConflictCategory::A1) continue;
    const auto derivation = derive_payoffs(scenario, r, defaults);
    game = {{"conflict", record_json(r)},
            {"derivation", derivation_json(derivation)},
            {"analysis", analysis_json(derivation.symmetric, analyze(derivation.symmetric))}};
    break;
  }
  emit("game.json", canonical_dump(game));

  // bargaining by three methods
  const auto sequential = sequential_nbs(scenario, {"p1", "p2"}, d);
  const auto reversed = sequential_nbs(scenario, {"p2", "p1"}, d);
  const auto ascent = coordinate_ascent(scenario, defaults, d);
  const auto brute = brute_force_nbs(scenario, d, grid_cap_from_env());
  emit("bargain_sequential.json", canonical_dump(outcome_json(scenario, sequential, "sequential")));
  emit("bargain_sequential_reversed.json",
       canonical_dump(outcome_json(scenario, reversed, "sequential")));
  emit("bargain_ascent.json", canonical_dump(outcome_json(scenario, ascent, "ascent")));
  emit("bargain_brute.json", canonical_dump(outcome_json(scenario, brute, "brute")));

  // sweeps: p1 at the default p2, then p2 with p1 frozen at its optimum
  const auto p1_table = sweep_table(scenario, "p1", defaults, d);
  const auto p2_table =
      sweep_table(scenario, "p2", defaults.with("p1", sequential.config.at("p1")), d);
  emit("sweep_p1.csv", p1_table.render());
  emit("sweep_p2.csv", p2_table.render());
  emit("sweep_p1.svg", sweep_svg(p1_table, "o1, o2 and o1*o2 against p1 (p2 = 100)"));
  emit("sweep_p2.svg", sweep_svg(p2_table, "o1, o2 and o1*o2 against p2 (p1 = 6)"));

  // full grid surface
  const auto p1_grid = parameter_grid(scenario.parameter("p1"));
  const auto p2_grid = parameter_grid(scenario.parameter("p2"));
  CsvTable surface{{"p1", "p2", "o1", "o2", "product"}, {}};
  std::vector<std::vector<double>> o1_map(p2_grid.size()), o2_map(p2_grid.size());
  for (std::size_t i = 0; i < p2_grid.size(); ++i) {
    for (double p1 : p1_grid) {
      const auto cfg = Configuration({{"p1", p1}, {"p2", p2_grid[i]}});
      const auto v = evaluate(scenario, cfg);
      surface.rows.push_back({p1, p2_grid[i], v.at("o1"), v.at("o2"), nash_product(scenario, cfg, d)});
      o1_map[i].push_back(v.at("o1"));
      o2_map[i].push_back(v.at("o2"));
    }
  }
  emit("surface.csv", surface.render());
  emit("surface_o1.svg", svg_heatmap("o1 over (p1, p2)", "p1", "p2", p1_grid, p2_grid, o1_map));
  emit("surface_o2.svg", svg_heatmap("o2 over (p1, p2)", "p1", "p2", p1_grid, p2_grid, o2_map));

  const auto same = [](const BargainOutcome& a, const BargainOutcome& b) {
    return a.config == b.config && std::abs(a.nash_product - b.nash_product) <= 1e-9;
  };
  const bool methods_agree = same(sequential, ascent) && same(sequential, brute);
  const double p1 = sequential.config.at("p1");
  const double p2 = sequential.config.at("p2");

  json summary_doc{
      {"p1", json_number(p1)},
      {"p2", json_number(p2)},
      {"methods_agree", methods_agree},
      {"nash_product", sequential.nash_product},
      {"methods",
       {{"sequential", config_json(scenario, sequential.config)},
        {"ascent", config_json(scenario, ascent.config)},
        {"brute", config_json(scenario, brute.config)}}},
      {"order_reversed", config_json(scenario, reversed.config)},
      {"conflict_summary", summary_json(summary)},
      {"game_is_pd", game.contains("analysis") ? game["analysis"]["is_pd"] : json(nullptr)}};
  emit("summary.json", canonical_dump(summary_doc));

  report.results = summary_doc;
  write_artifact(out_dir / "report.json", canonical_dump(report.to_json()));

  if (p1 != 6.0 || p2 != 300.0 || !methods_agree) {
    throw CliError(kExitInternal, "reproduced optimum (" + format_double(p1) + ", " +
                                      format_double(p2) + ") methods_agree=" +
                                      (methods_agree ? "true" : "false") +
                                      " deviates from the expected (6, 300)");
  }
  return report;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conflict analysis and Nash-bargaining coordination for cognitive network functions",
               "cancoord"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  int seed = 0;
  std::string format = "json";
  app.add_option("--scenario", scenario_path, "Scenario JSON file");
  app.add_option("--out", out_path, "Output file (bargain, sweep) or directory (reproduce-paper)");
  app.add_option("--seed", seed, "Reserved; all algorithms are deterministic");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* detect = app.add_subcommand("detect", "Detect structural conflicts");

  auto* game = app.add_subcommand("game", "Classify a conflict as a 2x2 game");
  std::string payoffs;
  std::size_t conflict_index = 0;
  std::vector<std::string> sets;
  game->add_option("--payoffs", payoffs, "r1,r2,r3,r4");
  auto* ci = game->add_option("--conflict-index", conflict_index, "Index into detect output");
  game->add_option("--set", sets, "Baseline parameter override name=value");

  auto* bargain = app.add_subcommand("bargain", "Nash-bargaining coordination");
  std::string method = "sequential";
  std::string order;
  std::vector<std::string> disagreement;
  std::size_t max_iters = 100;
  double tol = 1e-12;
  bargain->add_option("--method", method)->check(CLI::IsMember({"sequential", "ascent", "brute"}));
  bargain->add_option("--order", order, "Comma-separated parameter order (sequential)");
  bargain->add_option("--disagreement", disagreement, "objective=value");
  bargain->add_option("--set", sets, "Starting point override name=value (ascent)");
  bargain->add_option("--max-iters", max_iters)->check(CLI::PositiveNumber);
  bargain->add_option("--tol", tol)->check(CLI::PositiveNumber);

  auto* sweep_cmd = app.add_subcommand("sweep", "One-parameter sweep to CSV");
  std::string param;
  std::string svg;
  sweep_cmd->add_option("--param", param)->required();
  sweep_cmd->add_option("--set", sets, "Base parameter override name=value");
  sweep_cmd->add_option("--disagreement", disagreement, "objective=value");
  sweep_cmd->add_option("--svg", svg, "Also write an SVG plot");

  auto* reproduce = app.add_subcommand("reproduce-paper",
                                       "Run the reference two-function study end to end");

  for (auto* sub : {detect, game, bargain, sweep_cmd, reproduce}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto fmt = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  const auto need_scenario = [&] {
    if (scenario_path.empty()) throw CliError(kExitUsage, "--scenario is required");
    return std::filesystem::path(scenario_path);
  };
  const auto json_only = [&](const char* cmd) {
    if (fmt != OutputFormat::Json) {
      throw CliError(kExitUsage, std::string(cmd) + " only supports --format json");
    }
  };

  try {
    RunReport report;
    bool print_report = true;
    if (detect->parsed()) {
      report = cmd_detect(need_scenario(), fmt, out);
      print_report = false;
      if (!out_path.empty()) {
        report.artifacts.push_back(out_path);
        write_artifact(out_path, canonical_dump(report.to_json()));
      }
    } else if (game->parsed()) {
      json_only("game");
      if (!payoffs.empty()) {
        report = cmd_game(parse_payoffs(payoffs));
      } else {
        if (ci->count() == 0) {
          throw CliError(kExitUsage, "game needs --payoffs or --scenario with --conflict-index");
        }
        report = cmd_game(need_scenario(), conflict_index, parse_assignments(sets, "--set"));
      }
      if (!out_path.empty()) {
        report.artifacts.push_back(out_path);
        write_artifact(out_path, canonical_dump(report.to_json()));
      }
    } else if (bargain->parsed()) {
      json_only("bargain");
      BargainOptions o;
      o.scenario_path = need_scenario();
      o.method = method == "ascent"  ? BargainMethod::Ascent
                 : method == "brute" ? BargainMethod::Brute
                                     : BargainMethod::Sequential;
      if (!order.empty()) {
        std::stringstream ss(order);
        std::string item;
        while (std::getline(ss, item, ',')) o.order.push_back(item);
      }
      o.disagreement = parse_assignments(disagreement, "--disagreement");
      o.start = parse_assignments(sets, "--set");
      o.max_iters = max_iters;
      o.tol = tol;
      if (!out_path.empty()) o.out = out_path;
      report = cmd_bargain(o);
    } else if (sweep_cmd->parsed()) {
      SweepOptions o;
      o.scenario_path = need_scenario();
      o.param = param;
      o.base = parse_assignments(sets, "--set");
      o.disagreement = parse_assignments(disagreement, "--disagreement");
      if (!out_path.empty()) o.out_csv = out_path;
      if (!svg.empty()) o.svg = svg;
      // without --out the CSV itself goes to stdout
      print_report = o.out_csv.has_value();
      report = cmd_sweep(o, out);
    } else if (reproduce->parsed()) {
      if (out_path.empty()) throw CliError(kExitUsage, "reproduce-paper requires --out <dir>");
      report = cmd_reproduce(out_path);
    }
    if (print_report) out << canonical_dump(report.to_json());
    return kExitOk;
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace cancoord::cli
