// Command-line front end: solves the fixed-point systems of the hard-core
// tree models, sweeps activities, emits branch-curve data and runs the
// finite-volume consistency oracle. CSV by default, JSON mirror with
// --format json; every JSON report embeds the full run configuration.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hc/boundary_laws.hpp"
#include "hc/branches.hpp"
#include "hc/newton.hpp"
#include "hc/oracle.hpp"
#include "hc/report.hpp"
#include "hc/solver.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::string system;
  std::string graph;
  std::string law;
  std::string branch_case;
  int k = 2;
  int i = 2;
  int n = 2;
  double lambda = 1.0;
  double lambda_min = 1.0;
  double lambda_max = 2.0;
  double t_min = 0.01;
  double t_max = 0.99;
  int steps = 100;
  bool list = false;
  std::vector<double> z;
  std::string format = "csv";
  std::string out_path;
};

json config_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  if (cfg.command == "solve" || cfg.command == "sweep" ||
      cfg.command == "critical") {
    j["system"] = cfg.system;
    j["k"] = cfg.k;
    j["i"] = cfg.i;
  }
  if (cfg.command == "solve") j["lambda"] = cfg.lambda;
  if (cfg.command == "sweep") {
    j["lambda_min"] = cfg.lambda_min;
    j["lambda_max"] = cfg.lambda_max;
    j["steps"] = cfg.steps;
  }
  if (cfg.command == "branches") {
    j["case"] = cfg.branch_case;
    j["t_min"] = cfg.t_min;
    j["t_max"] = cfg.t_max;
    j["steps"] = cfg.steps;
  }
  if (cfg.command == "verify-consistency") {
    j["graph"] = cfg.graph;
    j["k"] = cfg.k;
    j["n"] = cfg.n;
    j["lambda"] = cfg.lambda;
    j["law"] = cfg.law;
    if (cfg.law == "wp") {
      j["i"] = cfg.i;
      j["z"] = cfg.z;
    }
  }
  if (cfg.command == "enumerate") {
    j["graph"] = cfg.graph;
    j["k"] = cfg.k;
    j["n"] = cfg.n;
    j["list"] = cfg.list;
  }
  j["format"] = cfg.format;
  j["out"] = cfg.out_path;
  return j;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + cfg.out_path);
  file << text;
}

json record_json(const hc::solver::SolutionRecord& rec) {
  json j;
  j["a"] = rec.x(0);
  j["b"] = rec.x(1);
  j["residual"] = rec.residual;
  j["classification"] = hc::solver::to_string(rec.cls);
  j["tangency"] = rec.tangency;
  return j;
}

hc::solver::SystemKind parse_system(const std::string& name) {
  const auto system = hc::solver::system_from_string(name);
  if (!system)
    throw CLI::ValidationError("--system",
                               "unknown system '" + name +
                                   "'; expected I2, I3, I4, ti3-hinge or ti3-wand");
  return *system;
}

void warn_on_clamps() {
  if (hc::laws::clamp_events() > 0)
    std::cerr << "note: " << hc::laws::clamp_events()
              << " fractional-power argument(s) clamped to 1e-300\n";
}

int run_solve(const RunConfig& cfg) {
  const auto system = parse_system(cfg.system);
  hc::solver::SweepPoint point;
  point.lambda = cfg.lambda;
  point.records = hc::solver::solve_system(system, cfg.k, cfg.i, cfg.lambda);
  point.count = static_cast<int>(point.records.size());

  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg);
    j["count"] = point.count;
    json sols = json::array();
    for (const auto& rec : point.records) sols.push_back(record_json(rec));
    j["solutions"] = sols;
    emit(cfg, j.dump(2) + "\n");
  } else {
    emit(cfg, hc::report::records_csv({point}));
  }
  warn_on_clamps();
  return 0;
}

int run_sweep(const RunConfig& cfg) {
  const auto system = parse_system(cfg.system);
  const auto report = hc::solver::sweep(system, cfg.k, cfg.i, cfg.lambda_min,
                                        cfg.lambda_max, cfg.steps);
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg);
    json points = json::array();
    for (const auto& p : report.points) {
      json pj;
      pj["lambda"] = p.lambda;
      pj["count"] = p.count;
      json sols = json::array();
      for (const auto& rec : p.records) sols.push_back(record_json(rec));
      pj["solutions"] = sols;
      if (!p.error.empty()) pj["error"] = p.error;
      points.push_back(pj);
    }
    j["points"] = points;
    json crit = json::array();
    for (const auto& c : report.criticals)
      crit.push_back({{"lambda", c.lambda}, {"method", c.method}});
    j["criticals"] = crit;
    emit(cfg, j.dump(2) + "\n");
  } else {
    emit(cfg, hc::report::sweep_csv(report));
    for (const auto& c : report.criticals)
      std::cerr << "critical lambda ~ " << hc::report::format_double(c.lambda)
                << " (" << c.method << ")\n";
  }
  warn_on_clamps();
  return 0;
}

int run_critical(const RunConfig& cfg) {
  const auto system = parse_system(cfg.system);
  const auto cp = hc::solver::critical_lambda(system, cfg.k, cfg.i);
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg);
    j["lambda_cr"] = cp.lambda;
    if (std::isfinite(cp.arg)) j["arg"] = cp.arg;
    j["method"] = cp.method;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "system,k,i,lambda_cr,arg,method\n";
    out << cfg.system << "," << cfg.k << "," << cfg.i << ","
        << hc::report::format_double(cp.lambda) << ",";
    if (std::isfinite(cp.arg)) out << hc::report::format_double(cp.arg);
    out << "," << cp.method << "\n";
    emit(cfg, out.str());
  }
  return 0;
}

int run_branches(const RunConfig& cfg) {
  if (cfg.steps < 2) throw CLI::ValidationError("--steps", "need at least 2");
  if (!(cfg.t_min > 0.0 && cfg.t_max < 1.0 && cfg.t_min < cfg.t_max))
    throw CLI::ValidationError("--t-min/--t-max",
                               "need 0 < t-min < t-max < 1");
  const bool is_i2 = cfg.branch_case == "I2";
  if (!is_i2 && cfg.branch_case != "I3")
    throw CLI::ValidationError("--case", "expected I2 or I3");

  const double step = (cfg.t_max - cfg.t_min) / (cfg.steps - 1);
  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg);
    json rows = json::array();
    for (int s = 0; s < cfg.steps; ++s) {
      const double t = cfg.t_min + s * step;
      json row;
      row["t"] = t;
      if (is_i2) {
        const auto b = hc::branches::i2_branches(t);
        row["phi1"] = b.phi1;
        row["phi2"] = b.phi2;
        row["phi3"] = b.phi3;
      } else {
        const auto b = hc::branches::i3_branches(t);
        row["lambda1"] = b.lambda1;
        row["lambda2"] = b.lambda2 ? json(*b.lambda2) : json();
        row["lambda3"] = b.lambda3 ? json(*b.lambda3) : json();
      }
      rows.push_back(row);
    }
    j["rows"] = rows;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << (is_i2 ? "t,phi1,phi2,phi3" : "t,lambda1,lambda2,lambda3") << "\n";
    for (int s = 0; s < cfg.steps; ++s) {
      const double t = cfg.t_min + s * step;
      out << hc::report::format_double(t);
      if (is_i2) {
        const auto b = hc::branches::i2_branches(t);
        out << "," << hc::report::format_double(b.phi1) << ","
            << hc::report::format_double(b.phi2) << ","
            << hc::report::format_double(b.phi3);
      } else {
        const auto b = hc::branches::i3_branches(t);
        out << "," << hc::report::format_double(b.lambda1) << ",";
        if (b.lambda2) out << hc::report::format_double(*b.lambda2);
        out << ",";
        if (b.lambda3) out << hc::report::format_double(*b.lambda3);
      }
      out << "\n";
    }
    emit(cfg, out.str());
  }
  return 0;
}

// TI fixed point of the two-state recursion z = (1+lambda z)^-k
double pipe_ti_fixed_point(int k, double lambda) {
  auto g = [&](double z) { return z * std::pow(1.0 + lambda * z, k) - 1.0; };
  double z = hc::bisect(g, 1e-12, 1.0);
  for (int j = 0; j < 6; ++j) {
    const double base = std::pow(1.0 + lambda * z, k - 1);
    const double dg = base * (1.0 + lambda * z + z * k * lambda);
    z -= g(z) / dg;
  }
  return z;
}

int run_verify(const RunConfig& cfg) {
  const hc::FertileGraph graph = hc::FertileGraph::from_name(cfg.graph);
  if (cfg.n < 1)
    throw CLI::ValidationError("--n", "consistency check needs n >= 1");
  const hc::FiniteTree tree = hc::build_tree(cfg.k, cfg.n);

  double residual = 0.0;
  json law_json;
  if (cfg.law == "ti") {
    const hc::FiniteTree inner = hc::build_tree(cfg.k, cfg.n - 1);
    if (graph.num_states() == 2) {
      const double z = pipe_ti_fixed_point(cfg.k, cfg.lambda);
      hc::LevelWeights inner_weights = hc::two_state_weights(inner, cfg.n - 1, z);
      // the root takes one extra recursion factor (it has k+1 children)
      if (cfg.n == 1) inner_weights.w(0, 1) = std::pow(1.0 + cfg.lambda * z, -(cfg.k + 1));
      residual = hc::check_consistency(tree, graph, cfg.lambda,
                                       hc::two_state_weights(tree, cfg.n, z),
                                       inner_weights);
      law_json = {{"z", z}};
    } else {
      const auto records = hc::solver::solve_TI3(graph, cfg.k, cfg.lambda);
      const auto it = std::find_if(records.begin(), records.end(), [](const auto& r) {
        return r.cls == hc::solver::Classification::translation_invariant;
      });
      if (it == records.end())
        throw std::runtime_error("no translation-invariant solution found");
      hc::LevelWeights inner_weights = hc::three_state_weights(
          inner, cfg.n - 1, it->x(0), it->x(1), cfg.lambda);
      if (cfg.n == 1)
        for (int c = 1; c <= 2; ++c)
          inner_weights.w(0, c) = std::pow(it->x(c - 1) / cfg.lambda,
                                           double(cfg.k + 1) / cfg.k);
      residual = hc::check_consistency(
          tree, graph, cfg.lambda,
          hc::three_state_weights(tree, cfg.n, it->x(0), it->x(1), cfg.lambda),
          inner_weights);
      law_json = {{"z1", it->x(0)}, {"z2", it->x(1)}};
    }
  } else if (cfg.law == "wp") {
    if (graph.num_states() != 2)
      throw CLI::ValidationError(
          "--law", "weakly periodic laws are two-state; use --graph pipe");
    if (cfg.z.size() != 8)
      throw CLI::ValidationError("--z", "a weakly periodic law needs 8 values");
    if (cfg.n < 2)
      throw CLI::ValidationError("--n", "a weakly periodic check needs n >= 2");
    hc::laws::Vector8 z;
    for (int j = 0; j < 8; ++j) z(j) = cfg.z[j];
    const hc::FiniteTree inner = hc::build_tree(cfg.k, cfg.n - 1);
    residual = hc::check_consistency(
        tree, graph, cfg.lambda,
        hc::two_state_weights(tree, cfg.n,
                              hc::weakly_periodic_field(tree, cfg.n, z, cfg.i)),
        hc::two_state_weights(
            inner, cfg.n - 1,
            hc::weakly_periodic_field(inner, cfg.n - 1, z, cfg.i)));
    law_json = {{"z", cfg.z}, {"i", cfg.i}};
  } else {
    throw CLI::ValidationError("--law", "expected ti or wp");
  }

  json j;
  j["config"] = config_json(cfg);
  j["residual"] = residual;
  j["law"] = law_json;
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int run_enumerate(const RunConfig& cfg) {
  const hc::FertileGraph graph = hc::FertileGraph::from_name(cfg.graph);
  const hc::FiniteTree tree = hc::build_tree(cfg.k, cfg.n);
  const auto configs = hc::enumerate_admissible(tree, graph);
  const std::uint64_t transfer = hc::count_admissible(tree, graph);
  const bool match = configs.size() == transfer;

  if (cfg.format == "json") {
    json j;
    j["config"] = config_json(cfg);
    j["count"] = configs.size();
    j["transfer_count"] = transfer;
    j["match"] = match;
    if (cfg.list) {
      json rows = json::array();
      for (const auto& sigma : configs) {
        std::string states;
        for (auto s : sigma) states += static_cast<char>('0' + s);
        rows.push_back(states);
      }
      j["configurations"] = rows;
    }
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    if (cfg.list) {
      out << "index,states\n";
      for (std::size_t idx = 0; idx < configs.size(); ++idx) {
        out << idx << ",";
        for (auto s : configs[idx]) out << static_cast<char>('0' + s);
        out << "\n";
      }
    } else {
      out << "graph,k,n,count,transfer_count,match\n";
      out << cfg.graph << "," << cfg.k << "," << cfg.n << "," << configs.size()
          << "," << transfer << "," << (match ? "true" : "false") << "\n";
    }
    emit(cfg, out.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Boundary-law solver and finite-volume consistency oracle for "
      "hard-core models on Cayley trees"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_format = [&cfg](CLI::App* cmd) {
    cmd->add_option("--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cfg.out_path, "output path (default: stdout)");
  };

  CLI::App* solve = app.add_subcommand(
      "solve", "all solutions of a fixed-point system at one activity");
  solve->add_option("--system", cfg.system,
                    "I2 | I3 | I4 | ti3-hinge | ti3-wand")->required();
  solve->add_option("--k", cfg.k, "branching order");
  solve->add_option("--i", cfg.i, "letter-set cardinality |A|");
  solve->add_option("--lambda", cfg.lambda, "activity")->required();
  add_format(solve);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "solution counts over an activity grid, transitions refined");
  sweep->add_option("--system", cfg.system,
                    "I2 | I3 | I4 | ti3-hinge | ti3-wand")->required();
  sweep->add_option("--k", cfg.k, "branching order");
  sweep->add_option("--i", cfg.i, "letter-set cardinality |A|");
  sweep->add_option("--lambda-min", cfg.lambda_min)->required();
  sweep->add_option("--lambda-max", cfg.lambda_max)->required();
  sweep->add_option("--steps", cfg.steps)->required();
  add_format(sweep);

  CLI::App* critical = app.add_subcommand(
      "critical", "critical activity where the solution count changes");
  critical->add_option("--system", cfg.system, "I2 | ti3-hinge | ti3-wand")
      ->required();
  critical->add_option("--k", cfg.k, "branching order");
  critical->add_option("--i", cfg.i, "letter-set cardinality |A|");
  add_format(critical);

  CLI::App* branches = app.add_subcommand(
      "branches", "solution-branch curves lambda(t) over a t grid");
  branches->add_option("--case", cfg.branch_case, "I2 | I3")->required();
  branches->add_option("--t-min", cfg.t_min);
  branches->add_option("--t-max", cfg.t_max);
  branches->add_option("--steps", cfg.steps);
  add_format(branches);

  CLI::App* verify = app.add_subcommand(
      "verify-consistency",
      "finite-volume measure consistency residual of a boundary law");
  verify->add_option("--graph", cfg.graph, "pipe | hinge | wand")->required();
  verify->add_option("--k", cfg.k, "branching order");
  verify->add_option("--n", cfg.n, "volume depth");
  verify->add_option("--lambda", cfg.lambda, "activity")->required();
  verify->add_option("--law", cfg.law, "ti | wp")->default_val("ti");
  verify->add_option("--i", cfg.i, "letter-set cardinality |A| for wp laws");
  verify->add_option("--z", cfg.z, "8 slot values of a weakly periodic law")
      ->expected(8);
  add_format(verify);

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "admissible configurations of a finite volume");
  enumerate->add_option("--graph", cfg.graph, "pipe | hinge | wand")->required();
  enumerate->add_option("--k", cfg.k, "branching order");
  enumerate->add_option("--n", cfg.n, "volume depth");
  enumerate->add_flag("--list", cfg.list, "list the configurations");
  add_format(enumerate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      cfg.command = "solve";
      return run_solve(cfg);
    }
    if (sweep->parsed()) {
      cfg.command = "sweep";
      return run_sweep(cfg);
    }
    if (critical->parsed()) {
      cfg.command = "critical";
      return run_critical(cfg);
    }
    if (branches->parsed()) {
      cfg.command = "branches";
      return run_branches(cfg);
    }
    if (verify->parsed()) {
      cfg.command = "verify-consistency";
      return run_verify(cfg);
    }
    if (enumerate->parsed()) {
      cfg.command = "enumerate";
      return run_enumerate(cfg);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
