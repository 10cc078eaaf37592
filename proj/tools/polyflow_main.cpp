// polyflow: flow rate regions, cut-set bounds, and flow-cut gaps for
// polymatroidal models of wireless networks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyflow/channels.hpp"
#include "polyflow/cutset.hpp"
#include "polyflow/flowsolve.hpp"
#include "polyflow/json_io.hpp"
#include "polyflow/verify.hpp"
#include "polyflow/version.hpp"

using namespace polyflow;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kParse = 2, kCapExceeded = 3, kSolver = 4 };

json jnum_or_null(double v) { return std::isfinite(v) ? jnum(v) : json(nullptr); }

struct OutputWriter {
  std::string out_dir = ".";
  std::string input_hash;
  std::string command;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::vector<std::string> files;
  json summary = json::object();

  void write(const std::string& name, const json& content) {
    write_file_atomic(out_dir + "/" + name, content.dump(2) + "\n");
    files.push_back(name);
  }
  void finish() {
    json manifest;
    manifest["schemaVersion"] = kSchemaVersion;
    manifest["toolVersion"] = kToolVersion;
    manifest["command"] = command;
    manifest["inputHash"] = input_hash;
    manifest["wallMs"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count();
    manifest["summary"] = summary;
    manifest["files"] = files;
    write_file_atomic(out_dir + "/manifest.json", manifest.dump(2) + "\n");
  }
};

NetworkFile load_network(const std::string& path, std::string* hash) {
  const std::string bytes = read_file(path);
  if (hash) *hash = fnv1a_hex(bytes);
  return parse_network_json(json::parse(bytes));
}

json flow_to_json(const PolyNet& net, const TrafficPattern& traffic, const FlowSolution& sol) {
  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["objective"] = jnum_or_null(sol.objective);
  j["lambda"] = jnum_or_null(sol.lambda);
  j["dualValue"] = jnum_or_null(sol.dual_value);
  json rates = json::array();
  for (double r : sol.rates) rates.push_back(jnum(r));
  j["rates"] = std::move(rates);
  json flows = json::object();
  for (int i = 0; i < traffic.size(); ++i) {
    json per_edge = json::object();
    for (int e = 0; e < net.num_edges(); ++e)
      if (!sol.flow.empty() && sol.flow_on(i, e) > 1e-12)
        per_edge[net.edge(e).id] = jnum(sol.flow_on(i, e));
    flows[std::to_string(i)] = std::move(per_edge);
  }
  j["flows"] = std::move(flows);
  j["stats"] = {{"rows", sol.stats.num_rows},
                {"vars", sol.stats.num_vars},
                {"status", lp_status_name(sol.stats.status)}};
  return j;
}

json cert_to_json(const CutCertificate& cert) {
  json j;
  j["omega"] = cert.omega;
  j["crossing"] = cert.crossing;
  j["cost"] = jnum_or_null(cert.cost);
  j["unbounded"] = cert.unbounded;
  j["exact"] = cert.exact;
  json assign = json::object();
  for (const auto& [e, v] : cert.assignment) assign[e] = v;
  j["assignment"] = std::move(assign);
  j["separated"] = cert.separated;
  return j;
}

int cmd_validate(const std::string& path, bool deep) {
  NetworkFile file = load_network(path, nullptr);
  ValidateOptions opts;
  opts.deep_oracle_checks = deep;
  auto violations = validate(file.net, opts);
  if (file.tau) {
    auto tv = file.tau->violations(file.net);
    violations.insert(violations.end(), tv.begin(), tv.end());
  }
  if (file.traffic)
    for (const auto& c : file.traffic->commodities()) {
      if (file.net.node_index(c.source) < 0)
        violations.push_back("traffic names unknown node " + c.source);
      if (file.net.node_index(c.sink) < 0)
        violations.push_back("traffic names unknown node " + c.sink);
    }
  for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
  std::cout << (violations.empty() ? "ok" : "invalid") << " (" << file.net.num_nodes()
            << " nodes, " << file.net.num_edges() << " edges)\n";
  return violations.empty() ? kOk : kValidation;
}

TrafficPattern require_traffic(const NetworkFile& file) {
  if (!file.traffic) throw InvalidInputError("the input file carries no traffic block");
  return *file.traffic;
}

int cmd_flow(const std::string& path, OutputWriter& out, const std::string& objective,
             std::vector<double> weights, const SolveOptions& opts) {
  NetworkFile file = load_network(path, &out.input_hash);
  TrafficPattern traffic = require_traffic(file);

  FlowSolution sol;
  if (objective == "concurrent") {
    sol = max_concurrent_flow(file.net, traffic, opts);
  } else if (objective == "sum") {
    if (weights.empty()) weights.assign(static_cast<size_t>(traffic.size()), 1.0);
    if (static_cast<int>(weights.size()) != traffic.size())
      throw InvalidInputError("need one weight per commodity");
    sol = max_weighted_sum(file.net, traffic, weights, opts);
  } else {
    throw InvalidInputError("unknown objective \"" + objective + "\"");
  }
  out.write("flow.json", flow_to_json(file.net, traffic, sol));
  out.summary["lambda"] = jnum_or_null(sol.lambda);
  out.summary["objective"] = jnum_or_null(sol.objective);
  std::cout << "objective " << sol.objective << " (lambda " << sol.lambda << ")\n";
  return kOk;
}

int cmd_cut(const std::string& path, OutputWriter& out, bool super_st, const CutOptions& opts,
            const SolveOptions& flow_opts) {
  NetworkFile file = load_network(path, &out.input_hash);
  TrafficPattern traffic = require_traffic(file);

  json j;
  j["schemaVersion"] = kSchemaVersion;
  auto report = min_cut(file.net, traffic, opts);
  json entries = json::array();
  for (const auto& e : report.entries) {
    json entry;
    json sep = json::array();
    for (int i = 0; i < report.num_commodities; ++i)
      if (e.separated & (1u << i)) sep.push_back(i);
    entry["separated"] = std::move(sep);
    entry["bound"] = jnum(e.bound);
    entry["certificate"] = cert_to_json(e.cert);
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  j["allSeparable"] = report.all_separable;
  const double scalar = report.scalar_min_cut();
  j["minCut"] = jnum_or_null(scalar);
  out.summary["minCut"] = jnum_or_null(scalar);

  if (super_st) {
    if (traffic.kind() != TrafficKind::XTraffic)
      throw InvalidInputError("--super-st expects an xTraffic block");
    auto sum =
        max_weighted_sum(file.net, traffic, std::vector<double>(static_cast<size_t>(traffic.size()), 1.0), flow_opts);
    auto aug = add_super_source_sink(file.net, traffic);
    auto aug_cut = min_cut(aug.net, aug.traffic, opts);
    auto aug_flow = max_concurrent_flow(aug.net, aug.traffic, flow_opts);
    json st;
    st["sumRateFlow"] = jnum_or_null(sum.objective);
    st["superStMinCut"] = jnum_or_null(aug_cut.scalar_min_cut());
    st["superStMaxFlow"] = jnum_or_null(aug_flow.lambda);
    st["equal"] = std::isfinite(sum.objective) &&
                  std::abs(sum.objective - aug_cut.scalar_min_cut()) <= 1e-6 &&
                  std::abs(sum.objective - aug_flow.lambda) <= 1e-6;
    out.summary["superStEqual"] = st["equal"];
    j["superSt"] = std::move(st);
  }
  out.write("cuts.json", j);
  std::cout << "min cut " << scalar << " over " << report.entries.size() << " separated sets\n";
  return kOk;
}

int cmd_gap(const std::string& path, OutputWriter& out, const GapOptions& opts) {
  NetworkFile file = load_network(path, &out.input_hash);
  TrafficPattern traffic = require_traffic(file);
  auto gap = flow_cut_gap(file.net, traffic, opts);

  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["seed"] = opts.seed;
  j["gap"] = jnum_or_null(gap.gap);
  j["flowWithinCut"] = gap.flow_within_cut;
  json rows = json::array();
  for (const auto& r : gap.rows) {
    json w = json::array();
    for (double v : r.w) w.push_back(jnum(v));
    rows.push_back({{"w", std::move(w)},
                    {"hFlow", jnum_or_null(r.h_flow)},
                    {"hCut", jnum_or_null(r.h_cut)},
                    {"ratio", jnum_or_null(r.ratio)}});
  }
  j["directions"] = std::move(rows);
  out.write("gap.json", j);
  out.summary["gap"] = jnum_or_null(gap.gap);
  std::cout << "gap " << gap.gap << " over " << gap.rows.size() << " directions\n";
  return gap.flow_within_cut ? kOk : kValidation;
}

int cmd_compile(const std::string& path, OutputWriter& out, const std::string& mode_flag,
                bool reciprocal_flag) {
  const std::string bytes = read_file(path);
  out.input_hash = fnv1a_hex(bytes);
  WirelessSpec spec = parse_wireless_json(json::parse(bytes));
  if (!mode_flag.empty()) {
    if (mode_flag == "color")
      spec.mode = CompileMode::Color;
    else if (mode_flag == "snapshot")
      spec.mode = CompileMode::Snapshot;
    else if (mode_flag == "antenna")
      spec.mode = CompileMode::Antenna;
    else
      throw InvalidInputError("unknown --mode \"" + mode_flag + "\"");
  }
  if (reciprocal_flag) spec.reciprocal = true;

  CompileResult result = compile(spec);
  json j = network_to_json(result.net, result.tau ? &*result.tau : nullptr,
                           result.traffic ? &*result.traffic : nullptr);
  json factors = json::array();
  for (const auto& c : result.channels)
    factors.push_back({{"label", c.label},
                       {"kind", c.kind},
                       {"powerScale", jnum(c.power_scale)},
                       {"rateScale", jnum(c.rate_scale)},
                       {"reciprocal", c.reciprocal},
                       {"edges", c.edges}});
  j["lossFactors"] = std::move(factors);
  json node_map = json::object();
  for (const auto& [orig, vertex] : result.node_map) node_map[orig] = vertex;
  j["nodeMap"] = std::move(node_map);
  if (!result.antenna_original.empty()) {
    json ao = json::object();
    for (const auto& [antenna, orig] : result.antenna_original) ao[antenna] = orig;
    j["antennaOriginal"] = std::move(ao);
  }
  out.write("compiled.json", j);
  out.summary["nodes"] = result.net.num_nodes();
  out.summary["edges"] = result.net.num_edges();

  const auto violations = validate(result.net);
  std::cout << "compiled " << result.net.num_nodes() << " nodes, " << result.net.num_edges()
            << " edges; validate: " << (violations.empty() ? "ok" : "FAILED") << "\n";
  return violations.empty() ? kOk : kValidation;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, OutputWriter& out) {
  std::vector<verify::CheckRow> rows;
  if (suite == "all") {
    rows = verify::run_all(seed);
  } else {
    rows = verify::run_suite(suite, seed);
  }
  const std::string table = verify::render_table_json(rows, seed);
  write_file_atomic(out.out_dir + "/verify.json", table);
  out.files.push_back("verify.json");
  out.input_hash = fnv1a_hex(suite);
  int failures = 0;
  for (const auto& r : rows) {
    std::printf("%-4s %s: %s (%s)\n", r.pass ? "ok" : "FAIL", r.suite.c_str(), r.name.c_str(),
                r.value.c_str());
    if (!r.pass) ++failures;
  }
  out.summary["failures"] = failures;
  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " checks FAILED")
            << "\n";
  return failures == 0 ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polymatroidal network flow toolkit"};
  app.require_subcommand(1);

  std::string input, out_dir = ".", objective = "concurrent", mode_flag, suite = "all";
  std::vector<double> weights;
  bool deep = false, super_st = false, reciprocal = false, lazy = false, greedy_fallback = false;
  std::uint64_t seed = 0;
  int directions = 100;
  SolveOptions solve_opts;
  CutOptions cut_opts;

  auto* validate_cmd = app.add_subcommand("validate", "check a network file against the schema");
  validate_cmd->add_option("input", input)->required();
  validate_cmd->add_flag("--deep", deep, "also check oracle laws, size permitting");

  auto* flow_cmd = app.add_subcommand("flow", "solve the multicommodity flow LP");
  flow_cmd->add_option("input", input)->required();
  flow_cmd->add_option("--out", out_dir);
  flow_cmd->add_option("--objective", objective, "concurrent | sum");
  flow_cmd->add_option("--weights", weights, "per-commodity weights for --objective sum");
  flow_cmd->add_option("--degree-cap", solve_opts.degree_cap);
  flow_cmd->add_flag("--lazy", lazy, "separate subset constraints lazily");
  flow_cmd->add_option("--tolerance", solve_opts.tol);

  auto* cut_cmd = app.add_subcommand("cut", "enumerate the cut-set rate region");
  cut_cmd->add_option("input", input)->required();
  cut_cmd->add_option("--out", out_dir);
  cut_cmd->add_flag("--super-st", super_st, "also compare the X sum rate via a super source/sink");
  cut_cmd->add_option("--vertex-cap", cut_opts.vertex_cap);
  cut_cmd->add_option("--assignment-cap", cut_opts.assignment_cap);
  cut_cmd->add_flag("--greedy-fallback", greedy_fallback);

  auto* gap_cmd = app.add_subcommand("gap", "estimate the flow-cut gap by support sampling");
  gap_cmd->add_option("input", input)->required();
  gap_cmd->add_option("--out", out_dir);
  gap_cmd->add_option("--seed", seed);
  gap_cmd->add_option("--directions", directions);
  gap_cmd->add_option("--vertex-cap", cut_opts.vertex_cap);
  gap_cmd->add_option("--degree-cap", solve_opts.degree_cap);

  auto* compile_cmd = app.add_subcommand("compile", "compile a wireless description into a network");
  compile_cmd->add_option("input", input)->required();
  compile_cmd->add_option("--out", out_dir);
  compile_cmd->add_option("--mode", mode_flag, "color | snapshot | antenna");
  compile_cmd->add_flag("--reciprocal", reciprocal);

  auto* verify_cmd = app.add_subcommand("verify", "run property suites");
  verify_cmd->add_option("suite", suite, "suite name or \"all\"");
  verify_cmd->add_option("--out", out_dir);
  verify_cmd->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  OutputWriter out;
  out.out_dir = out_dir;
  {
    std::string cmdline;
    for (int i = 1; i < argc; ++i) cmdline += std::string(i > 1 ? " " : "") + argv[i];
    out.command = cmdline;
  }
  solve_opts.lazy = lazy;
  cut_opts.greedy_fallback = greedy_fallback;

  try {
    int code = kOk;
    if (validate_cmd->parsed()) {
      code = cmd_validate(input, deep);
      return code;  // no report files
    } else if (flow_cmd->parsed()) {
      code = cmd_flow(input, out, objective, weights, solve_opts);
    } else if (cut_cmd->parsed()) {
      code = cmd_cut(input, out, super_st, cut_opts, solve_opts);
    } else if (gap_cmd->parsed()) {
      GapOptions gopts;
      gopts.seed = seed;
      gopts.random_directions = directions;
      gopts.flow = solve_opts;
      gopts.cut = cut_opts;
      code = cmd_gap(input, out, gopts);
    } else if (compile_cmd->parsed()) {
      code = cmd_compile(input, out, mode_flag, reciprocal);
    } else if (verify_cmd->parsed()) {
      code = cmd_verify(suite, seed, out);
    }
    out.finish();
    return code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const SizeCapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  } catch (const InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kValidation;
  }
}
