#pragma once

// Command-line surface: build / check / analyze / report. Every output file
// embeds its resolved configuration (no timestamps), so identical invocations
// produce identical bytes. Exit codes are a stable contract: 0 success,
// 2 validation or guard failure, 3 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reiflab/address.hpp"
#include "reiflab/analysis.hpp"
#include "reiflab/construct.hpp"
#include "reiflab/errors.hpp"
#include "reiflab/families.hpp"
#include "reiflab/io.hpp"
#include "reiflab/localview.hpp"
#include "reiflab/reifenberg.hpp"
#include "reiflab/rotation.hpp"
#include "reiflab/sample.hpp"
#include "reiflab/theta.hpp"

namespace reiflab {

inline constexpr const char* kToolVersion = "1.0.0";

namespace cli_detail {

struct BuildArgs {
  std::string theta;
  std::uint32_t depth = 8;
  std::string json_path, svg_path;
  int cap_level = -1;
  bool allow_deep = false;
};

struct CheckArgs {
  std::string theta;           // exclusive with set
  std::string set;             // "N" | "lambda"
  std::uint32_t depth = 12;    // theta clouds
  std::uint32_t n_max = 6;     // example sets
  double spacing = 4e-5;
  std::string window = "-2,2,-2,2";
  std::string property;
  double rho0 = 0.0;
  double end_floor = 0.05;
  std::size_t budget = 48;
  std::uint64_t seed = 2026;
  std::string out;
};

struct DimArgs {
  std::string theta;
  std::uint32_t depth = 16;
  int eps_from = 4, eps_to = 12;  // dyadic exponents
  std::string out;
};

struct AuditArgs {
  std::string theta;
  std::uint32_t levels = 10;
  std::uint32_t depth = 16;
  std::string out;
};

struct DensityArgs {
  std::string theta;
  std::string set;
  std::uint32_t depth = 12;
  std::uint32_t n_max = 6;
  double spacing = 4e-5;
  std::string window = "-2,2,-2,2";
  std::string center = "0,0";  // fixed endpoint, on every cloud in the family
  double rho_hi = 0.25;
  int rungs = 6;
  std::string out;
};

struct SpiralArgs {
  std::string theta;
  std::string address;
  double threshold = 2 * kPi;
  std::string out;
};

struct ReportArgs {
  std::string build_path, check_path, analyze_path, out;
};

inline Window parse_window(const std::string& text) {
  Window w;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &w.x0, &w.x1, &w.y0, &w.y1) != 4) {
    throw validation_error("window must be x0,x1,y0,y1; got \"" + text + "\"");
  }
  w.validate();
  return w;
}

inline Point2 parse_point(const std::string& text) {
  Point2 p;
  if (std::sscanf(text.c_str(), "%lf,%lf", &p.x, &p.y) != 2) {
    throw validation_error("point must be x,y; got \"" + text + "\"");
  }
  return p;
}

// Cloud selection shared by check and density: either a cap construction
// (--theta/--depth) or one of the two example families (--set N|lambda).
inline SampleCloud make_cloud(const std::string& theta_arg, const std::string& set_arg,
                              std::uint32_t depth, std::uint32_t n_max, double spacing,
                              const std::string& window_arg, json* config) {
  if (theta_arg.empty() == set_arg.empty()) {
    throw validation_error("exactly one of --theta and --set is required");
  }
  if (!theta_arg.empty()) {
    const ThetaSequence theta = parse_theta_arg(theta_arg);
    if (config) {
      (*config)["theta"] = theta_to_json(theta);
      (*config)["depth"] = depth;
    }
    return cloud_from_construction(Construction(theta, depth));
  }
  ExampleKind kind;
  if (set_arg == "N" || set_arg == "lines") {
    kind = ExampleKind::kLines;
  } else if (set_arg == "lambda" || set_arg == "parabolas") {
    kind = ExampleKind::kParabolas;
  } else {
    throw validation_error("--set must be N or lambda; got \"" + set_arg + "\"");
  }
  const Window w = parse_window(window_arg);
  if (config) {
    (*config)["set"] = set_arg;
    (*config)["n_max"] = n_max;
    (*config)["spacing"] = spacing;
    (*config)["window"] = {w.x0, w.x1, w.y0, w.y1};
  }
  return example_set(kind, n_max, w, spacing);
}

inline int cmd_build(const BuildArgs& a) {
  const ThetaSequence theta = parse_theta_arg(a.theta);
  const Construction c = build_construction(theta, a.depth, a.allow_deep);
  std::printf("built: depth %u, %llu edges, edge length %.12g\n", c.depth(),
              static_cast<unsigned long long>(c.edge_count(c.depth())),
              edge_length(theta, c.depth()));
  if (!a.json_path.empty()) {
    std::ofstream out(a.json_path, std::ios::binary);
    if (!out) throw io_error("cannot open " + a.json_path + " for writing");
    write_construction_json(out, c);
    if (!out.good()) throw io_error("write failed: " + a.json_path);
    std::printf("wrote %s\n", a.json_path.c_str());
  }
  if (!a.svg_path.empty()) {
    std::ofstream out(a.svg_path, std::ios::binary);
    if (!out) throw io_error("cannot open " + a.svg_path + " for writing");
    write_construction_svg(out, c, a.cap_level);
    if (!out.good()) throw io_error("write failed: " + a.svg_path);
    std::printf("wrote %s\n", a.svg_path.c_str());
  }
  return 0;
}

inline int cmd_check(const CheckArgs& a) {
  const PropertyId id = PropertyId::parse(a.property);
  json config;
  config["property"] = id.to_string();
  config["budget"] = a.budget;
  config["seed"] = a.seed;
  config["end_floor"] = a.end_floor;
  if (a.rho0 != 0.0) config["rho0"] = a.rho0;
  const SampleCloud cloud =
      make_cloud(a.theta, a.set, a.depth, a.n_max, a.spacing, a.window, &config);

  CheckParams params;
  params.rho0 = a.rho0;
  params.end_floor = a.end_floor;
  params.budget = a.budget;
  params.seed = a.seed;
  const PropertyReport report = check_property(cloud, id, params);

  std::printf("cloud: %s (%zu points, floor %.6g)\n", cloud.provenance.c_str(),
              cloud.points.size(), cloud.resolution_floor);
  std::printf("property: %s\n", id.to_string().c_str());
  std::printf("verdict: %s\n", to_string(report.verdict));
  std::printf("centers: %zu pass / %zu fail / %zu inconclusive\n", report.centers_pass,
              report.centers_fail, report.centers_inconclusive);
  if (!report.witnesses.empty()) {
    const Witness& w = report.witnesses.front();
    std::printf("witness: y=(%.6g, %.6g) rho=%.6g defect=%.6g\n", w.y.x, w.y.y, w.rho, w.defect);
  }
  if (!a.out.empty()) {
    json j = report_to_json(report);
    j["config"] = config;
    j["tool_version"] = kToolVersion;
    save_text(a.out, j.dump(2) + "\n");
    std::printf("wrote %s\n", a.out.c_str());
  }
  return 0;  // completion is success regardless of verdict
}

inline int cmd_analyze_dim(const DimArgs& a) {
  const ThetaSequence theta = parse_theta_arg(a.theta);
  const SampleCloud cloud = cloud_from_construction(Construction(theta, a.depth));
  if (a.eps_from >= a.eps_to) throw validation_error("dim: need eps-from < eps-to");
  const BoxCountResult res = box_dimension(cloud, dyadic_grid_ladder(a.eps_from, a.eps_to));
  std::printf("box-count slope: %.6f (residual %.6f, %s)\n", res.slope, res.residual,
              res.trusted ? "trusted" : "untrusted");
  if (!a.out.empty()) {
    std::string body = "# theta=" + a.theta + " depth=" + std::to_string(a.depth) +
                       " slope=" + std::to_string(res.slope) +
                       " residual=" + std::to_string(res.residual) + "\n";
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < res.epsilons.size(); ++k) {
      rows.push_back({res.epsilons[k], static_cast<double>(res.counts[k])});
    }
    body += to_csv({"epsilon", "boxes"}, rows);
    save_text(a.out, body);
    std::printf("wrote %s\n", a.out.c_str());
  }
  return 0;
}

inline int cmd_analyze_audit(const AuditArgs& a) {
  const ThetaSequence theta = parse_theta_arg(a.theta);
  if (a.levels + 1 > a.depth) throw validation_error("audit: need depth > levels");
  const Construction c(theta, a.depth);
  const SeparationAudit audit = separation_audit(c, a.levels);
  std::printf("pairs: %llu (max angle %.6f, bound %.6f)\n",
              static_cast<unsigned long long>(audit.pairs_checked), audit.max_pair_angle,
              2.0 * theta.at(1));
  std::printf("rectangles: %llu\n", static_cast<unsigned long long>(audit.rectangles_checked));
  std::printf("violations: %zu cone, %zu rectangle -> %s\n", audit.cone_violations.size(),
              audit.rectangle_violations.size(), audit.passed() ? "PASS" : "FAIL");
  if (!a.out.empty()) {
    json j = audit_to_json(audit);
    j["config"] = {{"theta", theta_to_json(theta)}, {"levels", a.levels}, {"depth", a.depth}};
    j["tool_version"] = kToolVersion;
    save_text(a.out, j.dump(2) + "\n");
    std::printf("wrote %s\n", a.out.c_str());
  }
  return 0;
}

inline int cmd_analyze_table(const std::string& out) {
  const std::string table = classification_table();
  if (out.empty()) {
    std::fputs(table.c_str(), stdout);
  } else {
    save_text(out, table);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

inline int cmd_analyze_density(const DensityArgs& a) {
  json config;
  const SampleCloud cloud =
      make_cloud(a.theta, a.set, a.depth, a.n_max, a.spacing, a.window, &config);
  const Point2 center = parse_point(a.center);
  if (a.rungs < 1) throw validation_error("density: need at least one rung");
  std::vector<double> ladder;
  for (double rho = a.rho_hi; static_cast<int>(ladder.size()) < a.rungs; rho *= 0.5) {
    if (rho < cloud.resolution_floor) break;
    ladder.push_back(rho);
  }
  if (ladder.empty()) throw validation_error("density: rho_hi below the resolution floor");
  const DensityProfile profile = density_profile(cloud, center, ladder);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < profile.radii.size(); ++k) {
    rows.push_back({profile.radii[k], profile.lengths[k], profile.ratios[k]});
    std::printf("rho %.6g: length %.6g ratio %.6g\n", profile.radii[k], profile.lengths[k],
                profile.ratios[k]);
  }
  if (!a.out.empty()) {
    std::string body = "# cloud=" + cloud.provenance + " center=" + a.center + "\n";
    body += to_csv({"rho", "length", "ratio"}, rows);
    save_text(a.out, body);
    std::printf("wrote %s\n", a.out.c_str());
  }
  return 0;
}

inline int cmd_analyze_spiral(const SpiralArgs& a) {
  const ThetaSequence theta = parse_theta_arg(a.theta);
  const DyadicAddress addr = DyadicAddress::from_string(a.address);
  const auto witness = spiral_witness(theta, addr, a.threshold);

  json j;
  j["schema"] = "reiflab.spiral/1";
  j["tool_version"] = kToolVersion;
  j["config"] = {{"theta", theta_to_json(theta)},
                 {"address", a.address},
                 {"threshold", a.threshold}};
  j["found"] = witness.has_value();
  if (witness) {
    j["m1"] = witness->m1;
    j["m2"] = witness->m2;
    j["rotation_sum"] = witness->sum;
    std::vector<ProfilePoint> profile = descent_profile(theta, addr);
    double tv = 0.0;
    std::optional<double> prev;
    for (const ProfilePoint& p : profile) {
      if (p.level < witness->m1 || p.level > witness->m2) continue;
      if (prev) tv += direction_distance(*prev, p.direction);
      prev = p.direction;
    }
    j["direction_tv"] = tv;
    std::printf("witness: levels [%u, %u], rotation sum %.6f, direction TV %.6f\n", witness->m1,
                witness->m2, witness->sum, tv);
  } else {
    std::printf("no witness window within %zu levels\n", addr.size());
  }
  if (!a.out.empty()) {
    save_text(a.out, j.dump(2) + "\n");
    std::printf("wrote %s\n", a.out.c_str());
  }
  return 0;
}

inline int cmd_report(const ReportArgs& a) {
  json bundle;
  bundle["schema"] = "reiflab.bundle/1";
  bundle["tool_version"] = kToolVersion;
  bundle["build"] = load_json(a.build_path);
  bundle["check"] = load_json(a.check_path);
  bundle["analyze"] = load_json(a.analyze_path);
  save_text(a.out, bundle.dump(2) + "\n");
  std::printf("wrote %s\n", a.out.c_str());
  return 0;
}

}  // namespace cli_detail

// Parses and runs one invocation; args exclude the program name.
inline int run_cli(const std::vector<std::string>& args) {
  using namespace cli_detail;
  CLI::App app{"triangular-cap curves: construction, flatness checks, analysis"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "construct a curve and export JSON/SVG");
  build->add_option("--theta", build_args.theta, "constant:<angle> | file:<path> | triple")
      ->required();
  build->add_option("--depth", build_args.depth, "construction depth");
  build->add_option("--json", build_args.json_path, "write construction JSON here");
  build->add_option("--svg", build_args.svg_path, "write SVG here");
  build->add_option("--caps", build_args.cap_level, "overlay cap outlines of this level (SVG)");
  build->add_flag("--allow-deep", build_args.allow_deep, "override the depth guard");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "evaluate a flatness property on a sampled set");
  auto* check_theta = check->add_option("--theta", check_args.theta, "cap-curve source");
  auto* check_set = check->add_option("--set", check_args.set, "example family: N | lambda");
  check_theta->excludes(check_set);
  check->add_option("--depth", check_args.depth, "construction depth (theta clouds)");
  check->add_option("--n-max", check_args.n_max, "family truncation (example sets)");
  check->add_option("--spacing", check_args.spacing, "sample spacing (example sets)");
  check->add_option("--window", check_args.window, "x0,x1,y0,y1 (example sets)");
  check->add_option("--property", check_args.property, "property id alpha,beta,gamma")
      ->required();
  check->add_option("--rho0", check_args.rho0, "global radius (beta = rho0 only)");
  check->add_option("--end-floor", check_args.end_floor, "fine: ceiling for the finest rung");
  check->add_option("--budget", check_args.budget, "sampled centers");
  check->add_option("--seed", check_args.seed, "sampling seed");
  check->add_option("--out", check_args.out, "write report JSON here");

  auto* analyze = app.add_subcommand("analyze", "dimension, audits, tables, spirals");
  analyze->require_subcommand(1);

  DimArgs dim_args;
  auto* dim = analyze->add_subcommand("dim", "box-counting dimension");
  dim->add_option("--theta", dim_args.theta, "cap-curve source")->required();
  dim->add_option("--depth", dim_args.depth, "construction depth");
  dim->add_option("--eps-from", dim_args.eps_from, "coarsest grid exponent (2^-k)");
  dim->add_option("--eps-to", dim_args.eps_to, "finest grid exponent (2^-k)");
  dim->add_option("--out", dim_args.out, "write (epsilon, boxes) CSV here");

  AuditArgs audit_args;
  auto* audit = analyze->add_subcommand("audit", "cap separation audit");
  audit->add_option("--theta", audit_args.theta, "cap-curve source")->required();
  audit->add_option("--levels", audit_args.levels, "audit levels 1..n");
  audit->add_option("--depth", audit_args.depth, "sample depth");
  audit->add_option("--out", audit_args.out, "write audit JSON here");

  std::string table_out;
  auto* table = analyze->add_subcommand("table", "classification of the twelve properties");
  table->add_option("--out", table_out, "write Markdown here");

  DensityArgs density_args;
  auto* density = analyze->add_subcommand("density", "length density around a center");
  auto* density_theta = density->add_option("--theta", density_args.theta, "cap-curve source");
  auto* density_set = density->add_option("--set", density_args.set, "example family");
  density_theta->excludes(density_set);
  density->add_option("--depth", density_args.depth, "construction depth (theta clouds)");
  density->add_option("--n-max", density_args.n_max, "family truncation (example sets)");
  density->add_option("--spacing", density_args.spacing, "sample spacing (example sets)");
  density->add_option("--window", density_args.window, "x0,x1,y0,y1 (example sets)");
  density->add_option("--center", density_args.center, "ball center x,y");
  density->add_option("--rho-hi", density_args.rho_hi, "largest radius");
  density->add_option("--rungs", density_args.rungs, "halving rungs");
  density->add_option("--out", density_args.out, "write density CSV here");

  SpiralArgs spiral_args;
  auto* spiral = analyze->add_subcommand("spiral", "rotation-sum witness along an address");
  spiral->add_option("--theta", spiral_args.theta, "cap-curve source")->required();
  spiral->add_option("--address", spiral_args.address, "binary address, e.g. 101010...")
      ->required();
  spiral->add_option("--threshold", spiral_args.threshold, "rotation-sum threshold");
  spiral->add_option("--out", spiral_args.out, "write witness JSON here");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "bundle prior outputs into one file");
  report->add_option("--build", report_args.build_path, "build JSON")->required();
  report->add_option("--check", report_args.check_path, "check report JSON")->required();
  report->add_option("--analyze", report_args.analyze_path, "analysis JSON")->required();
  report->add_option("--out", report_args.out, "bundle path")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("reiflab");
  for (const std::string& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(build_args);
    if (check->parsed()) return cmd_check(check_args);
    if (analyze->parsed()) {
      if (dim->parsed()) return cmd_analyze_dim(dim_args);
      if (audit->parsed()) return cmd_analyze_audit(audit_args);
      if (table->parsed()) return cmd_analyze_table(table_out);
      if (density->parsed()) return cmd_analyze_density(density_args);
      if (spiral->parsed()) return cmd_analyze_spiral(spiral_args);
    }
    if (report->parsed()) return cmd_report(report_args);
    throw validation_error("no subcommand");  // unreachable: require_subcommand
  } catch (const io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace reiflab
