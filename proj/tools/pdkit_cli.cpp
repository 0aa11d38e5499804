// Copyright 2026 The pdkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end over the pdkit C API.
//
//   pdkit query --shape1 sphere:0.5 --pose1 0,0,0 --shape2 sphere:0.5
//               --pose2 0.6,0,0 --algo sqp
//   pdkit bench --suite primitives --trials 1000 --deviation 5 --seed 42
//               --out results.csv

#include "pdkit/pdkit.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw CliError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw CliError("not a number: '" + item + "'");
    out.push_back(value);
  }
  return out;
}

void check(pdkit_error code) {
  if (code != PDKIT_OK) {
    throw CliError(std::string(pdkit_error_string(code)) + ": " +
                   pdkit_last_error());
  }
}

using ShapePtr = std::unique_ptr<pdkit_shape, decltype(&pdkit_shape_free)>;

// kind:params, e.g. sphere:0.5, capsule:0.5,0.25, box:1,1,1,
// ellipsoid:1,2,3, icosphere:0.5,162, obj:path/to/file.obj
ShapePtr parse_shape(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw CliError("shape spec needs kind:params, got '" + spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  pdkit_shape* shape = nullptr;
  auto expect = [&](std::size_t n) {
    const std::vector<double> v = parse_numbers(rest);
    if (v.size() != n) {
      throw CliError(kind + " takes " + std::to_string(n) + " parameter(s)");
    }
    return v;
  };
  if (kind == "sphere") {
    check(pdkit_shape_sphere(expect(1)[0], &shape));
  } else if (kind == "capsule") {
    const auto v = expect(2);
    check(pdkit_shape_capsule(v[0], v[1], &shape));
  } else if (kind == "box") {
    const auto v = expect(3);
    check(pdkit_shape_box(v[0], v[1], v[2], &shape));
  } else if (kind == "ellipsoid") {
    const auto v = expect(3);
    check(pdkit_shape_ellipsoid(v[0], v[1], v[2], &shape));
  } else if (kind == "icosphere") {
    const auto v = expect(2);
    check(pdkit_shape_icosphere(v[0], static_cast<int>(v[1]), &shape));
  } else if (kind == "obj") {
    check(pdkit_shape_polytope_load(rest.c_str(), &shape));
  } else {
    throw CliError("unknown shape kind '" + kind + "'");
  }
  return ShapePtr(shape, &pdkit_shape_free);
}

// tx,ty,tz or tx,ty,tz,qw,qx,qy,qz
pdkit_pose parse_pose(const std::string& spec) {
  pdkit_pose pose = pdkit_pose_identity();
  if (spec.empty()) return pose;
  const std::vector<double> v = parse_numbers(spec);
  if (v.size() != 3 && v.size() != 7) {
    throw CliError("pose takes 3 or 7 numbers, got '" + spec + "'");
  }
  for (int i = 0; i < 3; ++i) pose.translation[i] = v[i];
  if (v.size() == 7) {
    for (int i = 0; i < 4; ++i) pose.quaternion[i] = v[3 + i];
  }
  return pose;
}

pdkit_algorithm parse_algorithm(const std::string& name) {
  if (name == "sqp") return PDKIT_ALGO_SQP;
  if (name == "sqp-fixed") return PDKIT_ALGO_SQP_FIXED;
  if (name == "epa") return PDKIT_ALGO_EPA;
  throw CliError("unknown algorithm '" + name + "'");
}

json vec(const double v[3]) { return json::array({v[0], v[1], v[2]}); }

json options_json(const pdkit_options& o) {
  return {{"max_sqp_iters", o.max_sqp_iters},
          {"direction_tol", o.direction_tol},
          {"gap_tol", o.gap_tol},
          {"delta", o.delta},
          {"epa_tol", o.epa_tol}};
}

void add_tolerance_flags(CLI::App* cmd, pdkit_options& o) {
  cmd->add_option("--max-iters", o.max_sqp_iters, "SQP iteration cap");
  cmd->add_option("--direction-tol", o.direction_tol,
                  "SQP tolerance on 1 - cos(direction change)");
  cmd->add_option("--gap-tol", o.gap_tol, "SQP tolerance on |z| - |p| (m)");
  cmd->add_option("--delta", o.delta, "fixed-tolerance MPR delta (m)");
  cmd->add_option("--epa-tol", o.epa_tol, "EPA tolerance (m)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penetration depth between convex shapes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pdkit_version());

  pdkit_options options;
  pdkit_options_default(&options);

  std::string shape1_spec, shape2_spec, pose1_spec, pose2_spec;
  std::string algo = "sqp";
  std::string warm_start;
  CLI::App* query = app.add_subcommand("query", "one penetration query");
  query->add_option("--shape1", shape1_spec, "first shape, kind:params")
      ->required();
  query->add_option("--pose1", pose1_spec, "tx,ty,tz[,qw,qx,qy,qz]");
  query->add_option("--shape2", shape2_spec, "second shape, kind:params")
      ->required();
  query->add_option("--pose2", pose2_spec, "tx,ty,tz[,qw,qx,qy,qz]");
  query->add_option("--algo", algo, "sqp | sqp-fixed | epa")
      ->check(CLI::IsMember({"sqp", "sqp-fixed", "epa"}));
  query->add_option("--warm-start", warm_start,
                    "initial ray x,y,z (direction of v_star)");
  add_tolerance_flags(query, options);

  pdkit_bench_config bench_config;
  pdkit_bench_config_default(&bench_config);
  std::string suite = "primitives";
  std::vector<double> deviations;
  std::vector<int> resolutions;
  std::vector<std::string> algos;
  std::string out_path;
  bool include_grazing = false;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark batch");
  bench->add_option("--suite", suite, "primitives | polytopes")
      ->check(CLI::IsMember({"primitives", "polytopes"}));
  bench->add_option("--trials", bench_config.n_trials, "poses per pair")
      ->check(CLI::PositiveNumber);
  bench->add_option("--deviation", deviations,
                    "initial direction error in degrees (repeatable)");
  bench->add_option("--seed", bench_config.seed, "batch seed");
  bench->add_option("--out", out_path, "CSV output path")->required();
  bench->add_option("--resolutions", resolutions,
                    "icosphere vertex counts (polytopes suite)")
      ->delimiter(',');
  bench->add_option("--algo", algos, "algorithms to run (default all)")
      ->delimiter(',')
      ->check(CLI::IsMember({"sqp", "sqp-fixed", "epa"}));
  bench->add_flag("--include-grazing", include_grazing,
                  "accept poses with PD below 1e-4 m");
  bench->add_option("--threads", bench_config.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  add_tolerance_flags(bench, bench_config.options);

  CLI11_PARSE(app, argc, argv);

  try {
    if (query->parsed()) {
      const ShapePtr s1 = parse_shape(shape1_spec);
      const ShapePtr s2 = parse_shape(shape2_spec);
      const pdkit_pose p1 = parse_pose(pose1_spec);
      const pdkit_pose p2 = parse_pose(pose2_spec);
      options.algorithm = parse_algorithm(algo);
      if (!warm_start.empty()) {
        const std::vector<double> w = parse_numbers(warm_start);
        if (w.size() != 3) throw CliError("--warm-start takes x,y,z");
        options.has_warm_start = 1;
        for (int i = 0; i < 3; ++i) options.warm_start[i] = w[i];
      }
      pdkit_result r;
      check(pdkit_penetration(s1.get(), &p1, s2.get(), &p2, &options, &r));
      const json out = {
          {"algorithm", algo},
          {"status", pdkit_pd_status_string(r.status)},
          {"depth", r.depth},
          {"direction", vec(r.direction)},
          {"v_star", vec(r.v_star)},
          {"witness1", vec(r.witness1)},
          {"witness2", vec(r.witness2)},
          {"sqp_iterations", r.sqp_iterations},
          {"support_calls", r.support_calls},
          {"config", options_json(options)}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    bench_config.suite = suite == "polytopes" ? PDKIT_SUITE_POLYTOPES
                                              : PDKIT_SUITE_PRIMITIVES;
    if (!deviations.empty()) {
      bench_config.deviations_deg = deviations.data();
      bench_config.n_deviations = deviations.size();
    }
    if (!resolutions.empty()) {
      bench_config.resolutions = resolutions.data();
      bench_config.n_resolutions = resolutions.size();
    }
    if (!algos.empty()) {
      bench_config.algorithm_mask = 0;
      for (const std::string& a : algos) {
        bench_config.algorithm_mask |= 1u << parse_algorithm(a);
      }
    }
    bench_config.include_grazing = include_grazing ? 1 : 0;

    pdkit_bench_report* raw = nullptr;
    check(pdkit_bench_run(&bench_config, &raw));
    const std::unique_ptr<pdkit_bench_report, decltype(&pdkit_bench_free)>
        report(raw, &pdkit_bench_free);
    check(pdkit_bench_write_csv(report.get(), out_path.c_str()));
    const int violations = pdkit_bench_violations(report.get());
    const json out = {
        {"records", pdkit_bench_record_count(report.get())},
        {"violations", violations},
        {"config", options_json(bench_config.options)},
        {"summary", json::parse(pdkit_bench_summary_json(report.get()))}};
    std::cout << out.dump(2) << "\n";
    return violations == 0 ? 0 : kExitViolation;
  } catch (const CliError& e) {
    std::cerr << "pdkit: " << e.what() << "\n";
    return kExitError;
  }
}
