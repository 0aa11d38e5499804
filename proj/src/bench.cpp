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

#include "pdkit/bench.hpp"

#include "pdkit/mpr.hpp"
#include "pdkit/oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>
#include <utility>

namespace pdkit {
namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_vector(const Vector3& v) {
  return format_double(v.x()) + " " + format_double(v.y()) + " " +
         format_double(v.z());
}

std::string format_pose(const Pose& pose) {
  Quaternion q = pose.quaternion();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  return format_vector(pose.translation()) + " " + format_double(q.w()) + " " +
         format_double(q.x()) + " " + format_double(q.y()) + " " +
         format_double(q.z());
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string();
}

std::uint64_t trial_seed(std::uint64_t seed, int pair_index, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(pair_index),
                    static_cast<std::uint32_t>(trial)};
  std::array<std::uint32_t, 2> words;
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Vector3 random_unit(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const Vector3 g(gauss(rng), gauss(rng), gauss(rng));
    const double n = g.norm();
    if (n > 1e-6) return g / n;
  }
}

// Disjoint from A2 once the sweeping radius is eroded by min_depth implies
// PD < min_depth.
bool deep_enough(const PairSpec& pair, const PosePair& poses,
                 double min_depth) {
  if (min_depth <= 0.0) return true;
  if (pair.shape2.is_rounded()) {
    return overlaps(pair.shape1, poses.pose1, pair.shape2.shrunk(min_depth),
                    poses.pose2);
  }
  if (pair.shape1.is_rounded()) {
    return overlaps(pair.shape1.shrunk(min_depth), poses.pose1, pair.shape2,
                    poses.pose2);
  }
  return true;
}

std::vector<TrialRecord> run_trial(const BenchConfig& config,
                                   const PairSpec& pair, int pair_index,
                                   int trial, int& violations) {
  const std::uint64_t seed = trial_seed(config.seed, pair_index, trial);
  Rng rng(seed);
  std::vector<TrialRecord> records;

  auto base = [&](Algorithm algorithm, std::optional<double> deviation) {
    TrialRecord r;
    r.pair_id = pair.id;
    r.seed = seed;
    r.algorithm = algorithm;
    r.deviation_deg = deviation;
    return r;
  };

  PosePair poses;
  try {
    poses = random_colliding_pose(
        pair, rng, config.include_grazing ? 0.0 : kGrazingDepth);
  } catch (const Error& e) {
    ++violations;
    for (Algorithm algorithm : config.algorithms) {
      TrialRecord r = base(algorithm, std::nullopt);
      r.status = to_string(e.code());
      records.push_back(r);
    }
    return records;
  }

  std::optional<double> oracle_depth;
  Vector3 d_true = Vector3::UnitX();
  try {
    const AnalyticPD ref =
        analytic_pd(pair.reference1, poses.pose1, pair.shape2, poses.pose2);
    d_true = -ref.direction;
    if (pair.has_oracle) oracle_depth = ref.depth;
  } catch (const Error&) {
    // grazing reference contact: keep the +x fallback
  }
  std::vector<Vector3> d_inits;
  for (double deviation : config.deviations_deg) {
    d_inits.push_back(perturb_direction(d_true, deviation, rng));
  }

  PenetrationOptions options;
  options.config = config.sqp;
  options.epa_tol = config.epa_tol;

  auto run = [&](Algorithm algorithm, std::optional<double> deviation,
                 const Vector3& d_init) {
    TrialRecord r = base(algorithm, deviation);
    r.pose1 = poses.pose1;
    r.pose2 = poses.pose2;
    options.algorithm = algorithm;
    MinkowskiDifference diff(pair.shape1, poses.pose1, pair.shape2,
                             poses.pose2);
    PDResult result;
    const auto start = std::chrono::steady_clock::now();
    try {
      result = solve(diff, d_init, options);
      r.status = to_string(result.status);
    } catch (const Error& e) {
      r.status = to_string(e.code());
      ++violations;
    }
    const auto stop = std::chrono::steady_clock::now();
    r.wall_time_us =
        std::chrono::duration<double, std::micro>(stop - start).count();
    r.depth = result.depth;
    r.direction = result.direction;
    r.support_calls = diff.support_calls();
    r.sqp_iterations = result.sqp_iterations;
    r.oracle_depth = oracle_depth;
    if (oracle_depth) r.abs_error = std::abs(r.depth - *oracle_depth);
    if (result.status == PdStatus::kNotColliding) ++violations;
    if (result.status == PdStatus::kConverged &&
        !separation_certificate(pair.shape1, poses.pose1, pair.shape2,
                                poses.pose2, result.v_star)) {
      r.status = "CertificateFailed";
      ++violations;
    }
    records.push_back(r);
  };

  for (Algorithm algorithm : config.algorithms) {
    if (algorithm == Algorithm::kEpa) {
      run(algorithm, std::nullopt, d_true);
      continue;
    }
    for (std::size_t i = 0; i < d_inits.size(); ++i) {
      run(algorithm, config.deviations_deg[i], d_inits[i]);
    }
  }
  return records;
}

}  // namespace

ConvexShape tessellated_sphere(double radius, int n_vertices) {
  if (!(radius > 0.0) || n_vertices < 12) {
    throw Error(ErrorCode::kInvalidArgument,
                "icosphere needs radius > 0 and at least 12 vertices");
  }
  int level = 0;
  long best_gap = std::labs(12L - n_vertices);
  for (int l = 1; l <= 8; ++l) {
    const long count = 10L * (1L << (2 * l)) + 2;
    const long gap = std::labs(count - n_vertices);
    if (gap < best_gap) {
      best_gap = gap;
      level = l;
    }
  }

  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vector3> verts = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (Vector3& v : verts) v.normalize();

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      verts.push_back((verts[a] + verts[b]).normalized());
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = midpoint(f[0], f[1]);
      const int bc = midpoint(f[1], f[2]);
      const int ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  for (Vector3& v : verts) v *= radius;
  return make_polytope(std::move(verts));
}

Vector3 perturb_direction(const Vector3& d_true, double n_deg,
                          const Vector3& axis) {
  const Vector3 d = normalized_direction(d_true);
  if (!(n_deg >= 0.0 && n_deg <= 90.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "perturbation angle must lie in [0, 90] degrees");
  }
  const Vector3 a = normalized_direction(axis - axis.dot(d) * d);
  const double angle = n_deg * kDegToRad;
  return (std::cos(angle) * d + std::sin(angle) * a.cross(d)).normalized();
}

Vector3 perturb_direction(const Vector3& d_true, double n_deg, Rng& rng) {
  const Vector3 d = normalized_direction(d_true);
  if (!(n_deg >= 0.0 && n_deg < 90.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "perturbation angle must lie in [0, 90) degrees");
  }
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * M_PI);
  const double phi = uniform(rng);
  const Vector3 e1 = any_perpendicular(d);
  const Vector3 e2 = d.cross(e1);
  return perturb_direction(d, n_deg, std::cos(phi) * e1 + std::sin(phi) * e2);
}

Quaternion random_rotation(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Quaternion q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    const double n = q.norm();
    if (n > 1e-6) {
      q.coeffs() /= n;
      return q;
    }
  }
}

std::vector<PairSpec> primitive_pairs() {
  const ConvexShape sphere = make_sphere(kBenchSphereRadius);
  const ConvexShape capsule =
      make_capsule(kBenchCapsuleHalfLength, kBenchCapsuleRadius);
  return {
      {"sphere-sphere", sphere, sphere, sphere, true},
      {"capsule-capsule", capsule, capsule, capsule, true},
      {"sphere-capsule", sphere, capsule, sphere, true},
  };
}

std::vector<PairSpec> polytope_pairs(const std::vector<int>& resolutions) {
  const ConvexShape sphere = make_sphere(kBenchSphereRadius);
  const ConvexShape capsule =
      make_capsule(kBenchCapsuleHalfLength, kBenchCapsuleRadius);
  std::vector<PairSpec> pairs;
  for (int n : resolutions) {
    ConvexShape poly = tessellated_sphere(kBenchSphereRadius, n);
    const auto count =
        std::get<ConvexPolytope>(poly.geometry()).vertices.size();
    pairs.push_back({"icosphere" + std::to_string(count) + "-capsule",
                     std::move(poly), capsule, sphere, false});
  }
  return pairs;
}

PosePair random_colliding_pose(const PairSpec& pair, Rng& rng,
                               double min_depth) {
  const double reach =
      pair.shape1.circumscribed_radius() + pair.shape2.circumscribed_radius();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  for (int attempt = 0; attempt < kMaxPoseRejections; ++attempt) {
    const Pose pose1(random_rotation(rng),
                     Vector3(box(rng), box(rng), box(rng)));
    const Quaternion q2 = random_rotation(rng);
    const Vector3 offset = reach * std::cbrt(unit(rng)) * random_unit(rng);
    const Vector3 center2 = interior_point(pair.shape1, pose1) + offset;
    const Vector3 t2 = center2 - q2 * pair.shape2.local_interior_point();
    const PosePair poses{pose1, Pose(q2, t2)};
    if (!overlaps(pair.shape1, poses.pose1, pair.shape2, poses.pose2)) continue;
    if (!deep_enough(pair, poses, min_depth)) continue;
    return poses;
  }
  throw Error(ErrorCode::kSamplingExhausted,
              "no colliding pose after the rejection limit");
}

bool separation_certificate(const ConvexShape& shape1, const Pose& pose1,
                            const ConvexShape& shape2, const Pose& pose2,
                            const Vector3& v_star) {
  return !overlaps(shape1, pose1.translated(-(1.0 + 1e-4) * v_star), shape2,
                   pose2);
}

void BenchConfig::validate() const {
  if (n_trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_trials must be >= 1");
  }
  if (threads < 1) {
    throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1");
  }
  if (deviations_deg.empty() || algorithms.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least one deviation and one algorithm");
  }
  for (double d : deviations_deg) {
    if (!(d >= 0.0 && d < 90.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "deviations must lie in [0, 90) degrees");
    }
  }
  if (suite == Suite::kPolytopes) {
    if (resolutions.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "no polytope resolutions");
    }
    for (int n : resolutions) {
      if (n < 12) {
        throw Error(ErrorCode::kInvalidArgument,
                    "polytope resolutions must be >= 12");
      }
    }
  }
  sqp.validate();
  if (!(epa_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epa_tol must be positive");
  }
}

BenchReport run_benchmark(const BenchConfig& config) {
  config.validate();
  const std::vector<PairSpec> pairs = config.suite == Suite::kPrimitives
                                          ? primitive_pairs()
                                          : polytope_pairs(config.resolutions);
  const int n_jobs = static_cast<int>(pairs.size()) * config.n_trials;
  std::vector<std::vector<TrialRecord>> slots(n_jobs);
  std::vector<int> violations(config.threads, 0);

  auto worker = [&](int id) {
    for (int job = id; job < n_jobs; job += config.threads) {
      const int pair_index = job / config.n_trials;
      const int trial = job % config.n_trials;
      slots[job] = run_trial(config, pairs[pair_index], pair_index, trial,
                             violations[id]);
    }
  };
  if (config.threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < config.threads; ++id) pool.emplace_back(worker, id);
    for (std::thread& t : pool) t.join();
  }

  BenchReport report;
  for (auto& slot : slots) {
    for (auto& r : slot) report.records.push_back(std::move(r));
  }
  for (int v : violations) report.violations += v;
  report.summary = summarize(report.records);
  return report;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> errors;
  auto find_row = [&](const TrialRecord& r) -> std::size_t {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].pair_id == r.pair_id && rows[i].algorithm == r.algorithm &&
          rows[i].deviation_deg == r.deviation_deg) {
        return i;
      }
    }
    SummaryRow row;
    row.pair_id = r.pair_id;
    row.algorithm = r.algorithm;
    row.deviation_deg = r.deviation_deg;
    rows.push_back(row);
    errors.emplace_back();
    return rows.size() - 1;
  };

  for (const TrialRecord& r : records) {
    const std::size_t i = find_row(r);
    SummaryRow& row = rows[i];
    ++row.count;
    if (r.status == "Converged") ++row.converged;
    if (r.status == "CertificateFailed") ++row.certificate_failures;
    if (r.abs_error) errors[i].push_back(*r.abs_error);
    row.mean_support_calls += static_cast<double>(r.support_calls);
    row.mean_wall_time_us += r.wall_time_us;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SummaryRow& row = rows[i];
    row.mean_support_calls /= row.count;
    row.mean_wall_time_us /= row.count;
    std::vector<double>& e = errors[i];
    if (e.empty()) continue;
    double sum = 0.0;
    for (double x : e) sum += x;
    row.mean_abs_error = sum / static_cast<double>(e.size());
    std::sort(e.begin(), e.end());
    const std::size_t mid = e.size() / 2;
    row.median_abs_error =
        e.size() % 2 == 1 ? e[mid] : 0.5 * (e[mid - 1] + e[mid]);
  }
  return rows;
}

void write_csv(std::ostream& out, const BenchConfig& config,
               const BenchReport& report) {
  out << "# pdkit bench\n";
  out << "# suite=" << (config.suite == Suite::kPrimitives ? "primitives"
                                                           : "polytopes")
      << " seed=" << config.seed << " trials=" << config.n_trials
      << " include_grazing=" << (config.include_grazing ? 1 : 0) << "\n";
  out << "# deviations_deg=";
  for (std::size_t i = 0; i < config.deviations_deg.size(); ++i) {
    out << (i ? " " : "") << format_double(config.deviations_deg[i]);
  }
  out << "\n";
  if (config.suite == Suite::kPolytopes) {
    out << "# resolutions=";
    for (std::size_t i = 0; i < config.resolutions.size(); ++i) {
      out << (i ? " " : "") << config.resolutions[i];
    }
    out << "\n";
  }
  out << "# sphere_radius=" << format_double(kBenchSphereRadius)
      << " capsule_radius=" << format_double(kBenchCapsuleRadius)
      << " capsule_half_length=" << format_double(kBenchCapsuleHalfLength)
      << " capsule_axis=local_z\n";
  out << "# max_sqp_iters=" << config.sqp.max_sqp_iters
      << " direction_tol=" << format_double(config.sqp.direction_tol)
      << " gap_tol=" << format_double(config.sqp.gap_tol)
      << " delta=" << format_double(config.sqp.delta)
      << " epa_tol=" << format_double(config.epa_tol) << "\n";
  out << "pair_id,seed,pose1,pose2,algorithm,deviation_deg,depth,direction,"
         "oracle_depth,abs_error,support_calls,sqp_iterations,wall_time_us,"
         "status\n";
  for (const TrialRecord& r : report.records) {
    out << r.pair_id << ',' << r.seed << ',' << format_pose(r.pose1) << ','
        << format_pose(r.pose2) << ',' << to_string(r.algorithm) << ','
        << format_optional(r.deviation_deg) << ',' << format_double(r.depth)
        << ',' << format_vector(r.direction) << ','
        << format_optional(r.oracle_depth) << ','
        << format_optional(r.abs_error) << ',' << r.support_calls << ','
        << r.sqp_iterations << ',' << format_double(r.wall_time_us) << ','
        << r.status << '\n';
  }
}

}  // namespace pdkit
