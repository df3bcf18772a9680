#include "gmeb/data_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "gmeb/geometry.hpp"

namespace gmeb {

namespace {

// Stream ids carved out of the per-dataset seed space.
constexpr std::uint64_t kStreamTruth = 0;
constexpr std::uint64_t kStreamPlacement = 1;
constexpr std::uint64_t kStreamPool = 2;
constexpr std::uint64_t kStreamSample = 100;
constexpr std::uint64_t kStreamCompletion = 1u << 20;
constexpr std::uint64_t kStreamNoise = 1u << 21;

Eigen::MatrixXd horizontal_tangent(const Basis& center, RngStream& rng) {
  const Eigen::MatrixXd g = rng.gaussian_matrix(center.n(), center.p());
  return g - center.matrix() * (center.matrix().transpose() * g);
}

// Walks from `center` along the geodesic with (normalized) tangent
// direction; returns the point whose squared-chordal distance from the
// center equals `target`, found by bisection on the arc parameter.
Basis walk_to_distance(const Basis& center, const Eigen::MatrixXd& tangent, double target) {
  const int k = center.p();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(tangent, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sigma = svd.singularValues();
  if (!(sigma(0) > 0.0)) {
    throw Error("degenerate tangent direction");
  }
  // Scale the principal angles so the largest reaches pi/2 at t = 1; the
  // distance along the geodesic is then strictly increasing on [0,1].
  const Eigen::VectorXd theta = sigma * (std::numbers::pi / 2.0 / sigma(0));
  const Eigen::MatrixXd start = center.matrix() * svd.matrixV();  // n x k
  const Eigen::MatrixXd dir = svd.matrixU();                      // n x k

  auto dist_at = [&](double t) {
    double d = 0.0;
    for (int j = 0; j < k; ++j) {
      const double s = std::sin(theta(j) * t);
      d += s * s;
    }
    return d;
  };
  auto point_at = [&](double t) {
    Eigen::MatrixXd x(center.n(), k);
    for (int j = 0; j < k; ++j) {
      x.col(j) = start.col(j) * std::cos(theta(j) * t) + dir.col(j) * std::sin(theta(j) * t);
    }
    return Basis(std::move(x));
  };

  const double reach = dist_at(1.0);
  if (target > reach + 1e-12) {
    throw RadiusTooLarge("requested squared-chordal distance " + std::to_string(target) +
                         " exceeds the reachable " + std::to_string(reach));
  }
  if (target >= reach) return point_at(1.0);
  if (target <= 0.0) return point_at(0.0);

  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = dist_at(mid);
    if (std::abs(d - target) <= 1e-13) return point_at(mid);
    (d < target ? lo : hi) = mid;
  }
  return point_at(0.5 * (lo + hi));
}

Basis sample_at_distance(const Basis& center, double target, RngStream& rng) {
  return walk_to_distance(center, horizontal_tangent(center, rng), target);
}

int pick_completion_dim(const DatasetSpec& spec, int core_dim, RngStream& rng) {
  if (spec.dims.empty()) return core_dim;
  std::vector<int> eligible;
  for (int d : spec.dims) {
    if (d >= core_dim && d <= spec.n) eligible.push_back(d);
  }
  if (eligible.empty()) return core_dim;
  return eligible[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(eligible.size()) - 1))];
}

// Orthonormal complement of the joint span of the given blocks (for the
// shared completion pool).
Eigen::MatrixXd joint_span_complement(const std::vector<const Eigen::MatrixXd*>& blocks, int n) {
  int total = 0;
  for (const auto* b : blocks) total += static_cast<int>(b->cols());
  Eigen::MatrixXd concat(n, total);
  int col = 0;
  for (const auto* b : blocks) {
    concat.middleCols(col, b->cols()) = *b;
    col += static_cast<int>(b->cols());
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(concat, Eigen::ComputeFullU);
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-10 * sv(0)) ++rank;
  if (rank >= n) return Eigen::MatrixXd(n, 0);
  return svd.matrixU().rightCols(n - rank);
}

void validate_counts(const DatasetSpec& spec) {
  if (spec.n < 2 || spec.k0 < 1 || spec.large_dim() >= spec.n || spec.small_dim() > spec.n) {
    throw Error("dataset spec has inconsistent dimensions");
  }
  if (spec.m1 < 0 || spec.m2 < 0 || spec.m3 < 0 || spec.m1 + spec.m2 + spec.m3 < 1) {
    throw Error("dataset spec needs nonnegative counts with at least one item");
  }
}

Dataset finish_dataset(DatasetSpec spec, std::vector<Basis> cores,
                       std::vector<Provenance> provenance, std::optional<Basis> truth,
                       int truth_k, std::optional<Basis> small_center = std::nullopt) {
  // Completion to the per-item target dimensions.
  std::vector<Basis> completed;
  completed.reserve(cores.size());
  std::optional<OrthogonalPool> pool;
  if (!spec.dims.empty() && spec.orthogonal_completion) {
    std::vector<const Eigen::MatrixXd*> blocks;
    for (const Basis& c : cores) blocks.push_back(&c.matrix());
    if (truth) blocks.push_back(&truth->matrix());
    Eigen::MatrixXd directions = joint_span_complement(blocks, spec.n);
    // Shuffle the reservoir so consecutive items do not consume correlated
    // directions.
    RngStream pool_rng(spec.seed, kStreamPool);
    for (int j = static_cast<int>(directions.cols()) - 1; j > 0; --j) {
      const int swap_with = pool_rng.uniform_int(0, j);
      directions.col(j).swap(directions.col(swap_with));
    }
    pool.emplace(std::move(directions));
  }
  for (std::size_t i = 0; i < cores.size(); ++i) {
    RngStream rng(spec.seed, kStreamCompletion + i);
    const int p = pick_completion_dim(spec, cores[i].p(), rng);
    completed.push_back(complete_basis(cores[i], p, pool ? &*pool : nullptr, rng));
  }

  SubspaceCollection pre_noise_collection(completed);
  RngStream noise_rng(spec.seed, kStreamNoise);
  SubspaceCollection noisy =
      add_noise(pre_noise_collection, spec.snr_db, std::max(truth_k, 1), noise_rng);

  return Dataset{std::move(noisy),      std::move(truth), truth_k,
                 std::move(provenance), std::move(cores), std::move(completed),
                 std::move(small_center), std::move(spec)};
}

}  // namespace

Eigen::MatrixXd OrthogonalPool::draw(int count) {
  if (count > remaining()) {
    throw PoolExhausted("need " + std::to_string(count) + " orthogonal directions, " +
                        std::to_string(remaining()) + " left");
  }
  Eigen::MatrixXd out = directions_.middleCols(used_, count);
  used_ += count;
  return out;
}

std::vector<Basis> sample_ball(const Basis& center, double radius, BallRegion where,
                               int count, RngStream& rng) {
  const int k = center.p();
  const int n = center.n();
  if (k >= n) throw Error("sampling needs k < n");
  if (!(radius > 0.0)) throw Error("radius must be positive");
  if (radius > static_cast<double>(k) + 1e-12) {
    throw RadiusTooLarge("squared-chordal radius cannot exceed the subspace dimension");
  }
  const double manifold_dim = static_cast<double>(k) * (n - k);
  std::vector<Basis> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double target = radius;
    if (where == BallRegion::kInterior) {
      target = radius * std::pow(rng.uniform(), 1.0 / manifold_dim);
    }
    out.push_back(sample_at_distance(center, target, rng));
  }
  return out;
}

Basis complete_basis(const Basis& core, int p, OrthogonalPool* pool, RngStream& rng) {
  if (p < core.p()) {
    throw DimensionMismatch("cannot complete a basis to fewer dimensions");
  }
  if (p > core.n()) {
    throw DimensionMismatch("completion dimension exceeds the ambient dimension");
  }
  if (p == core.p()) return core;

  const int extra = p - core.p();
  Eigen::MatrixXd added;
  if (pool) {
    added = pool->draw(extra);
  } else {
    const Eigen::MatrixXd g = rng.gaussian_matrix(core.n(), extra);
    const Eigen::MatrixXd h = g - core.matrix() * (core.matrix().transpose() * g);
    added = orthonormalize(h).matrix();
  }
  Eigen::MatrixXd full(core.n(), p);
  full.leftCols(core.p()) = core.matrix();
  full.rightCols(extra) = added;
  return Basis(std::move(full));
}

double noise_total_variance(int truth_k, double snr_db) {
  return static_cast<double>(truth_k) / std::pow(10.0, snr_db / 10.0);
}

SubspaceCollection add_noise(const SubspaceCollection& collection, double snr_db,
                             int truth_k, RngStream& rng) {
  if (std::isinf(snr_db)) return collection;
  if (!std::isfinite(snr_db)) throw Error("snr_db must be finite or +inf");
  const double sigma2 = noise_total_variance(truth_k, snr_db);
  const int n = collection.n();
  std::vector<Basis> noisy;
  noisy.reserve(static_cast<std::size_t>(collection.size()));
  for (int i = 0; i < collection.size(); ++i) {
    const int p = collection[i].p();
    const double entry_sd = std::sqrt(sigma2 / (static_cast<double>(n) * p));
    const Eigen::MatrixXd noise = entry_sd * rng.gaussian_matrix(n, p);
    noisy.push_back(orthonormalize(collection[i].matrix() + noise));
  }
  return SubspaceCollection(std::move(noisy));
}

Basis random_basis(int n, int p, RngStream& rng) {
  return orthonormalize(rng.gaussian_matrix(n, p));
}

Dataset nested_ball_dataset(const DatasetSpec& spec) {
  validate_counts(spec);
  const int k_large = spec.large_dim();
  const int k_small = spec.small_dim();
  if (spec.m2 > 0 || spec.model == DataModel::kNestedBall) {
    if (!(spec.eps2 < spec.eps1)) {
      throw InfeasiblePlacement("inner radius must be strictly smaller than the outer radius");
    }
  }
  if (!(spec.eps1 <= static_cast<double>(k_large))) {
    throw RadiusTooLarge("eps1 exceeds the maximum squared-chordal distance");
  }

  RngStream truth_rng(spec.seed, kStreamTruth);
  Basis z1 = random_basis(spec.n, k_large, truth_rng);

  // Offset inner-ball center: move along a random geodesic to 90% of the
  // radius headroom, then adjust dimension for the mixed-manifold variant.
  std::optional<Basis> z2;
  if (spec.m2 > 0) {
    const double offset = 0.9 * (spec.eps1 - spec.eps2);
    if (k_small == k_large && offset <= spec.eps2) {
      throw InfeasiblePlacement("outer center would fall inside the inner ball");
    }
    RngStream place_rng(spec.seed, kStreamPlacement);
    Basis moved = sample_at_distance(z1, offset, place_rng);
    if (k_small == k_large) {
      z2 = std::move(moved);
    } else if (k_small > k_large) {
      if (k_small >= spec.n) throw InfeasiblePlacement("inner-ball dimension too large");
      Eigen::MatrixXd span(spec.n, 2 * k_large);
      span.leftCols(k_large) = z1.matrix();
      span.rightCols(k_large) = moved.matrix();
      const Eigen::MatrixXd g = place_rng.gaussian_matrix(spec.n, k_small - k_large);
      Eigen::BDCSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeThinU);
      const Eigen::MatrixXd proj = svd.matrixU();
      Eigen::MatrixXd extra;
      try {
        extra = orthonormalize(g - proj * (proj.transpose() * g)).matrix();
      } catch (const RankDeficient&) {
        throw InfeasiblePlacement("not enough room to extend the inner-ball center");
      }
      Eigen::MatrixXd joined(spec.n, k_small);
      joined.leftCols(k_large) = moved.matrix();
      joined.rightCols(k_small - k_large) = extra;
      z2 = Basis(std::move(joined));
    } else {
      // Lower-dimensional inner manifold: a random subspace of the moved
      // center.
      const Eigen::MatrixXd mix = place_rng.gaussian_matrix(k_large, k_small);
      z2 = orthonormalize(moved.matrix() * mix);
    }
  }

  std::vector<Basis> cores;
  std::vector<Provenance> provenance;
  const int total = spec.m1 + spec.m2 + spec.m3;
  cores.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    RngStream rng(spec.seed, kStreamSample + static_cast<std::uint64_t>(i));
    if (i < spec.m1) {
      cores.push_back(sample_at_distance(z1, spec.eps1, rng));
      provenance.push_back(Provenance::kLargeBoundary);
    } else if (i < spec.m1 + spec.m2) {
      // Keep inner-ball samples inside the outer ball; the offset placement
      // leaves room, so rejections are rare.
      Basis candidate = sample_at_distance(*z2, spec.eps2, rng);
      int attempts = 0;
      while (p2s_distance(z1, candidate) > spec.eps1 + 1e-12) {
        if (++attempts > 1000) {
          throw InfeasiblePlacement("inner-ball samples cannot be kept inside the outer ball");
        }
        candidate = sample_at_distance(*z2, spec.eps2, rng);
      }
      cores.push_back(std::move(candidate));
      provenance.push_back(Provenance::kSmallBall);
    } else {
      const double target =
          spec.eps1 * std::pow(rng.uniform(),
                               1.0 / (static_cast<double>(k_large) * (spec.n - k_large)));
      cores.push_back(sample_at_distance(z1, target, rng));
      provenance.push_back(Provenance::kInterior);
    }
  }

  return finish_dataset(spec, std::move(cores), std::move(provenance), std::move(z1),
                        k_large, std::move(z2));
}

Dataset arc_dataset(const DatasetSpec& spec) {
  validate_counts(spec);
  const int k = spec.large_dim();
  if (!(spec.eps1 <= static_cast<double>(k))) {
    throw RadiusTooLarge("eps1 exceeds the maximum squared-chordal distance");
  }

  RngStream truth_rng(spec.seed, kStreamTruth);
  Basis z1 = random_basis(spec.n, k, truth_rng);

  // Two anchor tangents on the boundary; arc samples interpolate between
  // them spherically and are re-projected onto the boundary.
  RngStream anchor_rng(spec.seed, kStreamPlacement);
  Eigen::MatrixXd ta, tb;
  double omega = 0.0;
  for (int attempt = 0; attempt < 100; ++attempt) {
    ta = horizontal_tangent(z1, anchor_rng);
    tb = horizontal_tangent(z1, anchor_rng);
    ta /= ta.norm();
    tb /= tb.norm();
    const double c = std::clamp((ta.array() * tb.array()).sum(), -1.0, 1.0);
    omega = std::acos(c);
    if (std::abs(c) < 0.999) break;
  }
  if (!(omega > 0.0)) throw Error("failed to draw distinct arc anchors");

  std::vector<Basis> cores;
  std::vector<Provenance> provenance;
  const int total = spec.m1 + spec.m2 + spec.m3;
  cores.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    RngStream rng(spec.seed, kStreamSample + static_cast<std::uint64_t>(i));
    if (i < spec.m1) {
      cores.push_back(sample_at_distance(z1, spec.eps1, rng));
      provenance.push_back(Provenance::kLargeBoundary);
    } else if (i < spec.m1 + spec.m2) {
      const double s = rng.uniform();
      const Eigen::MatrixXd tangent =
          (std::sin((1.0 - s) * omega) * ta + std::sin(s * omega) * tb) / std::sin(omega);
      cores.push_back(walk_to_distance(z1, tangent, spec.eps1));
      provenance.push_back(Provenance::kArcBoundary);
    } else {
      const double target = spec.eps1 * std::pow(rng.uniform(),
                                                 1.0 / (static_cast<double>(k) * (spec.n - k)));
      cores.push_back(sample_at_distance(z1, target, rng));
      provenance.push_back(Provenance::kInterior);
    }
  }

  return finish_dataset(spec, std::move(cores), std::move(provenance), std::move(z1), k);
}

Dataset random_dataset(const DatasetSpec& spec) {
  validate_counts(spec);
  const int total = spec.m1 + spec.m2 + spec.m3;
  std::vector<Basis> cores;
  std::vector<Provenance> provenance;
  cores.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    RngStream rng(spec.seed, kStreamSample + static_cast<std::uint64_t>(i));
    const int p = spec.dims.empty()
                      ? spec.k0
                      : spec.dims[static_cast<std::size_t>(
                            rng.uniform_int(0, static_cast<int>(spec.dims.size()) - 1))];
    cores.push_back(random_basis(spec.n, p, rng));
    provenance.push_back(Provenance::kInterior);
  }
  DatasetSpec no_completion = spec;
  no_completion.dims.clear();  // dims already chosen above
  return finish_dataset(std::move(no_completion), std::move(cores), std::move(provenance),
                        std::nullopt, 0);
}

Dataset make_dataset(const DatasetSpec& spec) {
  switch (spec.model) {
    case DataModel::kNestedBall:
      return nested_ball_dataset(spec);
    case DataModel::kArc:
      return arc_dataset(spec);
    case DataModel::kRandom:
      return random_dataset(spec);
  }
  throw Error("unknown dataset model");
}

}  // namespace gmeb
