#ifndef GMEB_DATA_GEN_HPP
#define GMEB_DATA_GEN_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "gmeb/basis.hpp"
#include "gmeb/rng.hpp"

namespace gmeb {

enum class DataModel { kNestedBall, kArc, kRandom };

// Sentinel for "no noise".
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

struct DatasetSpec {
  DataModel model = DataModel::kNestedBall;
  int n = 10;    // ambient dimension
  int k0 = 3;    // common-subspace dimension (ground-truth order)
  int k1 = -1;   // large-ball manifold dimension; -1 means k0
  int k2 = -1;   // small-ball manifold dimension; -1 means k0
  double eps1 = 1.0;    // large-ball radius, squared-chordal units
  double eps2 = 0.125;  // small-ball radius (NestedBall only)
  int m1 = 0;  // boundary samples of the large ball
  int m2 = 0;  // small-ball boundary samples (NestedBall) or arc samples (Arc)
  int m3 = 0;  // interior samples of the large ball
  std::vector<int> dims;  // completion dimensions; empty = no completion
  bool orthogonal_completion = false;
  double snr_db = kNoNoise;
  std::uint64_t seed = 0;

  int large_dim() const { return k1 < 0 ? k0 : k1; }
  int small_dim() const { return k2 < 0 ? k0 : k2; }
};

enum class Provenance { kLargeBoundary, kSmallBall, kArcBoundary, kInterior };

struct Dataset {
  SubspaceCollection collection;          // completed + noisy items
  std::optional<Basis> truth_center;      // absent for the random model
  int truth_k;                            // 0 for the random model
  std::vector<Provenance> provenance;
  std::vector<Basis> cores;               // pre-completion samples
  std::vector<Basis> pre_noise;           // post-completion, pre-noise items
  std::optional<Basis> small_center;      // nested-ball inner center, if any
  DatasetSpec spec;
};

enum class BallRegion { kBoundary, kInterior };

// Draws subspaces at (Boundary) or within (Interior) squared-chordal
// distance `radius` of `center`: a Gaussian horizontal tangent is normalized
// so its largest principal angle is pi/2, then the step along the geodesic is
// bisected until the distance hits the target. Interior targets are scaled by
// u^(1/dim Gr(k,n)) to approximate uniform sampling in the ball.
//
// Throws RadiusTooLarge when the target exceeds what the drawn geodesic can
// reach (only possible when radius is within roundoff of its upper bound k,
// for k >= 2).
std::vector<Basis> sample_ball(const Basis& center, double radius, BallRegion where,
                               int count, RngStream& rng);

// A reservoir of mutually orthonormal directions, each orthogonal to every
// core subspace (and the ground-truth center) of a dataset under completion.
class OrthogonalPool {
 public:
  explicit OrthogonalPool(Eigen::MatrixXd directions)
      : directions_(std::move(directions)), used_(0) {}
  int remaining() const { return static_cast<int>(directions_.cols()) - used_; }
  Eigen::MatrixXd draw(int count);

 private:
  Eigen::MatrixXd directions_;
  int used_;
};

// Extends `core` to a p-dimensional subspace containing it. With a pool the
// added directions come from the shared orthogonal reservoir; otherwise they
// are Gaussian directions orthonormalized against the core.
Basis complete_basis(const Basis& core, int p, OrthogonalPool* pool, RngStream& rng);

// Total noise variance sigma_N^2 for a target SNR: truth_k / 10^(snr_db/10).
double noise_total_variance(int truth_k, double snr_db);

// Adds zero-mean Gaussian noise with per-entry variance sigma_N^2 / (n p_i)
// to each basis (total added power sigma_N^2 per item regardless of its
// dimension), then re-orthonormalizes. snr_db = kNoNoise returns the input.
SubspaceCollection add_noise(const SubspaceCollection& collection, double snr_db,
                             int truth_k, RngStream& rng);

// Asymmetric nested-ball model: m1 points on the boundary of the radius-eps1
// ball around the hidden center, m2 on the boundary of a strictly contained
// radius-eps2 ball offset from the center, m3 in the interior. Completion and
// noise are applied last.
Dataset nested_ball_dataset(const DatasetSpec& spec);

// Unit-ball-with-arc model: m1 uniform boundary points, m2 points along a
// randomly chosen boundary arc, m3 interior points.
Dataset arc_dataset(const DatasetSpec& spec);

// Unstructured collection with no common subspace (truth_k = 0); dims are
// drawn per item from spec.dims (or k0 when empty).
Dataset random_dataset(const DatasetSpec& spec);

Dataset make_dataset(const DatasetSpec& spec);

// Orthonormal basis of a fresh random p-dimensional subspace.
Basis random_basis(int n, int p, RngStream& rng);

}  // namespace gmeb

#endif  // GMEB_DATA_GEN_HPP
