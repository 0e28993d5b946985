#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bslab/boundary.hpp"
#include "bslab/space.hpp"

namespace bslab {

// Grid tile of the standard tiling of the plane R x tau:
// [a*w, (a+1)*w] x [b, b+1] with w = (n/|m|)^b, all exact.
struct GridTileStd {
  Rational x0;
  Rational x1;
  long b;
};

GridTileStd tile_corners_std(long long a, long b, const GroupParams& params);

// Same tile after compression of the R-coordinate.
struct GridTileCompressed {
  double x0;
  double x1;
  long b;
};

GridTileCompressed tile_corners_compressed(long long a, long b,
                                           const GroupParams& params);

// log(a (n/|m|)^b + e), evaluated in the log domain once the argument
// outgrows double range.
double inner_log_grid(long long a, long b, const GroupParams& params);

// log(log(a (n/|m|)^b + e)); the compressed x-coordinate of grid corner a.
double loglog_grid(long long a, long b, const GroupParams& params);

// Bounding angle of grid tile (a,b) seen from the base point:
// atan2(b+1, p) - atan2(b, q) with p, q the compressed corner abscissas.
// Requires a >= 0, b >= 0.
double theta_ab(long long a, long b, const GroupParams& params);

// b (q - p) / (p q + b^2 + b), the dominant term of tan(theta);
// the numerator is evaluated as b log(L_{a+1}/L_a).  Requires
// a, b >= 0 and (a, b) != (0, 0).
double key_quantity(long long a, long b, const GroupParams& params);

// One row of an angle sweep; r_min is the distance of the compressed tile
// (a,b) to the base point.
struct AngleReport {
  long long a;
  long b;
  double p;
  double q;
  double theta;
  double key_quantity;
  double r_min;
};

AngleReport angle_report(long long a, long b, const GroupParams& params);

struct FindNBounds {
  long long a_max = 1'000'000;
  long b_max = 60;
};

enum class SweepStatus { conclusive, inconclusive };

struct FindNResult {
  double eps;
  double N;  // sup of r_min over tiles with theta >= eps (0 when none)
  SweepStatus status;  // inconclusive when no swept tile lies beyond N
  std::uint64_t violating_tiles;     // theta >= eps anywhere on the grid
  std::uint64_t beyond_violations;   // theta >= eps with r_min > N (0 expected)
  std::vector<std::pair<long long, long>> beyond_witnesses;  // capped sample
  double grid_r_max;  // largest r_min over the whole grid
  double margin() const { return grid_r_max - N; }
  FindNBounds bounds;
};

// Sweeps the quadrant grid and returns the least radius past which every
// swept tile subtends an angle < eps.  A second verification pass recounts
// violations beyond N (empty by construction of N; the recount is the check).
FindNResult find_N(double eps, const GroupParams& params,
                   const FindNBounds& bounds = {});

// Compressed translate g(f(R0)) in the local coordinates of its sheet.
struct Tile {
  double x0;             // compressed x-range, x0 <= x1
  double x1;
  double d_lo;           // sheet-local height of the endpoint nearer v0
  TreeVertex lower;      // that endpoint
  EndStep up_step;       // step from lower to the far endpoint
  long b_signed;         // height of the lower horizontal edge in the plane
  Rational std_x0;       // pre-compression x-range, exact
  Rational std_x1;
  std::vector<std::pair<double, double>> samples;  // (x, d) boundary samples

  double r_min() const;  // distance of the tile to the base point
  double theta_min() const;
  double theta_max() const;
};

Tile tile_of(const NormalForm& g, int samples_per_edge = 4);

// Largest angle at the base point between two tile samples; throws
// std::domain_error when the base point lies inside the tile.
double angular_diameter(const Tile& tile);

// Law-of-cosines criterion: the tile clears the 1/delta ball and every
// sample w satisfies sqrt((2/delta^2)(1 - cos(angle(w0, w)))) < delta for
// the ray through the tile's angular midpoint.
bool fits_in_U(const Tile& tile, double delta);

struct NullityReport {
  GroupParams group;
  long radius;  // ball radius swept
  double delta;
  double eta;     // angle solving sqrt((2/delta^2)(1-cos eta)) = delta
  double N;       // find_N(eta) over the configured grid
  double near_radius;  // max(1/delta, N) + diam(f(R0))
  SweepStatus status;
  std::uint64_t fits = 0;
  std::uint64_t near = 0;
  std::vector<NormalForm> far_failures;
};

struct NullityOptions {
  FindNBounds grid;
  int samples_per_edge = 4;
  std::size_t ball_budget = kDefaultBallBudget;
};

// Classifies every translate of the compressed fundamental tile over the
// radius-L ball: it either fits in a basic neighborhood U(z, 1/delta, delta)
// or stays near the base point.  far_failures collects the rest.
NullityReport nullity_sweep(long radius, double delta,
                            const GroupParams& params,
                            const NullityOptions& options = {});

// Open cover elements for the boundary-cover margin estimate.
struct BasicNbhdSpec {
  BoundaryPoint center;
  double r;
  double eps;
};

struct BallSpec {
  double radius;
};

using CoverElement = std::variant<BasicNbhdSpec, BallSpec>;

struct CoverSampling {
  int theta_samples = 17;
  int ends_per_theta = 8;
  std::size_t end_depth = 12;
  unsigned seed = 1;
};

class cover_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kCoverEpsCeiling = 8.0;

// Half the sampled minimum over boundary points of the largest eps with
// U(z, 1/eps, eps) inside some cover element, found by bisection per sample.
// Throws cover_violation when a sampled boundary point is uncovered.
double cover_delta(const std::vector<CoverElement>& cover,
                   const GroupParams& params,
                   const CoverSampling& sampling = {});

}  // namespace bslab
