#include "bslab/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bslab {

namespace {

const double kE = std::exp(1.0);
constexpr double kPi = 3.14159265358979323846;

double width_ratio(const GroupParams& P) {
  return static_cast<double>(P.n()) / static_cast<double>(P.abs_m());
}

double pow_int(double base, long exp) {
  if (exp < 0) return 1.0 / pow_int(base, -exp);
  double result = 1.0;
  double acc = base;
  for (unsigned long e = static_cast<unsigned long>(exp); e != 0; e >>= 1) {
    if (e & 1) result *= acc;
    acc *= acc;
  }
  return result;
}

void check_quadrant(long long a, long b) {
  if (a < 0 || b < 0)
    throw std::invalid_argument("grid indices must be nonnegative");
}

}  // namespace

GridTileStd tile_corners_std(long long a, long b, const GroupParams& params) {
  const Rational w =
      rational_pow(make_rational(params.n(), params.abs_m()), b);
  Rational x0 = Rational(static_cast<long>(a)) * w;
  x0.canonicalize();
  Rational x1 = Rational(static_cast<long>(a) + 1) * w;
  x1.canonicalize();
  return GridTileStd{x0, x1, b};
}

double inner_log_grid(long long a, long b, const GroupParams& params) {
  if (a < 0) throw std::invalid_argument("grid index a must be nonnegative");
  if (a == 0) return 1.0;  // log(e)
  const double log_ratio = std::log(width_ratio(params));
  const double log_u = std::log(static_cast<double>(a)) + b * log_ratio;
  if (log_u < 700.0) {
    const double u = static_cast<double>(a) * pow_int(width_ratio(params), b);
    return std::log(u + kE);
  }
  // log(u + e) = log u + log1p(e exp(-log u))
  return log_u + std::log1p(kE * std::exp(-log_u));
}

double loglog_grid(long long a, long b, const GroupParams& params) {
  if (a == 0) return 0.0;  // log(log(e))
  return std::log(inner_log_grid(a, b, params));
}

GridTileCompressed tile_corners_compressed(long long a, long b,
                                           const GroupParams& params) {
  if (a < 0) throw std::invalid_argument("grid index a must be nonnegative");
  return GridTileCompressed{loglog_grid(a, b, params),
                            loglog_grid(a + 1, b, params), b};
}

double theta_ab(long long a, long b, const GroupParams& params) {
  check_quadrant(a, b);
  const double p = loglog_grid(a, b, params);
  const double q = loglog_grid(a + 1, b, params);
  return std::atan2(static_cast<double>(b) + 1.0, p) -
         std::atan2(static_cast<double>(b), q);
}

double key_quantity(long long a, long b, const GroupParams& params) {
  check_quadrant(a, b);
  if (a == 0 && b == 0)
    throw std::invalid_argument("key quantity undefined at (0,0)");
  if (b == 0) return 0.0;
  const double L1 = inner_log_grid(a, b, params);
  const double L2 = inner_log_grid(a + 1, b, params);
  const double p = std::log(L1);
  const double q = std::log(L2);
  // L2 - L1 = log1p(w / (a w + e)) evaluated without forming w when huge.
  const double log_ratio = std::log(width_ratio(params));
  double diff;
  if (a == 0) {
    diff = b * log_ratio > 700.0
               ? L2 - 1.0
               : std::log1p(pow_int(width_ratio(params), b) / kE);
  } else {
    const double winv = std::exp(-static_cast<double>(b) * log_ratio);
    diff = std::log1p(1.0 / (static_cast<double>(a) + kE * winv));
  }
  const double numer = static_cast<double>(b) * std::log1p(diff / L1);
  const double bd = static_cast<double>(b);
  const double denom = p * q + bd * bd + bd;
  return numer / denom;
}

AngleReport angle_report(long long a, long b, const GroupParams& params) {
  check_quadrant(a, b);
  const double p = loglog_grid(a, b, params);
  const double q = loglog_grid(a + 1, b, params);
  return AngleReport{a,
                     b,
                     p,
                     q,
                     theta_ab(a, b, params),
                     (a == 0 && b == 0) ? 0.0 : key_quantity(a, b, params),
                     std::hypot(p, static_cast<double>(b))};
}

FindNResult find_N(double eps, const GroupParams& params,
                   const FindNBounds& bounds) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (bounds.a_max < 0 || bounds.b_max < 0)
    throw std::invalid_argument("bounds must be nonnegative");
  FindNResult result;
  result.eps = eps;
  result.bounds = bounds;
  result.N = 0.0;
  result.violating_tiles = 0;
  result.beyond_violations = 0;
  result.grid_r_max = 0.0;

  double p_top = 0.0;  // largest compressed abscissa seen
  for (long b = 0; b <= bounds.b_max; ++b) {
    const double bd = static_cast<double>(b);
    double p = 0.0;  // loglog at a = 0
    for (long long a = 0; a <= bounds.a_max; ++a) {
      const double q = loglog_grid(a + 1, b, params);
      const double theta = std::atan2(bd + 1.0, p) - std::atan2(bd, q);
      const double r_min = std::hypot(p, bd);
      result.grid_r_max = std::max(result.grid_r_max, r_min);
      if (theta >= eps) {
        ++result.violating_tiles;
        result.N = std::max(result.N, r_min);
      }
      p = q;
    }
    p_top = std::max(p_top, p);
  }

  // Verification pass: recount violations strictly beyond N.  Rows whose
  // radius cannot exceed N are skipped (r_min^2 = p^2 + b^2 <= p_top^2 + b^2).
  const double skip2 = result.N * result.N - p_top * p_top;
  const long b_lo =
      skip2 > 0.0 ? static_cast<long>(std::floor(std::sqrt(skip2))) : 0;
  for (long b = std::max(0L, b_lo - 1); b <= bounds.b_max; ++b) {
    const double bd = static_cast<double>(b);
    double p = 0.0;
    for (long long a = 0; a <= bounds.a_max; ++a) {
      const double q = loglog_grid(a + 1, b, params);
      const double theta = std::atan2(bd + 1.0, p) - std::atan2(bd, q);
      const double r_min = std::hypot(p, bd);
      if (theta >= eps && r_min > result.N) {
        ++result.beyond_violations;
        if (result.beyond_witnesses.size() < 32)
          result.beyond_witnesses.emplace_back(a, b);
      }
      p = q;
    }
  }
  result.status = result.margin() > 0.0 ? SweepStatus::conclusive
                                        : SweepStatus::inconclusive;
  return result;
}

// ---------------------------------------------------------------------------
// Tiles of group translates

double Tile::r_min() const {
  const double nx = x0 > 0.0 ? x0 : (x1 < 0.0 ? -x1 : 0.0);
  return std::hypot(nx, d_lo);
}

double Tile::theta_min() const {
  double lo = kPi;
  for (const auto& [x, d] : samples)
    if (x != 0.0 || d != 0.0) lo = std::min(lo, std::atan2(d, x));
  return lo;
}

double Tile::theta_max() const {
  double hi = 0.0;
  for (const auto& [x, d] : samples)
    if (x != 0.0 || d != 0.0) hi = std::max(hi, std::atan2(d, x));
  return hi;
}

Tile tile_of(const NormalForm& g, int samples_per_edge) {
  if (samples_per_edge < 2)
    throw std::invalid_argument("need at least two samples per edge");
  const GroupParams& P = g.params();
  const AffineMap map = alpha(g);
  Rational u0 = map.apply(Rational(0));
  Rational u1 = map.apply(Rational(1));
  if (u1 < u0) std::swap(u0, u1);

  const TreeVertex v0 = TreeVertex::base(P);
  const TreeVertex v1 = v0.neighbor(EndStep{1, 0});  // vertex of t
  TreeVertex a = act_vertex(g, v0);
  TreeVertex b = act_vertex(g, v1);
  const long b_signed = std::min(vertex_height(a), vertex_height(b));
  if (b.depth() < a.depth()) std::swap(a, b);
  const EndStep up = b.last_step();

  Tile tile{compress(to_double(u0)),
            compress(to_double(u1)),
            static_cast<double>(a.depth()),
            a,
            up,
            b_signed,
            u0,
            u1,
            {}};

  // Corner and edge samples in sheet-local coordinates; horizontal edges are
  // sampled uniformly in the pre-compression coordinate.
  const double span = to_double(u1 - u0);
  const double base_x = to_double(u0);
  for (int i = 0; i <= samples_per_edge; ++i) {
    const double frac = static_cast<double>(i) / samples_per_edge;
    const double cx = compress(base_x + frac * span);
    tile.samples.emplace_back(cx, tile.d_lo);
    tile.samples.emplace_back(cx, tile.d_lo + 1.0);
  }
  for (int i = 1; i < samples_per_edge; ++i) {
    const double frac = static_cast<double>(i) / samples_per_edge;
    tile.samples.emplace_back(tile.x0, tile.d_lo + frac);
    tile.samples.emplace_back(tile.x1, tile.d_lo + frac);
  }
  return tile;
}

double angular_diameter(const Tile& tile) {
  if (tile.d_lo == 0.0 && tile.x0 < 0.0 && tile.x1 > 0.0)
    throw std::domain_error("tile contains the base point");
  return tile.theta_max() - tile.theta_min();
}

bool fits_in_U(const Tile& tile, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(tile.r_min() > 1.0 / delta)) return false;
  const double mid = 0.5 * (tile.theta_min() + tile.theta_max());
  for (const auto& [x, d] : tile.samples) {
    const double angle = std::abs(std::atan2(d, x) - mid);
    const double chord =
        std::sqrt((2.0 / (delta * delta)) * (1.0 - std::cos(angle)));
    if (!(chord < delta)) return false;
  }
  return true;
}

NullityReport nullity_sweep(long radius, double delta,
                            const GroupParams& params,
                            const NullityOptions& options) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  NullityReport report{params, radius, delta,
                       0.0,    0.0,    0.0,
                       SweepStatus::conclusive, 0, 0, {}};
  const double arg = 1.0 - 0.5 * delta * delta * delta * delta;
  report.eta = std::acos(std::clamp(arg, -1.0, 1.0));
  const FindNResult fn = find_N(report.eta, params, options.grid);
  report.N = fn.N;
  report.status = fn.status;
  const double diam0 = std::hypot(compress(1.0), 1.0);
  report.near_radius = std::max(1.0 / delta, fn.N) + diam0;
  for (const NormalForm& g : ball(radius, params, options.ball_budget)) {
    const Tile tile = tile_of(g, options.samples_per_edge);
    if (fits_in_U(tile, delta))
      ++report.fits;
    else if (tile.r_min() <= report.near_radius)
      ++report.near;
    else
      report.far_failures.push_back(g);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cover margin

namespace {

// Sufficient containment test U(z, 1/eps, eps) in U(center, r_i, eps_i):
// points of the candidate set project within r_i*eps^2 of z on the r_i
// sphere, so the triangle inequality bounds their distance to the center's
// projection by that plus the z-to-center chord.
bool contained_in(const BoundaryPoint& z, double eps, const BasicNbhdSpec& u) {
  if (1.0 / eps < u.r) return false;
  const auto path_of = [](const BoundaryPoint& b, double r) {
    return b.is_pole() ? std::vector<EndStep>{}
                       : b.end->prefix_steps(
                             static_cast<std::size_t>(std::ceil(r)) + 2);
  };
  const double chord = sphere_chord(u.r, z.theta, path_of(z, u.r),
                                    u.center.theta, path_of(u.center, u.r));
  return u.r * eps * eps + chord < u.eps;
}

double eta_for(const BoundaryPoint& z, const BasicNbhdSpec& u) {
  if (!contained_in(z, 1e-9, u)) return 0.0;
  double lo = 1e-9;
  double hi = kCoverEpsCeiling;
  if (contained_in(z, hi, u)) return hi;
  for (int iter = 0; iter < 64; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (contained_in(z, mid, u) ? lo : hi) = mid;
  }
  return lo;
}

std::vector<BoundaryPoint> sample_boundary(const GroupParams& params,
                                           const CoverSampling& s) {
  std::vector<BoundaryPoint> out;
  std::vector<TreeEnd> ends{TreeEnd::tau_plus(params),
                            TreeEnd::tau_minus(params)};
  std::mt19937 rng(s.seed);
  std::uniform_int_distribution<int> dir_dist(0, 1);
  for (int k = 2; k < s.ends_per_theta; ++k) {
    std::vector<EndStep> tail;
    EndStep prev{0, 0};
    for (std::size_t i = 0; i < s.end_depth; ++i) {
      for (;;) {
        const int dir = dir_dist(rng) == 0 ? 1 : -1;
        const int bound = dir == 1 ? params.n() : params.abs_m();
        std::uniform_int_distribution<int> idx(0, bound - 1);
        EndStep step{dir, idx(rng)};
        if (i == 0 || !(step.dir == -prev.dir && step.index == 0)) {
          tail.push_back(step);
          prev = step;
          break;
        }
      }
    }
    if (tail.back().dir == -tail.front().dir && tail.front().index == 0)
      tail.back() = tail.front();
    out.reserve(static_cast<std::size_t>(s.theta_samples) * ends.size());
    try {
      ends.push_back(TreeEnd::periodic(params, {}, tail));
    } catch (const std::invalid_argument&) {
      // skip degenerate random tails
    }
  }
  out.push_back(BoundaryPoint::pole_R(params));
  out.push_back(BoundaryPoint::pole_L(params));
  for (int i = 1; i < s.theta_samples - 1; ++i) {
    const double theta = kPi * i / (s.theta_samples - 1);
    for (const TreeEnd& e : ends) out.push_back(BoundaryPoint::of(theta, e));
  }
  return out;
}

}  // namespace

double cover_delta(const std::vector<CoverElement>& cover,
                   const GroupParams& params, const CoverSampling& sampling) {
  std::vector<BasicNbhdSpec> basics;
  for (const CoverElement& el : cover)
    if (const auto* b = std::get_if<BasicNbhdSpec>(&el)) basics.push_back(*b);
  if (basics.empty())
    throw cover_violation("cover has no boundary neighborhoods");
  double min_eta = kCoverEpsCeiling;
  for (const BoundaryPoint& z : sample_boundary(params, sampling)) {
    double best = 0.0;
    for (const BasicNbhdSpec& u : basics) best = std::max(best, eta_for(z, u));
    if (best == 0.0)
      throw cover_violation("sampled boundary point not covered");
    min_eta = std::min(min_eta, best);
  }
  return 0.5 * min_eta;
}

}  // namespace bslab
