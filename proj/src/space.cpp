#include "bslab/space.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bslab/boundary.hpp"

namespace bslab {

AffineMap AffineMap::identity() { return AffineMap{Rational(1), Rational(0)}; }

Rational AffineMap::apply(const Rational& x) const {
  Rational r = lambda * x + c;
  r.canonicalize();
  return r;
}

double AffineMap::apply(double x) const {
  return to_double(lambda) * x + to_double(c);
}

AffineMap AffineMap::inverse() const {
  Rational inv_lambda = make_rational(lambda.get_den(), lambda.get_num());
  Rational nc = -(inv_lambda * c);
  nc.canonicalize();
  return AffineMap{inv_lambda, nc};
}

bool operator==(const AffineMap& a, const AffineMap& b) {
  return a.lambda == b.lambda && a.c == b.c;
}

AffineMap operator*(const AffineMap& a, const AffineMap& b) {
  Rational lambda = a.lambda * b.lambda;
  lambda.canonicalize();
  Rational c = a.lambda * b.c + a.c;
  c.canonicalize();
  return AffineMap{lambda, c};
}

AffineMap alpha(const NormalForm& g) {
  const GroupParams& P = g.params();
  const Rational ratio = make_rational(P.n(), P.m());
  auto s_part = [&](const Int& k) {
    return AffineMap{Rational(1), make_rational(k, P.n())};
  };
  AffineMap map = s_part(g.leading());
  for (const Syllable& syl : g.syllables()) {
    AffineMap t_part{syl.eps == 1 ? ratio : make_rational(P.m(), P.n()),
                     Rational(0)};
    map = map * t_part * s_part(syl.a);
  }
  return map;
}

SpacePoint SpacePoint::origin(const GroupParams& params) {
  return SpacePoint{Rational(0), TreePoint::at_vertex(TreeVertex::base(params))};
}

bool operator==(const SpacePoint& a, const SpacePoint& b) {
  if (a.x != b.x || a.y.vertex != b.y.vertex) return false;
  if (a.y.edge.has_value() != b.y.edge.has_value()) return false;
  if (!a.y.edge) return true;
  return a.y.edge->first == b.y.edge->first &&
         a.y.edge->second == b.y.edge->second;
}

SpacePoint act_std(const NormalForm& g, const SpacePoint& p) {
  if (g.params() != p.params())
    throw param_mismatch("element and point from different groups");
  return SpacePoint{alpha(g).apply(p.x), act_point(g, p.y)};
}

namespace {

const double kE = std::exp(1.0);

// exp(exp(x)) - e overflows just past here.
const double kDecompressMax = std::log(std::log(std::numeric_limits<double>::max()));

}  // namespace

double compress(double x) {
  if (std::isnan(x)) throw std::invalid_argument("compress of NaN");
  const double ax = std::abs(x);
  const double v = std::log(std::log(ax + kE));
  return x < 0 ? -v : v;
}

double decompress_max() { return kDecompressMax; }

double decompress(double x) {
  if (std::isnan(x)) throw std::invalid_argument("decompress of NaN");
  const double ax = std::abs(x);
  if (ax > kDecompressMax)
    throw std::range_error("decompress overflows double precision");
  const double v = std::exp(std::exp(ax)) - kE;
  return x < 0 ? -v : v;
}

double stable_conj(const AffineMap& map, double x) {
  const double lam = to_double(map.lambda);
  const double c = to_double(map.c);
  const double abs_lam = std::abs(lam);
  const double sign_lam = lam < 0 ? -1.0 : 1.0;
  if (x == 0.0) return compress(c);
  const double sign_x = x < 0 ? -1.0 : 1.0;
  const double ax = std::abs(x);
  // Direct route while lambda * exp(exp(|x|)) stays clear of overflow.
  if (ax <= kDecompressMax && std::exp(ax) + std::log(abs_lam) < 700.0) {
    const double z = lam * decompress(x) + c;
    if (std::isfinite(z)) return compress(z);
  }
  // |lam f^{-1}(x) + c| + e  =  abs_lam * exp(E) * (1 + a)  with E = exp(|x|)
  // and a = (-e + e/|lam| + sign_x c/lam) exp(-E); exp(-E) is evaluated as
  // exp(-expm1(|x|))/e to survive E near 1.  Then
  //   log(log(|u|+e)) = |x| + log1p((log|lam| + log1p(a)) exp(-|x|)).
  const double exp_neg_e = std::exp(-std::expm1(ax)) / kE;
  double a = (-kE + kE / abs_lam) * exp_neg_e;
  if (abs_lam >= 1.0 || std::abs(c) < abs_lam * 1e300)
    a += (sign_x * c / lam) * exp_neg_e;
  if (!(a > -1.0)) a = std::nextafter(-1.0, 0.0);
  const double correction = std::log(abs_lam) + std::log1p(a);
  return sign_lam * sign_x * (ax + std::log1p(correction * std::exp(-ax)));
}

SpacePoint act_compressed(const NormalForm& g, const SpacePoint& p) {
  if (g.params() != p.params())
    throw param_mismatch("element and point from different groups");
  const double x = stable_conj(alpha(g), to_double(p.x));
  return SpacePoint{rational_from_double(x), act_point(g, p.y)};
}

double distance(const SpacePoint& p, const SpacePoint& q) {
  if (p.params() != q.params())
    throw param_mismatch("points from different groups");
  const double dx = to_double(p.x) - to_double(q.x);
  const double dt = tree_point_distance(p.y, q.y);
  return std::hypot(dx, dt);
}

SpacePoint sheet_point(const SheetCoords& coords) {
  if (!(coords.d >= 0.0))
    throw std::invalid_argument("sheet distance must be nonnegative");
  const auto whole = static_cast<std::size_t>(std::floor(coords.d));
  const double frac = coords.d - static_cast<double>(whole);
  const TreeVertex v = coords.end.vertex_at(whole);
  TreePoint y = frac == 0.0
                    ? TreePoint::at_vertex(v)
                    : TreePoint::on_edge(
                          v, coords.end.prefix_steps(whole + 1)[whole], frac);
  return SpacePoint{rational_from_double(coords.x), std::move(y)};
}

Polar polar(const SpacePoint& p) {
  if (sign(p.x) == 0 && !p.y.edge &&
      p.y.vertex == TreeVertex::base(p.params()))
    throw std::domain_error("polar angle undefined at the base point");
  const double x = to_double(p.x);
  const double d = p.y.height_above_base();
  return Polar{std::hypot(x, d), std::atan2(d, x), p.y.path_steps()};
}

double sphere_chord(double r, double theta_a,
                    const std::vector<EndStep>& path_a, double theta_b,
                    const std::vector<EndStep>& path_b) {
  const double xa = r * std::cos(theta_a);
  const double xb = r * std::cos(theta_b);
  const double da = r * std::sin(theta_a);
  const double db = r * std::sin(theta_b);
  const double reach = std::min(da, db);
  // First step index where the two tree paths part ways, if it happens below
  // both projection heights; otherwise a common generalized sheet exists.
  std::size_t split = 0;
  const std::size_t limit = std::min(path_a.size(), path_b.size());
  while (split < limit && path_a[split] == path_b[split]) ++split;
  double tree_part;
  if (static_cast<double>(split) < reach && split < limit)
    tree_part = da + db - 2.0 * static_cast<double>(split);
  else
    tree_part = std::abs(da - db);
  return std::hypot(xa - xb, tree_part);
}

namespace {

std::vector<EndStep> boundary_path(const BoundaryPoint& z, double r) {
  if (z.is_pole()) return {};
  const auto depth = static_cast<std::size_t>(std::ceil(r)) + 2;
  return z.end->prefix_steps(depth);
}

void check_nbhd_args(double r, double eps) {
  if (!(r > 0.0)) throw std::invalid_argument("neighborhood radius must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("neighborhood eps must be positive");
}

}  // namespace

bool in_basic_nbhd(const SpacePoint& p, const BoundaryPoint& z, double r,
                   double eps) {
  check_nbhd_args(r, eps);
  if (p.params() != z.group)
    throw param_mismatch("point and boundary point from different groups");
  if (distance(p, SpacePoint::origin(p.params())) <= r) return false;
  const Polar pol = polar(p);
  return sphere_chord(r, pol.theta, pol.path, z.theta, boundary_path(z, r)) <
         eps;
}

bool in_basic_nbhd(const BoundaryPoint& p, const BoundaryPoint& z, double r,
                   double eps) {
  check_nbhd_args(r, eps);
  if (p.group != z.group)
    throw param_mismatch("boundary points from different groups");
  return sphere_chord(r, p.theta, boundary_path(p, r), z.theta,
                      boundary_path(z, r)) < eps;
}

}  // namespace bslab
