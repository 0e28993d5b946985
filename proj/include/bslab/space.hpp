#pragma once

#include <optional>
#include <vector>

#include "bslab/tree.hpp"

namespace bslab {

// x -> lambda*x + c with exact rational coefficients, lambda != 0.
struct AffineMap {
  Rational lambda;
  Rational c;

  static AffineMap identity();
  Rational apply(const Rational& x) const;
  double apply(double x) const;
  AffineMap inverse() const;
};

bool operator==(const AffineMap& a, const AffineMap& b);
// Composition: (a * b)(x) = a(b(x)).
AffineMap operator*(const AffineMap& a, const AffineMap& b);

// R-coordinate action: alpha(s) = x + 1/n, alpha(t) = (n/m) x.
// lambda(alpha(g)) = (n/m)^height(g) exactly.
AffineMap alpha(const NormalForm& g);

// Point of R x T(|m|,n); the R-coordinate stays exact until compression.
struct SpacePoint {
  Rational x;
  TreePoint y;

  static SpacePoint origin(const GroupParams& params);  // (0, v0)
  const GroupParams& params() const { return y.params(); }
};

bool operator==(const SpacePoint& a, const SpacePoint& b);

SpacePoint act_std(const NormalForm& g, const SpacePoint& p);

// f(x) = sgn(x) log(log(|x|+e)) on the R-factor; total and odd.
double compress(double x);

// Largest |x| for which exp(exp(|x|)) - e is a finite double.
double decompress_max();

// f^{-1}(x) = sgn(x)(exp(exp(|x|)) - e); throws std::range_error past
// decompress_max().
double decompress(double x);

// f(A(f^{-1}(x))) evaluated without overflow; total on the reals.  Direct
// composition is used while A(f^{-1}(x)) stays representable; past that the
// exactly-cancelling form |x| + log1p((log|lambda| + o(1)) e^{-|x|}) takes
// over.
double stable_conj(const AffineMap& map, double x);

SpacePoint act_compressed(const NormalForm& g, const SpacePoint& p);

// l^2 product metric.
double distance(const SpacePoint& p, const SpacePoint& q);

struct Polar {
  double r;
  double theta;  // in [0, pi], measured from the positive x-axis
  std::vector<EndStep> path;  // tree path of the point, partial edge included
};

// Throws std::domain_error at the base point (0, v0).
Polar polar(const SpacePoint& p);

// Euclidean local coordinates of the sheet R x rho: x along the R-factor,
// d >= 0 the distance along the ray rho from the base vertex.
struct SheetCoords {
  TreeEnd end;
  double x;
  double d;
};

// The space point those coordinates name.
SpacePoint sheet_point(const SheetCoords& coords);

// Internal geometry shared by the cone-topology predicates: the distance
// between the radius-r projections of two rays from the base point, given as
// (theta, tree path).  Rays in a common generalized sheet use the planar
// chord; rays whose tree paths split below both projection heights use the
// exact chord through the divergence vertex.
double sphere_chord(double r, double theta_a,
                    const std::vector<EndStep>& path_a, double theta_b,
                    const std::vector<EndStep>& path_b);

struct BoundaryPoint;  // defined in boundary.hpp

// Cone-topology basic neighborhood U(z, r, eps) membership.
bool in_basic_nbhd(const SpacePoint& p, const BoundaryPoint& z, double r,
                   double eps);
bool in_basic_nbhd(const BoundaryPoint& p, const BoundaryPoint& z, double r,
                   double eps);

}  // namespace bslab
