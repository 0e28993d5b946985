#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bslab/space.hpp"

namespace bslab {

// Point of the suspension S^0 * dT, parameterized as (theta, end) with the
// poles R (theta = 0) and L (theta = pi).  Poles carry no end; construction
// canonicalizes so pole equality is structural.
struct BoundaryPoint {
  double theta;
  std::optional<TreeEnd> end;
  GroupParams group;

  static BoundaryPoint pole_R(const GroupParams& params);
  static BoundaryPoint pole_L(const GroupParams& params);
  static BoundaryPoint of(double theta, const TreeEnd& end);

  bool is_pole() const { return !end.has_value(); }
  bool is_pole_R() const { return is_pole() && theta == 0.0; }
  bool is_pole_L() const { return is_pole() && theta != 0.0; }
};

using EndMap = std::function<TreeEnd(const TreeEnd&)>;

// Fixes both poles and moves each great semicircle parameter-preservingly.
BoundaryPoint suspend_map(const EndMap& h, const BoundaryPoint& z);

// Swaps the poles and sends parameter theta to pi - theta.
BoundaryPoint reflect_suspend_map(const EndMap& h, const BoundaryPoint& z);

// Boundary action: for m > 0 always the suspension of the end action; for
// m < 0 the t-reflected action, choosing suspension or reflected suspension
// by the parity of height(g).
BoundaryPoint act_boundary(const NormalForm& g, const BoundaryPoint& z);

// delta_{q,x,n} = sgn(sgn(q) loglog(x+e) + 1/n); equals sgn(q) except for
// q < 0 with loglog(x+e) < 1/n.
int delta_sign(long q, double x, const GroupParams& params);

// Local coordinates (xi, p*x) of the image of the slope-p/q ray under the
// compressed generators.
struct CurvePoint {
  double xi;
  double height;
};

CurvePoint s_bar_image(long p, long q, double x, const GroupParams& params);
CurvePoint t_bar_image(long p, long q, double x, const GroupParams& params);

enum class CurveKind { s_bar, t_bar };

// Image of the slope-p/q ray {(qx, px)} of a sheet under one compressed
// generator; evaluation is total on x > 0.
struct RayCurve {
  CurveKind generator;
  long p;
  long q;

  CurvePoint at(double x, const GroupParams& params) const;
};

struct SlopeReport {
  std::vector<double> xs;
  std::vector<double> estimates;  // height / xi per sample
  std::vector<double> residuals;  // |estimate - p/q|, first-order stable form
  double target;                  // p/q
  double final_residual;
};

// Slope of the image curve along an increasing schedule.  Residuals are
// evaluated from the correction term directly, so the decay stays resolvable
// far past the point where xi itself rounds to its asymptote.
SlopeReport asymptotic_slope(CurveKind kind, long p, long q,
                             const GroupParams& params,
                             const std::vector<double>& schedule);
SlopeReport asymptotic_slope(const RayCurve& curve, const GroupParams& params,
                             const std::vector<double>& schedule);

struct InteriorConsistencyRow {
  double radius;
  double mapped_theta;    // polar angle of the image of the ray sample
  double boundary_theta;  // theta of the boundary image
  double residual;
};

// Compares the compressed action far out along a ray against the boundary
// action on its end; radii past the overflow-stable range are dropped and
// the largest usable radius is reported by the surviving rows.
std::vector<InteriorConsistencyRow> interior_consistency(
    const NormalForm& g, double theta, const TreeEnd& sheet,
    const std::vector<double>& radii);

}  // namespace bslab
