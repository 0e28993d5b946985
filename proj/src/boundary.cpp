#include "bslab/boundary.hpp"

#include <cmath>
#include <stdexcept>

namespace bslab {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

BoundaryPoint BoundaryPoint::pole_R(const GroupParams& params) {
  return BoundaryPoint{0.0, std::nullopt, params};
}

BoundaryPoint BoundaryPoint::pole_L(const GroupParams& params) {
  return BoundaryPoint{kPi, std::nullopt, params};
}

BoundaryPoint BoundaryPoint::of(double theta, const TreeEnd& end) {
  if (std::isnan(theta) || theta < 0.0 || theta > kPi)
    throw std::invalid_argument("theta must lie in [0, pi]");
  if (theta == 0.0) return pole_R(end.params());
  if (theta == kPi) return pole_L(end.params());
  return BoundaryPoint{theta, end, end.params()};
}

BoundaryPoint suspend_map(const EndMap& h, const BoundaryPoint& z) {
  if (z.is_pole()) return z;
  return BoundaryPoint::of(z.theta, h(*z.end));
}

BoundaryPoint reflect_suspend_map(const EndMap& h, const BoundaryPoint& z) {
  if (z.is_pole())
    return z.is_pole_R() ? BoundaryPoint::pole_L(z.group)
                         : BoundaryPoint::pole_R(z.group);
  return BoundaryPoint::of(kPi - z.theta, h(*z.end));
}

BoundaryPoint act_boundary(const NormalForm& g, const BoundaryPoint& z) {
  if (g.params() != z.group)
    throw param_mismatch("element and boundary point from different groups");
  EndMap h = [&g](const TreeEnd& e) { return act_end(g, e); };
  if (g.params().m() > 0) return suspend_map(h, z);
  return height(g) % 2 == 0 ? suspend_map(h, z) : reflect_suspend_map(h, z);
}

int delta_sign(long q, double x, const GroupParams& params) {
  const int sq = q < 0 ? -1 : (q > 0 ? 1 : 0);
  const double v = sq * compress(x) + 1.0 / params.n();
  return v >= 0.0 ? 1 : -1;
}

namespace {

// log(exp(L) + C) = L + log1p(C exp(-L)), kept in this form so the
// correction term stays resolvable long after the sum would round to L.
double log_exp_plus(double big_log, double addend_log_domain) {
  return big_log + std::log1p(addend_log_domain * std::exp(-big_log));
}

// Correction C with  xi = L + log1p(C exp(-L)),  L = |q| x, for each curve.
double curve_correction(CurveKind kind, double big_log,
                        const GroupParams& params) {
  const double inner_exp = std::exp(std::min(big_log, 710.0));  // exp(|q| x)
  if (kind == CurveKind::s_bar) {
    // inner log of exp(exp(|q|x)) + 1/n
    const double tail =
        inner_exp > 700.0 ? 0.0 : std::exp(-inner_exp) / params.n();
    return std::log1p(tail);
  }
  // inner log of (n/m) exp(exp(|q|x)) + ((m-n)/m) e
  const double m = params.m();
  const double n = params.n();
  const double tail =
      inner_exp > 700.0
          ? 0.0
          : ((m - n) / n) * std::exp(1.0 - inner_exp);
  return std::log(n / m) + std::log1p(tail);
}

}  // namespace

CurvePoint s_bar_image(long p, long q, double x, const GroupParams& params) {
  if (!(x > 0.0)) throw std::invalid_argument("curve parameter must be positive");
  if (q == 0) throw std::invalid_argument("q must be nonzero");
  const double L = std::abs(static_cast<double>(q)) * x;
  const double xi =
      delta_sign(q, x, params) *
      log_exp_plus(L, curve_correction(CurveKind::s_bar, L, params));
  return CurvePoint{xi, static_cast<double>(p) * x};
}

CurvePoint t_bar_image(long p, long q, double x, const GroupParams& params) {
  if (!(x > 0.0)) throw std::invalid_argument("curve parameter must be positive");
  if (q == 0) throw std::invalid_argument("q must be nonzero");
  if (params.m() < 0)
    throw std::invalid_argument("t-image curve is defined for m > 0; compose "
                                "with the reflection for m < 0");
  const int sq = q < 0 ? -1 : 1;
  const double L = std::abs(static_cast<double>(q)) * x;
  const double xi =
      sq * log_exp_plus(L, curve_correction(CurveKind::t_bar, L, params));
  return CurvePoint{xi, static_cast<double>(p) * x};
}

CurvePoint RayCurve::at(double x, const GroupParams& params) const {
  return generator == CurveKind::s_bar ? s_bar_image(p, q, x, params)
                                       : t_bar_image(p, q, x, params);
}

SlopeReport asymptotic_slope(const RayCurve& curve, const GroupParams& params,
                             const std::vector<double>& schedule) {
  return asymptotic_slope(curve.generator, curve.p, curve.q, params, schedule);
}

SlopeReport asymptotic_slope(CurveKind kind, long p, long q,
                             const GroupParams& params,
                             const std::vector<double>& schedule) {
  if (q == 0) throw std::invalid_argument("q must be nonzero");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i - 1]))
      throw std::invalid_argument("schedule must be strictly increasing");
  SlopeReport report;
  report.target = static_cast<double>(p) / static_cast<double>(q);
  for (double x : schedule) {
    const CurvePoint pt = kind == CurveKind::s_bar
                              ? s_bar_image(p, q, x, params)
                              : t_bar_image(p, q, x, params);
    const double estimate = pt.height / pt.xi;
    // estimate - p/q = -(p/q) * corr / (L + corr) when the curve sign matches
    // sgn(q); evaluated from the correction term so the decay stays visible
    // below one ulp of the estimate itself.
    const double L = std::abs(static_cast<double>(q)) * x;
    const double corr = std::log1p(curve_correction(kind, L, params) *
                                   std::exp(-L));
    double residual;
    const int sq = q < 0 ? -1 : 1;
    const int curve_sign =
        kind == CurveKind::s_bar ? delta_sign(q, x, params) : sq;
    if (curve_sign == sq)
      residual = std::abs(report.target) * std::abs(corr) / (L + corr);
    else
      residual = std::abs(estimate - report.target);
    report.xs.push_back(x);
    report.estimates.push_back(estimate);
    report.residuals.push_back(residual);
  }
  report.final_residual = report.residuals.empty() ? 0.0
                                                   : report.residuals.back();
  return report;
}

std::vector<InteriorConsistencyRow> interior_consistency(
    const NormalForm& g, double theta, const TreeEnd& sheet,
    const std::vector<double>& radii) {
  if (!(theta > 0.0 && theta < kPi))
    throw std::invalid_argument("theta must lie in (0, pi)");
  std::vector<InteriorConsistencyRow> rows;
  const BoundaryPoint target =
      act_boundary(g, BoundaryPoint::of(theta, sheet));
  for (double r : radii) {
    const SpacePoint sample = sheet_point(
        SheetCoords{sheet, r * std::cos(theta), r * std::sin(theta)});
    SpacePoint mapped = act_compressed(g, sample);
    const Polar pol = polar(mapped);
    rows.push_back(InteriorConsistencyRow{
        r, pol.theta, target.theta, std::abs(pol.theta - target.theta)});
  }
  return rows;
}

}  // namespace bslab
