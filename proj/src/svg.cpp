#include "bslab/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace bslab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SvgScene::SvgScene(double view_width, double margin)
    : view_width_(view_width), margin_(margin) {}

void SvgScene::add_polygon(SvgPolygon polygon) {
  polygons_.push_back(std::move(polygon));
}

void SvgScene::add_label(SvgLabel label) { labels_.push_back(std::move(label)); }

SvgAffine SvgScene::affine() const {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const SvgPolygon& poly : polygons_) {
    for (const auto& [x, y] : poly.points) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  const double span_x = xmax > xmin ? xmax - xmin : 1.0;
  const double sx = (view_width_ - 2.0 * margin_) / span_x;
  // Same scale on both axes; y flipped for SVG screen coordinates.
  return SvgAffine{sx, -sx, margin_ - sx * xmin, margin_ + sx * ymax};
}

std::string SvgScene::render() const {
  const SvgAffine A = affine();
  double height = 2.0 * margin_;
  for (const SvgPolygon& poly : polygons_)
    for (const auto& [x, y] : poly.points)
      height = std::max(height, A.sy * y + A.ty + margin_);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<!-- world-to-viewport: X = (" + fmt(A.sx) + ")*x + (" + fmt(A.tx) +
         "); Y = (" + fmt(A.sy) + ")*y + (" + fmt(A.ty) + ") -->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt(view_width_) + "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " +
         fmt(view_width_) + " " + fmt(height) + "\">\n";
  out += "<style>.tile{fill:none;stroke:#1f4e79;stroke-width:0.8}"
         ".lbl{font-size:9px;fill:#444;text-anchor:middle}</style>\n";
  for (const SvgPolygon& poly : polygons_) {
    out += "<polygon class=\"" +
           (poly.css_class.empty() ? std::string("tile") : poly.css_class) +
           "\" points=\"";
    for (std::size_t i = 0; i < poly.points.size(); ++i) {
      if (i) out += ' ';
      out += fmt(A.sx * poly.points[i].first + A.tx) + "," +
             fmt(A.sy * poly.points[i].second + A.ty);
    }
    out += "\"/>\n";
  }
  for (const SvgLabel& label : labels_) {
    out += "<text class=\"lbl\" x=\"" + fmt(A.sx * label.x + A.tx) +
           "\" y=\"" + fmt(A.sy * label.y + A.ty) + "\">" + label.text +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

namespace {

double compressed_corner(long long a, long b, const GroupParams& params) {
  return a >= 0 ? loglog_grid(a, b, params) : -loglog_grid(-a, b, params);
}

}  // namespace

std::string render_tiling_svg(TilingKind kind, const GroupParams& params,
                              long long a0, long long a1, long b0, long b1,
                              const TilingRenderOptions& options) {
  SvgScene scene(options.view_width, options.margin);
  if (a1 >= a0 && b1 >= b0) {
    const long long cols = a1 - a0 + 1;
    const long long rows = static_cast<long long>(b1 - b0 + 1);
    if (cols > kMaxRenderTiles || rows > kMaxRenderTiles ||
        cols * rows > kMaxRenderTiles)
      throw budget_error("tile grid beyond render budget");
    for (long b = b0; b <= b1; ++b) {
      for (long long a = a0; a <= a1; ++a) {
        double x0, x1;
        if (kind == TilingKind::standard) {
          const GridTileStd tile = tile_corners_std(a, b, params);
          x0 = to_double(tile.x0);
          x1 = to_double(tile.x1);
        } else {
          x0 = compressed_corner(a, b, params);
          x1 = compressed_corner(a + 1, b, params);
        }
        const double y0 = static_cast<double>(b);
        SvgPolygon poly;
        poly.points = {{x0, y0}, {x1, y0}, {x1, y0 + 1.0}, {x0, y0 + 1.0}};
        scene.add_polygon(std::move(poly));
        if (options.labels)
          scene.add_label(SvgLabel{0.5 * (x0 + x1), y0 + 0.5,
                                   std::to_string(a) + "," + std::to_string(b)});
      }
    }
  }
  return scene.render();
}

}  // namespace bslab
