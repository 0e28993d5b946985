#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bslab/tiles.hpp"

namespace bslab {

// World-to-viewport map X = sx*x + tx, Y = sy*y + ty, recorded verbatim in
// the emitted file header so coordinates can be inverted exactly.
struct SvgAffine {
  double sx;
  double sy;
  double tx;
  double ty;
};

struct SvgPolygon {
  std::vector<std::pair<double, double>> points;  // world coordinates
  std::string css_class;
};

struct SvgLabel {
  double x;
  double y;
  std::string text;
};

// Vector scene with world coordinates; no rasterization.
class SvgScene {
 public:
  SvgScene(double view_width, double margin);
  void add_polygon(SvgPolygon polygon);
  void add_label(SvgLabel label);
  std::string render() const;  // computes the affine from the world bbox
  SvgAffine affine() const;

 private:
  double view_width_;
  double margin_;
  std::vector<SvgPolygon> polygons_;
  std::vector<SvgLabel> labels_;
};

enum class TilingKind { standard, compressed };

struct TilingRenderOptions {
  double view_width = 800.0;
  double margin = 20.0;
  bool labels = false;
};

inline constexpr long long kMaxRenderTiles = 20'000;

// Tiles (a,b) for a in [a0,a1], b in [b0,b1] of the plane through the
// preferred axis; coordinates equal tile_corners_{std,compressed} through
// the recorded affine.  Throws budget_error past kMaxRenderTiles.
std::string render_tiling_svg(TilingKind kind, const GroupParams& params,
                              long long a0, long long a1, long b0, long b1,
                              const TilingRenderOptions& options = {});

}  // namespace bslab
