#include <doctest.h>

#include <cmath>
#include <regex>

#include "bslab/svg.hpp"

using namespace bslab;

namespace {

struct ParsedSvg {
  double sx, sy, tx, ty;
  std::vector<std::vector<std::pair<double, double>>> polygons;
};

ParsedSvg parse_svg(const std::string& text) {
  ParsedSvg out{};
  const std::regex affine_re(
      R"(world-to-viewport: X = \(([-0-9.e+]+)\)\*x \+ \(([-0-9.e+]+)\); Y = \(([-0-9.e+]+)\)\*y \+ \(([-0-9.e+]+)\))");
  std::smatch m;
  REQUIRE(std::regex_search(text, m, affine_re));
  out.sx = std::stod(m[1]);
  out.tx = std::stod(m[2]);
  out.sy = std::stod(m[3]);
  out.ty = std::stod(m[4]);
  const std::regex poly_re(R"(points=\"([^\"]*)\")");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), poly_re);
       it != std::sregex_iterator(); ++it) {
    std::vector<std::pair<double, double>> pts;
    const std::string body = (*it)[1];
    const std::regex pair_re(R"(([-0-9.e+]+),([-0-9.e+]+))");
    for (auto p = std::sregex_iterator(body.begin(), body.end(), pair_re);
         p != std::sregex_iterator(); ++p)
      pts.emplace_back(std::stod((*p)[1]), std::stod((*p)[2]));
    out.polygons.push_back(std::move(pts));
  }
  return out;
}

}  // namespace

TEST_CASE("standard tiling coordinates invert exactly through the header") {
  const GroupParams P(2, 3);
  const long long a0 = -4, a1 = 4;
  const long b0 = -2, b1 = 4;
  const std::string svg =
      render_tiling_svg(TilingKind::standard, P, a0, a1, b0, b1);
  const ParsedSvg parsed = parse_svg(svg);
  REQUIRE(parsed.polygons.size() ==
          static_cast<std::size_t>((a1 - a0 + 1) * (b1 - b0 + 1)));
  std::size_t index = 0;
  for (long b = b0; b <= b1; ++b) {
    for (long long a = a0; a <= a1; ++a, ++index) {
      const GridTileStd tile = tile_corners_std(a, b, P);
      const auto& poly = parsed.polygons[index];
      REQUIRE(poly.size() == 4);
      const double x0 = (poly[0].first - parsed.tx) / parsed.sx;
      const double y0 = (poly[0].second - parsed.ty) / parsed.sy;
      const double x1 = (poly[1].first - parsed.tx) / parsed.sx;
      const double y2 = (poly[2].second - parsed.ty) / parsed.sy;
      CHECK(std::abs(x0 - to_double(tile.x0)) < 1e-9);
      CHECK(std::abs(x1 - to_double(tile.x1)) < 1e-9);
      CHECK(std::abs(y0 - static_cast<double>(b)) < 1e-9);
      CHECK(std::abs(y2 - (static_cast<double>(b) + 1.0)) < 1e-9);
    }
  }
}

TEST_CASE("row widths grow exponentially in the standard picture") {
  const GroupParams P(2, 3);
  const std::string svg =
      render_tiling_svg(TilingKind::standard, P, 0, 0, 0, 5);
  const ParsedSvg parsed = parse_svg(svg);
  REQUIRE(parsed.polygons.size() == 6);
  for (std::size_t b = 1; b < 6; ++b) {
    const double w_prev = parsed.polygons[b - 1][1].first -
                          parsed.polygons[b - 1][0].first;
    const double w = parsed.polygons[b][1].first - parsed.polygons[b][0].first;
    CHECK(w == doctest::Approx(1.5 * w_prev));
  }
}

TEST_CASE("compressed rows shrink relative to the standard ones") {
  const GroupParams P(2, 3);
  const std::string svg =
      render_tiling_svg(TilingKind::compressed, P, 0, 0, 0, 8);
  const ParsedSvg parsed = parse_svg(svg);
  REQUIRE(parsed.polygons.size() == 9);
  // Compressed widths loglog(w_b + e) - 0 grow far slower than w_b itself.
  const double w0 = parsed.polygons[0][1].first - parsed.polygons[0][0].first;
  const double w8 = parsed.polygons[8][1].first - parsed.polygons[8][0].first;
  CHECK(w8 / w0 < 6.0);
  // And match the corner formula through the inverse map.
  const GridTileCompressed c8 = tile_corners_compressed(0, 8, P);
  const double x1 = (parsed.polygons[8][1].first - parsed.tx) / parsed.sx;
  CHECK(std::abs(x1 - c8.x1) < 1e-9);
}

TEST_CASE("empty grid renders a valid empty document") {
  const GroupParams P(2, 3);
  const std::string svg =
      render_tiling_svg(TilingKind::standard, P, 5, 4, 0, 2);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polygon") == std::string::npos);
}

TEST_CASE("rendering is deterministic") {
  const GroupParams P(2, 3);
  const std::string a =
      render_tiling_svg(TilingKind::compressed, P, -3, 3, -1, 4);
  const std::string b =
      render_tiling_svg(TilingKind::compressed, P, -3, 3, -1, 4);
  CHECK(a == b);
}

TEST_CASE("render budget guard") {
  const GroupParams P(2, 3);
  CHECK_THROWS_AS(
      render_tiling_svg(TilingKind::standard, P, 0, 100000, 0, 100000),
      budget_error);
}
