#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bslab/json_io.hpp"
#include "bslab/svg.hpp"

namespace py = pybind11;
using namespace bslab;

namespace {

GroupParams params_of(int m, int n) { return GroupParams(m, n); }

std::string reduce_to_string(const std::string& word, int m, int n) {
  return to_string(reduce(parse_word(word), params_of(m, n)));
}

std::string reduce_to_json(const std::string& word, int m, int n) {
  return to_json(reduce(parse_word(word), params_of(m, n))).dump();
}

std::string multiply_words(const std::string& a, const std::string& b, int m,
                           int n) {
  const GroupParams P = params_of(m, n);
  return to_string(multiply(reduce(parse_word(a), P), reduce(parse_word(b), P)));
}

std::string invert_word(const std::string& a, int m, int n) {
  const GroupParams P = params_of(m, n);
  return to_string(invert(reduce(parse_word(a), P)));
}

long height_of(const std::string& a, int m, int n) {
  return height(reduce(parse_word(a), params_of(m, n)));
}

std::size_t ball_size(long radius, int m, int n) {
  return ball(radius, params_of(m, n)).size();
}

std::vector<std::string> ball_elements(long radius, int m, int n) {
  std::vector<std::string> out;
  for (const NormalForm& g : ball(radius, params_of(m, n)))
    out.push_back(to_string(g));
  return out;
}

std::pair<std::string, std::string> alpha_of(const std::string& word, int m,
                                             int n) {
  const AffineMap map = alpha(reduce(parse_word(word), params_of(m, n)));
  return {to_string(map.lambda), to_string(map.c)};
}

double stable_conj_coeffs(double lambda, double c, double x) {
  return stable_conj(
      AffineMap{rational_from_double(lambda), rational_from_double(c)}, x);
}

double theta(long long a, long b, int m, int n) {
  return theta_ab(a, b, params_of(m, n));
}

double key(long long a, long b, int m, int n) {
  return key_quantity(a, b, params_of(m, n));
}

double loglog_corner(long long a, long b, int m, int n) {
  return loglog_grid(a, b, params_of(m, n));
}

std::pair<std::string, std::string> tile_std(long long a, long b, int m,
                                             int n) {
  const GridTileStd tile = tile_corners_std(a, b, params_of(m, n));
  return {to_string(tile.x0), to_string(tile.x1)};
}

std::pair<double, double> tile_compressed(long long a, long b, int m, int n) {
  const GridTileCompressed tile = tile_corners_compressed(a, b, params_of(m, n));
  return {tile.x0, tile.x1};
}

std::string find_n_json(double eps, int m, int n, long long a_max,
                        long b_max) {
  return to_json(find_N(eps, params_of(m, n), FindNBounds{a_max, b_max}))
      .dump();
}

std::string nullity_json(long radius, double delta, int m, int n,
                         long long a_max, long b_max) {
  NullityOptions options;
  options.grid = FindNBounds{a_max, b_max};
  return to_json(nullity_sweep(radius, delta, params_of(m, n), options))
      .dump();
}

std::string slope_json(const std::string& curve, long p, long q, int m, int n,
                       const std::vector<double>& schedule) {
  const CurveKind kind =
      curve == "t" ? CurveKind::t_bar : CurveKind::s_bar;
  return to_json(asymptotic_slope(kind, p, q, params_of(m, n), schedule))
      .dump();
}

std::string classify_text(const std::string& text) {
  return to_json(classify(parse_graph(text))).dump();
}

std::string classify_loop(long mu, long mv) {
  return to_json(classify(single_loop(mu, mv))).dump();
}

std::string render_svg(const std::string& kind, int m, int n, long long a0,
                       long long a1, long b0, long b1) {
  return render_tiling_svg(kind == "compressed" ? TilingKind::compressed
                                                : TilingKind::standard,
                           params_of(m, n), a0, a1, b0, b1);
}

}  // namespace

PYBIND11_MODULE(_bslab, module) {
  module.doc() = "Baumslag-Solitar boundary laboratory (native core)";

  module.def("normal_form", &reduce_to_string, py::arg("word"), py::arg("m"),
             py::arg("n"), "Canonical form of a word, as display text");
  module.def("normal_form_json", &reduce_to_json, py::arg("word"),
             py::arg("m"), py::arg("n"));
  module.def("multiply", &multiply_words, py::arg("a"), py::arg("b"),
             py::arg("m"), py::arg("n"));
  module.def("invert", &invert_word, py::arg("a"), py::arg("m"), py::arg("n"));
  module.def("height", &height_of, py::arg("a"), py::arg("m"), py::arg("n"));
  module.def("ball_size", &ball_size, py::arg("radius"), py::arg("m"),
             py::arg("n"));
  module.def("ball", &ball_elements, py::arg("radius"), py::arg("m"),
             py::arg("n"));
  module.def("alpha", &alpha_of, py::arg("word"), py::arg("m"), py::arg("n"),
             "R-coordinate affine map as exact rational strings (lambda, c)");
  module.def("compress", &compress, py::arg("x"));
  module.def("decompress", &decompress, py::arg("x"));
  module.def("stable_conj", &stable_conj_coeffs, py::arg("lam"), py::arg("c"),
             py::arg("x"));
  module.def("theta_ab", &theta, py::arg("a"), py::arg("b"), py::arg("m"),
             py::arg("n"));
  module.def("key_quantity", &key, py::arg("a"), py::arg("b"), py::arg("m"),
             py::arg("n"));
  module.def("loglog_grid", &loglog_corner, py::arg("a"), py::arg("b"),
             py::arg("m"), py::arg("n"));
  module.def("tile_corners_std", &tile_std, py::arg("a"), py::arg("b"),
             py::arg("m"), py::arg("n"),
             "Exact rational x-range of a standard grid tile");
  module.def("tile_corners_compressed", &tile_compressed, py::arg("a"),
             py::arg("b"), py::arg("m"), py::arg("n"));
  module.def("find_n_json", &find_n_json, py::arg("eps"), py::arg("m"),
             py::arg("n"), py::arg("a_max") = 1'000'000, py::arg("b_max") = 60);
  module.def("nullity_json", &nullity_json, py::arg("radius"),
             py::arg("delta"), py::arg("m"), py::arg("n"),
             py::arg("a_max") = 1'000'000, py::arg("b_max") = 60);
  module.def("asymptotic_slope_json", &slope_json, py::arg("curve"),
             py::arg("p"), py::arg("q"), py::arg("m"), py::arg("n"),
             py::arg("schedule"));
  module.def("gbs_classify_json", &classify_text, py::arg("text"));
  module.def("gbs_classify_loop_json", &classify_loop, py::arg("mu"),
             py::arg("mv"));
  module.def("render_tiling_svg", &render_svg, py::arg("kind"), py::arg("m"),
             py::arg("n"), py::arg("a0"), py::arg("a1"), py::arg("b0"),
             py::arg("b1"));

  py::register_exception<budget_error>(module, "BudgetError");
  py::register_exception<parse_error>(module, "ParseError");
}
