#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bslab/json_io.hpp"
#include "bslab/svg.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GroupOpts {
  int m = 2;
  int n = 3;
  bslab::GroupParams params() const { return bslab::GroupParams(m, n); }
};

void add_group_opts(CLI::App* cmd, GroupOpts& opts) {
  cmd->add_option("--m", opts.m, "first parameter (nonzero)")->required();
  cmd->add_option("--n", opts.n, "second parameter (0 < |m| <= n)")->required();
}

bool parse_grid(const std::string& text, long long& a0, long long& a1,
                long& b0, long& b1) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  auto parse_range = [](const std::string& part, long long& lo,
                        long long& hi) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) return false;
    try {
      lo = std::stoll(part.substr(0, colon));
      hi = std::stoll(part.substr(colon + 1));
    } catch (...) {
      return false;
    }
    return true;
  };
  long long blo = 0, bhi = 0;
  if (!parse_range(text.substr(0, comma), a0, a1)) return false;
  if (!parse_range(text.substr(comma + 1), blo, bhi)) return false;
  b0 = static_cast<long>(blo);
  b1 = static_cast<long>(bhi);
  return true;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

bslab::json run_config(const std::string& command, const GroupOpts& group,
                       const bslab::json& extra) {
  bslab::json cfg{{"command", command},
                  {"m", group.m},
                  {"n", group.n},
                  {"version", kVersion}};
  cfg.update(extra);
  return cfg;
}

// ---------------------------------------------------------------------------

int cmd_normal_form(const GroupOpts& group, const std::string& word_text,
                    bool as_json) {
  const bslab::GroupParams P = group.params();
  const bslab::NormalForm nf = bslab::reduce(bslab::parse_word(word_text), P);
  if (as_json)
    std::cout << bslab::to_json(nf).dump(2) << "\n";
  else
    std::cout << bslab::to_string(nf) << "\n";
  return kExitPass;
}

int cmd_render_tiling(const GroupOpts& group, const std::string& kind,
                      const std::string& grid, const std::string& out_path,
                      bool labels) {
  long long a0 = -4, a1 = 4;
  long b0 = -2, b1 = 4;
  if (!grid.empty() && !parse_grid(grid, a0, a1, b0, b1))
    throw CLI::ValidationError("--grid", "expected a0:a1,b0:b1");
  bslab::TilingRenderOptions options;
  options.labels = labels;
  const bslab::TilingKind k = kind == "compressed"
                                  ? bslab::TilingKind::compressed
                                  : bslab::TilingKind::standard;
  write_file(out_path, bslab::render_tiling_svg(k, group.params(), a0, a1, b0,
                                                b1, options));
  return kExitPass;
}

int cmd_angle_sweep(const GroupOpts& group, double eps, long long a_max,
                    long b_max, const std::string& csv_path,
                    const std::string& summary_path) {
  const bslab::GroupParams P = group.params();
  std::ostringstream csv;
  csv << "a,b,p,q,theta,key_quantity,r_min\n";
  // Geometric schedules along the four decay regimes.
  std::vector<std::pair<long long, long>> cells;
  for (long b : {0L, 1L, 3L})
    for (long long a = 1; a <= a_max; a *= 10) cells.emplace_back(a, b);
  for (long b = 1; b <= b_max; b *= 2) {
    cells.emplace_back(0, b);
    cells.emplace_back(1, b);
    cells.emplace_back(5, b);
    cells.emplace_back(static_cast<long long>(b), b);
  }
  for (const auto& [a, b] : cells) {
    const bslab::AngleReport row = bslab::angle_report(a, b, P);
    csv << row.a << "," << row.b << "," << fmt17(row.p) << "," << fmt17(row.q)
        << "," << fmt17(row.theta) << "," << fmt17(row.key_quantity) << ","
        << fmt17(row.r_min) << "\n";
  }
  write_file(csv_path, csv.str());

  const bslab::FindNResult fn =
      bslab::find_N(eps, P, bslab::FindNBounds{a_max, b_max});
  bslab::json summary = bslab::to_json(fn);
  summary["config"] = run_config(
      "angle-sweep", group,
      {{"eps", eps}, {"a_max", a_max}, {"b_max", b_max}});
  if (!summary_path.empty()) write_file(summary_path, summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  if (fn.status == bslab::SweepStatus::inconclusive) return kExitInconclusive;
  return fn.beyond_violations == 0 ? kExitPass : kExitViolation;
}

int cmd_nullity(const GroupOpts& group, long radius, double delta,
                long long a_max, long b_max, const std::string& out_path) {
  bslab::NullityOptions options;
  options.grid = bslab::FindNBounds{a_max, b_max};
  const bslab::NullityReport report =
      bslab::nullity_sweep(radius, delta, group.params(), options);
  bslab::json j = bslab::to_json(report);
  j["config"] = run_config(
      "nullity", group,
      {{"L", radius}, {"delta", delta}, {"a_max", a_max}, {"b_max", b_max}});
  if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  if (report.status == bslab::SweepStatus::inconclusive)
    return kExitInconclusive;
  return report.far_failures.empty() ? kExitPass : kExitViolation;
}

int cmd_boundary_verify(const GroupOpts& group, unsigned seed, int pairs,
                        const std::string& out_path) {
  using namespace bslab;
  const GroupParams P = group.params();
  json report;
  report["config"] = run_config("boundary-verify", group,
                                {{"seed", seed}, {"pairs", pairs}});
  bool ok = true;

  // Slope limits of the curve images for a few (p, q).
  json slopes = json::array();
  const std::vector<std::pair<long, long>> pq = {{0, 1}, {1, 1}, {1, 2}, {3, 2}};
  const std::vector<double> s_schedule = {0.5, 1.0, 2.0, 4.0};
  const std::vector<double> t_schedule = {2.0, 4.0, 8.0, 16.0};
  for (const auto& [p, q] : pq) {
    for (CurveKind curve : {CurveKind::s_bar, CurveKind::t_bar}) {
      if (curve == CurveKind::t_bar && P.m() < 0) continue;
      const SlopeReport r = asymptotic_slope(
          curve, p, q, P,
          curve == CurveKind::s_bar ? s_schedule : t_schedule);
      json entry = to_json(r);
      entry["curve"] = curve == CurveKind::s_bar ? "s" : "t";
      entry["p"] = p;
      entry["q"] = q;
      slopes.push_back(entry);
      if (!(r.final_residual < 1e-3)) ok = false;
    }
  }
  report["slopes"] = slopes;

  // Composition law on random pairs and boundary points.
  std::mt19937 rng(seed);
  const std::vector<NormalForm> elements = ball(4, P);
  std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
  std::uniform_real_distribution<double> theta_dist(0.1, 3.0);
  const std::vector<TreeEnd> ends = {TreeEnd::tau_plus(P),
                                     TreeEnd::tau_minus(P)};
  double worst_dtheta = 0.0;
  std::uint64_t end_mismatches = 0;
  for (int i = 0; i < pairs; ++i) {
    const NormalForm& g = elements[pick(rng)];
    const NormalForm& h = elements[pick(rng)];
    const BoundaryPoint z =
        BoundaryPoint::of(theta_dist(rng), ends[i % ends.size()]);
    const BoundaryPoint lhs = act_boundary(multiply(g, h), z);
    const BoundaryPoint rhs = act_boundary(g, act_boundary(h, z));
    worst_dtheta = std::max(worst_dtheta, std::abs(lhs.theta - rhs.theta));
    if (lhs.is_pole() != rhs.is_pole()) {
      ++end_mismatches;
    } else if (!lhs.is_pole() && !ends_agree(*lhs.end, *rhs.end, 96)) {
      ++end_mismatches;
    }
  }
  report["composition"] = json{{"pairs", pairs},
                               {"worst_dtheta", worst_dtheta},
                               {"end_mismatches", end_mismatches}};
  if (worst_dtheta >= 1e-12 || end_mismatches != 0) ok = false;

  // Interior consistency: points far out on rays map near the boundary
  // parameter of the end's image.
  json interior = json::array();
  const std::vector<double> s_radii = {1.0, 1.5, 2.0, 2.5};
  const std::vector<double> t_radii = {2.0, 4.0, 8.0, 16.0};
  for (const char* w : {"s", "t"}) {
    const NormalForm g = reduce(parse_word(w), P);
    const auto rows = interior_consistency(
        g, 0.9, TreeEnd::tau_plus(P),
        std::string(w) == "s" ? s_radii : t_radii);
    json rows_json = json::array();
    bool shrinking = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows_json.push_back(json{{"radius", rows[i].radius},
                               {"mapped_theta", rows[i].mapped_theta},
                               {"residual", rows[i].residual}});
      if (i > 0 && !(rows[i].residual < rows[i - 1].residual))
        shrinking = false;
    }
    interior.push_back(json{{"generator", w},
                            {"rows", rows_json},
                            {"largest_radius", rows.back().radius},
                            {"residuals_decreasing", shrinking}});
    if (!shrinking) ok = false;
  }
  report["interior_consistency"] = interior;

  // Pole parity rule for m < 0.
  if (P.m() < 0) {
    bool parity_ok = true;
    for (const NormalForm& g : ball(4, P)) {
      const BoundaryPoint img = act_boundary(g, BoundaryPoint::pole_R(P));
      const bool swapped = img.is_pole_L();
      if (swapped != (height(g) % 2 != 0)) parity_ok = false;
    }
    report["pole_parity"] = parity_ok;
    if (!parity_ok) ok = false;
  }

  report["pass"] = ok;
  if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return ok ? kExitPass : kExitViolation;
}

int cmd_gbs_classify(const std::string& file, const std::string& loop_text) {
  using namespace bslab;
  GraphOfZ g;
  if (!loop_text.empty()) {
    const auto comma = loop_text.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--loop", "expected m,n");
    g = single_loop(std::stol(loop_text.substr(0, comma)),
                    std::stol(loop_text.substr(comma + 1)));
  } else if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open graph file: " + file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    g = parse_graph(buffer.str());
  } else {
    std::stringstream buffer;
    buffer << std::cin.rdbuf();
    g = parse_graph(buffer.str());
  }
  const WhyteClass w = classify(g);
  json j = to_json(w);
  json moduli = json::array();
  for (const Rational& q : modular_image(g)) moduli.push_back(to_string(q));
  j["moduli"] = moduli;
  json valences = json::object();
  for (const auto& [v, degree] : bass_serre_valences(g)) valences[v] = degree;
  j["valences"] = valences;
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baumslag-Solitar boundary laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GroupOpts group;

  auto* nf = app.add_subcommand("normal-form", "reduce a word to canonical form");
  std::string word_text;
  bool nf_json = false;
  add_group_opts(nf, group);
  nf->add_option("word", word_text, "word over s,S,t,T with ^k powers");
  nf->add_flag("--json", nf_json, "emit the JSON form");

  auto* render = app.add_subcommand("render-tiling", "write a tiling SVG");
  std::string kind = "standard", grid, render_out = "tiling.svg";
  bool labels = false;
  add_group_opts(render, group);
  render->add_option("--kind", kind, "standard|compressed")
      ->check(CLI::IsMember({"standard", "compressed"}));
  render->add_option("--grid", grid, "a0:a1,b0:b1");
  render->add_option("--out", render_out, "output path")->required();
  render->add_flag("--labels", labels, "annotate tiles with (a,b)");

  auto* sweep = app.add_subcommand("angle-sweep", "tile angle decay sweep");
  double eps = 0.1;
  long long a_max = 1'000'000;
  long b_max = 60;
  std::string csv_out = "sweep.csv", summary_out;
  add_group_opts(sweep, group);
  sweep->add_option("--eps", eps, "angle threshold")->check(CLI::PositiveNumber);
  sweep->add_option("--a-max", a_max, "grid bound on a")
      ->check(CLI::Range(1LL, 100'000'000LL));
  sweep->add_option("--b-max", b_max, "grid bound on b")
      ->check(CLI::Range(1L, 100'000L));
  sweep->add_option("--out", csv_out, "CSV output path")->required();
  sweep->add_option("--summary", summary_out, "JSON summary path");

  auto* nullity = app.add_subcommand("nullity", "translate classification sweep");
  long radius = 8;
  double delta = 0.05;
  long long n_a_max = 1'000'000;
  long n_b_max = 60;
  std::string nullity_out;
  add_group_opts(nullity, group);
  nullity->add_option("--L", radius, "ball radius")->check(CLI::Range(0L, 12L));
  nullity->add_option("--delta", delta, "cover margin")
      ->check(CLI::PositiveNumber);
  nullity->add_option("--a-max", n_a_max, "find-N grid bound on a");
  nullity->add_option("--b-max", n_b_max, "find-N grid bound on b");
  nullity->add_option("--out", nullity_out, "JSON report path");

  auto* boundary = app.add_subcommand("boundary-verify",
                                      "boundary action verification");
  unsigned seed = 1;
  int pairs = 200;
  std::string boundary_out;
  add_group_opts(boundary, group);
  boundary->add_option("--seed", seed, "PRNG seed");
  boundary->add_option("--pairs", pairs, "random composition pairs")
      ->check(CLI::Range(1, 100000));
  boundary->add_option("--out", boundary_out, "JSON report path");

  auto* gbs = app.add_subcommand("gbs-classify",
                                 "graph-of-Z quasi-isometry class");
  std::string gbs_file, loop_text;
  gbs->add_option("--file", gbs_file, "graph file (vertex/edge lines)");
  gbs->add_option("--loop", loop_text, "single loop m,n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (nf->parsed()) return cmd_normal_form(group, word_text, nf_json);
    if (render->parsed())
      return cmd_render_tiling(group, kind, grid, render_out, labels);
    if (sweep->parsed())
      return cmd_angle_sweep(group, eps, a_max, b_max, csv_out, summary_out);
    if (nullity->parsed())
      return cmd_nullity(group, radius, delta, n_a_max, n_b_max, nullity_out);
    if (boundary->parsed())
      return cmd_boundary_verify(group, seed, pairs, boundary_out);
    if (gbs->parsed()) return cmd_gbs_classify(gbs_file, loop_text);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bslab::parse_error& e) {
    std::cerr << "parse error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const bslab::budget_error& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
