#include <doctest.h>

#include <random>
#include <sstream>

#include "bslab/gbs.hpp"

using namespace bslab;

namespace {

GraphOfZ random_connected_graph(std::mt19937& rng, int max_extra_edges) {
  std::uniform_int_distribution<int> nverts(1, 4);
  std::uniform_int_distribution<int> label(1, 9);
  std::uniform_int_distribution<int> coin(0, 1);
  GraphOfZ g;
  const int V = nverts(rng);
  for (int i = 0; i < V; ++i) g.vertices.push_back("v" + std::to_string(i));
  auto random_label = [&] { return coin(rng) ? label(rng) : -label(rng); };
  // Random spanning tree, then extra edges up to a total of six.
  for (int i = 1; i < V; ++i) {
    std::uniform_int_distribution<int> prev(0, i - 1);
    g.edges.push_back(GraphEdge{g.vertices[static_cast<std::size_t>(prev(rng))],
                                g.vertices[static_cast<std::size_t>(i)],
                                random_label(), random_label()});
  }
  std::uniform_int_distribution<int> extra(1, max_extra_edges);
  std::uniform_int_distribution<int> any(0, V - 1);
  const int E = extra(rng);
  for (int i = 0; i < E && g.edges.size() < 6; ++i) {
    g.edges.push_back(GraphEdge{g.vertices[static_cast<std::size_t>(any(rng))],
                                g.vertices[static_cast<std::size_t>(any(rng))],
                                random_label(), random_label()});
  }
  return g;
}

}  // namespace

TEST_CASE("graph parsing") {
  const GraphOfZ loop = parse_graph("vertex v\nedge v v 2 3\n");
  CHECK(loop.vertices.size() == 1);
  CHECK(loop.edges.size() == 1);
  CHECK(loop.edges[0].mu == 2);

  const GraphOfZ amalgam =
      parse_graph("# trefoil\nvertex a\nvertex b\nedge a b 2 3\n");
  CHECK(amalgam.vertices.size() == 2);

  SUBCASE("zero label") {
    try {
      parse_graph("vertex v\nedge v v 0 3\n");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("dangling edge") {
    try {
      parse_graph("vertex v\nedge v w 2 3\n");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("disconnected") {
    CHECK_THROWS_AS(parse_graph("vertex a\nvertex b\n"), parse_error);
  }
  SUBCASE("junk directive") {
    CHECK_THROWS_AS(parse_graph("loop 2 3\n"), parse_error);
  }
}

TEST_CASE("presentations") {
  SUBCASE("single loop is the two-generator one-relator presentation") {
    const Presentation p = presentation(single_loop(2, 3));
    CHECK(p.generators.size() == 2);
    REQUIRE(p.relators.size() == 1);
    CHECK_FALSE(p.relators[0].stable.empty());
    CHECK(p.relators[0].mu == 2);
    CHECK(p.relators[0].mv == 3);
    CHECK(p.tree_edge_count == 0);
  }
  SUBCASE("tree edge gives an amalgam") {
    const Presentation p =
        presentation(parse_graph("vertex x\nvertex y\nedge x y 2 3\n"));
    CHECK(p.generators.size() == 2);
    REQUIRE(p.relators.size() == 1);
    CHECK(p.relators[0].stable.empty());
    CHECK(to_string(p) == "< x, y | x^2 = y^3 >");
  }
  SUBCASE("two loops at a vertex") {
    const Presentation p = presentation(
        parse_graph("vertex v\nedge v v 1 2\nedge v v 1 3\n"));
    CHECK(p.generators.size() == 3);
    CHECK(p.relators.size() == 2);
  }
  SUBCASE("generator count bookkeeping") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 25; ++i) {
      const GraphOfZ g = random_connected_graph(rng, 3);
      const Presentation p = presentation(g);
      CHECK(p.relators.size() == g.edges.size());
      CHECK(p.generators.size() ==
            g.vertices.size() + g.edges.size() - p.tree_edge_count);
    }
  }
}

TEST_CASE("modular image") {
  CHECK(modular_image(single_loop(2, 3)) ==
        std::vector<Rational>{make_rational(3, 2)});
  CHECK(modular_image(single_loop(2, 2)) == std::vector<Rational>{Rational(1)});
  CHECK(modular_image(parse_graph("vertex x\nvertex y\nedge x y 2 3\n"))
            .empty());
  CHECK(modular_image(single_loop(-2, 3)) ==
        std::vector<Rational>{make_rational(-3, 2)});
}

TEST_CASE("multiplicative lattice membership") {
  const MultiplicativeLattice lat({make_rational(3, 2), Rational(-1)});
  CHECK(lat.contains(make_rational(9, 4)));
  CHECK(lat.contains(make_rational(-3, 2)));
  CHECK(lat.contains(make_rational(2, 3)));
  CHECK(lat.contains(Rational(1)));
  CHECK_FALSE(lat.contains(Rational(5)));
  CHECK_FALSE(lat.contains(make_rational(1, 7)));

  const MultiplicativeLattice no_sign({make_rational(3, 2)});
  CHECK_FALSE(no_sign.contains(make_rational(-3, 2)));
  const MultiplicativeLattice neg({make_rational(-3, 2)});
  CHECK(neg.contains(make_rational(9, 4)));       // even power
  CHECK_FALSE(neg.contains(make_rational(3, 2)));  // odd power is negative
}

TEST_CASE("modular image is invariant under the spanning tree") {
  std::mt19937 rng(31337);
  int done = 0;
  while (done < 20) {
    const GraphOfZ g = random_connected_graph(rng, 4);
    GraphOfZ permuted = g;
    std::shuffle(permuted.edges.begin(), permuted.edges.end(), rng);
    std::reverse(permuted.vertices.begin(), permuted.vertices.end());
    const auto a = modular_image(g);
    const auto b = modular_image(permuted);
    CHECK(a.size() == b.size());
    CHECK(same_multiplicative_subgroup(a, b));
    ++done;
  }
}

TEST_CASE("classification cases") {
  CHECK(classify(single_loop(2, 2)).case_id == 1);
  CHECK_FALSE(classify(single_loop(2, 2)).caveat);
  CHECK(classify(single_loop(-2, 2)).case_id == 1);
  CHECK(classify(single_loop(1, 1)).case_id == 1);

  const WhyteClass c2 = classify(single_loop(1, 5));
  CHECK(c2.case_id == 2);
  CHECK_FALSE(c2.caveat);
  CHECK(classify(single_loop(-1, 3)).case_id == 2);

  const WhyteClass c3 = classify(single_loop(2, 3));
  CHECK(c3.case_id == 3);
  CHECK_FALSE(c3.caveat);

  const WhyteClass tree = classify(parse_graph("vertex x\nvertex y\nedge x y 2 3\n"));
  CHECK(tree.case_id == 1);
  CHECK_FALSE(tree.caveat);

  // A hanging vertex with a unit inclusion collapses away harmlessly.
  const WhyteClass hung = classify(parse_graph(
      "vertex a\nvertex b\nedge a b 4 1\nedge a a 1 5\n"));
  CHECK(hung.case_id == 2);
  // With the unit on the loop vertex's side the collapse rescales the loop
  // to (4, 20); still case 3 by the trichotomy.
  const WhyteClass rescaled = classify(parse_graph(
      "vertex a\nvertex b\nedge a b 1 4\nedge a a 1 5\n"));
  CHECK(rescaled.case_id == 3);

  // Two independent loops cannot be reduced to one; caveat stays on.
  const WhyteClass two_loops =
      classify(parse_graph("vertex v\nedge v v 2 3\nedge v v 2 5\n"));
  CHECK(two_loops.case_id == 3);
  CHECK(two_loops.caveat);
}

TEST_CASE("exactly one class per graph") {
  std::mt19937 rng(777);
  for (int i = 0; i < 40; ++i) {
    const GraphOfZ g = random_connected_graph(rng, 4);
    const WhyteClass w = classify(g);
    CHECK(w.case_id >= 1);
    CHECK(w.case_id <= 3);
    if (is_unimodular(modular_image(g))) CHECK(w.case_id == 1);
  }
}

TEST_CASE("bass-serre valences") {
  const auto loop = bass_serre_valences(single_loop(2, 3));
  CHECK(loop.at("v") == 5);
  const auto loop_neg = bass_serre_valences(single_loop(-2, 3));
  CHECK(loop_neg.at("v") == 5);
  const auto tree =
      bass_serre_valences(parse_graph("vertex x\nvertex y\nedge x y 2 3\n"));
  CHECK(tree.at("x") == 2);
  CHECK(tree.at("y") == 3);
  const auto rose = bass_serre_valences(
      parse_graph("vertex v\nedge v v 1 2\nedge v v 1 3\n"));
  CHECK(rose.at("v") == 7);
}

TEST_CASE("graph reduction") {
  // (a)-[1,4]-(b) with a loop (1,5) at a: absorbing a into b rescales the
  // loop labels by the index-4 inclusion while preserving the modulus.
  const GraphOfZ g = parse_graph(
      "vertex a\nvertex b\nedge a b 1 4\nedge a a 1 5\n");
  const GraphOfZ r = reduce_graph(g);
  CHECK(r.vertices.size() == 1);
  REQUIRE(r.edges.size() == 1);
  CHECK(std::labs(r.edges[0].mu) == 4);
  CHECK(std::labs(r.edges[0].mv) == 20);
  CHECK(make_rational(r.edges[0].mv, r.edges[0].mu) == Rational(5));
}
