#pragma once

#include <map>
#include <string>
#include <vector>

#include "bslab/numeric.hpp"

namespace bslab {

// Finite connected graph of Z's: each edge embeds its Z edge group with
// index |mu| at the u end and |mv| at the v end.
struct GraphEdge {
  std::string u;
  std::string v;
  long mu;
  long mv;
};

struct GraphOfZ {
  std::vector<std::string> vertices;
  std::vector<GraphEdge> edges;
};

// Line format: "vertex <id>" and "edge <u> <v> <mu> <mv>"; '#' comments.
// Rejects zero labels, dangling edge endpoints, and disconnected graphs,
// reporting 1-based line numbers.
GraphOfZ parse_graph(const std::string& text);
void validate_graph(const GraphOfZ& g);  // throws parse_error (line 0)

GraphOfZ single_loop(long mu, long mv);  // the BS(mu, mv) graph

// One relator per edge: tree edges give u^mu = v^mv, the other edges carry a
// stable letter e with e u^mu e^-1 = v^mv.
struct PresentationRelator {
  std::string stable;  // empty for spanning-tree edges
  std::string u;
  long mu;
  std::string v;
  long mv;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<PresentationRelator> relators;
  std::size_t tree_edge_count;
};

Presentation presentation(const GraphOfZ& g);
std::string to_string(const Presentation& p);

// Generators of the image of the modular homomorphism: one loop modulus per
// non-tree edge, signs kept exactly.
std::vector<Rational> modular_image(const GraphOfZ& g);

bool is_unimodular(const std::vector<Rational>& moduli);

// Subgroup of Q* generated by a finite set of nonzero rationals; membership
// is exact (prime exponent lattice plus sign parity).
class MultiplicativeLattice {
 public:
  explicit MultiplicativeLattice(const std::vector<Rational>& generators);
  bool contains(const Rational& value) const;

 private:
  std::vector<long> primes_;
  std::vector<std::vector<long>> columns_;  // HNF columns, one per generator
  std::vector<int> sign_bits_;
  bool has_minus_one_ = false;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;  // (row, col)
};

bool same_multiplicative_subgroup(const std::vector<Rational>& a,
                                  const std::vector<Rational>& b);

struct WhyteClass {
  int case_id;  // 1, 2 or 3
  std::string detail;
  std::string certificate;
  bool caveat;  // case 2 not excluded by a full isomorphism check
};

// Quasi-isometry trichotomy: unimodular graphs are case 1; graphs that
// collapse to a single loop with one unit label are case 2; single-loop
// remainders are case 3 outright, anything larger is case 3 with a caveat.
WhyteClass classify(const GraphOfZ& g);

// Collapses non-loop edges carrying a unit label, transplanting the other
// edge ends with rescaled labels.
GraphOfZ reduce_graph(const GraphOfZ& g);

// Bass-Serre tree degree per vertex: the sum of |label| over incident edge
// ends (loops contribute both ends).
std::map<std::string, long> bass_serre_valences(const GraphOfZ& g);

}  // namespace bslab
