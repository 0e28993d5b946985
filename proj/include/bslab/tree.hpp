#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bslab/group.hpp"

namespace bslab {

// One oriented edge traversal in T(|m|,n): dir=+1 follows an outgoing edge
// (index < n), dir=-1 an incoming edge (index < |m|).  The reverse of any
// step, seen from the far endpoint, is (-dir, 0).
struct EndStep {
  int dir;
  int index;
};

bool operator==(const EndStep& a, const EndStep& b);
bool operator!=(const EndStep& a, const EndStep& b);
bool operator<(const EndStep& a, const EndStep& b);

// Vertex of the Bass-Serre tree as the canonical address of a coset g<s>.
// The address doubles as the geodesic from the base vertex: step i uses
// direction eps_i and index a_{i-1}.
class TreeVertex {
 public:
  static TreeVertex base(const GroupParams& params);
  static TreeVertex coset(const NormalForm& g);
  static TreeVertex from_steps(const GroupParams& params,
                               const std::vector<EndStep>& steps);

  const NormalForm& address() const { return address_; }
  const GroupParams& params() const { return address_.params(); }
  std::size_t depth() const { return address_.syllable_count(); }
  std::vector<EndStep> steps() const;
  EndStep last_step() const;  // requires depth() > 0
  TreeVertex neighbor(const EndStep& step) const;

  bool operator==(const TreeVertex& other) const {
    return address_ == other.address_;
  }
  bool operator!=(const TreeVertex& other) const { return !(*this == other); }
  bool operator<(const TreeVertex& other) const {
    return address_ < other.address_;
  }

 private:
  explicit TreeVertex(NormalForm address) : address_(std::move(address)) {}
  NormalForm address_;
};

// All n + |m| neighbors, outgoing first, indices ascending.
std::vector<std::pair<EndStep, TreeVertex>> neighbors(const TreeVertex& v);

TreeVertex act_vertex(const NormalForm& g, const TreeVertex& v);
long tree_distance(const TreeVertex& u, const TreeVertex& v);
long vertex_height(const TreeVertex& v);

// An end of the tree: an infinite backtrack-free step sequence from the base
// vertex, realized lazily through prefix queries.  Eventually periodic ends
// have an exact (prefix, tail) description; translated ends fall back to
// on-demand evaluation.
class TreeEnd {
 public:
  static TreeEnd periodic(const GroupParams& params,
                          std::vector<EndStep> prefix,
                          std::vector<EndStep> tail);
  static TreeEnd tau_plus(const GroupParams& params);   // all (+1, 0)
  static TreeEnd tau_minus(const GroupParams& params);  // all (-1, 0)

  const GroupParams& params() const;
  std::vector<EndStep> prefix_steps(std::size_t count) const;
  TreeVertex vertex_at(std::size_t depth) const;
  bool is_periodic() const;
  std::optional<std::pair<std::vector<EndStep>, std::vector<EndStep>>>
  as_periodic() const;

  struct Rep;

 private:
  explicit TreeEnd(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
  friend TreeEnd act_end(const NormalForm& g, const TreeEnd& e);
};

// Image of an end under the tree action.  Periodic inputs are resolved back
// to an exact periodic description when the step automaton revisits a state
// within the search budget; otherwise the result stays lazy.
TreeEnd act_end(const NormalForm& g, const TreeEnd& e);

// Step-by-step equality of the first `depth` entries.  (Exact equality of
// lazy ends is undecidable in general; periodic ends compare structurally.)
bool ends_agree(const TreeEnd& a, const TreeEnd& b, std::size_t depth);

// Structural equality when both ends are periodic.
bool periodic_ends_equal(const TreeEnd& a, const TreeEnd& b);

// A point of the tree: a vertex, or a location on an edge given by the
// step toward the deeper endpoint and an offset in (0,1) from the shallower
// one.  Construction canonicalizes, so equal points compare equal.
struct TreePoint {
  TreeVertex vertex;
  std::optional<std::pair<EndStep, double>> edge;

  static TreePoint at_vertex(TreeVertex v);
  static TreePoint on_edge(const TreeVertex& v, const EndStep& step,
                           double offset);

  // Distance from the base vertex (the address is the geodesic).
  double height_above_base() const;
  // Tree path from the base vertex, including the partial edge step.
  std::vector<EndStep> path_steps() const;
  const GroupParams& params() const { return vertex.params(); }
};

double tree_point_distance(const TreePoint& p, const TreePoint& q);
TreePoint act_point(const NormalForm& g, const TreePoint& p);

}  // namespace bslab
