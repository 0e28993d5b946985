#include "bslab/gbs.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace bslab {

namespace {

std::size_t vertex_index(const GraphOfZ& g, const std::string& id) {
  auto it = std::find(g.vertices.begin(), g.vertices.end(), id);
  if (it == g.vertices.end()) throw parse_error("unknown vertex '" + id + "'");
  return static_cast<std::size_t>(it - g.vertices.begin());
}

// Breadth-first spanning tree by edge order; returns parent edge per vertex
// (-1 for the root) and the set of tree edge indices.
struct SpanningTree {
  std::vector<long> parent_edge;  // index into edges, -1 at root
  std::set<std::size_t> tree_edges;
};

SpanningTree spanning_tree(const GraphOfZ& g) {
  SpanningTree st;
  st.parent_edge.assign(g.vertices.size(), -1);
  std::vector<bool> seen(g.vertices.size(), false);
  if (g.vertices.empty()) return st;
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const std::size_t iu = vertex_index(g, g.edges[e].u);
      const std::size_t iv = vertex_index(g, g.edges[e].v);
      std::size_t other;
      if (iu == at && !seen[iv])
        other = iv;
      else if (iv == at && !seen[iu])
        other = iu;
      else
        continue;
      seen[other] = true;
      st.parent_edge[other] = static_cast<long>(e);
      st.tree_edges.insert(e);
      queue.push(other);
    }
  }
  for (bool s : seen)
    if (!s) throw parse_error("graph is not connected");
  return st;
}

// Modulus ratio picked up walking edge e from its u side to its v side.
Rational edge_ratio(const GraphEdge& e, bool u_to_v) {
  return u_to_v ? make_rational(e.mv, e.mu) : make_rational(e.mu, e.mv);
}

// Ratio along the tree path from the root to vertex i.
Rational path_ratio(const GraphOfZ& g, const SpanningTree& st, std::size_t i) {
  Rational acc(1);
  std::size_t at = i;
  while (st.parent_edge[at] >= 0) {
    const GraphEdge& e = g.edges[static_cast<std::size_t>(st.parent_edge[at])];
    const std::size_t iu = vertex_index(g, e.u);
    const std::size_t iv = vertex_index(g, e.v);
    // The parent edge was traversed toward `at`.
    if (iv == at) {
      acc = acc * edge_ratio(e, true);
      at = iu;
    } else {
      acc = acc * edge_ratio(e, false);
      at = iv;
    }
    acc.canonicalize();
  }
  return acc;
}

}  // namespace

GraphOfZ parse_graph(const std::string& text) {
  GraphOfZ g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "vertex") {
      std::string id;
      if (!(ls >> id))
        throw parse_error("vertex line needs an identifier", line_no);
      if (std::find(g.vertices.begin(), g.vertices.end(), id) !=
          g.vertices.end())
        throw parse_error("duplicate vertex '" + id + "'", line_no);
      g.vertices.push_back(id);
    } else if (kind == "edge") {
      GraphEdge e;
      if (!(ls >> e.u >> e.v >> e.mu >> e.mv))
        throw parse_error("edge line needs: edge u v mu mv", line_no);
      if (e.mu == 0 || e.mv == 0)
        throw parse_error("edge labels must be nonzero", line_no);
      for (const std::string& id : {e.u, e.v})
        if (std::find(g.vertices.begin(), g.vertices.end(), id) ==
            g.vertices.end())
          throw parse_error("edge references undeclared vertex '" + id + "'",
                            line_no);
      g.edges.push_back(e);
    } else {
      throw parse_error("unknown directive '" + kind + "'", line_no);
    }
    std::string extra;
    if (ls >> extra) throw parse_error("trailing tokens on line", line_no);
  }
  validate_graph(g);
  return g;
}

void validate_graph(const GraphOfZ& g) {
  if (g.vertices.empty()) throw parse_error("graph has no vertices");
  for (const GraphEdge& e : g.edges) {
    if (e.mu == 0 || e.mv == 0) throw parse_error("edge labels must be nonzero");
    vertex_index(g, e.u);
    vertex_index(g, e.v);
  }
  spanning_tree(g);  // throws when disconnected
}

GraphOfZ single_loop(long mu, long mv) {
  GraphOfZ g;
  g.vertices.push_back("v");
  g.edges.push_back(GraphEdge{"v", "v", mu, mv});
  return g;
}

Presentation presentation(const GraphOfZ& g) {
  validate_graph(g);
  const SpanningTree st = spanning_tree(g);
  Presentation p;
  p.generators = g.vertices;
  p.tree_edge_count = st.tree_edges.size();
  int stable_counter = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const GraphEdge& edge = g.edges[e];
    PresentationRelator rel;
    rel.u = edge.u;
    rel.mu = edge.mu;
    rel.v = edge.v;
    rel.mv = edge.mv;
    if (st.tree_edges.count(e) == 0) {
      rel.stable = "e" + std::to_string(++stable_counter);
      p.generators.push_back(rel.stable);
    }
    p.relators.push_back(rel);
  }
  return p;
}

std::string to_string(const Presentation& p) {
  std::string out = "< ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i) out += ", ";
    out += p.generators[i];
  }
  out += " | ";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i) out += ", ";
    const PresentationRelator& r = p.relators[i];
    auto power = [](const std::string& base, long e) {
      return e == 1 ? base : base + "^" + std::to_string(e);
    };
    if (r.stable.empty())
      out += power(r.u, r.mu) + " = " + power(r.v, r.mv);
    else
      out += r.stable + " " + power(r.u, r.mu) + " " + r.stable + "^-1 = " +
             power(r.v, r.mv);
  }
  out += " >";
  return out;
}

std::vector<Rational> modular_image(const GraphOfZ& g) {
  validate_graph(g);
  const SpanningTree st = spanning_tree(g);
  std::vector<Rational> gens;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (st.tree_edges.count(e)) continue;
    const GraphEdge& edge = g.edges[e];
    const std::size_t iu = vertex_index(g, edge.u);
    const std::size_t iv = vertex_index(g, edge.v);
    // Loop based at the root: path to u, the edge, the reverse path from v.
    Rational modulus = path_ratio(g, st, iu) * edge_ratio(edge, true);
    modulus.canonicalize();
    modulus = modulus / path_ratio(g, st, iv);
    modulus.canonicalize();
    gens.push_back(modulus);
  }
  return gens;
}

bool is_unimodular(const std::vector<Rational>& moduli) {
  for (const Rational& q : moduli)
    if (q != 1 && q != -1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exact multiplicative subgroup membership

namespace {

std::vector<std::pair<long, long>> factorize(long value) {
  std::vector<std::pair<long, long>> factors;
  long v = std::labs(value);
  for (long p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
    long e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (v > 1) factors.emplace_back(v, 1);
  return factors;
}

long rational_to_long(const Int& v) { return to_long(v); }

}  // namespace

MultiplicativeLattice::MultiplicativeLattice(
    const std::vector<Rational>& generators) {
  std::set<long> prime_set;
  struct RawGen {
    std::vector<std::pair<long, long>> num, den;
    int sign;
  };
  std::vector<RawGen> raw;
  for (const Rational& q : generators) {
    if (q == 0) throw std::invalid_argument("zero generator");
    RawGen rg;
    rg.num = factorize(rational_to_long(q.get_num()));
    rg.den = factorize(rational_to_long(q.get_den()));
    rg.sign = sign(q) < 0 ? 1 : 0;
    for (auto& [p, e] : rg.num) prime_set.insert(p);
    for (auto& [p, e] : rg.den) prime_set.insert(p);
    raw.push_back(std::move(rg));
  }
  primes_.assign(prime_set.begin(), prime_set.end());
  auto prime_row = [&](long p) {
    return static_cast<std::size_t>(
        std::lower_bound(primes_.begin(), primes_.end(), p) - primes_.begin());
  };
  for (const RawGen& rg : raw) {
    std::vector<long> col(primes_.size(), 0);
    for (auto& [p, e] : rg.num) col[prime_row(p)] += e;
    for (auto& [p, e] : rg.den) col[prime_row(p)] -= e;
    columns_.push_back(std::move(col));
    sign_bits_.push_back(rg.sign);
  }
  // Column Hermite reduction: one pivot column per reachable row.
  std::size_t cc = 0;
  for (std::size_t row = 0; row < primes_.size() && cc < columns_.size();
       ++row) {
    for (;;) {
      std::size_t nonzero = columns_.size();
      int count = 0;
      for (std::size_t c = cc; c < columns_.size(); ++c) {
        if (columns_[c][row] != 0) {
          ++count;
          if (nonzero == columns_.size() ||
              std::labs(columns_[c][row]) < std::labs(columns_[nonzero][row]))
            nonzero = c;
        }
      }
      if (count == 0) break;
      if (count == 1) {
        std::swap(columns_[cc], columns_[nonzero]);
        std::swap(sign_bits_[cc], sign_bits_[nonzero]);
        pivots_.emplace_back(row, cc);
        ++cc;
        break;
      }
      // Reduce the other columns by the smallest entry.
      for (std::size_t c = cc; c < columns_.size(); ++c) {
        if (c == nonzero || columns_[c][row] == 0) continue;
        const long t = columns_[c][row] / columns_[nonzero][row];
        if (t == 0) continue;
        for (std::size_t r = 0; r < primes_.size(); ++r)
          columns_[c][r] -= t * columns_[nonzero][r];
        if (t % 2 != 0) sign_bits_[c] ^= sign_bits_[nonzero];
      }
    }
  }
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const bool zero = std::all_of(columns_[c].begin(), columns_[c].end(),
                                  [](long v) { return v == 0; });
    if (zero && sign_bits_[c]) has_minus_one_ = true;
  }
}

bool MultiplicativeLattice::contains(const Rational& value) const {
  if (value == 0) return false;
  std::vector<long> v(primes_.size(), 0);
  auto apply = [&](long integer, int dir) {
    for (auto& [p, e] : factorize(integer)) {
      auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
      if (it == primes_.end() || *it != p) return false;
      v[static_cast<std::size_t>(it - primes_.begin())] += dir * e;
    }
    return true;
  };
  if (!apply(rational_to_long(value.get_num()), +1)) return false;
  if (!apply(rational_to_long(value.get_den()), -1)) return false;
  int parity = sign(value) < 0 ? 1 : 0;
  for (const auto& [row, col] : pivots_) {
    const long pivot = columns_[col][row];
    if (v[row] % pivot != 0) return false;
    const long t = v[row] / pivot;
    for (std::size_t r = 0; r < primes_.size(); ++r)
      v[r] -= t * columns_[col][r];
    if (t % 2 != 0) parity ^= sign_bits_[col];
  }
  for (long rem : v)
    if (rem != 0) return false;
  return parity == 0 || has_minus_one_;
}

bool same_multiplicative_subgroup(const std::vector<Rational>& a,
                                  const std::vector<Rational>& b) {
  const MultiplicativeLattice la(a);
  const MultiplicativeLattice lb(b);
  for (const Rational& q : a)
    if (!lb.contains(q)) return false;
  for (const Rational& q : b)
    if (!la.contains(q)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Reduction and classification

GraphOfZ reduce_graph(const GraphOfZ& input) {
  GraphOfZ g = input;
  for (;;) {
    bool collapsed = false;
    for (std::size_t e = 0; e < g.edges.size() && !collapsed; ++e) {
      GraphEdge edge = g.edges[e];
      if (edge.u == edge.v) continue;
      std::string keep, gone;
      long scale = 0;
      int unit_sign = 0;
      if (std::labs(edge.mv) == 1) {
        keep = edge.u;
        gone = edge.v;
        scale = edge.mu;
        unit_sign = edge.mv < 0 ? -1 : 1;
      } else if (std::labs(edge.mu) == 1) {
        keep = edge.v;
        gone = edge.u;
        scale = edge.mv;
        unit_sign = edge.mu < 0 ? -1 : 1;
      } else {
        continue;
      }
      g.edges.erase(g.edges.begin() + static_cast<long>(e));
      for (GraphEdge& other : g.edges) {
        if (other.u == gone) {
          other.u = keep;
          other.mu *= scale * unit_sign;
        }
        if (other.v == gone) {
          other.v = keep;
          other.mv *= scale * unit_sign;
        }
      }
      g.vertices.erase(
          std::remove(g.vertices.begin(), g.vertices.end(), gone),
          g.vertices.end());
      collapsed = true;
    }
    if (!collapsed) return g;
  }
}

WhyteClass classify(const GraphOfZ& g) {
  validate_graph(g);
  const std::vector<Rational> moduli = modular_image(g);
  std::string moduli_text = "moduli {";
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (i) moduli_text += ", ";
    moduli_text += to_string(moduli[i]);
  }
  moduli_text += "}";
  if (is_unimodular(moduli)) {
    return WhyteClass{1, "contains a finite-index Z x F_k subgroup",
                      moduli_text, false};
  }
  const GraphOfZ reduced = reduce_graph(g);
  const bool single = reduced.vertices.size() == 1 && reduced.edges.size() == 1;
  if (single) {
    const GraphEdge& loop = reduced.edges.front();
    const long am = std::labs(loop.mu);
    const long an = std::labs(loop.mv);
    const std::string cert = "reduced loop (" + std::to_string(loop.mu) +
                             ", " + std::to_string(loop.mv) + ")";
    if ((am == 1) != (an == 1)) {
      const long n = am == 1 ? an : am;
      return WhyteClass{2,
                        "isomorphic to BS(1," + std::to_string(n) +
                            ") up to unit-edge collapses",
                        cert, false};
    }
    return WhyteClass{3, "quasi-isometric to BS(2,3)", cert, false};
  }
  return WhyteClass{3, "quasi-isometric to BS(2,3)",
                    moduli_text + ", reduced graph not a single loop", true};
}

std::map<std::string, long> bass_serre_valences(const GraphOfZ& g) {
  validate_graph(g);
  std::map<std::string, long> out;
  for (const std::string& v : g.vertices) out[v] = 0;
  for (const GraphEdge& e : g.edges) {
    out[e.u] += std::labs(e.mu);
    out[e.v] += std::labs(e.mv);
  }
  return out;
}

}  // namespace bslab
