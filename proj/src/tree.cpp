#include "bslab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace bslab {

bool operator==(const EndStep& a, const EndStep& b) {
  return a.dir == b.dir && a.index == b.index;
}

bool operator!=(const EndStep& a, const EndStep& b) { return !(a == b); }

bool operator<(const EndStep& a, const EndStep& b) {
  if (a.dir != b.dir) return a.dir < b.dir;
  return a.index < b.index;
}

namespace {

void validate_step(const GroupParams& P, const EndStep& step) {
  if (step.dir != 1 && step.dir != -1)
    throw std::invalid_argument("step direction must be +-1");
  const int bound = step.dir == 1 ? P.n() : P.abs_m();
  if (step.index < 0 || step.index >= bound)
    throw std::invalid_argument("step index out of range");
}

bool is_backtrack(const EndStep& prev, const EndStep& next) {
  return next.dir == -prev.dir && next.index == 0;
}

void validate_step_sequence(const GroupParams& P,
                            const std::vector<EndStep>& steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    validate_step(P, steps[i]);
    if (i > 0 && is_backtrack(steps[i - 1], steps[i]))
      throw std::invalid_argument("step sequence backtracks");
  }
}

std::vector<EndStep> address_steps(const NormalForm& address) {
  std::vector<EndStep> steps;
  const auto& syl = address.syllables();
  steps.reserve(syl.size());
  for (std::size_t i = 0; i < syl.size(); ++i) {
    const Int& index = i == 0 ? address.leading() : syl[i - 1].a;
    steps.push_back(EndStep{syl[i].eps, static_cast<int>(to_long(index))});
  }
  return steps;
}

}  // namespace

TreeVertex TreeVertex::base(const GroupParams& params) {
  return TreeVertex(NormalForm(params));
}

TreeVertex TreeVertex::coset(const NormalForm& g) {
  return TreeVertex(g.coset_representative());
}

TreeVertex TreeVertex::from_steps(const GroupParams& params,
                                  const std::vector<EndStep>& steps) {
  validate_step_sequence(params, steps);
  NormalFormBuilder b(params);
  for (const EndStep& step : steps) {
    b.push_s(step.index);
    b.push_t(step.dir);
  }
  return TreeVertex(b.build());
}

std::vector<EndStep> TreeVertex::steps() const {
  return address_steps(address_);
}

EndStep TreeVertex::last_step() const {
  if (depth() == 0) throw std::logic_error("base vertex has no last step");
  const auto& syl = address_.syllables();
  const Int& index =
      syl.size() == 1 ? address_.leading() : syl[syl.size() - 2].a;
  return EndStep{syl.back().eps, static_cast<int>(to_long(index))};
}

TreeVertex TreeVertex::neighbor(const EndStep& step) const {
  validate_step(params(), step);
  NormalFormBuilder b(address_);
  b.push_s(step.index);
  b.push_t(step.dir);
  return TreeVertex(b.build().coset_representative());
}

std::vector<std::pair<EndStep, TreeVertex>> neighbors(const TreeVertex& v) {
  const GroupParams& P = v.params();
  std::vector<std::pair<EndStep, TreeVertex>> out;
  out.reserve(static_cast<std::size_t>(P.n() + P.abs_m()));
  for (int j = 0; j < P.n(); ++j) {
    EndStep step{1, j};
    out.emplace_back(step, v.neighbor(step));
  }
  for (int j = 0; j < P.abs_m(); ++j) {
    EndStep step{-1, j};
    out.emplace_back(step, v.neighbor(step));
  }
  return out;
}

TreeVertex act_vertex(const NormalForm& g, const TreeVertex& v) {
  return TreeVertex::coset(multiply(g, v.address()));
}

long tree_distance(const TreeVertex& u, const TreeVertex& v) {
  if (u.params() != v.params())
    throw param_mismatch("vertices from different groups");
  const std::vector<EndStep> su = u.steps();
  const std::vector<EndStep> sv = v.steps();
  std::size_t common = 0;
  while (common < su.size() && common < sv.size() && su[common] == sv[common])
    ++common;
  return static_cast<long>(su.size() - common) +
         static_cast<long>(sv.size() - common);
}

long vertex_height(const TreeVertex& v) { return height(v.address()); }

// ---------------------------------------------------------------------------
// Ends

struct TreeEnd::Rep {
  virtual ~Rep() = default;
  virtual const GroupParams& params() const = 0;
  virtual void steps(std::vector<EndStep>& out, std::size_t count) const = 0;
  virtual const std::pair<std::vector<EndStep>, std::vector<EndStep>>*
  periodic() const {
    return nullptr;
  }
};

namespace {

class PeriodicRep final : public TreeEnd::Rep {
 public:
  PeriodicRep(const GroupParams& params, std::vector<EndStep> prefix,
              std::vector<EndStep> tail)
      : params_(params), data_{std::move(prefix), std::move(tail)} {}

  const GroupParams& params() const override { return params_; }

  void steps(std::vector<EndStep>& out, std::size_t count) const override {
    out.clear();
    out.reserve(count);
    const auto& [prefix, tail] = data_;
    for (std::size_t i = 0; i < count; ++i) {
      if (i < prefix.size())
        out.push_back(prefix[i]);
      else
        out.push_back(tail[(i - prefix.size()) % tail.size()]);
    }
  }

  const std::pair<std::vector<EndStep>, std::vector<EndStep>>* periodic()
      const override {
    return &data_;
  }

 private:
  GroupParams params_;
  std::pair<std::vector<EndStep>, std::vector<EndStep>> data_;
};

class TranslatedRep final : public TreeEnd::Rep {
 public:
  TranslatedRep(NormalForm g, TreeEnd base)
      : g_(std::move(g)), base_(std::move(base)) {}

  const GroupParams& params() const override { return g_.params(); }

  void steps(std::vector<EndStep>& out, std::size_t count) const override {
    // The image path straightens out once past the projection of the base
    // vertex onto the translated ray, at depth at most the displacement of g.
    const std::size_t pad = g_.coset_representative().syllable_count() + 4;
    const std::size_t total = count + pad;
    const std::vector<EndStep> base_steps = base_.prefix_steps(total + 2);
    NormalFormBuilder b(g_);
    for (std::size_t i = 0; i < total; ++i) {
      b.push_s(base_steps[i].index);
      b.push_t(base_steps[i].dir);
    }
    std::vector<EndStep> snapshot = address_steps(b.view().coset_representative());
    for (std::size_t i = total; i < total + 2; ++i) {
      b.push_s(base_steps[i].index);
      b.push_t(base_steps[i].dir);
    }
    std::vector<EndStep> checked = address_steps(b.view().coset_representative());
    if (snapshot.size() < count || checked.size() < count)
      throw std::logic_error("translated end failed to reach requested depth");
    for (std::size_t i = 0; i < count; ++i)
      if (snapshot[i] != checked[i])
        throw std::logic_error("translated end prefix failed to stabilize");
    snapshot.resize(count);
    out = std::move(snapshot);
  }

 private:
  NormalForm g_;
  TreeEnd base_;
};

// Shrink the tail to its primitive period, then roll matching steps from the
// prefix into the cycle.  The result is the unique minimal description.
void canonicalize_periodic(std::vector<EndStep>& prefix,
                           std::vector<EndStep>& tail) {
  for (std::size_t d = 1; d <= tail.size() / 2; ++d) {
    if (tail.size() % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < tail.size() && repeats; ++i)
      repeats = tail[i] == tail[i % d];
    if (repeats) {
      tail.resize(d);
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == tail.back()) {
    prefix.pop_back();
    std::rotate(tail.rbegin(), tail.rbegin() + 1, tail.rend());
  }
}

}  // namespace

TreeEnd TreeEnd::periodic(const GroupParams& params,
                          std::vector<EndStep> prefix,
                          std::vector<EndStep> tail) {
  if (tail.empty()) throw std::invalid_argument("periodic end needs a tail");
  validate_step_sequence(params, prefix);
  validate_step_sequence(params, tail);
  if (!prefix.empty() && is_backtrack(prefix.back(), tail.front()))
    throw std::invalid_argument("step sequence backtracks");
  if (is_backtrack(tail.back(), tail.front()))
    throw std::invalid_argument("periodic tail backtracks");
  canonicalize_periodic(prefix, tail);
  return TreeEnd(std::make_shared<PeriodicRep>(params, std::move(prefix),
                                               std::move(tail)));
}

TreeEnd TreeEnd::tau_plus(const GroupParams& params) {
  return periodic(params, {}, {EndStep{1, 0}});
}

TreeEnd TreeEnd::tau_minus(const GroupParams& params) {
  return periodic(params, {}, {EndStep{-1, 0}});
}

const GroupParams& TreeEnd::params() const { return rep_->params(); }

std::vector<EndStep> TreeEnd::prefix_steps(std::size_t count) const {
  std::vector<EndStep> out;
  rep_->steps(out, count);
  return out;
}

TreeVertex TreeEnd::vertex_at(std::size_t depth) const {
  return TreeVertex::from_steps(params(), prefix_steps(depth));
}

bool TreeEnd::is_periodic() const { return rep_->periodic() != nullptr; }

std::optional<std::pair<std::vector<EndStep>, std::vector<EndStep>>>
TreeEnd::as_periodic() const {
  const auto* data = rep_->periodic();
  if (!data) return std::nullopt;
  return *data;
}

namespace {

constexpr std::size_t kPeriodicSearchSteps = 512;

// Runs the step automaton of g over a periodic end and looks for a repeated
// (tail position, trailing exponent) state whose depth is never revisited.
// Such a repeat certifies that the emitted address is eventually periodic.
std::optional<TreeEnd> act_end_periodic(const NormalForm& g,
                                        const std::vector<EndStep>& prefix,
                                        const std::vector<EndStep>& tail) {
  NormalFormBuilder b(g);
  for (const EndStep& step : prefix) {
    b.push_s(step.index);
    b.push_t(step.dir);
  }
  using State = std::pair<std::size_t, Int>;
  std::map<State, std::size_t> first_seen;  // state -> history index
  std::vector<std::size_t> depths;          // depth after each tail step
  depths.reserve(kPeriodicSearchSteps + 1);
  depths.push_back(b.depth());
  first_seen[{0, b.last_exponent()}] = 0;
  for (std::size_t i = 0; i < kPeriodicSearchSteps; ++i) {
    const EndStep& step = tail[i % tail.size()];
    b.push_s(step.index);
    b.push_t(step.dir);
    depths.push_back(b.depth());
    State state{(i + 1) % tail.size(), b.last_exponent()};
    auto [it, inserted] = first_seen.emplace(state, depths.size() - 1);
    if (inserted) continue;
    const std::size_t j = it->second;
    const std::size_t now = depths.size() - 1;
    const std::size_t depth_j = depths[j];
    if (depths[now] <= depth_j) continue;
    bool clean = true;
    for (std::size_t k = j + 1; k <= now && clean; ++k)
      clean = depths[k] > depth_j;
    if (!clean) continue;
    std::vector<EndStep> steps = address_steps(b.view().coset_representative());
    std::vector<EndStep> new_prefix(steps.begin(),
                                    steps.begin() + static_cast<long>(depth_j));
    std::vector<EndStep> new_tail(steps.begin() + static_cast<long>(depth_j),
                                  steps.begin() + static_cast<long>(depths[now]));
    return TreeEnd::periodic(g.params(), std::move(new_prefix),
                             std::move(new_tail));
  }
  return std::nullopt;
}

}  // namespace

TreeEnd act_end(const NormalForm& g, const TreeEnd& e) {
  if (g.params() != e.params())
    throw param_mismatch("end and element from different groups");
  if (g.is_identity()) return e;
  if (auto data = e.as_periodic()) {
    if (auto resolved = act_end_periodic(g, data->first, data->second))
      return *resolved;
  }
  return TreeEnd(std::make_shared<TranslatedRep>(g, e));
}

bool ends_agree(const TreeEnd& a, const TreeEnd& b, std::size_t depth) {
  if (a.params() != b.params()) return false;
  return a.prefix_steps(depth) == b.prefix_steps(depth);
}

bool periodic_ends_equal(const TreeEnd& a, const TreeEnd& b) {
  auto da = a.as_periodic();
  auto db = b.as_periodic();
  if (!da || !db) throw std::invalid_argument("end is not periodic");
  return a.params() == b.params() && *da == *db;
}

// ---------------------------------------------------------------------------
// Tree points

TreePoint TreePoint::at_vertex(TreeVertex v) {
  return TreePoint{std::move(v), std::nullopt};
}

TreePoint TreePoint::on_edge(const TreeVertex& v, const EndStep& step,
                             double offset) {
  if (!(offset >= 0.0 && offset < 1.0))
    throw std::invalid_argument("edge offset must lie in [0,1)");
  validate_step(v.params(), step);
  if (offset == 0.0) return at_vertex(v);
  TreeVertex other = v.neighbor(step);
  if (other.depth() == v.depth() + 1)
    return TreePoint{v, std::make_pair(step, offset)};
  // Reorient so the stored vertex is the endpoint nearer the base.
  return TreePoint{other, std::make_pair(v.last_step(), 1.0 - offset)};
}

double TreePoint::height_above_base() const {
  double h = static_cast<double>(vertex.depth());
  if (edge) h += edge->second;
  return h;
}

std::vector<EndStep> TreePoint::path_steps() const {
  std::vector<EndStep> steps = vertex.steps();
  if (edge) steps.push_back(edge->first);
  return steps;
}

double tree_point_distance(const TreePoint& p, const TreePoint& q) {
  if (p.params() != q.params())
    throw param_mismatch("points from different groups");
  if (p.edge && q.edge && p.vertex == q.vertex &&
      p.edge->first == q.edge->first)
    return std::abs(p.edge->second - q.edge->second);
  struct Anchor {
    TreeVertex v;
    double d;
  };
  auto anchors = [](const TreePoint& pt) {
    std::vector<Anchor> out;
    if (!pt.edge) {
      out.push_back({pt.vertex, 0.0});
    } else {
      out.push_back({pt.vertex, pt.edge->second});
      out.push_back({pt.vertex.neighbor(pt.edge->first), 1.0 - pt.edge->second});
    }
    return out;
  };
  double best = std::numeric_limits<double>::infinity();
  for (const Anchor& a : anchors(p))
    for (const Anchor& b : anchors(q))
      best = std::min(best,
                      a.d + static_cast<double>(tree_distance(a.v, b.v)) + b.d);
  return best;
}

TreePoint act_point(const NormalForm& g, const TreePoint& p) {
  TreeVertex v = act_vertex(g, p.vertex);
  if (!p.edge) return TreePoint::at_vertex(std::move(v));
  TreeVertex other = act_vertex(g, p.vertex.neighbor(p.edge->first));
  EndStep step = other.depth() == v.depth() + 1
                     ? other.last_step()
                     : EndStep{-v.last_step().dir, 0};
  return TreePoint::on_edge(v, step, p.edge->second);
}

}  // namespace bslab
