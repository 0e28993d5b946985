#include "bslab/json_io.hpp"

namespace bslab {

json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected integer or decimal string");
}

json to_json(const NormalForm& g) {
  json syllables = json::array();
  for (const Syllable& syl : g.syllables())
    syllables.push_back(json::array({syl.eps, int_to_json(syl.a)}));
  return json{{"a0", int_to_json(g.leading())}, {"syllables", syllables}};
}

NormalForm normal_form_from_json(const json& j, const GroupParams& params) {
  NormalFormBuilder b(params);
  b.push_s(int_from_json(j.at("a0")));
  for (const json& syl : j.at("syllables")) {
    b.push_t(syl.at(0).get<int>());
    b.push_s(int_from_json(syl.at(1)));
  }
  return b.build();
}

json to_json(const TreeVertex& v) {
  json out = json::array();
  out.push_back(int_to_json(v.address().leading()));
  for (const Syllable& syl : v.address().syllables())
    out.push_back(json::array({syl.eps, int_to_json(syl.a)}));
  return out;
}

namespace {

json steps_to_json(const std::vector<EndStep>& steps) {
  json out = json::array();
  for (const EndStep& s : steps) out.push_back(json::array({s.dir, s.index}));
  return out;
}

}  // namespace

json to_json(const TreeEnd& e, std::size_t lazy_prefix) {
  if (auto data = e.as_periodic())
    return json{{"prefix", steps_to_json(data->first)},
                {"tail", steps_to_json(data->second)}};
  return json{{"prefix", steps_to_json(e.prefix_steps(lazy_prefix))},
              {"tail", nullptr}};
}

json to_json(const SpacePoint& p) {
  json edge = nullptr;
  if (p.y.edge)
    edge = json::array(
        {p.y.edge->first.dir, p.y.edge->first.index, p.y.edge->second});
  return json{{"x", to_string(p.x)}, {"vertex", to_json(p.y.vertex)},
              {"edge", edge}};
}

json to_json(const BoundaryPoint& z) {
  if (z.is_pole()) return json{{"pole", z.is_pole_R() ? "R" : "L"}};
  return json{{"theta", z.theta}, {"end", to_json(*z.end)}};
}

json to_json(const FindNResult& r) {
  json witnesses = json::array();
  for (const auto& [a, b] : r.beyond_witnesses)
    witnesses.push_back(json::array({a, b}));
  return json{{"eps", r.eps},
              {"N", r.N},
              {"status", r.status == SweepStatus::conclusive ? "conclusive"
                                                             : "inconclusive"},
              {"violating_tiles", r.violating_tiles},
              {"violations", witnesses},
              {"beyond_violations", r.beyond_violations},
              {"grid_r_max", r.grid_r_max},
              {"margin", r.margin()},
              {"bounds", json{{"a_max", r.bounds.a_max},
                              {"b_max", r.bounds.b_max}}}};
}

json to_json(const NullityReport& r) {
  json far = json::array();
  for (const NormalForm& g : r.far_failures) far.push_back(to_json(g));
  return json{{"m", r.group.m()},
              {"n", r.group.n()},
              {"L", r.radius},
              {"delta", r.delta},
              {"eta", r.eta},
              {"N", r.N},
              {"near_radius", r.near_radius},
              {"status", r.status == SweepStatus::conclusive ? "conclusive"
                                                             : "inconclusive"},
              {"fits", r.fits},
              {"near", r.near},
              {"violations", far}};
}

json to_json(const WhyteClass& w) {
  return json{{"case", w.case_id},
              {"detail", w.detail},
              {"certificate", w.certificate},
              {"caveats", w.caveat
                              ? json::array({"case-2 not excluded by full "
                                             "isomorphism check"})
                              : json::array()},
              {"boundary", "suspension of the Bass-Serre tree end space"}};
}

json to_json(const SlopeReport& r) {
  return json{{"target", r.target},
              {"xs", r.xs},
              {"estimates", r.estimates},
              {"residuals", r.residuals},
              {"final_residual", r.final_residual}};
}

}  // namespace bslab
