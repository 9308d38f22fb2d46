#pragma once

#include <json.hpp>

#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartdec/classify.hpp"
#include "cartdec/constructions.hpp"
#include "cartdec/demos.hpp"
#include "cartdec/oracle.hpp"
#include "cartdec/properties.hpp"
#include "cartdec/quotient.hpp"
#include "cartdec/searches.hpp"
#include "cartdec/system.hpp"

namespace cartdec::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Report serialization. Key order is fixed by construction, so identical
// inputs produce byte-identical reports.
// ---------------------------------------------------------------------------

inline json to_json(const Check& c) {
  json j;
  j["id"] = c.id;
  j["status"] = c.skipped ? "skipped" : (c.pass ? "pass" : "fail");
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline json to_json(const CheckList& list) {
  json arr = json::array();
  for (const Check& c : list.checks) arr.push_back(to_json(c));
  return arr;
}

inline json tuple_to_json(const ProductGroup& m, const Perm& element) {
  json arr = json::array();
  for (const Perm& c : m.split(element)) arr.push_back(c.to_cycles());
  return arr;
}

inline json subgroup_to_json(const ProductSubgroup& k) {
  json j;
  j["order"] = k.order();
  json gens = json::array();
  for (const Perm& g : k.group().generators()) gens.push_back(tuple_to_json(k.parent(), g));
  j["generators"] = gens;
  return j;
}

inline json system_to_json(const CartesianSystem& s) {
  json j;
  j["length"] = s.size();
  json members = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json mj = subgroup_to_json(s.members()[i]);
    mj["id"] = "K" + std::to_string(i + 1);
    mj["index"] = s.instance().m().big().order() / s.members()[i].order();
    members.push_back(std::move(mj));
  }
  j["members"] = members;
  return j;
}

inline json graph_to_json(const GeneralizedGraph& g) {
  json j;
  j["vertices"] = g.vertices;
  json edges = json::array();
  for (std::size_t e = 0; e < g.edge_ids.size(); ++e) {
    json ej;
    ej["id"] = g.edge_ids[e];
    ej["ends"] = json::array({g.vertices[g.edge_ends[e].first], g.vertices[g.edge_ends[e].second]});
    edges.push_back(std::move(ej));
  }
  j["edges"] = edges;
  return j;
}

inline json digraph_to_json(const GeneralizedDiGraph& g) {
  json j;
  j["vertices"] = g.vertices;
  json arcs = json::array();
  for (std::size_t e = 0; e < g.arc_ids.size(); ++e) {
    json ej;
    ej["id"] = g.arc_ids[e];
    ej["tail"] = g.vertices[g.arcs[e].first];
    ej["head"] = g.vertices[g.arcs[e].second];
    arcs.push_back(std::move(ej));
  }
  j["arcs"] = arcs;
  return j;
}

inline json bipartite_to_json(const BipartiteLabeledGraph& g) {
  json j;
  j["members"] = g.member_ids;
  j["strips"] = g.strip_ids;
  json e1 = json::array(), e2 = json::array();
  for (auto [v, x] : g.e1) e1.push_back(json::array({g.member_ids[v], g.strip_ids[x]}));
  for (auto [v, x] : g.e2) e2.push_back(json::array({g.member_ids[v], g.strip_ids[x]}));
  j["e1"] = e1;
  j["e2"] = e2;
  return j;
}

// ---------------------------------------------------------------------------
// Instance files.
// ---------------------------------------------------------------------------

struct Caps {
  std::uint64_t element_cap = kDefaultElementCap;
  std::uint64_t point_cap = kDefaultElementCap;
  bool element_cap_overridden = false;
};

inline Caps caps_from_env() {
  Caps caps;
  if (const char* e = std::getenv("CARTDEC_ELEMENT_CAP")) {
    caps.element_cap = std::strtoull(e, nullptr, 10);
    caps.element_cap_overridden = true;
  }
  if (const char* p = std::getenv("CARTDEC_POINT_CAP")) caps.point_cap = std::strtoull(p, nullptr, 10);
  return caps;
}

struct ParsedInstance {
  std::shared_ptr<const PointedInstance> instance;
  std::optional<CartesianSystem> system;
  json raw;
};

[[noreturn]] inline void parse_fail(const std::string& path, const std::string& what) {
  fail(ErrorKind::ParseError, what + " (at " + path + ")");
}

inline Perm parse_perm(const json& j, int degree, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a cycle string");
  try {
    return Perm::parse_cycles(j.get<std::string>(), degree);
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
}

inline std::vector<Perm> parse_tuple(const json& j, int k, int degree, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != k)
    parse_fail(path, "expected an array of " + std::to_string(k) + " cycle strings");
  std::vector<Perm> out;
  for (int i = 0; i < k; ++i) out.push_back(parse_perm(j[i], degree, path + "[" + std::to_string(i) + "]"));
  return out;
}

inline ParsedInstance parse_instance(const json& j, const Caps& cli_caps) {
  ParsedInstance out;
  out.raw = j;
  if (!j.is_object()) fail(ErrorKind::ParseError, "instance file must be a JSON object");
  if (!j.contains("t_degree") || !j["t_degree"].is_number_integer())
    parse_fail("$.t_degree", "missing or non-integer");
  int d = j["t_degree"].get<int>();
  if (d < 1 || d > 4096) parse_fail("$.t_degree", "degree out of range");
  if (!j.contains("k") || !j["k"].is_number_integer()) parse_fail("$.k", "missing or non-integer");
  int k = j["k"].get<int>();

  Caps caps = cli_caps;
  if (!caps.element_cap_overridden && j.contains("element_cap"))
    caps.element_cap = j["element_cap"].get<std::uint64_t>();
  bool assume_simple = j.value("assume_simple", false);

  if (!j.contains("t_generators") || !j["t_generators"].is_array() || j["t_generators"].empty())
    parse_fail("$.t_generators", "missing or empty");
  std::vector<Perm> tgens;
  for (std::size_t i = 0; i < j["t_generators"].size(); ++i)
    tgens.push_back(parse_perm(j["t_generators"][i], d, "$.t_generators[" + std::to_string(i) + "]"));
  PermGroup t(d, std::move(tgens), caps.element_cap);
  auto m = std::make_shared<const ProductGroup>(std::move(t), k, assume_simple, caps.element_cap);

  if (!j.contains("m_omega_generators") || !j["m_omega_generators"].is_array())
    parse_fail("$.m_omega_generators", "missing");
  std::vector<std::vector<Perm>> stab_tuples;
  for (std::size_t i = 0; i < j["m_omega_generators"].size(); ++i)
    stab_tuples.push_back(
        parse_tuple(j["m_omega_generators"][i], k, d, "$.m_omega_generators[" + std::to_string(i) + "]"));
  ProductSubgroup m_omega = ProductSubgroup::from_tuples(m, stab_tuples);

  if (!j.contains("g_omega_generators") || !j["g_omega_generators"].is_array())
    parse_fail("$.g_omega_generators", "missing");
  std::vector<GOmegaAction> gens;
  for (std::size_t i = 0; i < j["g_omega_generators"].size(); ++i) {
    const json& gj = j["g_omega_generators"][i];
    std::string path = "$.g_omega_generators[" + std::to_string(i) + "]";
    if (!gj.is_object() || !gj.contains("coord_perm") || !gj.contains("twists"))
      parse_fail(path, "expected {coord_perm, twists}");
    Perm cp = parse_perm(gj["coord_perm"], k, path + ".coord_perm");
    std::vector<Perm> twists;
    if (!gj["twists"].is_array() || static_cast<int>(gj["twists"].size()) != k)
      parse_fail(path + ".twists", "expected " + std::to_string(k) + " cycle strings");
    for (int c = 0; c < k; ++c)
      twists.push_back(parse_perm(gj["twists"][c], d, path + ".twists[" + std::to_string(c) + "]"));
    try {
      gens.emplace_back(*m, std::move(cp), std::move(twists));
    } catch (const Error& e) {
      parse_fail(path, e.what());
    }
  }
  GOmegaGroup gw(m, std::move(gens), caps.element_cap);

  try {
    out.instance = std::make_shared<const PointedInstance>(m, std::move(m_omega), std::move(gw),
                                                           caps.point_cap);
  } catch (const Error& e) {
    fail(ErrorKind::InvalidInstance, std::string(e.what()) + " (at $)");
  }

  if (j.contains("system_members")) {
    if (!j["system_members"].is_array() || j["system_members"].empty())
      parse_fail("$.system_members", "expected a nonempty array of members");
    std::vector<ProductSubgroup> members;
    for (std::size_t i = 0; i < j["system_members"].size(); ++i) {
      const json& mj = j["system_members"][i];
      std::string path = "$.system_members[" + std::to_string(i) + "]";
      if (!mj.is_array() || mj.empty()) parse_fail(path, "expected a nonempty array of generator tuples");
      std::vector<std::vector<Perm>> tuples;
      for (std::size_t g = 0; g < mj.size(); ++g)
        tuples.push_back(parse_tuple(mj[g], k, d, path + "[" + std::to_string(g) + "]"));
      members.push_back(ProductSubgroup::from_tuples(m, tuples));
    }
    out.system.emplace(out.instance, std::move(members));
  }
  return out;
}

// vertex ids -> indices, for construction specs
inline int vertex_index(const std::vector<std::string>& ids, const json& j, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a vertex id");
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == j.get<std::string>()) return static_cast<int>(i);
  parse_fail(path, "unknown vertex id " + j.get<std::string>());
}

inline std::vector<Perm> parse_vertex_action(const json& j, const std::vector<std::string>& ids,
                                             std::size_t num_generators, const std::string& path) {
  if (!j.is_array() || j.size() != num_generators)
    parse_fail(path, "expected one vertex map per stabilizer generator");
  std::vector<Perm> out;
  for (std::size_t g = 0; g < j.size(); ++g) {
    const json& mj = j[g];
    std::string p = path + "[" + std::to_string(g) + "]";
    if (!mj.is_object()) parse_fail(p, "expected an object mapping vertex ids");
    std::vector<std::uint16_t> img(ids.size());
    for (std::size_t v = 0; v < ids.size(); ++v) img[v] = static_cast<std::uint16_t>(v);
    for (const auto& [key, value] : mj.items()) {
      int from = vertex_index(ids, json(key), p);
      int to = vertex_index(ids, value, p + "." + key);
      img[from] = static_cast<std::uint16_t>(to);
    }
    try {
      out.push_back(Perm::from_images(std::move(img)));
    } catch (const Error&) {
      parse_fail(p, "vertex map is not a bijection");
    }
  }
  return out;
}

inline TwoSimSpec parse_2sim_spec(const ParsedInstance& pin) {
  const json& j = pin.raw;
  if (!j.contains("construction_spec")) fail(ErrorKind::ParseError, "no construction_spec block");
  const json& cj = j["construction_spec"];
  if (cj.value("kind", "") != "2sim") fail(ErrorKind::ParseError, "construction_spec.kind must be 2sim");
  if (!j.contains("graph")) fail(ErrorKind::ParseError, "2sim construction needs a graph block");
  const json& gj = j["graph"];
  TwoSimSpec spec;
  spec.instance = pin.instance;
  int d = pin.instance->m().factor_degree();
  std::vector<Perm> a1gens, b1gens;
  for (std::size_t i = 0; i < cj.at("a1").size(); ++i)
    a1gens.push_back(parse_perm(cj["a1"][i], d, "$.construction_spec.a1[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < cj.at("b1").size(); ++i)
    b1gens.push_back(parse_perm(cj["b1"][i], d, "$.construction_spec.b1[" + std::to_string(i) + "]"));
  spec.a1 = PermGroup(d, a1gens, pin.instance->m().element_cap());
  spec.b1 = PermGroup(d, b1gens, pin.instance->m().element_cap());

  std::vector<std::string> ids = gj.at("vertices").get<std::vector<std::string>>();
  for (const std::string& id : ids) spec.graph.add_vertex(id);
  for (std::size_t e = 0; e < gj.at("edges").size(); ++e) {
    const json& ej = gj["edges"][e];
    std::string path = "$.graph.edges[" + std::to_string(e) + "]";
    spec.graph.add_edge(ej.value("id", "T" + std::to_string(e)),
                        vertex_index(ids, ej.at("ends")[0], path),
                        vertex_index(ids, ej.at("ends")[1], path));
  }
  spec.a_vertex = vertex_index(ids, cj.at("a_vertex"), "$.construction_spec.a_vertex");
  spec.b_vertex = vertex_index(ids, cj.at("b_vertex"), "$.construction_spec.b_vertex");
  spec.vertex_action = parse_vertex_action(cj.at("vertex_action"), ids,
                                           pin.instance->g_omega().action_generators().size(),
                                           "$.construction_spec.vertex_action");
  return spec;
}

inline TwoNsimSpec parse_2nsim_spec(const ParsedInstance& pin) {
  const json& j = pin.raw;
  if (!j.contains("construction_spec")) fail(ErrorKind::ParseError, "no construction_spec block");
  const json& cj = j["construction_spec"];
  if (cj.value("kind", "") != "2nsim") fail(ErrorKind::ParseError, "construction_spec.kind must be 2nsim");
  if (!j.contains("digraph")) fail(ErrorKind::ParseError, "2nsim construction needs a digraph block");
  const json& gj = j["digraph"];
  TwoNsimSpec spec;
  spec.instance = pin.instance;
  int d = pin.instance->m().factor_degree();
  std::vector<Perm> a1gens, b1gens;
  for (std::size_t i = 0; i < cj.at("a1").size(); ++i)
    a1gens.push_back(parse_perm(cj["a1"][i], d, "$.construction_spec.a1[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < cj.at("b1").size(); ++i)
    b1gens.push_back(parse_perm(cj["b1"][i], d, "$.construction_spec.b1[" + std::to_string(i) + "]"));
  spec.a1 = PermGroup(d, a1gens, pin.instance->m().element_cap());
  spec.b1 = PermGroup(d, b1gens, pin.instance->m().element_cap());

  std::vector<std::string> ids = gj.at("vertices").get<std::vector<std::string>>();
  for (const std::string& id : ids) spec.graph.add_vertex(id);
  for (std::size_t e = 0; e < gj.at("arcs").size(); ++e) {
    const json& ej = gj["arcs"][e];
    std::string path = "$.digraph.arcs[" + std::to_string(e) + "]";
    spec.graph.add_arc(ej.value("id", "T" + std::to_string(e)), vertex_index(ids, ej.at("tail"), path),
                       vertex_index(ids, ej.at("head"), path));
  }
  spec.vertex_action = parse_vertex_action(cj.at("vertex_action"), ids,
                                           pin.instance->g_omega().action_generators().size(),
                                           "$.construction_spec.vertex_action");
  return spec;
}

inline OneSSpec parse_1s_spec(const ParsedInstance& pin) {
  const json& j = pin.raw;
  if (!j.contains("construction_spec")) fail(ErrorKind::ParseError, "no construction_spec block");
  const json& cj = j["construction_spec"];
  if (cj.value("kind", "") != "1s") fail(ErrorKind::ParseError, "construction_spec.kind must be 1s");
  if (!j.contains("bipartite")) fail(ErrorKind::ParseError, "1s construction needs a bipartite block");
  const json& gj = j["bipartite"];
  OneSSpec spec;
  spec.instance = pin.instance;
  int d = pin.instance->m().factor_degree();
  int k = pin.instance->m().k();

  std::vector<std::vector<Perm>> x1tuples;
  for (std::size_t i = 0; i < cj.at("x1").size(); ++i)
    x1tuples.push_back(parse_tuple(cj["x1"][i], k, d, "$.construction_spec.x1[" + std::to_string(i) + "]"));
  spec.x1 = ProductSubgroup::from_tuples(pin.instance->m_ptr(), x1tuples);

  std::vector<Perm> a1gens, b1gens;
  for (std::size_t i = 0; i < cj.at("a1").size(); ++i)
    a1gens.push_back(parse_perm(cj["a1"][i], d, "$.construction_spec.a1[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < cj.at("b1").size(); ++i)
    b1gens.push_back(parse_perm(cj["b1"][i], d, "$.construction_spec.b1[" + std::to_string(i) + "]"));
  spec.a1 = PermGroup(d, a1gens, pin.instance->m().element_cap());
  spec.b1 = PermGroup(d, b1gens, pin.instance->m().element_cap());

  spec.member_ids = gj.at("members").get<std::vector<std::string>>();
  std::vector<std::string> strip_ids = gj.at("strips").get<std::vector<std::string>>();
  auto strip_index = [&](const json& sj, const std::string& path) {
    if (!sj.is_string()) parse_fail(path, "expected a strip id");
    for (std::size_t i = 0; i < strip_ids.size(); ++i)
      if (strip_ids[i] == sj.get<std::string>()) return static_cast<int>(i);
    parse_fail(path, "unknown strip id");
  };
  for (std::size_t e = 0; e < gj.at("e1").size(); ++e)
    spec.e1.emplace_back(vertex_index(spec.member_ids, gj["e1"][e][0], "$.bipartite.e1"),
                         strip_index(gj["e1"][e][1], "$.bipartite.e1"));
  for (std::size_t e = 0; e < gj.at("e2").size(); ++e)
    spec.e2.emplace_back(vertex_index(spec.member_ids, gj["e2"][e][0], "$.bipartite.e2"),
                         strip_index(gj["e2"][e][1], "$.bipartite.e2"));
  spec.a_member_vertex = vertex_index(spec.member_ids, cj.at("a_member_vertex"),
                                      "$.construction_spec.a_member_vertex");
  spec.vertex_action = parse_vertex_action(cj.at("vertex_action"), spec.member_ids,
                                           pin.instance->g_omega().action_generators().size(),
                                           "$.construction_spec.vertex_action");
  return spec;
}

// ---------------------------------------------------------------------------
// Demo materialization.
// ---------------------------------------------------------------------------

inline json instance_to_json(const demos::BuiltDemo& demo) {
  const PointedInstance& inst = *demo.instance;
  const ProductGroup& m = inst.m();
  json j;
  j["name"] = demo.name;
  j["t_degree"] = m.factor_degree();
  json tg = json::array();
  for (const Perm& g : m.factor().generators()) tg.push_back(g.to_cycles());
  j["t_generators"] = tg;
  j["k"] = m.k();
  j["element_cap"] = m.element_cap();
  j["assume_simple"] = true;  // demo factors are verified during derivation
  json sg = json::array();
  for (const Perm& g : inst.m_omega().group().generators()) sg.push_back(tuple_to_json(m, g));
  j["m_omega_generators"] = sg;
  json gg = json::array();
  for (const GOmegaAction& a : inst.g_omega().action_generators()) {
    json aj;
    aj["coord_perm"] = a.coord_perm().to_cycles();
    json tw = json::array();
    for (const Perm& w : a.twists()) tw.push_back(w.to_cycles());
    aj["twists"] = tw;
    gg.push_back(std::move(aj));
  }
  j["g_omega_generators"] = gg;
  json members = json::array();
  for (const ProductSubgroup& k : demo.members) {
    json mj = json::array();
    for (const Perm& g : k.group().generators()) mj.push_back(tuple_to_json(m, g));
    members.push_back(std::move(mj));
  }
  j["system_members"] = members;
  return j;
}

inline json demo_file(const std::string& name, bool experimental_outer) {
  using namespace demos;
  BuiltDemo demo = build_demo(name, experimental_outer);
  json j = instance_to_json(demo);

  auto one_generator_identity_maps = [&](int nv, std::size_t ngens, const json& nontrivial,
                                         std::size_t which) {
    json arr = json::array();
    for (std::size_t g = 0; g < ngens; ++g) {
      if (g == which)
        arr.push_back(nontrivial);
      else
        arr.push_back(json::object());
    }
    (void)nv;
    return arr;
  };

  if (name == "a5-2nsim") {
    const A5DemoData& d = a5_demo_data();
    j["digraph"] = {{"vertices", json::array({"v1", "v2"})},
                    {"arcs", json::array({json{{"id", "T0"}, {"tail", "v1"}, {"head", "v2"}}})}};
    json cj;
    cj["kind"] = "2nsim";
    json a1 = json::array(), b1 = json::array();
    for (const Perm& g : d.a4.generators()) a1.push_back(g.to_cycles());
    for (const Perm& g : d.d10.generators()) b1.push_back(g.to_cycles());
    cj["a1"] = a1;
    cj["b1"] = b1;
    json va = json::array();
    for (std::size_t g = 0; g < demo.instance->g_omega().action_generators().size(); ++g)
      va.push_back(json::object());
    cj["vertex_action"] = va;
    j["construction_spec"] = cj;
  } else if (name == "a6-2sim") {
    const A6DemoData& d = a6_demo_data();
    j["graph"] = {{"vertices", json::array({"v1", "v2"})},
                  {"edges", json::array({json{{"id", "T0"}, {"ends", json::array({"v1", "v2"})}}})}};
    json cj;
    cj["kind"] = "2sim";
    json a1 = json::array(), b1 = json::array();
    for (const Perm& g : d.a5_first.generators()) a1.push_back(g.to_cycles());
    for (const Perm& g : d.a5_second.generators()) b1.push_back(g.to_cycles());
    cj["a1"] = a1;
    cj["b1"] = b1;
    cj["a_vertex"] = "v1";
    cj["b_vertex"] = "v2";
    std::size_t ngens = demo.instance->g_omega().action_generators().size();
    cj["vertex_action"] =
        one_generator_identity_maps(2, ngens, json{{"v1", "v2"}, {"v2", "v1"}}, ngens - 1);
    j["construction_spec"] = cj;
  } else if (name == "a6a6-1s") {
    const A6DemoData& d = a6_demo_data();
    j["bipartite"] = {{"members", json::array({"v1", "v2"})},
                      {"strips", json::array({"Y0"})},
                      {"e1", json::array({json::array({"v1", "Y0"})})},
                      {"e2", json::array({json::array({"v2", "Y0"})})}};
    json cj;
    cj["kind"] = "1s";
    json x1 = json::array();
    for (const Perm& g : d.amb.t.generators())
      x1.push_back(json::array({g.to_cycles(), g.to_cycles()}));
    cj["x1"] = x1;
    json a1 = json::array(), b1 = json::array();
    for (const Perm& g : d.a5_first.generators()) a1.push_back(g.to_cycles());
    for (const Perm& g : d.a5_second.generators()) b1.push_back(g.to_cycles());
    cj["a1"] = a1;
    cj["b1"] = b1;
    cj["a_member_vertex"] = "v1";
    json va = json::array();
    for (std::size_t g = 0; g < demo.instance->g_omega().action_generators().size(); ++g)
      va.push_back(json::object());
    cj["vertex_action"] = va;
    j["construction_spec"] = cj;
  } else if (name == "m12-2sim") {
    j["experimental_outer"] = experimental_outer;
  }
  return j;
}

}  // namespace cartdec::io
