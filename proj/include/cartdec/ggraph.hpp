#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cartdec/classify.hpp"
#include "cartdec/error.hpp"
#include "cartdec/report.hpp"

namespace cartdec {

// A generalized graph: abstract edge ids with an incidence map into unordered
// vertex pairs; parallel edges are legal.
struct GeneralizedGraph {
  std::vector<std::string> vertices;
  std::vector<std::string> edge_ids;
  std::vector<std::pair<int, int>> edge_ends;  // normalized (min,max), distinct

  int add_vertex(std::string id) {
    vertices.push_back(std::move(id));
    return static_cast<int>(vertices.size()) - 1;
  }
  void add_edge(std::string id, int a, int b) {
    if (a == b) fail(ErrorKind::InvalidInstance, "edge ends must be distinct");
    edge_ids.push_back(std::move(id));
    edge_ends.emplace_back(std::min(a, b), std::max(a, b));
  }
  bool simple() const {
    std::set<std::pair<int, int>> seen(edge_ends.begin(), edge_ends.end());
    return seen.size() == edge_ends.size();
  }
  std::vector<int> vertex_degrees() const {
    std::vector<int> deg(vertices.size(), 0);
    for (auto [a, b] : edge_ends) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }
};

struct GeneralizedDiGraph {
  std::vector<std::string> vertices;
  std::vector<std::string> arc_ids;
  std::vector<std::pair<int, int>> arcs;  // (tail beta, head epsilon), distinct ends

  int add_vertex(std::string id) {
    vertices.push_back(std::move(id));
    return static_cast<int>(vertices.size()) - 1;
  }
  void add_arc(std::string id, int tail, int head) {
    if (tail == head) fail(ErrorKind::InvalidInstance, "arc endpoints must be distinct");
    arc_ids.push_back(std::move(id));
    arcs.emplace_back(tail, head);
  }
};

// Bipartite graph with two labeled edge sets over (members, strips).
struct BipartiteLabeledGraph {
  std::vector<std::string> member_ids;
  std::vector<std::string> strip_ids;
  std::vector<std::pair<int, int>> e1;  // (member, strip)
  std::vector<std::pair<int, int>> e2;
};

// An automorphism presented as compatible vertex and edge permutations.
struct GraphAut {
  Perm on_vertices;
  Perm on_edges;
};

inline bool is_automorphism(const GeneralizedGraph& g, const GraphAut& a) {
  if (a.on_vertices.degree() != static_cast<int>(g.vertices.size())) return false;
  if (a.on_edges.degree() != static_cast<int>(g.edge_ids.size())) return false;
  for (std::size_t e = 0; e < g.edge_ends.size(); ++e) {
    auto [x, y] = g.edge_ends[e];
    auto [u, v] = g.edge_ends[a.on_edges[static_cast<int>(e)]];
    int ix = a.on_vertices[x], iy = a.on_vertices[y];
    if (!((ix == u && iy == v) || (ix == v && iy == u))) return false;
  }
  return true;
}

// Graph isomorphism for the small graphs handled here, by backtracking over
// degree-compatible vertex images; edge multiplicities are compared as
// multisets.
inline bool generalized_graphs_isomorphic(const GeneralizedGraph& a, const GeneralizedGraph& b) {
  if (a.vertices.size() != b.vertices.size() || a.edge_ids.size() != b.edge_ids.size()) return false;
  int n = static_cast<int>(a.vertices.size());
  std::map<std::pair<int, int>, int> mult_b;
  for (auto e : b.edge_ends) ++mult_b[e];
  std::vector<int> deg_a = a.vertex_degrees(), deg_b = b.vertex_degrees();
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);

  std::function<bool(int)> place = [&](int v) -> bool {
    if (v == n) {
      std::map<std::pair<int, int>, int> mult_a;
      for (auto [x, y] : a.edge_ends) {
        int u = map[x], w = map[y];
        ++mult_a[{std::min(u, w), std::max(u, w)}];
      }
      return mult_a == mult_b;
    }
    for (int im = 0; im < n; ++im) {
      if (used[im] || deg_a[v] != deg_b[im]) continue;
      map[v] = im;
      used[im] = true;
      if (place(v + 1)) return true;
      used[im] = false;
      map[v] = -1;
    }
    return false;
  };
  return place(0);
}

inline bool digraphs_isomorphic(const GeneralizedDiGraph& a, const GeneralizedDiGraph& b) {
  if (a.vertices.size() != b.vertices.size() || a.arcs.size() != b.arcs.size()) return false;
  int n = static_cast<int>(a.vertices.size());
  std::map<std::pair<int, int>, int> mult_b;
  for (auto e : b.arcs) ++mult_b[e];
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> place = [&](int v) -> bool {
    if (v == n) {
      std::map<std::pair<int, int>, int> mult_a;
      for (auto [x, y] : a.arcs) ++mult_a[{map[x], map[y]}];
      return mult_a == mult_b;
    }
    for (int im = 0; im < n; ++im) {
      if (used[im]) continue;
      map[v] = im;
      used[im] = true;
      if (place(v + 1)) return true;
      used[im] = false;
    }
    return false;
  };
  return place(0);
}

inline bool bipartite_graphs_isomorphic(const BipartiteLabeledGraph& a, const BipartiteLabeledGraph& b) {
  if (a.member_ids.size() != b.member_ids.size() || a.strip_ids.size() != b.strip_ids.size() ||
      a.e1.size() != b.e1.size() || a.e2.size() != b.e2.size())
    return false;
  int n1 = static_cast<int>(a.member_ids.size());
  int n2 = static_cast<int>(a.strip_ids.size());
  std::set<std::pair<int, int>> b1(b.e1.begin(), b.e1.end()), b2(b.e2.begin(), b.e2.end());
  std::vector<int> m1(n1, -1), m2(n2, -1);
  std::vector<bool> u1(n1, false), u2(n2, false);
  std::function<bool(int)> place2 = [&](int v) -> bool {
    if (v == n2) {
      std::set<std::pair<int, int>> i1, i2;
      for (auto [x, y] : a.e1) i1.insert({m1[x], m2[y]});
      for (auto [x, y] : a.e2) i2.insert({m1[x], m2[y]});
      return i1 == b1 && i2 == b2;
    }
    for (int im = 0; im < n2; ++im) {
      if (u2[im]) continue;
      m2[v] = im;
      u2[im] = true;
      if (place2(v + 1)) return true;
      u2[im] = false;
    }
    return false;
  };
  std::function<bool(int)> place1 = [&](int v) -> bool {
    if (v == n1) return place2(0);
    for (int im = 0; im < n1; ++im) {
      if (u1[im]) continue;
      m1[v] = im;
      u1[im] = true;
      if (place1(v + 1)) return true;
      u1[im] = false;
    }
    return false;
  };
  return place1(0);
}

struct GraphExtraction {
  GeneralizedGraph graph;
  std::vector<GraphAut> closure_action;  // one per G_omega closure element, canonical order
  CheckList checks;
};

// The invariant generalized graph of a 2sim system: vertices are the members,
// one edge per factor joins the two members with proper projection there.
inline GraphExtraction extract_2sim(const CartesianSystem& s, const ClassifyOptions& opts = {}) {
  Classification cls = classify(s, opts);
  if (cls.label != ClassLabel::C2Sim)
    fail(ErrorKind::WrongClass, std::string("system classifies as ") + class_label_name(cls.label));

  GraphExtraction out;
  for (std::size_t j = 0; j < s.size(); ++j) out.graph.add_vertex("K" + std::to_string(j + 1));
  const auto& fi = cls.fi.per_coordinate;
  for (std::size_t i = 0; i < fi.size(); ++i) {
    if (fi[i].size() != 2) fail(ErrorKind::WrongClass, "coordinate without exactly two proper projections");
    out.graph.add_edge("T" + std::to_string(i), fi[i][0].member, fi[i][1].member);
  }

  const auto& action = s.member_action();
  const auto& closure = s.instance().g_omega().closure().elements();
  bool equivariant = true;
  for (std::size_t gi = 0; gi < closure.size(); ++gi) {
    GOmegaAction act = GOmegaAction::from_big(s.instance().m(), closure[gi]);
    GraphAut aut{(*action)[gi], act.coord_perm()};
    if (!is_automorphism(out.graph, aut)) equivariant = false;
    out.closure_action.push_back(std::move(aut));
  }
  out.checks.require("2sim.comb.automorphism_action", equivariant);
  return out;
}

// The invariant generalized digraph of a 2nsim system: arc T_i runs from the
// member whose projection is conjugate to the canonical A side into the B
// side.
struct DiGraphExtraction {
  GeneralizedDiGraph graph;
  std::vector<std::pair<Perm, Perm>> closure_action;  // (vertex perm, arc perm)
  CheckList checks;
};

inline DiGraphExtraction extract_2nsim(const CartesianSystem& s, const ClassifyOptions& opts = {}) {
  Classification cls = classify(s, opts);
  if (cls.label != ClassLabel::C2Nsim)
    fail(ErrorKind::WrongClass, std::string("system classifies as ") + class_label_name(cls.label));

  DiGraphExtraction out;
  for (std::size_t j = 0; j < s.size(); ++j) out.graph.add_vertex("K" + std::to_string(j + 1));

  // canonical A side: the lexicographically smaller projection at coordinate 0
  const auto& f0 = cls.fi.per_coordinate[0];
  const PermGroup& a_side = f0[0].projection;
  auto m = s.instance().m_ptr();
  const GOmegaGroup& gw = s.instance().g_omega();

  for (std::size_t i = 0; i < cls.fi.per_coordinate.size(); ++i) {
    const auto& fi = cls.fi.per_coordinate[i];
    if (fi.size() != 2) fail(ErrorKind::WrongClass, "coordinate without exactly two proper projections");
    ProductSubgroup base = embed_at(m, a_side, 0);
    ProductSubgroup cand0 = embed_at(m, fi[0].projection, static_cast<int>(i));
    ProductSubgroup cand1 = embed_at(m, fi[1].projection, static_cast<int>(i));
    bool first_is_a = gw.conjugating_action(base, cand0).has_value();
    bool second_is_a = gw.conjugating_action(base, cand1).has_value();
    if (first_is_a == second_is_a)
      fail(ErrorKind::InvariantViolation,
           "the two proper projections do not split into A and B conjugacy sides");
    int tail = first_is_a ? fi[0].member : fi[1].member;
    int head = first_is_a ? fi[1].member : fi[0].member;
    out.graph.add_arc("T" + std::to_string(i), tail, head);
  }

  const auto& action = s.member_action();
  const auto& closure = gw.closure().elements();
  bool equivariant = true;
  for (std::size_t gi = 0; gi < closure.size(); ++gi) {
    GOmegaAction act = GOmegaAction::from_big(s.instance().m(), closure[gi]);
    const Perm& vp = (*action)[gi];
    const Perm& ap = act.coord_perm();
    for (std::size_t e = 0; e < out.graph.arcs.size(); ++e) {
      auto [t0, h0] = out.graph.arcs[e];
      auto [t1, h1] = out.graph.arcs[ap[static_cast<int>(e)]];
      if (vp[t0] != t1 || vp[h0] != h1) equivariant = false;
    }
    out.closure_action.emplace_back(vp, ap);
  }
  out.checks.require("2nsim.comb.automorphism_action", equivariant);
  return out;
}

struct BipartiteExtraction {
  BipartiteLabeledGraph graph;
  std::vector<Strip> strips;  // V2 order
  std::vector<std::pair<Perm, Perm>> closure_action;  // (member perm, strip perm)
  CheckList checks;
};

// The invariant bipartite graph of a 1S system: members against involved
// strips; E2 records involvement, E1 records a proper projection inside the
// strip's support.
inline BipartiteExtraction extract_1s(const CartesianSystem& s, const ClassifyOptions& opts = {}) {
  Classification cls = classify(s, opts);
  if (cls.label != ClassLabel::C1S)
    fail(ErrorKind::WrongClass, std::string("system classifies as ") + class_label_name(cls.label));

  BipartiteExtraction out;
  for (std::size_t j = 0; j < s.size(); ++j) out.graph.member_ids.push_back("K" + std::to_string(j + 1));
  for (std::size_t x = 0; x < cls.strips.strips.size(); ++x) {
    out.graph.strip_ids.push_back("X" + std::to_string(x + 1));
    out.strips.push_back(cls.strips.strips[x]);
  }
  std::uint64_t t_order = s.instance().m().factor().order();
  for (std::size_t x = 0; x < out.strips.size(); ++x) {
    const Strip& st = out.strips[x];
    for (std::size_t j = 0; j < s.size(); ++j) {
      bool proper_inside = false;
      for (int c : {st.min_support(), st.max_support()})
        if (s.members()[j].project_factor(c).order() < t_order) proper_inside = true;
      if (proper_inside) out.graph.e1.emplace_back(static_cast<int>(j), static_cast<int>(x));
      if (cls.strips.owner[x] == static_cast<int>(j))
        out.graph.e2.emplace_back(static_cast<int>(j), static_cast<int>(x));
    }
  }

  // shape facts: each strip meets exactly one involvement edge and one or two
  // proper-projection edges; the two edge sets are disjoint as vertex pairs
  std::vector<int> v1(out.strips.size(), 0), v2(out.strips.size(), 0);
  for (const auto& e : out.graph.e1) ++v1[e.second];
  for (const auto& e : out.graph.e2) ++v2[e.second];
  bool val_ok = true;
  for (std::size_t x = 0; x < out.strips.size(); ++x)
    val_ok = val_ok && v2[x] == 1 && (v1[x] == 1 || v1[x] == 2);
  out.checks.require("1s.comb.valency", val_ok);
  std::set<std::pair<int, int>> p1(out.graph.e1.begin(), out.graph.e1.end());
  bool disjoint = true;
  for (auto e : out.graph.e2)
    if (p1.count(e)) disjoint = false;
  out.checks.require("1s.comb.labeled_disjoint", disjoint);

  const auto& action = s.member_action();
  const auto& closure = s.instance().g_omega().closure().elements();
  bool equivariant = true;
  for (std::size_t gi = 0; gi < closure.size(); ++gi) {
    GOmegaAction act = GOmegaAction::from_big(s.instance().m(), closure[gi]);
    // induced strip permutation via supports
    std::vector<std::uint16_t> ximg(out.strips.size());
    for (std::size_t x = 0; x < out.strips.size(); ++x) {
      std::vector<int> image;
      for (int c : out.strips[x].support) image.push_back(act.coord_perm()[c]);
      std::sort(image.begin(), image.end());
      int target = -1;
      for (std::size_t y = 0; y < out.strips.size(); ++y)
        if (out.strips[y].support == image) target = static_cast<int>(y);
      if (target < 0) {
        equivariant = false;
        target = static_cast<int>(x);
      }
      ximg[x] = static_cast<std::uint16_t>(target);
    }
    Perm xp = Perm::from_images(std::move(ximg));
    const Perm& vp = (*action)[gi];
    auto image_set = [&](const std::vector<std::pair<int, int>>& edges) {
      std::set<std::pair<int, int>> img;
      for (auto [j, x] : edges) img.insert({vp[j], xp[x]});
      return img;
    };
    std::set<std::pair<int, int>> s1(out.graph.e1.begin(), out.graph.e1.end());
    std::set<std::pair<int, int>> s2(out.graph.e2.begin(), out.graph.e2.end());
    if (image_set(out.graph.e1) != s1 || image_set(out.graph.e2) != s2) equivariant = false;
    out.closure_action.emplace_back(vp, xp);
  }
  out.checks.require("1s.comb.automorphism_action", equivariant);
  return out;
}

struct GraphDichotomyReport {
  CheckList checks;
  std::string conclusion;  // "two-vertices", "K3", "kK2" (with k), or "simple-graph"
  int k = 0;               // for kK2
};

// Checks the structural dichotomy for a generalized graph whose automorphism
// set acts 2-transitively on a nonempty edge set: either |V| = 2 or the graph
// is simple; if moreover vertex-transitive, it is K3 or a disjoint union of
// k copies of K2.
inline GraphDichotomyReport check_graph_dichotomy(const GeneralizedGraph& g, const std::vector<GraphAut>& auts) {
  if (g.edge_ids.empty()) fail(ErrorKind::HypothesisNotMet, "edge set is empty");
  for (const GraphAut& a : auts)
    if (!is_automorphism(g, a)) fail(ErrorKind::HypothesisNotMet, "supplied map is not an automorphism");

  int nv = static_cast<int>(g.vertices.size());
  int ne = static_cast<int>(g.edge_ids.size());
  // permutation group on V | E
  std::vector<Perm> gens;
  for (const GraphAut& a : auts) {
    std::vector<std::uint16_t> img(nv + ne);
    for (int v = 0; v < nv; ++v) img[v] = static_cast<std::uint16_t>(a.on_vertices[v]);
    for (int e = 0; e < ne; ++e) img[nv + e] = static_cast<std::uint16_t>(nv + a.on_edges[e]);
    gens.push_back(Perm::from_images(std::move(img)));
  }
  PermGroup aut_group(nv + ne, gens);

  // 2-transitivity on edges (vacuous for a single edge)
  bool two_transitive = true;
  if (ne >= 2) {
    std::set<std::pair<int, int>> orbit;
    std::vector<std::pair<int, int>> queue{{0, 1}};
    orbit.insert({0, 1});
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const Perm& x : aut_group.generators()) {
        std::pair<int, int> im{x[nv + queue[qi].first] - nv, x[nv + queue[qi].second] - nv};
        if (orbit.insert(im).second) queue.push_back(im);
      }
    two_transitive = orbit.size() == static_cast<std::size_t>(ne) * (ne - 1);
  }
  if (!two_transitive) fail(ErrorKind::HypothesisNotMet, "automorphisms are not 2-transitive on edges");

  GraphDichotomyReport rep;
  bool simple = g.simple();
  rep.checks.require("graph.dichotomy", nv == 2 || simple);

  // vertex transitivity via the vertex part
  std::vector<bool> seen(nv, false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (const Perm& x : aut_group.generators()) {
      int im = x[queue[qi]];
      if (!seen[im]) {
        seen[im] = true;
        queue.push_back(static_cast<int>(im));
      }
    }
  bool vertex_transitive = static_cast<int>(queue.size()) == nv;

  if (!simple) {
    rep.conclusion = "two-vertices";
    return rep;
  }
  if (!vertex_transitive) {
    rep.conclusion = "simple-graph";
    return rep;
  }
  // classify the simple vertex-transitive case
  auto deg = g.vertex_degrees();
  bool all1 = std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1; });
  if (all1 && nv == 2 * ne) {
    rep.conclusion = "kK2";
    rep.k = ne;
    rep.checks.require("graph.shape", true, "kK2 with k = " + std::to_string(ne));
  } else if (nv == 3 && ne == 3) {
    rep.conclusion = "K3";
    rep.checks.require("graph.shape", true, "K3");
  } else {
    rep.conclusion = "unexpected";
    rep.checks.require("graph.shape", false, "vertex-transitive case is neither K3 nor kK2");
  }
  return rep;
}

}  // namespace cartdec
