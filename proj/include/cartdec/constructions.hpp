#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cartdec/classify.hpp"
#include "cartdec/ggraph.hpp"
#include "cartdec/system.hpp"

namespace cartdec {

// The stabilizer-group action on graph vertices: supplied per generator and
// extended to the closure, with the extension's well-definedness checked by
// closing the joint (carrier, vertex) permutations.
struct ClosureVertexAction {
  std::vector<Perm> per_element;  // aligned with g_omega closure canonical order
};

inline ClosureVertexAction extend_vertex_action(const PointedInstance& inst, int num_vertices,
                                                const std::vector<Perm>& per_generator) {
  const GOmegaGroup& gw = inst.g_omega();
  if (per_generator.size() != gw.action_generators().size())
    fail(ErrorKind::HypothesisViolation, "vertex_action: one permutation per stabilizer generator required");
  int kd = inst.m().degree();
  std::vector<Perm> joint_gens;
  for (std::size_t i = 0; i < per_generator.size(); ++i) {
    if (per_generator[i].degree() != num_vertices)
      fail(ErrorKind::HypothesisViolation, "vertex_action: degree mismatch");
    std::vector<std::uint16_t> img(kd + num_vertices);
    const Perm& big = gw.action_generators()[i].big();
    for (int p = 0; p < kd; ++p) img[p] = static_cast<std::uint16_t>(big[p]);
    for (int v = 0; v < num_vertices; ++v)
      img[kd + v] = static_cast<std::uint16_t>(kd + per_generator[i][v]);
    joint_gens.push_back(Perm::from_images(std::move(img)));
  }
  if (joint_gens.empty()) joint_gens.push_back(Perm::identity(kd + num_vertices));
  PermGroup joint(kd + num_vertices, joint_gens, gw.closure().element_cap());
  if (joint.order() != gw.order())
    fail(ErrorKind::WellDefinednessFailure,
         "vertex action is not a function of the stabilizer action (joint closure too large)");
  std::map<Perm, Perm> by_big;
  for (const Perm& j : joint.elements()) {
    std::vector<std::uint16_t> big(kd), vp(num_vertices);
    for (int p = 0; p < kd; ++p) big[p] = static_cast<std::uint16_t>(j[p]);
    for (int v = 0; v < num_vertices; ++v) vp[v] = static_cast<std::uint16_t>(j[kd + v] - kd);
    by_big.emplace(Perm::from_images(std::move(big)), Perm::from_images(std::move(vp)));
  }
  ClosureVertexAction out;
  for (const Perm& b : gw.closure().elements()) out.per_element.push_back(by_big.at(b));
  return out;
}

namespace construction_detail {

inline void throw_if_failed(const CheckList& checks) {
  if (checks.all_pass()) return;
  std::string ids;
  for (const auto& id : checks.failed_ids()) ids += id + " ";
  fail(ErrorKind::HypothesisViolation, "violated clauses: " + ids);
}

// first closure element moving coordinate 0 to i
inline std::size_t coordinate_rep(const PointedInstance& inst, int i) {
  const auto& els = inst.g_omega().closure().elements();
  for (std::size_t e = 0; e < els.size(); ++e) {
    GOmegaAction a = GOmegaAction::from_big(inst.m(), els[e]);
    if (a.coord_perm()[0] == i) return e;
  }
  fail(ErrorKind::HypothesisViolation, "stabilizer group moves coordinate 0 to no copy of T_" +
                                           std::to_string(i));
}

inline bool stabilizer_is_projection_product(const PointedInstance& inst) {
  std::uint64_t prod = 1;
  for (int i = 0; i < inst.m().k(); ++i) prod *= inst.m_omega().project_factor(i).order();
  return prod == inst.m_omega().order();
}

}  // namespace construction_detail

struct ConstructionResult {
  CartesianSystem system;
  Classification classification;
  CheckList checks;          // hypothesis clauses (all passing) plus outcome checks
  CheckList warnings;        // non-fatal orbit conditions
};

// Converse construction for the 2sim shape: from a fused pair (A1, B1) in the
// base factor and a generalized graph with one edge per factor, builds the
// member K_v = prod_i K_{v,i} with the A/B pieces transported along
// coordinate representatives, checks every hypothesis clause and the
// independence of the representative choice, and verifies the outcome.
struct TwoSimSpec {
  std::shared_ptr<const PointedInstance> instance;
  PermGroup a1, b1;          // subgroups of the base factor T
  GeneralizedGraph graph;    // exactly one edge per coordinate, in order
  int a_vertex = -1;         // end of edge 0 carrying A1
  int b_vertex = -1;
  std::vector<Perm> vertex_action;  // per stabilizer generator
};

inline ConstructionResult construct_2sim(const TwoSimSpec& spec) {
  const PointedInstance& inst = *spec.instance;
  const PermGroup& t = inst.m().factor();
  auto m = inst.m_ptr();
  int k = inst.m().k();
  int nv = static_cast<int>(spec.graph.vertices.size());
  CheckList checks;

  checks.require("2sim.hyp.stabilizer_product",
                 construction_detail::stabilizer_is_projection_product(inst),
                 "M_omega must be the product of its projections");
  checks.require("2sim.hyp.graph_shape", static_cast<int>(spec.graph.edge_ids.size()) == k,
                 "one edge per factor");
  bool ends_ok = spec.a_vertex >= 0 && spec.b_vertex >= 0 && spec.a_vertex != spec.b_vertex &&
                 !spec.graph.edge_ends.empty() &&
                 spec.graph.edge_ends[0] == std::pair<int, int>{std::min(spec.a_vertex, spec.b_vertex),
                                                               std::max(spec.a_vertex, spec.b_vertex)};
  checks.require("2sim.hyp.base_edge_ends", ends_ok, "a/b vertices must be the ends of edge 0");
  construction_detail::throw_if_failed(checks);

  ClosureVertexAction vact = extend_vertex_action(inst, nv, spec.vertex_action);
  const auto& closure = inst.g_omega().closure().elements();

  // every closure element acts as a graph automorphism, edges moved by the
  // coordinate permutation
  bool aut_ok = true;
  std::vector<Perm> coord_perms;
  for (std::size_t e = 0; e < closure.size(); ++e) {
    GOmegaAction a = GOmegaAction::from_big(inst.m(), closure[e]);
    coord_perms.push_back(a.coord_perm());
    GraphAut ga{vact.per_element[e], a.coord_perm()};
    if (!is_automorphism(spec.graph, ga)) aut_ok = false;
  }
  checks.require("2sim.hyp.action_automorphism", aut_ok);

  checks.require("2sim.hyp.i.proper",
                 spec.a1.order() < t.order() && spec.b1.order() < t.order() &&
                     spec.a1.is_subgroup_of(t) && spec.b1.is_subgroup_of(t),
                 "A1, B1 proper in T");
  checks.require("2sim.hyp.i.isomorphic", spec.a1.order() == spec.b1.order());
  ProductSubgroup ea = embed_at(m, spec.a1, 0);
  ProductSubgroup eb = embed_at(m, spec.b1, 0);
  checks.require("2sim.hyp.ii.conjugate", inst.g_omega().conjugating_action(ea, eb).has_value());
  PermGroup meet = PermGroup::intersection(spec.a1, spec.b1);
  checks.require("2sim.hyp.iii.product", spec.a1.order() * spec.b1.order() == t.order() * meet.order());
  checks.require("2sim.hyp.iii.intersection", meet.same_group(inst.m_omega().project_factor(0)));

  // clause (iv) and the compatibility condition between the pair and the
  // base edge ends
  bool iv_ok = true, comp_ok = true;
  for (std::size_t e = 0; e < closure.size(); ++e) {
    if (coord_perms[e][0] != 0) continue;  // outside N_{G_omega}(T_0)
    bool keeps_a = true, keeps_b = true, swaps_ab = true;
    for (const Perm& g : ea.group().generators())
      if (!ea.group().contains(g.conjugated_by(closure[e]))) keeps_a = false;
    for (const Perm& g : eb.group().generators())
      if (!eb.group().contains(g.conjugated_by(closure[e]))) keeps_b = false;
    for (const Perm& g : ea.group().generators())
      if (!eb.group().contains(g.conjugated_by(closure[e]))) swaps_ab = false;
    for (const Perm& g : eb.group().generators())
      if (!ea.group().contains(g.conjugated_by(closure[e]))) swaps_ab = false;
    bool pair_preserved = (keeps_a && keeps_b) || swaps_ab;
    if (!pair_preserved) iv_ok = false;
    // (comp): fixing (A1, B1) pointwise iff fixing (v1, v2) pointwise
    bool fixes_ab = keeps_a && keeps_b;
    bool fixes_v = vact.per_element[e][spec.a_vertex] == spec.a_vertex &&
                   vact.per_element[e][spec.b_vertex] == spec.b_vertex;
    if (fixes_ab != fixes_v) comp_ok = false;
  }
  checks.require("2sim.hyp.iv.normalizer_pair", iv_ok);
  checks.require("2sim.hyp.comp", comp_ok);
  construction_detail::throw_if_failed(checks);

  CheckList warnings;
  {
    PermGroup vgroup(nv, vact.per_element);
    if (vgroup.is_transitive())
      warnings.require("2sim.hyp.vertex_transitive", true);
    else
      warnings.skip("2sim.hyp.vertex_transitive", "vertex action is not transitive");
  }

  // transported pieces per coordinate, with independence of the choice
  std::vector<ProductSubgroup> a_piece, b_piece;
  std::vector<int> va(k), vb(k);
  for (int i = 0; i < k; ++i) {
    std::size_t rep = construction_detail::coordinate_rep(inst, i);
    GOmegaAction g = GOmegaAction::from_big(inst.m(), closure[rep]);
    a_piece.push_back(act(g, ea));
    b_piece.push_back(act(g, eb));
    va[i] = vact.per_element[rep][spec.a_vertex];
    vb[i] = vact.per_element[rep][spec.b_vertex];
  }
  for (std::size_t e = 0; e < closure.size(); ++e) {
    int i = coord_perms[e][0];
    GOmegaAction g = GOmegaAction::from_big(inst.m(), closure[e]);
    ProductSubgroup ta = act(g, ea);
    ProductSubgroup tb = act(g, eb);
    int wa = vact.per_element[e][spec.a_vertex];
    int wb = vact.per_element[e][spec.b_vertex];
    bool same = (wa == va[i] && ta.same_subgroup(a_piece[i]) && wb == vb[i] && tb.same_subgroup(b_piece[i])) ||
                (wa == vb[i] && ta.same_subgroup(b_piece[i]) && wb == va[i] && tb.same_subgroup(a_piece[i]));
    if (!same)
      fail(ErrorKind::WellDefinednessFailure,
           "piece assignment at coordinate " + std::to_string(i) + " depends on the representative");
  }

  // assemble the members
  std::vector<ProductSubgroup> members;
  for (int v = 0; v < nv; ++v) {
    std::vector<Perm> gens;
    for (int i = 0; i < k; ++i) {
      const ProductSubgroup* piece = nullptr;
      if (v == va[i])
        piece = &a_piece[i];
      else if (v == vb[i])
        piece = &b_piece[i];
      if (piece) {
        for (const Perm& g : piece->group().generators()) gens.push_back(g);
      } else {
        for (const Perm& g : t.generators()) gens.push_back(m->embed_factor(g, i));
      }
    }
    if (gens.empty()) gens.push_back(Perm::identity(m->degree()));
    members.emplace_back(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
  }

  CartesianSystem sys(spec.instance, members);
  SystemReport rep = verify_system(sys);
  checks.require("2sim.out.system_valid", rep.valid);
  checks.require("2sim.out.invariant", sys.is_g_invariant());
  ClassifyOptions lenient;
  lenient.throw_on_violation = false;
  Classification cls = classify(sys, lenient);
  checks.require("2sim.out.class", cls.label == ClassLabel::C2Sim, class_label_name(cls.label));
  checks.require("2sim.out.structure", cls.checks.all_pass());
  GraphExtraction ex = extract_2sim(sys, lenient);
  checks.require("2sim.out.graph_isomorphic", generalized_graphs_isomorphic(ex.graph, spec.graph));
  // F_0 = {A1, B1}
  bool f_ok = cls.fi.per_coordinate[0].size() == 2;
  if (f_ok) {
    const auto& f0 = cls.fi.per_coordinate[0];
    f_ok = (f0[0].projection.same_group(spec.a1) && f0[1].projection.same_group(spec.b1)) ||
           (f0[0].projection.same_group(spec.b1) && f0[1].projection.same_group(spec.a1));
  }
  checks.require("2sim.out.f0", f_ok);
  construction_detail::throw_if_failed(checks);
  return ConstructionResult{std::move(sys), std::move(cls), std::move(checks), std::move(warnings)};
}

// Converse construction for the 2nsim shape: arcs carry the direction from
// the A side to the B side; well-definedness follows from the normalizer
// clause and is still checked explicitly.
struct TwoNsimSpec {
  std::shared_ptr<const PointedInstance> instance;
  PermGroup a1, b1;
  GeneralizedDiGraph graph;  // exactly one arc per coordinate, in order
  std::vector<Perm> vertex_action;
};

inline ConstructionResult construct_2nsim(const TwoNsimSpec& spec) {
  const PointedInstance& inst = *spec.instance;
  const PermGroup& t = inst.m().factor();
  auto m = inst.m_ptr();
  int k = inst.m().k();
  int nv = static_cast<int>(spec.graph.vertices.size());
  CheckList checks;

  checks.require("2nsim.hyp.stabilizer_product",
                 construction_detail::stabilizer_is_projection_product(inst));
  checks.require("2nsim.hyp.graph_shape", static_cast<int>(spec.graph.arc_ids.size()) == k);
  construction_detail::throw_if_failed(checks);

  ClosureVertexAction vact = extend_vertex_action(inst, nv, spec.vertex_action);
  const auto& closure = inst.g_omega().closure().elements();

  bool aut_ok = true;
  std::vector<Perm> coord_perms;
  for (std::size_t e = 0; e < closure.size(); ++e) {
    GOmegaAction a = GOmegaAction::from_big(inst.m(), closure[e]);
    coord_perms.push_back(a.coord_perm());
    for (int i = 0; i < k; ++i) {
      auto [tail, head] = spec.graph.arcs[i];
      auto [itail, ihead] = spec.graph.arcs[a.coord_perm()[i]];
      if (vact.per_element[e][tail] != itail || vact.per_element[e][head] != ihead) aut_ok = false;
    }
  }
  checks.require("2nsim.hyp.action_automorphism", aut_ok);

  checks.require("2nsim.hyp.i.proper", spec.a1.order() < t.order() && spec.b1.order() < t.order() &&
                                           spec.a1.is_subgroup_of(t) && spec.b1.is_subgroup_of(t));
  ProductSubgroup ea = embed_at(m, spec.a1, 0);
  ProductSubgroup eb = embed_at(m, spec.b1, 0);
  checks.require("2nsim.hyp.ii.not_conjugate", !inst.g_omega().conjugating_action(ea, eb).has_value());
  PermGroup meet = PermGroup::intersection(spec.a1, spec.b1);
  checks.require("2nsim.hyp.iii.product", spec.a1.order() * spec.b1.order() == t.order() * meet.order());
  checks.require("2nsim.hyp.iii.intersection", meet.same_group(inst.m_omega().project_factor(0)));

  std::vector<std::size_t> fix_t0, norm_a, norm_b;
  for (std::size_t e = 0; e < closure.size(); ++e) {
    if (coord_perms[e][0] == 0) fix_t0.push_back(e);
    bool na = true, nb = true;
    for (const Perm& g : ea.group().generators())
      if (!ea.group().contains(g.conjugated_by(closure[e]))) na = false;
    for (const Perm& g : eb.group().generators())
      if (!eb.group().contains(g.conjugated_by(closure[e]))) nb = false;
    if (na) norm_a.push_back(e);
    if (nb) norm_b.push_back(e);
  }
  checks.require("2nsim.hyp.iv.normalizers", fix_t0 == norm_a && fix_t0 == norm_b);
  construction_detail::throw_if_failed(checks);

  CheckList warnings;
  {
    PermGroup vgroup(nv, vact.per_element);
    if (vgroup.is_transitive())
      warnings.require("2nsim.hyp.vertex_transitive", true);
    else
      warnings.skip("2nsim.hyp.vertex_transitive", "vertex action is not transitive");
  }

  std::vector<ProductSubgroup> a_piece, b_piece;
  std::vector<int> vtail(k), vhead(k);
  for (int i = 0; i < k; ++i) {
    std::size_t rep = construction_detail::coordinate_rep(inst, i);
    GOmegaAction g = GOmegaAction::from_big(inst.m(), closure[rep]);
    a_piece.push_back(act(g, ea));
    b_piece.push_back(act(g, eb));
    vtail[i] = vact.per_element[rep][spec.graph.arcs[0].first];
    vhead[i] = vact.per_element[rep][spec.graph.arcs[0].second];
    if (vtail[i] != spec.graph.arcs[i].first || vhead[i] != spec.graph.arcs[i].second)
      fail(ErrorKind::WellDefinednessFailure,
           "transported base arc disagrees with arc " + std::to_string(i));
  }
  for (std::size_t e = 0; e < closure.size(); ++e) {
    int i = coord_perms[e][0];
    GOmegaAction g = GOmegaAction::from_big(inst.m(), closure[e]);
    if (!(act(g, ea).same_subgroup(a_piece[i]) && act(g, eb).same_subgroup(b_piece[i]) &&
          vact.per_element[e][spec.graph.arcs[0].first] == vtail[i] &&
          vact.per_element[e][spec.graph.arcs[0].second] == vhead[i]))
      fail(ErrorKind::WellDefinednessFailure,
           "piece assignment at coordinate " + std::to_string(i) + " depends on the representative");
  }

  std::vector<ProductSubgroup> members;
  for (int v = 0; v < nv; ++v) {
    std::vector<Perm> gens;
    for (int i = 0; i < k; ++i) {
      if (v == vtail[i]) {
        for (const Perm& g : a_piece[i].group().generators()) gens.push_back(g);
      } else if (v == vhead[i]) {
        for (const Perm& g : b_piece[i].group().generators()) gens.push_back(g);
      } else {
        for (const Perm& g : t.generators()) gens.push_back(m->embed_factor(g, i));
      }
    }
    if (gens.empty()) gens.push_back(Perm::identity(m->degree()));
    members.emplace_back(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
  }

  CartesianSystem sys(spec.instance, members);
  SystemReport rep = verify_system(sys);
  checks.require("2nsim.out.system_valid", rep.valid);
  checks.require("2nsim.out.invariant", sys.is_g_invariant());
  ClassifyOptions lenient;
  lenient.throw_on_violation = false;
  Classification cls = classify(sys, lenient);
  checks.require("2nsim.out.class", cls.label == ClassLabel::C2Nsim, class_label_name(cls.label));
  checks.require("2nsim.out.structure", cls.checks.all_pass());
  DiGraphExtraction ex = extract_2nsim(sys, lenient);
  checks.require("2nsim.out.graph_isomorphic", digraphs_isomorphic(ex.graph, spec.graph));
  construction_detail::throw_if_failed(checks);
  return ConstructionResult{std::move(sys), std::move(cls), std::move(checks), std::move(warnings)};
}

// Converse construction for the 1S shape.
struct OneSSpec {
  std::shared_ptr<const PointedInstance> instance;
  ProductSubgroup x1;        // full strip of length 2
  PermGroup a1, b1;          // proper subgroups of the factors at min/max Supp X1
  std::vector<std::string> member_ids;
  std::vector<std::pair<int, int>> e1, e2;  // (member index, strip index)
  int a_member_vertex = -1;  // the E1 partner of the base strip carrying the A side
  std::vector<Perm> vertex_action;  // on member vertices, per stabilizer generator
};

inline ConstructionResult construct_1s(const OneSSpec& spec) {
  const PointedInstance& inst = *spec.instance;
  const PermGroup& t = inst.m().factor();
  auto m = inst.m_ptr();
  int nv = static_cast<int>(spec.member_ids.size());
  CheckList checks;

  // M_omega decomposes into pairwise disjoint length-2 strips
  StripDecomposition stab_split = split_into_strips(inst.m_omega(), /*require_full=*/false);
  bool stab_ok = stab_split.clean && stab_split.residual.empty() && !stab_split.strips.empty();
  for (const Strip& y : stab_split.strips) stab_ok = stab_ok && y.support.size() == 2;
  checks.require("1s.hyp.stabilizer_strips", stab_ok,
                 "M_omega must be a product of pairwise disjoint length-2 strips");
  construction_detail::throw_if_failed(checks);
  const std::vector<Strip>& ys = stab_split.strips;  // ascending min support
  int ny = static_cast<int>(ys.size());

  // X1 is a full strip of length 2 whose support matches some Y
  auto x1_split = split_into_strips(spec.x1, true);
  bool x1_ok = x1_split.clean && x1_split.strips.size() == 1 && x1_split.residual.empty() &&
               x1_split.strips[0].support.size() == 2 && x1_split.strips[0].full;
  checks.require("1s.hyp.i.full_strip", x1_ok);
  construction_detail::throw_if_failed(checks);
  Strip x1 = x1_split.strips[0];
  int base_y = -1;
  for (int y = 0; y < ny; ++y)
    if (ys[y].support == x1.support) base_y = y;
  checks.require("1s.hyp.support_match", base_y >= 0,
                 "Supp X1 must equal the support of a stabilizer strip");
  construction_detail::throw_if_failed(checks);

  int cmin = x1.min_support(), cmax = x1.max_support();
  checks.require("1s.hyp.ii.proper", spec.a1.order() < t.order() && spec.b1.order() < t.order() &&
                                         spec.a1.is_subgroup_of(t) && spec.b1.is_subgroup_of(t));
  ProductSubgroup ea = embed_at(m, spec.a1, cmin);
  ProductSubgroup eb = embed_at(m, spec.b1, cmax);
  checks.require("1s.hyp.iii.conjugate", inst.g_omega().conjugating_action(ea, eb).has_value());

  std::vector<Perm> ab_gens;
  for (const Perm& g : spec.a1.generators()) ab_gens.push_back(m->embed_factor(g, cmin));
  for (const Perm& g : spec.b1.generators()) ab_gens.push_back(m->embed_factor(g, cmax));
  ProductSubgroup axb(m, PermGroup(m->degree(), ab_gens, m->element_cap()));
  ProductSubgroup xm = ProductSubgroup::intersection(x1.subgroup, axb);
  checks.require("1s.hyp.iv.product",
                 x1.subgroup.order() * axb.order() == t.order() * t.order() * xm.order());
  checks.require("1s.hyp.iv.intersection", xm.same_subgroup(inst.m_omega().project(x1.support)));

  const auto& closure = inst.g_omega().closure().elements();
  std::vector<Perm> coord_perms;
  for (const Perm& b : closure)
    coord_perms.push_back(GOmegaAction::from_big(inst.m(), b).coord_perm());
  std::vector<std::size_t> stab_supp, norm_x, norm_ab;
  for (std::size_t e = 0; e < closure.size(); ++e) {
    std::set<int> image{coord_perms[e][cmin], coord_perms[e][cmax]};
    if (image == std::set<int>{cmin, cmax}) stab_supp.push_back(e);
    bool nx = true, nab = true;
    for (const Perm& g : x1.subgroup.group().generators())
      if (!x1.subgroup.group().contains(g.conjugated_by(closure[e]))) nx = false;
    for (const Perm& g : axb.group().generators())
      if (!axb.group().contains(g.conjugated_by(closure[e]))) nab = false;
    if (nx) norm_x.push_back(e);
    if (nab) norm_ab.push_back(e);
  }
  checks.require("1s.hyp.v.normalizers", stab_supp == norm_x && stab_supp == norm_ab);
  construction_detail::throw_if_failed(checks);

  // graph shape: one E2 edge and one or two E1 edges per strip, disjoint
  std::vector<int> val1(ny, 0), val2(ny, 0);
  for (const auto& e : spec.e1) {
    if (e.first < 0 || e.first >= nv || e.second < 0 || e.second >= ny)
      fail(ErrorKind::HypothesisViolation, "1s.hyp.graph_shape: edge out of range");
    ++val1[e.second];
  }
  for (const auto& e : spec.e2) {
    if (e.first < 0 || e.first >= nv || e.second < 0 || e.second >= ny)
      fail(ErrorKind::HypothesisViolation, "1s.hyp.graph_shape: edge out of range");
    ++val2[e.second];
  }
  bool val_ok = true;
  for (int y = 0; y < ny; ++y) val_ok = val_ok && val2[y] == 1 && (val1[y] == 1 || val1[y] == 2);
  checks.require("1s.hyp.valency", val_ok);
  std::set<std::pair<int, int>> s1(spec.e1.begin(), spec.e1.end()), s2(spec.e2.begin(), spec.e2.end());
  checks.require("1s.hyp.labeled_disjoint", [&] {
    for (auto e : s2)
      if (s1.count(e)) return false;
    return true;
  }());
  construction_detail::throw_if_failed(checks);

  ClosureVertexAction vact = extend_vertex_action(inst, nv, spec.vertex_action);
  // strip permutation induced by the coordinate action
  std::vector<Perm> strip_perms;
  for (std::size_t e = 0; e < closure.size(); ++e) {
    std::vector<std::uint16_t> img(ny);
    for (int y = 0; y < ny; ++y) {
      std::vector<int> moved;
      for (int c : ys[y].support) moved.push_back(coord_perms[e][c]);
      std::sort(moved.begin(), moved.end());
      int target = -1;
      for (int z = 0; z < ny; ++z)
        if (ys[z].support == moved) target = z;
      if (target < 0)
        fail(ErrorKind::HypothesisViolation, "stabilizer action does not permute the strip supports");
      img[y] = static_cast<std::uint16_t>(target);
    }
    strip_perms.push_back(Perm::from_images(std::move(img)));
  }

  // the action preserves both labeled edge sets
  bool aut_ok = true;
  for (std::size_t e = 0; e < closure.size(); ++e) {
    auto image_of = [&](const std::set<std::pair<int, int>>& edges) {
      std::set<std::pair<int, int>> img;
      for (auto [v, y] : edges) img.insert({vact.per_element[e][v], strip_perms[e][y]});
      return img;
    };
    if (image_of(s1) != s1 || image_of(s2) != s2) aut_ok = false;
  }
  checks.require("1s.hyp.action_automorphism", aut_ok);

  // E1 and E2 are single orbits (needed for the transport), the member set
  // orbit condition is reported only
  auto orbit_of_pair = [&](std::pair<int, int> base) {
    std::set<std::pair<int, int>> seen{base};
    std::vector<std::pair<int, int>> queue{base};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (std::size_t e = 0; e < closure.size(); ++e) {
        std::pair<int, int> im{vact.per_element[e][queue[qi].first], strip_perms[e][queue[qi].second]};
        if (seen.insert(im).second) queue.push_back(im);
      }
    return seen;
  };
  checks.require("1s.hyp.e2_orbit", !s2.empty() && orbit_of_pair(*s2.begin()) == s2);
  checks.require("1s.hyp.e1_orbit", !s1.empty() && orbit_of_pair(*s1.begin()) == s1);
  construction_detail::throw_if_failed(checks);

  CheckList warnings;
  {
    PermGroup vgroup(nv, vact.per_element);
    if (vgroup.is_transitive())
      warnings.require("1s.hyp.vertex_transitive", true);
    else
      warnings.skip("1s.hyp.vertex_transitive", "member vertex action is not transitive");
  }

  // base pieces
  int v2_base = -1;
  for (auto [v, y] : s2)
    if (y == base_y) v2_base = v;
  bool a_vertex_ok = spec.a_member_vertex >= 0 && s1.count({spec.a_member_vertex, base_y}) > 0;
  checks.require("1s.hyp.base_e1", a_vertex_ok, "a_member_vertex must be an E1 partner of the base strip");
  construction_detail::throw_if_failed(checks);

  bool valency_two = val1[base_y] == 2;
  if (valency_two) {
    // the val-2 stabilizer clause
    bool stab_clause = true;
    for (auto [v, y] : s1) {
      std::vector<std::size_t> pair_stab, both_fixed;
      for (std::size_t e = 0; e < closure.size(); ++e) {
        if (vact.per_element[e][v] == v && strip_perms[e][y] == y) pair_stab.push_back(e);
        if (coord_perms[e][ys[y].min_support()] == ys[y].min_support() &&
            coord_perms[e][ys[y].max_support()] == ys[y].max_support())
          both_fixed.push_back(e);
      }
      if (pair_stab != both_fixed) stab_clause = false;
    }
    checks.require("1s.hyp.val2_stabilizer", stab_clause);
    construction_detail::throw_if_failed(checks);
  }

  ProductSubgroup base_piece = valency_two
                                   ? [&] {
                                       std::vector<Perm> gens;
                                       for (const Perm& g : spec.a1.generators())
                                         gens.push_back(m->embed_factor(g, cmin));
                                       for (const Perm& g : t.generators())
                                         gens.push_back(m->embed_factor(g, cmax));
                                       return ProductSubgroup(m, PermGroup(m->degree(), gens, m->element_cap()));
                                     }()
                                   : axb;

  // transport K_{v,Y} around the two edge orbits
  auto transport = [&](std::pair<int, int> base, const ProductSubgroup& piece) {
    std::map<std::pair<int, int>, ProductSubgroup> out;
    for (std::size_t e = 0; e < closure.size(); ++e) {
      std::pair<int, int> im{vact.per_element[e][base.first], strip_perms[e][base.second]};
      GOmegaAction g = GOmegaAction::from_big(inst.m(), closure[e]);
      ProductSubgroup moved = act(g, piece);
      auto it = out.find(im);
      if (it == out.end())
        out.emplace(im, std::move(moved));
      else if (!it->second.same_subgroup(moved))
        fail(ErrorKind::WellDefinednessFailure, "transported piece depends on the transporter");
    }
    return out;
  };
  auto e1_pieces = transport({spec.a_member_vertex, base_y}, base_piece);
  auto e2_pieces = transport({v2_base, base_y}, x1.subgroup);

  // per-strip defining identities
  for (int y = 0; y < ny; ++y) {
    std::vector<const ProductSubgroup*> around;
    for (int v = 0; v < nv; ++v) {
      auto it1 = e1_pieces.find({v, y});
      if (it1 != e1_pieces.end()) around.push_back(&it1->second);
      auto it2 = e2_pieces.find({v, y});
      if (it2 != e2_pieces.end()) around.push_back(&it2->second);
    }
    // meet of all pieces = sigma_SuppY(M_omega); each piece times the meet of
    // the others = the support product
    std::vector<Perm> common = around[0]->group().elements();
    for (std::size_t i = 1; i < around.size(); ++i) {
      std::vector<Perm> next;
      for (const Perm& el : common)
        if (around[i]->group().contains(el)) next.push_back(el);
      common = std::move(next);
    }
    bool int_ok = common == inst.m_omega().project(ys[y].support).group().elements();
    checks.require("1s.out.strip_intersection[" + std::to_string(y) + "]", int_ok);
    std::uint64_t support_order = t.order() * t.order();
    for (std::size_t i = 0; i < around.size(); ++i) {
      std::vector<Perm> rest;
      bool first = true;
      for (std::size_t j = 0; j < around.size(); ++j) {
        if (j == i) continue;
        if (first) {
          rest = around[j]->group().elements();
          first = false;
        } else {
          std::vector<Perm> next;
          for (const Perm& el : rest)
            if (around[j]->group().contains(el)) next.push_back(el);
          rest = std::move(next);
        }
      }
      std::uint64_t meet = 0;
      for (const Perm& el : rest)
        if (around[i]->group().contains(el)) ++meet;
      bool prod_ok = around[i]->order() * rest.size() == support_order * meet;
      if (!prod_ok && valency_two)
        fail(ErrorKind::UnsupportedRow,
             "the three pieces do not form a strong multiple factorization of the support product");
      checks.require("1s.out.strip_product[" + std::to_string(y) + "." + std::to_string(i) + "]", prod_ok);
    }
  }
  construction_detail::throw_if_failed(checks);

  // assemble members
  std::vector<ProductSubgroup> members;
  for (int v = 0; v < nv; ++v) {
    std::vector<Perm> gens;
    for (int y = 0; y < ny; ++y) {
      auto it1 = e1_pieces.find({v, y});
      auto it2 = e2_pieces.find({v, y});
      const ProductSubgroup* piece = nullptr;
      if (it1 != e1_pieces.end()) piece = &it1->second;
      if (it2 != e2_pieces.end()) piece = &it2->second;
      if (piece) {
        for (const Perm& g : piece->group().generators()) gens.push_back(g);
      } else {
        for (int c : ys[y].support)
          for (const Perm& g : t.generators()) gens.push_back(m->embed_factor(g, c));
      }
    }
    if (gens.empty()) gens.push_back(Perm::identity(m->degree()));
    members.emplace_back(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
  }

  CartesianSystem sys(spec.instance, members);
  SystemReport rep = verify_system(sys);
  checks.require("1s.out.system_valid", rep.valid);
  checks.require("1s.out.invariant", sys.is_g_invariant());
  ClassifyOptions lenient;
  lenient.throw_on_violation = false;
  Classification cls = classify(sys, lenient);
  checks.require("1s.out.class", cls.label == ClassLabel::C1S, class_label_name(cls.label));
  checks.require("1s.out.structure", cls.checks.all_pass());
  BipartiteExtraction ex = extract_1s(sys, lenient);
  BipartiteLabeledGraph wanted;
  wanted.member_ids = spec.member_ids;
  for (int y = 0; y < ny; ++y) wanted.strip_ids.push_back("Y" + std::to_string(y));
  wanted.e1 = spec.e1;
  wanted.e2 = spec.e2;
  checks.require("1s.out.graph_isomorphic", bipartite_graphs_isomorphic(ex.graph, wanted));
  construction_detail::throw_if_failed(checks);
  return ConstructionResult{std::move(sys), std::move(cls), std::move(checks), std::move(warnings)};
}

}  // namespace cartdec
