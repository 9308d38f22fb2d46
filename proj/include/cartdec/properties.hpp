#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cartdec/classify.hpp"
#include "cartdec/ggraph.hpp"
#include "cartdec/quotient.hpp"
#include "cartdec/system.hpp"

namespace cartdec {

namespace detail {

inline std::vector<Perm> intersect_elements(std::vector<Perm> a, const PermGroup& b) {
  std::vector<Perm> out;
  for (Perm& e : a)
    if (b.contains(e)) out.push_back(std::move(e));
  return out;
}

// Closure elements whose coordinate permutation fixes every listed factor.
inline std::vector<std::size_t> fixing_coordinates(const GOmegaGroup& gw, const std::vector<int>& coords) {
  std::vector<std::size_t> out;
  const auto& els = gw.closure().elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    GOmegaAction a = GOmegaAction::from_big(gw.parent(), els[i]);
    bool fixes = true;
    for (int c : coords)
      if (a.coord_perm()[c] != c) fixes = false;
    if (fixes) out.push_back(i);
  }
  return out;
}

// Closure elements preserving the (unordered) factor set.
inline std::vector<std::size_t> stabilizing_coordinate_set(const GOmegaGroup& gw,
                                                           const std::vector<int>& coords) {
  std::set<int> want(coords.begin(), coords.end());
  std::vector<std::size_t> out;
  const auto& els = gw.closure().elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    GOmegaAction a = GOmegaAction::from_big(gw.parent(), els[i]);
    std::set<int> image;
    for (int c : coords) image.insert(a.coord_perm()[c]);
    if (image == want) out.push_back(i);
  }
  return out;
}

inline bool subgroup_fixed_by(const PermGroup& h, const Perm& big) {
  for (const Perm& g : h.generators())
    if (!h.contains(g.conjugated_by(big))) return false;
  return true;
}

}  // namespace detail

// Factorisation Property, 2sim flavour: for every coordinate the two proper
// projections are isomorphic proper subgroups, conjugate under G_omega, they
// factorize T, their meet is the normalizer of the stabilizer projection, and
// the factor normalizer inside G_omega is exactly the pair stabilizer.
inline CheckList verify_factorisation_2sim(const CartesianSystem& s, const Classification& cls) {
  CheckList checks;
  const PointedInstance& inst = s.instance();
  const PermGroup& t = inst.m().factor();
  auto m = inst.m_ptr();
  const GOmegaGroup& gw = inst.g_omega();

  for (std::size_t i = 0; i < cls.fi.per_coordinate.size(); ++i) {
    const auto& fi = cls.fi.per_coordinate[i];
    std::string ci = "[" + std::to_string(i) + "]";
    if (fi.size() != 2) {
      checks.require("2sim.fact" + ci, false, "expected two proper projections");
      continue;
    }
    const PermGroup& a = fi[0].projection;
    const PermGroup& b = fi[1].projection;
    checks.require("2sim.fact.i.proper" + ci, a.order() < t.order() && b.order() < t.order());
    checks.require("2sim.fact.i.isomorphic" + ci, a.order() == b.order());
    ProductSubgroup ea = embed_at(m, a, static_cast<int>(i));
    ProductSubgroup eb = embed_at(m, b, static_cast<int>(i));
    checks.require("2sim.fact.ii.conjugate" + ci, gw.conjugating_action(ea, eb).has_value());
    PermGroup meet = PermGroup::intersection(a, b);
    checks.require("2sim.fact.iii.product" + ci, a.order() * b.order() == t.order() * meet.order());
    PermGroup norm = t.normalizer(inst.m_omega().project_factor(static_cast<int>(i)));
    checks.require("2sim.fact.iii.intersection" + ci, meet.same_group(norm));

    // N_{G_omega}(T_i) must equal the setwise stabilizer of {A_i, B_i}
    auto fixing = detail::fixing_coordinates(gw, {static_cast<int>(i)});
    const auto& closure = gw.closure().elements();
    std::vector<std::size_t> pair_stab;
    for (std::size_t ei = 0; ei < closure.size(); ++ei) {
      bool keeps = detail::subgroup_fixed_by(ea.group(), closure[ei]) &&
                   detail::subgroup_fixed_by(eb.group(), closure[ei]);
      bool swaps = true;
      for (const Perm& gen : ea.group().generators())
        if (!eb.group().contains(gen.conjugated_by(closure[ei]))) swaps = false;
      for (const Perm& gen : eb.group().generators())
        if (!ea.group().contains(gen.conjugated_by(closure[ei]))) swaps = false;
      if (keeps || swaps) pair_stab.push_back(ei);
    }
    checks.require("2sim.fact.iv.normalizer_pair" + ci, fixing == pair_stab);
  }
  return checks;
}

// Factorisation Property, 2nsim flavour.
inline CheckList verify_factorisation_2nsim(const CartesianSystem& s, const Classification& cls) {
  CheckList checks;
  const PointedInstance& inst = s.instance();
  const PermGroup& t = inst.m().factor();
  auto m = inst.m_ptr();
  const GOmegaGroup& gw = inst.g_omega();

  // M_omega-bar = meet of the projection products
  std::vector<Perm> common;
  for (std::size_t j = 0; j < s.size(); ++j) {
    ProductSubgroup bar = projection_product(m, s.members()[j]);
    if (j == 0)
      common = bar.group().elements();
    else
      common = detail::intersect_elements(std::move(common), bar.group());
  }
  PermGroup mbar = PermGroup::from_elements(m->degree(), common, m->element_cap());
  ProductSubgroup mbar_sub(m, mbar);

  for (std::size_t i = 0; i < cls.fi.per_coordinate.size(); ++i) {
    const auto& fi = cls.fi.per_coordinate[i];
    std::string ci = "[" + std::to_string(i) + "]";
    if (fi.size() != 2) {
      checks.require("2nsim.fact" + ci, false, "expected two proper projections");
      continue;
    }
    const PermGroup& a = fi[0].projection;
    const PermGroup& b = fi[1].projection;
    checks.require("2nsim.fact.i.proper" + ci, a.order() < t.order() && b.order() < t.order());
    ProductSubgroup ea = embed_at(m, a, static_cast<int>(i));
    ProductSubgroup eb = embed_at(m, b, static_cast<int>(i));
    checks.require("2nsim.fact.ii.not_conjugate" + ci, !gw.conjugating_action(ea, eb).has_value());
    PermGroup meet = PermGroup::intersection(a, b);
    checks.require("2nsim.fact.iii.product" + ci, a.order() * b.order() == t.order() * meet.order());
    checks.require("2nsim.fact.iii.intersection" + ci,
                   meet.same_group(mbar_sub.project_factor(static_cast<int>(i))));

    // N_{G_omega}(T_i) = N_{G_omega}(A_i) = N_{G_omega}(B_i)
    auto fix_t = detail::fixing_coordinates(gw, {static_cast<int>(i)});
    const auto& closure = gw.closure().elements();
    std::vector<std::size_t> norm_a, norm_b;
    for (std::size_t ei = 0; ei < closure.size(); ++ei) {
      if (detail::subgroup_fixed_by(ea.group(), closure[ei])) norm_a.push_back(ei);
      if (detail::subgroup_fixed_by(eb.group(), closure[ei])) norm_b.push_back(ei);
    }
    checks.require("2nsim.fact.iv.normalizers" + ci, fix_t == norm_a && fix_t == norm_b);
  }
  return checks;
}

// Factorisation Property, 1S flavour: per involved strip.
inline CheckList verify_factorisation_1s(const CartesianSystem& s, const Classification& cls) {
  CheckList checks;
  const PointedInstance& inst = s.instance();
  const PermGroup& t = inst.m().factor();
  auto m = inst.m_ptr();
  const GOmegaGroup& gw = inst.g_omega();
  std::uint64_t t_order = t.order();

  ProductSubgroup nm = normalizer_in_m(inst, inst.m_omega());

  for (std::size_t xi = 0; xi < cls.strips.strips.size(); ++xi) {
    const Strip& x = cls.strips.strips[xi];
    std::string ci = "[" + std::to_string(xi) + "]";
    checks.require("1s.fact.i.full_length_2" + ci, x.full && x.support.size() == 2);

    int cmin = x.min_support(), cmax = x.max_support();
    int ja = -1, jb = -1;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s.members()[j].project_factor(cmin).order() < t_order) ja = static_cast<int>(j);
      if (s.members()[j].project_factor(cmax).order() < t_order) jb = static_cast<int>(j);
    }
    if (ja < 0 || jb < 0) {
      checks.require("1s.fact.ii.proper_sides" + ci, false, "missing proper projection inside the support");
      continue;
    }
    PermGroup a = s.members()[ja].project_factor(cmin);
    PermGroup b = s.members()[jb].project_factor(cmax);
    checks.require("1s.fact.ii.proper_sides" + ci, a.order() < t_order && b.order() < t_order);
    ProductSubgroup ea = embed_at(m, a, cmin);
    ProductSubgroup eb = embed_at(m, b, cmax);
    checks.require("1s.fact.iii.conjugate" + ci, gw.conjugating_action(ea, eb).has_value());

    // X (A x B) = T_min x T_max and X meet (A x B) = sigma_supp(N_M(M_omega))
    std::vector<Perm> ab_gens;
    for (const Perm& g : a.generators()) ab_gens.push_back(m->embed_factor(g, cmin));
    for (const Perm& g : b.generators()) ab_gens.push_back(m->embed_factor(g, cmax));
    ProductSubgroup axb(m, PermGroup(m->degree(), ab_gens, m->element_cap()));
    ProductSubgroup meet = ProductSubgroup::intersection(x.subgroup, axb);
    checks.require("1s.fact.iv.product" + ci,
                   x.subgroup.order() * axb.order() == t_order * t_order * meet.order());
    ProductSubgroup nm_supp = nm.project(x.support);
    checks.require("1s.fact.iv.intersection" + ci, meet.same_subgroup(nm_supp));

    auto stab_set = detail::stabilizing_coordinate_set(gw, x.support);
    const auto& closure = gw.closure().elements();
    std::vector<std::size_t> norm_x, norm_ab;
    for (std::size_t ei = 0; ei < closure.size(); ++ei) {
      if (detail::subgroup_fixed_by(x.subgroup.group(), closure[ei])) norm_x.push_back(ei);
      if (detail::subgroup_fixed_by(axb.group(), closure[ei])) norm_ab.push_back(ei);
    }
    checks.require("1s.fact.v.normalizers" + ci, stab_set == norm_x && stab_set == norm_ab);
  }
  return checks;
}

// Combinatorial Property: runs the class-appropriate extraction and checks
// the orbit and stabilizer clauses. Vertex-set transitivity is skipped (with
// the reason recorded) on systems that are invariant but not transitive.
inline CheckList verify_combinatorial_2sim(const CartesianSystem& s, const ClassifyOptions& opts = {}) {
  CheckList checks;
  GraphExtraction ex = extract_2sim(s, opts);
  checks.merge(ex.checks);
  const GOmegaGroup& gw = s.instance().g_omega();

  // edge transitivity = coordinate transitivity, guaranteed by instance validation
  PermGroup edge_group(static_cast<int>(ex.graph.edge_ids.size()), [&] {
    std::vector<Perm> gens;
    for (const auto& a : ex.closure_action) gens.push_back(a.on_edges);
    return gens;
  }());
  checks.require("2sim.comb.edge_transitive", edge_group.is_transitive());

  PermGroup vertex_group(static_cast<int>(ex.graph.vertices.size()), [&] {
    std::vector<Perm> gens;
    for (const auto& a : ex.closure_action) gens.push_back(a.on_vertices);
    return gens;
  }());
  if (s.is_transitive())
    checks.require("2sim.comb.vertex_transitive", vertex_group.is_transitive());
  else
    checks.skip("2sim.comb.vertex_transitive", "system is invariant but not member-transitive");

  // pointwise-fix compatibility: for g normalizing T_i, fixing (A_i, B_i)
  // pointwise is equivalent to fixing the two incident members pointwise
  Classification cls = classify(s, opts);
  auto m = s.instance().m_ptr();
  const auto& closure = gw.closure().elements();
  bool compat = true;
  for (std::size_t i = 0; i < cls.fi.per_coordinate.size(); ++i) {
    const auto& fi = cls.fi.per_coordinate[i];
    ProductSubgroup ea = embed_at(m, fi[0].projection, static_cast<int>(i));
    ProductSubgroup eb = embed_at(m, fi[1].projection, static_cast<int>(i));
    for (std::size_t ei = 0; ei < closure.size(); ++ei) {
      if (ex.closure_action[ei].on_edges[static_cast<int>(i)] != static_cast<int>(i)) continue;
      bool fixes_ab = detail::subgroup_fixed_by(ea.group(), closure[ei]) &&
                      detail::subgroup_fixed_by(eb.group(), closure[ei]);
      bool fixes_members = ex.closure_action[ei].on_vertices[fi[0].member] == fi[0].member &&
                           ex.closure_action[ei].on_vertices[fi[1].member] == fi[1].member;
      if (fixes_ab != fixes_members) compat = false;
    }
  }
  checks.require("2sim.comb.pair_fix_compatibility", compat);
  return checks;
}

inline CheckList verify_combinatorial_2nsim(const CartesianSystem& s, const ClassifyOptions& opts = {}) {
  CheckList checks;
  DiGraphExtraction ex = extract_2nsim(s, opts);
  checks.merge(ex.checks);

  PermGroup arc_group(static_cast<int>(ex.graph.arc_ids.size()), [&] {
    std::vector<Perm> gens;
    for (const auto& a : ex.closure_action) gens.push_back(a.second);
    return gens;
  }());
  checks.require("2nsim.comb.arc_transitive", arc_group.is_transitive());

  PermGroup vertex_group(static_cast<int>(ex.graph.vertices.size()), [&] {
    std::vector<Perm> gens;
    for (const auto& a : ex.closure_action) gens.push_back(a.first);
    return gens;
  }());
  if (s.is_transitive())
    checks.require("2nsim.comb.vertex_transitive", vertex_group.is_transitive());
  else
    checks.skip("2nsim.comb.vertex_transitive", "system is invariant but not member-transitive");
  return checks;
}

inline CheckList verify_combinatorial_1s(const CartesianSystem& s, const ClassifyOptions& opts = {}) {
  CheckList checks;
  BipartiteExtraction ex = extract_1s(s, opts);
  checks.merge(ex.checks);
  const GOmegaGroup& gw = s.instance().g_omega();
  const auto& closure = gw.closure().elements();

  auto orbit_single = [&](const std::vector<std::pair<int, int>>& edges,
                          bool member_side_first) -> bool {
    if (edges.empty()) return false;
    std::set<std::pair<int, int>> seen{edges[0]};
    std::vector<std::pair<int, int>> queue{edges[0]};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const auto& act : ex.closure_action) {
        std::pair<int, int> im{act.first[queue[qi].first], act.second[queue[qi].second]};
        if (seen.insert(im).second) queue.push_back(im);
      }
    (void)member_side_first;
    return seen.size() == edges.size() &&
           std::all_of(edges.begin(), edges.end(), [&](auto e) { return seen.count(e) > 0; });
  };

  PermGroup strip_group(static_cast<int>(ex.graph.strip_ids.size()), [&] {
    std::vector<Perm> gens;
    for (const auto& a : ex.closure_action) gens.push_back(a.second);
    return gens;
  }());
  checks.require("1s.comb.strips_transitive", strip_group.is_transitive());
  checks.require("1s.comb.e1_orbit", orbit_single(ex.graph.e1, true));
  checks.require("1s.comb.e2_orbit", orbit_single(ex.graph.e2, true));

  PermGroup member_group(static_cast<int>(ex.graph.member_ids.size()), [&] {
    std::vector<Perm> gens;
    for (const auto& a : ex.closure_action) gens.push_back(a.first);
    return gens;
  }());
  if (s.is_transitive())
    checks.require("1s.comb.members_transitive", member_group.is_transitive());
  else
    checks.skip("1s.comb.members_transitive", "system is invariant but not member-transitive");

  // E1-valency-2 stabilizer clause
  std::vector<int> val1(ex.graph.strip_ids.size(), 0);
  for (const auto& e : ex.graph.e1) ++val1[e.second];
  bool any_val2 = std::any_of(val1.begin(), val1.end(), [](int v) { return v == 2; });
  if (!any_val2) {
    checks.skip("1s.comb.val2_stabilizer", "every strip has one proper-projection edge");
  } else {
    bool ok = true;
    for (const auto& e : ex.graph.e1) {
      const Strip& x = ex.strips[e.second];
      auto fix_both = detail::fixing_coordinates(gw, {x.min_support(), x.max_support()});
      std::vector<std::size_t> stab_pair;
      for (std::size_t ei = 0; ei < closure.size(); ++ei)
        if (ex.closure_action[ei].first[e.first] == e.first &&
            ex.closure_action[ei].second[e.second] == e.second)
          stab_pair.push_back(ei);
      if (stab_pair != fix_both) ok = false;
    }
    checks.require("1s.comb.val2_stabilizer", ok);
  }
  return checks;
}

struct IsomorphismReport {
  CheckList checks;
  std::optional<FactorizationRow> row;
};

// Isomorphism Property for labels 2sim and 1S: matches the factorization
// table row from (|T|, |A|, |meet|), checks the quotient stabilizer is
// self-normalizing and (rows 1-3) equals M_omega, with the quotient faithful.
inline IsomorphismReport verify_isomorphism_property(const CartesianSystem& s, ClassLabel label,
                                                     const ClassifyOptions& opts = {}) {
  if (label != ClassLabel::C2Sim && label != ClassLabel::C1S)
    fail(ErrorKind::WrongClass, "isomorphism property applies to labels 2sim and 1S");
  IsomorphismReport rep;
  Classification cls = classify(s, opts);
  const PointedInstance& inst = s.instance();
  std::uint64_t t_order = inst.m().factor().order();

  std::uint64_t a_order = 0, meet_order = 0;
  if (label == ClassLabel::C2Sim) {
    const auto& f0 = cls.fi.per_coordinate[0];
    a_order = f0[0].projection.order();
    meet_order = PermGroup::intersection(f0[0].projection, f0[1].projection).order();
  } else {
    const Strip& x = cls.strips.strips[0];
    for (std::size_t j = 0; j < s.size(); ++j) {
      std::uint64_t po = s.members()[j].project_factor(x.min_support()).order();
      if (po < t_order) a_order = po;
    }
    // the support projection of N_M(M_omega) is a strip over the meet group
    ProductSubgroup nm = normalizer_in_m(inst, inst.m_omega());
    meet_order = nm.project(x.support).order();
  }
  rep.row = match_table_row(t_order, a_order, meet_order);
  if (!rep.row)
    fail(ErrorKind::UnsupportedRow, "(|T|,|A|,|meet|) = (" + std::to_string(t_order) + "," +
                                        std::to_string(a_order) + "," + std::to_string(meet_order) +
                                        ") matches no executable table row");
  rep.checks.require("isom.row_matched", true,
                     "row " + std::to_string(rep.row->row) + ": " + rep.row->t_name);

  QuotientSystemResult q = quotient_system(s, label, opts);
  rep.checks.require("isom.quotient_faithful", true, "quotient instance constructed");
  ProductSubgroup nstab = normalizer_in_m(inst, q.stabilizer);
  rep.checks.require("isom.stabilizer_self_normalizing", nstab.same_subgroup(q.stabilizer));
  rep.checks.require("isom.stabilizer_equals_m_omega", q.equals_original,
                     "rows 1-3 coarsening is trivial");
  return rep;
}

struct PropertyRunReport {
  ClassLabel label;
  bool transitive = false;
  CheckList factorisation;
  CheckList combinatorial;
  CheckList quotient;
  CheckList isomorphism;
  std::optional<FactorizationRow> row;

  bool all_pass() const {
    return factorisation.all_pass() && combinatorial.all_pass() && quotient.all_pass() &&
           isomorphism.all_pass();
  }
};

// Runs every property suite that applies to the system's class.
inline PropertyRunReport run_property_suites(const CartesianSystem& s, const ClassifyOptions& opts = {}) {
  PropertyRunReport rep;
  Classification cls = classify(s, opts);
  rep.label = cls.label;
  rep.transitive = cls.transitive;
  switch (cls.label) {
    case ClassLabel::C2Sim: {
      rep.factorisation = verify_factorisation_2sim(s, cls);
      rep.combinatorial = verify_combinatorial_2sim(s, opts);
      rep.quotient = quotient_system(s, cls.label, opts).checks;
      IsomorphismReport iso = verify_isomorphism_property(s, cls.label, opts);
      rep.isomorphism = iso.checks;
      rep.row = iso.row;
      break;
    }
    case ClassLabel::C2Nsim: {
      rep.factorisation = verify_factorisation_2nsim(s, cls);
      rep.combinatorial = verify_combinatorial_2nsim(s, opts);
      rep.quotient = quotient_system(s, cls.label, opts).checks;
      rep.isomorphism.skip("isom", "no isomorphism property for label 2nsim");
      break;
    }
    case ClassLabel::C1S: {
      rep.factorisation = verify_factorisation_1s(s, cls);
      rep.combinatorial = verify_combinatorial_1s(s, opts);
      rep.quotient = quotient_system(s, cls.label, opts).checks;
      IsomorphismReport iso = verify_isomorphism_property(s, cls.label, opts);
      rep.isomorphism = iso.checks;
      rep.row = iso.row;
      break;
    }
    default: {
      rep.factorisation.skip("fact", "no property suite for this label");
      rep.combinatorial.skip("comb", "no property suite for this label");
      rep.quotient.skip("quotient", "no property suite for this label");
      rep.isomorphism.skip("isom", "no property suite for this label");
      break;
    }
  }
  return rep;
}

}  // namespace cartdec
