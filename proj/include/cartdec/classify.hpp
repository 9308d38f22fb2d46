#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cartdec/error.hpp"
#include "cartdec/system.hpp"

namespace cartdec {

enum class ClassLabel { S, C1, C1S, C2Sim, C2Nsim, C3 };

inline const char* class_label_name(ClassLabel c) {
  switch (c) {
    case ClassLabel::S: return "S";
    case ClassLabel::C1: return "1";
    case ClassLabel::C1S: return "1S";
    case ClassLabel::C2Sim: return "2sim";
    case ClassLabel::C2Nsim: return "2nsim";
    case ClassLabel::C3: return "3";
  }
  return "?";
}

inline std::optional<ClassLabel> class_label_from_name(const std::string& s) {
  if (s == "S") return ClassLabel::S;
  if (s == "1") return ClassLabel::C1;
  if (s == "1S") return ClassLabel::C1S;
  if (s == "2sim") return ClassLabel::C2Sim;
  if (s == "2nsim") return ClassLabel::C2Nsim;
  if (s == "3") return ClassLabel::C3;
  return std::nullopt;
}

struct FiEntry {
  int member = -1;          // index into the system's canonical member list
  PermGroup projection;     // sigma_i(K_member) on the factor's points, proper
};

struct FiReport {
  std::vector<std::vector<FiEntry>> per_coordinate;
  CheckList checks;

  std::size_t common_size() const { return per_coordinate.empty() ? 0 : per_coordinate[0].size(); }
};

// The proper projections of system members, coordinate by coordinate, with
// the structural facts: |F_i| is independent of i and at most 3.
inline FiReport compute_fi(const CartesianSystem& s) {
  FiReport rep;
  const ProductGroup& m = s.instance().m();
  std::uint64_t t_order = m.factor().order();
  for (int i = 0; i < m.k(); ++i) {
    std::vector<FiEntry> entries;
    for (std::size_t j = 0; j < s.size(); ++j) {
      PermGroup proj = s.members()[j].project_factor(i);
      if (proj.order() < t_order) entries.push_back(FiEntry{static_cast<int>(j), std::move(proj)});
    }
    rep.per_coordinate.push_back(std::move(entries));
  }
  bool uniform = true;
  for (const auto& e : rep.per_coordinate) uniform = uniform && e.size() == rep.per_coordinate[0].size();
  rep.checks.require("fi.size_uniform", uniform);
  rep.checks.require("fi.size_bound", uniform && rep.common_size() <= 3,
                     "|F_i| = " + std::to_string(rep.common_size()));
  // distinctness within a coordinate (forced by Eq (2) when proper)
  bool distinct = true;
  for (const auto& entries : rep.per_coordinate)
    for (std::size_t a = 0; a < entries.size() && distinct; ++a)
      for (std::size_t b = a + 1; b < entries.size(); ++b)
        if (entries[a].projection.same_group(entries[b].projection)) {
          distinct = false;
          break;
        }
  rep.checks.require("fi.distinct_projections", distinct);
  return rep;
}

struct StripCensus {
  std::vector<Strip> strips;   // all nontrivial full strips involved in members
  std::vector<int> owner;      // member index involving each strip
  CheckList checks;

  bool any() const { return !strips.empty(); }
};

inline StripCensus collect_strips(const CartesianSystem& s) {
  StripCensus census;
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto dec = detect_strips(s.members()[j]);
    census.checks.require("strips.clean[" + std::to_string(j) + "]", dec.clean, dec.detail);
    for (Strip& x : dec.strips) {
      census.strips.push_back(std::move(x));
      census.owner.push_back(static_cast<int>(j));
    }
  }
  std::vector<std::size_t> order(census.strips.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return census.strips[a].support < census.strips[b].support;
  });
  std::vector<Strip> strips;
  std::vector<int> owner;
  for (std::size_t i : order) {
    strips.push_back(census.strips[i]);
    owner.push_back(census.owner[i]);
  }
  census.strips = std::move(strips);
  census.owner = std::move(owner);
  return census;
}

struct ClassifyOptions {
  bool require_transitive = false;  // strict class membership needs a transitive system
  bool throw_on_violation = true;   // structural assertion failures raise InvariantViolation
};

struct Classification {
  ClassLabel label = ClassLabel::S;
  bool invariant = false;
  bool transitive = false;
  FiReport fi;
  StripCensus strips;
  std::optional<GOmegaAction> conjugacy_witness;  // fuses the two F_0 members (2sim)
  CheckList checks;
};

// Embeds a factor-degree subgroup at one coordinate of M.
inline ProductSubgroup embed_at(const std::shared_ptr<const ProductGroup>& m, const PermGroup& h, int coord) {
  std::vector<Perm> gens;
  for (const Perm& g : h.generators()) gens.push_back(m->embed_factor(g, coord));
  if (gens.empty()) gens.push_back(Perm::identity(m->degree()));
  return ProductSubgroup(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
}

// Six-way classification by |F_i|, strip involvement and the conjugacy split,
// together with the structural assertions about strips. Requires invariance;
// transitivity is recorded as evidence (strict mode raises NotTransitive).
inline Classification classify(const CartesianSystem& s, const ClassifyOptions& opts = {}) {
  Classification out;
  out.invariant = s.is_g_invariant();
  if (!out.invariant) fail(ErrorKind::NotInvariant, "G_omega does not permute the members");
  out.transitive = s.is_transitive();
  if (opts.require_transitive && !out.transitive)
    fail(ErrorKind::NotTransitive, "members form more than one G_omega orbit");

  out.fi = compute_fi(s);
  out.strips = collect_strips(s);
  out.checks.merge(out.fi.checks);
  out.checks.merge(out.strips.checks);

  std::size_t fsize = out.fi.common_size();
  bool have_strips = out.strips.any();

  // structural assertions about strips on classified systems
  if (have_strips) {
    out.checks.require("strips.fi_bound", s.instance().m().k() >= 2 && fsize <= 1,
                       "|F_i| = " + std::to_string(fsize));
    if (fsize == 1) {
      bool all2 = true;
      for (const Strip& x : out.strips.strips) all2 = all2 && x.support.size() == 2;
      out.checks.require("strips.support_pairs", all2);
    }
    bool disjoint = true;
    for (std::size_t a = 0; a < out.strips.strips.size(); ++a)
      for (std::size_t b = a + 1; b < out.strips.strips.size(); ++b) {
        for (int c : out.strips.strips[a].support)
          if (std::find(out.strips.strips[b].support.begin(), out.strips.strips[b].support.end(), c) !=
              out.strips.strips[b].support.end())
            disjoint = false;
      }
    out.checks.require("strips.disjoint", disjoint);

    // support sets are permuted by G_omega; on a transitive system they
    // partition the whole factor set
    std::set<std::vector<int>> supports;
    for (const Strip& x : out.strips.strips) supports.insert(x.support);
    bool invariant_partition = true;
    for (const Perm& b : s.instance().g_omega().closure().elements()) {
      GOmegaAction act = GOmegaAction::from_big(s.instance().m(), b);
      for (const auto& supp : supports) {
        std::vector<int> image;
        for (int c : supp) image.push_back(act.coord_perm()[c]);
        std::sort(image.begin(), image.end());
        if (!supports.count(image)) invariant_partition = false;
      }
    }
    out.checks.require("strips.invariant_partition", invariant_partition);
    if (out.transitive) {
      std::size_t covered = 0;
      for (const auto& supp : supports) covered += supp.size();
      out.checks.require("strips.cover", covered == static_cast<std::size_t>(s.instance().m().k()));
    } else {
      out.checks.skip("strips.cover", "system is not member-transitive");
    }
  }

  if (fsize == 0) {
    out.label = ClassLabel::S;
  } else if (fsize == 1) {
    out.label = have_strips ? ClassLabel::C1S : ClassLabel::C1;
  } else if (fsize == 2) {
    const auto& entries = out.fi.per_coordinate[0];
    ProductSubgroup a = embed_at(s.instance().m_ptr(), entries[0].projection, 0);
    ProductSubgroup b = embed_at(s.instance().m_ptr(), entries[1].projection, 0);
    out.conjugacy_witness = s.instance().g_omega().conjugating_action(a, b);
    out.label = out.conjugacy_witness ? ClassLabel::C2Sim : ClassLabel::C2Nsim;
  } else if (fsize == 3) {
    out.label = ClassLabel::C3;
  } else {
    out.checks.require("fi.classifiable", false, "|F_i| > 3");
  }

  if (opts.throw_on_violation && !out.checks.all_pass()) {
    std::string ids;
    for (const auto& id : out.checks.failed_ids()) ids += id + " ";
    fail(ErrorKind::InvariantViolation, "structural assertion failed: " + ids);
  }
  return out;
}

}  // namespace cartdec
