#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartdec/classify.hpp"
#include "cartdec/system.hpp"

namespace cartdec {

// The registry behind the isomorphism properties: factorizations T = A B of a
// simple group with two isomorphic subgroups, keyed by (|T|, |A|, |A meet B|).
// Rows 3 and 4 are parametric families kept as metadata; no executable
// instance carries them.
struct FactorizationRow {
  int row;
  std::string t_name;
  std::string a_name;
  std::string meet_name;
  std::uint64_t t_order;     // 0 for parametric rows
  std::uint64_t a_order;
  std::uint64_t meet_order;
  bool executable;
};

inline const std::vector<FactorizationRow>& factorization_table() {
  static const std::vector<FactorizationRow> rows = {
      {1, "A6", "A5", "D10", 360, 60, 10, true},
      {2, "M12", "M11", "L2(11)", 95040, 7920, 660, true},
      {3, "POmega8+(q)", "Omega7(q)", "G2(q)", 0, 0, 0, false},
      {4, "Sp4(2^a), a>=2", "Sp2(2^(2a)).2", "D(2^(2a)+1).2", 0, 0, 0, false},
  };
  return rows;
}

inline std::optional<FactorizationRow> match_table_row(std::uint64_t t_order, std::uint64_t a_order,
                                                       std::uint64_t meet_order) {
  for (const auto& r : factorization_table())
    if (r.executable && r.t_order == t_order && r.a_order == a_order && r.meet_order == meet_order)
      return r;
  return std::nullopt;
}

struct QuotientResult {
  Partition partition;
  int block_size = 0;
  bool identity = false;  // M0 = M_omega
  bool whole = false;     // M0 = M: single block, no pointed instance
  std::shared_ptr<const PointedInstance> instance;  // null when whole
  CheckList checks;
};

// The invariant partition built from an overgroup M_omega <= M0 <= M that is
// normalized by G_omega, blocks = M0-coset blocks; the quotient instance has
// stabilizer M0 and stabilizer group extended by the inner actions of M0.
inline QuotientResult quotient_partition(const std::shared_ptr<const PointedInstance>& inst,
                                         const ProductSubgroup& m0) {
  const PointedInstance& in = *inst;
  if (!in.m_omega().group().is_subgroup_of(m0.group()))
    fail(ErrorKind::NotBetween, "M0 does not contain M_omega");
  if (!m0.group().is_subgroup_of(in.m().big())) fail(ErrorKind::NotBetween, "M0 is not inside M");
  if (!in.g_omega().normalizes(m0)) fail(ErrorKind::NotNormalized, "G_omega does not normalize M0");

  QuotientResult out;
  out.partition = partition_from_subgroup(in, m0);
  out.block_size = static_cast<int>(m0.order() / in.m_omega().order());
  out.identity = m0.order() == in.m_omega().order();
  out.whole = m0.order() == in.m().big().order();
  out.checks.require("quotient.block_count",
                     static_cast<std::uint64_t>(out.partition.num_blocks) * m0.order() ==
                         in.m().big().order(),
                     std::to_string(out.partition.num_blocks) + " blocks");
  if (!out.whole) {
    std::vector<GOmegaAction> extra;
    for (const Perm& g : m0.group().generators()) extra.push_back(inner_action(in.m(), g));
    GOmegaGroup gq = in.g_omega().extended_with(extra);
    out.instance = std::make_shared<PointedInstance>(in.m_ptr(), m0, std::move(gq), in.point_cap());
  }
  return out;
}

// sigma-product of a subgroup: prod_i sigma_i(K), embedded.
inline ProductSubgroup projection_product(const std::shared_ptr<const ProductGroup>& m,
                                          const ProductSubgroup& k) {
  std::vector<Perm> gens;
  for (int i = 0; i < m->k(); ++i) {
    PermGroup proj = k.project_factor(i);
    for (const Perm& g : proj.generators())
      if (!g.is_identity()) gens.push_back(m->embed_factor(g, i));
  }
  if (gens.empty()) gens.push_back(Perm::identity(m->degree()));
  return ProductSubgroup(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
}

// prod of involved strips x prod of remaining coordinate projections.
inline ProductSubgroup strip_closure_product(const std::shared_ptr<const ProductGroup>& m,
                                             const ProductSubgroup& k) {
  auto dec = detect_strips(k);
  if (!dec.clean) fail(ErrorKind::NoCleanDecomposition, "member does not split into strips and residual");
  std::vector<Perm> gens;
  for (const Strip& x : dec.strips)
    for (const Perm& g : x.subgroup.group().generators()) gens.push_back(g);
  for (int c : dec.residual) {
    PermGroup proj = k.project_factor(c);
    for (const Perm& g : proj.generators())
      if (!g.is_identity()) gens.push_back(m->embed_factor(g, c));
  }
  if (gens.empty()) gens.push_back(Perm::identity(m->degree()));
  return ProductSubgroup(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
}

inline ProductSubgroup normalizer_in_m(const PointedInstance& inst, const ProductSubgroup& h) {
  return ProductSubgroup(inst.m_ptr(), inst.m().big().normalizer(h.group()));
}

struct QuotientSystemResult {
  std::shared_ptr<const PointedInstance> instance;
  std::optional<CartesianSystem> system;
  ProductSubgroup stabilizer;  // the quotient's M_omega-bar
  bool equals_original = false;
  Classification classification;
  CheckList checks;
};

// The class-specific coarsening of a system: members replaced by their
// projection products (2sim / 2nsim) or strip-closure products (1S), base
// stabilizer replaced per class. Verifies the defining equations, the
// stabilizer formula, faithfulness, and that the class label is preserved.
inline QuotientSystemResult quotient_system(const CartesianSystem& s, ClassLabel label,
                                            const ClassifyOptions& opts = {}) {
  if (label != ClassLabel::C2Sim && label != ClassLabel::C2Nsim && label != ClassLabel::C1S)
    fail(ErrorKind::WrongClass, "quotient construction applies to labels 2sim, 2nsim, 1S");

  Classification cls = classify(s, opts);
  if (cls.label != label)
    fail(ErrorKind::WrongClass, std::string("system classifies as ") + class_label_name(cls.label));

  const PointedInstance& inst = s.instance();
  auto m = inst.m_ptr();
  QuotientSystemResult out;

  std::vector<ProductSubgroup> bars;
  for (const ProductSubgroup& k : s.members()) {
    ProductSubgroup bar = (label == ClassLabel::C1S) ? strip_closure_product(m, k) : projection_product(m, k);
    if (label != ClassLabel::C2Nsim && !bar.same_subgroup(k))
      fail(ErrorKind::UnsupportedRow,
           "member differs from its reconstruction; only table rows 1-3 are executable");
    bars.push_back(std::move(bar));
  }

  ProductSubgroup stab = inst.m_omega();
  if (label == ClassLabel::C2Sim) {
    // prod_i N_{T_i}(sigma_i(M_omega))
    std::vector<Perm> gens;
    for (int i = 0; i < m->k(); ++i) {
      PermGroup n = m->factor().normalizer(inst.m_omega().project_factor(i));
      for (const Perm& g : n.generators())
        if (!g.is_identity()) gens.push_back(m->embed_factor(g, i));
    }
    if (gens.empty()) gens.push_back(Perm::identity(m->degree()));
    stab = ProductSubgroup(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
  } else if (label == ClassLabel::C2Nsim) {
    std::vector<Perm> common = bars[0].group().elements();
    for (std::size_t i = 1; i < bars.size(); ++i) {
      std::vector<Perm> next;
      for (const Perm& e : common)
        if (bars[i].group().contains(e)) next.push_back(e);
      common = std::move(next);
    }
    stab = ProductSubgroup(m, PermGroup::from_elements(m->degree(), std::move(common), m->element_cap()));
  } else {
    stab = normalizer_in_m(inst, inst.m_omega());
    // the same subgroup must arise as the meet of the member normalizers,
    // and each member normalizer must be the member's strip closure
    std::optional<std::vector<Perm>> meet;
    for (std::size_t i = 0; i < bars.size(); ++i) {
      ProductSubgroup nk = normalizer_in_m(inst, s.members()[i]);
      out.checks.require("quotient.member_normalizer[" + std::to_string(i) + "]",
                         nk.same_subgroup(bars[i]));
      if (!meet) {
        meet = nk.group().elements();
      } else {
        std::vector<Perm> next;
        for (const Perm& e : *meet)
          if (nk.group().contains(e)) next.push_back(e);
        meet = std::move(next);
      }
    }
    out.checks.require("quotient.stabilizer_meet", meet && *meet == stab.group().elements());
  }

  // cross-check the stabilizer against the meet of the coarsened members (2sim)
  if (label == ClassLabel::C2Sim) {
    std::vector<Perm> common = bars[0].group().elements();
    for (std::size_t i = 1; i < bars.size(); ++i) {
      std::vector<Perm> next;
      for (const Perm& e : common)
        if (bars[i].group().contains(e)) next.push_back(e);
      common = std::move(next);
    }
    out.checks.require("quotient.stabilizer_formula", common == stab.group().elements(),
                       "prod N_T(sigma_i(M_omega)) vs meet of coarsened members");
  }

  out.stabilizer = stab;
  out.equals_original = stab.same_subgroup(inst.m_omega());

  std::vector<GOmegaAction> extra;
  for (const Perm& g : stab.group().generators()) extra.push_back(inner_action(*m, g));
  GOmegaGroup gq = inst.g_omega().extended_with(extra);
  std::shared_ptr<const PointedInstance> qinst;
  try {
    qinst = std::make_shared<PointedInstance>(m, stab, std::move(gq), inst.point_cap());
    out.checks.require("quotient.faithful", true);
  } catch (const Error& e) {
    out.checks.require("quotient.faithful", false, e.what());
    fail(ErrorKind::InvariantViolation, std::string("quotient instance invalid: ") + e.what());
  }
  out.instance = qinst;

  CartesianSystem q(qinst, bars);
  SystemReport qrep = verify_system(q);
  out.checks.require("quotient.system_valid", qrep.valid);
  out.classification = classify(q, opts);
  out.checks.require("quotient.class_preserved", out.classification.label == label,
                     class_label_name(out.classification.label));
  out.system.emplace(std::move(q));

  if (!out.checks.all_pass()) {
    std::string ids;
    for (const auto& id : out.checks.failed_ids()) ids += id + " ";
    fail(ErrorKind::InvariantViolation, "quotient property failed: " + ids);
  }
  return out;
}

}  // namespace cartdec
