#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartdec/error.hpp"
#include "cartdec/instance.hpp"
#include "cartdec/report.hpp"

namespace cartdec {

// A set {K_1,...,K_l} of distinct subgroups of M attached to a pointed
// instance. Members are stored in canonical order (order, then element list),
// so ids K1..Kl and every derived report are deterministic. Duplicates are
// rejected here; everything else (properness, the two defining equations) is
// the business of verify_system, which reports rather than throws.
class CartesianSystem {
 public:
  CartesianSystem(std::shared_ptr<const PointedInstance> instance, std::vector<ProductSubgroup> members)
      : instance_(std::move(instance)), members_(std::move(members)) {
    if (members_.empty()) fail(ErrorKind::InvalidSystem, "a system needs at least one member");
    for (const ProductSubgroup& k : members_)
      if (k.parent_ptr().get() != instance_->m_ptr().get())
        fail(ErrorKind::InvalidSystem, "member attached to a different product group");
    std::sort(members_.begin(), members_.end(), ProductSubgroup::canonical_less);
    for (std::size_t i = 0; i + 1 < members_.size(); ++i)
      if (members_[i].same_subgroup(members_[i + 1]))
        fail(ErrorKind::DuplicateMember, "duplicate member subgroup");
  }

  const std::shared_ptr<const PointedInstance>& instance_ptr() const { return instance_; }
  const PointedInstance& instance() const { return *instance_; }
  const std::vector<ProductSubgroup>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  int member_index_of(const ProductSubgroup& k) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (members_[i].same_subgroup(k)) return static_cast<int>(i);
    return -1;
  }

  // Action of the G_omega closure on member indices; monostate nullopt when
  // some closure element fails to permute the member set.
  const std::optional<std::vector<Perm>>& member_action() const {
    if (!action_computed_) {
      action_computed_ = true;
      action_ = compute_member_action();
    }
    return action_;
  }

  bool is_g_invariant() const { return member_action().has_value(); }

  bool is_transitive() const {
    const auto& act = member_action();
    if (!act) return false;
    PermGroup on_members(static_cast<int>(members_.size()), *act);
    return on_members.is_transitive();
  }

  // The same member set viewed from the basepoint omega * m.
  CartesianSystem conjugated_by_plinth_element(const Perm& m_element) const;

 private:
  std::optional<std::vector<Perm>> compute_member_action() const {
    const auto& closure = instance_->g_omega().closure().elements();
    std::vector<Perm> images;
    images.reserve(closure.size());
    for (const Perm& b : closure) {
      std::vector<std::uint16_t> img(members_.size());
      for (std::size_t j = 0; j < members_.size(); ++j) {
        int target = -1;
        for (std::size_t t = 0; t < members_.size(); ++t) {
          if (members_[t].order() != members_[j].order()) continue;
          bool inside = true;
          for (const Perm& gen : members_[j].group().generators())
            if (!members_[t].group().contains(gen.conjugated_by(b))) {
              inside = false;
              break;
            }
          if (inside) {
            target = static_cast<int>(t);
            break;
          }
        }
        if (target < 0) return std::nullopt;
        img[j] = static_cast<std::uint16_t>(target);
      }
      images.push_back(Perm::from_images(std::move(img)));
    }
    return images;
  }

  std::shared_ptr<const PointedInstance> instance_;
  std::vector<ProductSubgroup> members_;
  mutable bool action_computed_ = false;
  mutable std::optional<std::vector<Perm>> action_;
};

struct SystemReport {
  CheckList checks;
  bool valid = false;
  std::uint64_t m_order = 0;
  std::uint64_t m_omega_order = 0;
  std::vector<std::uint64_t> member_orders;
  std::vector<std::uint64_t> member_indices;  // |M : K_i|
};

// Checks the two defining equations, properness and distinctness, reporting
// every clause. Eq (2) is tested by exact order arithmetic:
// |K D| = |K||D| / |K ∩ D| for D the intersection of the other members.
inline SystemReport verify_system(const CartesianSystem& s) {
  SystemReport rep;
  const PointedInstance& inst = s.instance();
  const PermGroup& m = inst.m().big();
  rep.m_order = m.order();
  rep.m_omega_order = inst.m_omega().order();

  rep.checks.require("system.distinct", true, "enforced at construction");

  bool all_proper = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const ProductSubgroup& k = s.members()[i];
    rep.member_orders.push_back(k.order());
    rep.member_indices.push_back(m.order() / k.order());
    bool proper = k.order() < m.order();
    all_proper = all_proper && proper;
    rep.checks.require("system.proper[" + std::to_string(i) + "]", proper,
                       "|K| = " + std::to_string(k.order()));
  }

  // Eq (1): the intersection of all members is M_omega.
  std::vector<Perm> common = s.members()[0].group().elements();
  for (std::size_t i = 1; i < s.size(); ++i) {
    const PermGroup& g = s.members()[i].group();
    std::vector<Perm> next;
    for (const Perm& e : common)
      if (g.contains(e)) next.push_back(e);
    common = std::move(next);
  }
  bool eq1 = common == inst.m_omega().group().elements();
  rep.checks.require("system.eq1", eq1, "|intersection| = " + std::to_string(common.size()));

  // Eq (2) for every index.
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<Perm> rest;
    bool first = true;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      if (first) {
        rest = s.members()[j].group().elements();
        first = false;
      } else {
        const PermGroup& g = s.members()[j].group();
        std::vector<Perm> next;
        for (const Perm& e : rest)
          if (g.contains(e)) next.push_back(e);
        rest = std::move(next);
      }
    }
    bool eq2;
    if (first) {
      // l = 1: the empty intersection is M by convention, so K * M = M always.
      eq2 = true;
    } else {
      const PermGroup& kg = s.members()[i].group();
      std::uint64_t meet = 0;
      for (const Perm& e : rest)
        if (kg.contains(e)) ++meet;
      eq2 = kg.order() * rest.size() == m.order() * meet;
    }
    rep.checks.require("system.eq2[" + std::to_string(i) + "]", eq2);
  }

  rep.valid = rep.checks.all_pass();
  return rep;
}

// An M-invariant partition of Omega, as block ids per point. Blocks are
// numbered by their minimal point, ascending.
struct Partition {
  std::vector<int> block_of;
  int num_blocks = 0;

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(num_blocks);
    for (std::size_t p = 0; p < block_of.size(); ++p) out[block_of[p]].push_back(static_cast<int>(p));
    return out;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.block_of == b.block_of;
  }
};

// The M-invariant partition with basepoint block omega^K: the block through
// the point with representative r is { M_omega k r : k in K }. (The right-
// multiplication orbits of K would group by left cosets instead and are not
// M-invariant.)
inline Partition partition_from_subgroup(const PointedInstance& inst, const ProductSubgroup& k) {
  const OmegaSpace& om = inst.omega();
  const auto& kels = k.group().elements();
  Partition part;
  part.block_of.assign(om.size(), -1);
  for (int start = 0; start < om.size(); ++start) {
    if (part.block_of[start] >= 0) continue;
    int id = part.num_blocks++;
    const Perm& r = om.reps()[start];
    for (const Perm& ke : kels) {
      int pt = om.point_of(ke * r);
      if (part.block_of[pt] < 0)
        part.block_of[pt] = id;
      else if (part.block_of[pt] != id)
        fail(ErrorKind::InvalidInstance, "coset blocks overlap: subgroup does not contain M_omega");
    }
  }
  return part;
}

class CartesianDecomposition {
 public:
  CartesianDecomposition(std::shared_ptr<const PointedInstance> instance, std::vector<Partition> partitions)
      : instance_(std::move(instance)), partitions_(std::move(partitions)) {
    if (partitions_.empty()) fail(ErrorKind::InvalidDecomposition, "empty decomposition");
  }

  const std::shared_ptr<const PointedInstance>& instance_ptr() const { return instance_; }
  const PointedInstance& instance() const { return *instance_; }
  const std::vector<Partition>& partitions() const { return partitions_; }

 private:
  std::shared_ptr<const PointedInstance> instance_;
  std::vector<Partition> partitions_;
};

// Validity: every partition proper (>= 2 blocks) and M-invariant, and every
// block tuple meets in exactly one point (checked via the tuple map being a
// bijection together with the counting identity).
inline CheckList validate_decomposition(const CartesianDecomposition& d) {
  CheckList checks;
  const PointedInstance& inst = d.instance();
  const OmegaSpace& om = inst.omega();

  std::uint64_t grid = 1;
  for (std::size_t i = 0; i < d.partitions().size(); ++i) {
    const Partition& part = d.partitions()[i];
    checks.require("decomposition.proper[" + std::to_string(i) + "]", part.num_blocks >= 2,
                   std::to_string(part.num_blocks) + " blocks");
    bool invariant = true;
    for (const Perm& g : inst.m().big().generators()) {
      auto tab = om.action_table(g);
      // blocks must map onto blocks
      std::vector<int> image_block(part.num_blocks, -1);
      for (int p = 0; p < om.size() && invariant; ++p) {
        int b = part.block_of[p];
        int ib = part.block_of[tab[p]];
        if (image_block[b] < 0)
          image_block[b] = ib;
        else if (image_block[b] != ib)
          invariant = false;
      }
      if (!invariant) break;
    }
    checks.require("decomposition.m_invariant[" + std::to_string(i) + "]", invariant);
    grid *= static_cast<std::uint64_t>(part.num_blocks);
  }

  bool counting = grid == static_cast<std::uint64_t>(om.size());
  checks.require("decomposition.grid_count", counting,
                 "prod(blocks) = " + std::to_string(grid) + ", |Omega| = " + std::to_string(om.size()));

  bool injective = true;
  if (counting) {
    std::vector<std::vector<int>> tuples(om.size());
    for (int p = 0; p < om.size(); ++p) {
      tuples[p].reserve(d.partitions().size());
      for (const Partition& part : d.partitions()) tuples[p].push_back(part.block_of[p]);
    }
    std::sort(tuples.begin(), tuples.end());
    injective = std::adjacent_find(tuples.begin(), tuples.end()) == tuples.end();
  } else {
    injective = false;
  }
  checks.require("decomposition.tuple_bijection", injective);
  return checks;
}

// The decomposition side of the correspondence: one partition per member,
// blocks = K_i-coset blocks through the basepoint, translated by M.
inline CartesianDecomposition decomposition_from_system(const CartesianSystem& s) {
  SystemReport rep = verify_system(s);
  if (!rep.valid) {
    std::string ids;
    for (const auto& id : rep.checks.failed_ids()) ids += id + " ";
    fail(ErrorKind::InvalidSystem, "system fails verification: " + ids);
  }
  std::vector<Partition> parts;
  parts.reserve(s.size());
  for (const ProductSubgroup& k : s.members()) parts.push_back(partition_from_subgroup(s.instance(), k));
  CartesianDecomposition d(s.instance_ptr(), std::move(parts));
  CheckList v = validate_decomposition(d);
  if (!v.all_pass()) fail(ErrorKind::InvariantViolation, "system produced an invalid decomposition");
  return d;
}

// The system side: K_i = setwise stabilizer in M of the block through the
// basepoint.
inline CartesianSystem system_from_decomposition(const CartesianDecomposition& d) {
  CheckList v = validate_decomposition(d);
  if (!v.all_pass()) fail(ErrorKind::InvalidDecomposition, "decomposition fails validation");
  const PointedInstance& inst = d.instance();
  const OmegaSpace& om = inst.omega();
  std::vector<ProductSubgroup> members;
  for (const Partition& part : d.partitions()) {
    int base_block = part.block_of[0];
    std::vector<Perm> stab;
    for (const Perm& e : inst.m().big().elements())
      if (part.block_of[om.point_of(e)] == base_block) stab.push_back(e);
    members.push_back(inst.subgroup_from_elements(std::move(stab)));
  }
  return CartesianSystem(d.instance_ptr(), std::move(members));
}

inline CartesianSystem CartesianSystem::conjugated_by_plinth_element(const Perm& m_element) const {
  const PointedInstance& inst = *instance_;
  ProductSubgroup new_stab = inst.m_omega().conjugated_by_big(m_element);
  std::vector<GOmegaAction> new_gens;
  for (const GOmegaAction& g : inst.g_omega().action_generators())
    new_gens.push_back(GOmegaAction::from_big(inst.m(), g.big().conjugated_by(m_element)));
  GOmegaGroup new_gomega(inst.m_ptr(), std::move(new_gens), inst.g_omega().closure().element_cap());
  auto new_inst = std::make_shared<PointedInstance>(inst.m_ptr(), std::move(new_stab), std::move(new_gomega),
                                                    inst.point_cap());
  std::vector<ProductSubgroup> new_members;
  for (const ProductSubgroup& k : members_) new_members.push_back(k.conjugated_by_big(m_element));
  return CartesianSystem(std::move(new_inst), std::move(new_members));
}

}  // namespace cartdec
