#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "cartdec/error.hpp"
#include "cartdec/gomega.hpp"
#include "cartdec/perm_group.hpp"
#include "cartdec/product.hpp"

namespace cartdec {

// The realized point set Omega = right cosets of M_omega in M, with the
// basepoint omega = the trivial coset at index 0. Built once per instance
// and shared read-only.
class OmegaSpace {
 public:
  OmegaSpace() = default;

  OmegaSpace(const PermGroup& m, const PermGroup& m_omega, std::uint64_t point_cap) {
    std::uint64_t size = m.order() / m_omega.order();
    if (size > point_cap) fail(ErrorKind::CapExceeded, "omega space larger than point cap");
    stab_elements_ = m_omega.elements();
    reps_.push_back(canonical(Perm::identity(m.degree())));
    index_.emplace(reps_[0], 0);
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      for (const Perm& g : m.generators()) {
        Perm moved = canonical(reps_[i] * g);
        auto [it, inserted] = index_.try_emplace(moved, static_cast<int>(reps_.size()));
        if (inserted) reps_.push_back(moved);
      }
    }
    if (reps_.size() != size) fail(ErrorKind::InvalidInstance, "coset enumeration mismatch");
  }

  int size() const { return static_cast<int>(reps_.size()); }
  const std::vector<Perm>& reps() const { return reps_; }

  // Index of the coset hit by acting with x on the basepoint coset: omega * x.
  int point_of(const Perm& x) const {
    auto it = index_.find(canonical(x));
    if (it == index_.end()) fail(ErrorKind::InvalidInstance, "element outside the acting group");
    return it->second;
  }

  int act_point(int idx, const Perm& x) const { return point_of(reps_[idx] * x); }

  // Conjugation action of a stabilizer automorphism: coset rep r -> r^g.
  int act_point_conj(int idx, const Perm& g_big) const {
    return point_of(reps_[idx].conjugated_by(g_big));
  }

  // Per-point image table of an element of M (or of a normalizing carrier
  // permutation when conj = true).
  std::vector<int> action_table(const Perm& x, bool conj = false) const {
    std::vector<int> out(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i)
      out[i] = conj ? act_point_conj(static_cast<int>(i), x) : act_point(static_cast<int>(i), x);
    return out;
  }

 private:
  Perm canonical(const Perm& x) const {
    const auto& h = stab_elements_;
    Perm best = h.front() * x;
    for (std::size_t i = 1; i < h.size(); ++i) {
      Perm c = h[i] * x;
      if (c < best) best = c;
    }
    return best;
  }

  std::vector<Perm> stab_elements_;
  std::vector<Perm> reps_;
  std::unordered_map<Perm, int, PermHash> index_;
};

// A pointed innately transitive action: M = T^k with point stabilizer
// M_omega and the modelled G_omega normalizing it. Validation enforces
// properness, coordinate transitivity of G_omega (plinth minimality),
// setwise stabilization of M_omega, and faithfulness on Omega (no simple
// factor inside the stabilizer).
class PointedInstance {
 public:
  PointedInstance() = default;

  PointedInstance(std::shared_ptr<const ProductGroup> m, ProductSubgroup m_omega, GOmegaGroup g_omega,
                  std::uint64_t point_cap = kDefaultElementCap)
      : m_(std::move(m)), m_omega_(std::move(m_omega)), g_omega_(std::move(g_omega)), point_cap_(point_cap) {
    if (m_omega_.order() >= m_->big().order())
      fail(ErrorKind::InvalidInstance, "M_omega must be a proper subgroup of M");
    if (!m_omega_.group().is_subgroup_of(m_->big()))
      fail(ErrorKind::InvalidInstance, "M_omega is not a subgroup of M");
    if (!g_omega_.normalizes(m_omega_))
      fail(ErrorKind::InvalidInstance, "a G_omega generator does not fix M_omega setwise");
    if (!g_omega_.coordinate_orbit_transitive())
      fail(ErrorKind::InvalidInstance, "G_omega does not permute the factors transitively");
    for (int i = 0; i < m_->k(); ++i) {
      if (factor_inside_stabilizer(i))
        fail(ErrorKind::InvalidInstance, "M is not faithful on Omega: a factor lies in M_omega");
    }
  }

  const std::shared_ptr<const ProductGroup>& m_ptr() const { return m_; }
  const ProductGroup& m() const { return *m_; }
  const ProductSubgroup& m_omega() const { return m_omega_; }
  const GOmegaGroup& g_omega() const { return g_omega_; }
  std::uint64_t point_cap() const { return point_cap_; }

  std::uint64_t omega_size() const { return m_->big().order() / m_omega_.order(); }

  const OmegaSpace& omega() const {
    if (!omega_) omega_ = std::make_shared<OmegaSpace>(m_->big(), m_omega_.group(), point_cap_);
    return *omega_;
  }

  ProductSubgroup subgroup_from_elements(std::vector<Perm> elements) const {
    return ProductSubgroup(m_, PermGroup::from_elements(m_->degree(), std::move(elements), m_->element_cap()));
  }

 private:
  bool factor_inside_stabilizer(int coord) const {
    // T_i <= M_omega iff the embedded factor's generators all lie in M_omega.
    for (const Perm& g : m_->factor().generators())
      if (!m_omega_.group().contains(m_->embed_factor(g, coord))) return false;
    return true;
  }

  std::shared_ptr<const ProductGroup> m_;
  ProductSubgroup m_omega_;
  GOmegaGroup g_omega_;
  std::uint64_t point_cap_ = kDefaultElementCap;
  mutable std::shared_ptr<OmegaSpace> omega_;
};

}  // namespace cartdec
