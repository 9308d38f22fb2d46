#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cartdec/error.hpp"
#include "cartdec/perm.hpp"
#include "cartdec/perm_group.hpp"
#include "cartdec/product.hpp"

namespace cartdec {

// A point-stabilizer element modelled as a coordinate-permuting automorphism
// action on M: coordinate j = coord_perm(i) of the image of (m_0,...,m_{k-1})
// is twists[i]^-1 * m_i * twists[i]. Realized as the permutation of the k*d
// carrier points (i, a) -> (coord_perm(i), twists[i](a)), so that applying the
// action to an element of M is plain conjugation, and composition/inversion
// are permutation composition/inversion (the wreath multiplication law).
class GOmegaAction {
 public:
  GOmegaAction() = default;

  GOmegaAction(const ProductGroup& m, Perm coord_perm, std::vector<Perm> twists)
      : coord_perm_(std::move(coord_perm)), twists_(std::move(twists)) {
    if (coord_perm_.degree() != m.k()) fail(ErrorKind::InvalidInstance, "coord_perm degree != k");
    if (static_cast<int>(twists_.size()) != m.k())
      fail(ErrorKind::InvalidInstance, "twist tuple arity != k");
    const PermGroup& t = m.factor();
    for (const Perm& w : twists_) {
      if (w.degree() != t.degree()) fail(ErrorKind::InvalidInstance, "twist degree != d");
      for (const Perm& g : t.generators())
        if (!t.contains(g.conjugated_by(w)))
          fail(ErrorKind::InvalidInstance, "twist does not normalize T");
    }
    int d = t.degree();
    std::vector<std::uint16_t> img(m.degree());
    for (int i = 0; i < m.k(); ++i)
      for (int a = 0; a < d; ++a)
        img[i * d + a] = static_cast<std::uint16_t>(coord_perm_[i] * d + twists_[i][a]);
    big_ = Perm::from_images(std::move(img));
  }

  // Reconstructs the (coord_perm, twists) form of a block-preserving carrier
  // permutation.
  static GOmegaAction from_big(const ProductGroup& m, const Perm& big) {
    int d = m.factor_degree();
    std::vector<std::uint16_t> cp(m.k());
    std::vector<Perm> twists;
    for (int i = 0; i < m.k(); ++i) {
      int target = big[i * d] / d;
      cp[i] = static_cast<std::uint16_t>(target);
      std::vector<std::uint16_t> w(d);
      for (int a = 0; a < d; ++a) {
        int im = big[i * d + a];
        if (im / d != target) fail(ErrorKind::InvalidInstance, "carrier permutation splits a block");
        w[a] = static_cast<std::uint16_t>(im - target * d);
      }
      twists.push_back(Perm::from_images(std::move(w)));
    }
    return GOmegaAction(m, Perm::from_images(std::move(cp)), std::move(twists));
  }

  const Perm& coord_perm() const { return coord_perm_; }
  const std::vector<Perm>& twists() const { return twists_; }
  const Perm& big() const { return big_; }

  Perm apply(const Perm& m_element) const { return m_element.conjugated_by(big_); }

  friend bool operator==(const GOmegaAction& a, const GOmegaAction& b) { return a.big_ == b.big_; }

 private:
  Perm coord_perm_;
  std::vector<Perm> twists_;
  Perm big_;
};

inline GOmegaAction inner_action(const ProductGroup& m, const Perm& m_element) {
  return GOmegaAction(m, Perm::identity(m.k()), m.split(m_element));
}

inline ProductSubgroup act(const GOmegaAction& g, const ProductSubgroup& k) {
  return k.conjugated_by_big(g.big());
}

// The modelled G_omega: a finite group of automorphism actions, closed as a
// permutation group on the k*d carrier points.
class GOmegaGroup {
 public:
  GOmegaGroup() = default;

  GOmegaGroup(std::shared_ptr<const ProductGroup> parent, std::vector<GOmegaAction> generators,
              std::uint64_t element_cap = kDefaultElementCap)
      : parent_(std::move(parent)), gens_(std::move(generators)) {
    std::vector<Perm> braw;
    for (const GOmegaAction& g : gens_) braw.push_back(g.big());
    if (braw.empty()) braw.push_back(Perm::identity(parent_->degree()));
    closure_ = PermGroup(parent_->degree(), std::move(braw), element_cap);
  }

  const ProductGroup& parent() const { return *parent_; }
  const std::shared_ptr<const ProductGroup>& parent_ptr() const { return parent_; }
  const std::vector<GOmegaAction>& action_generators() const { return gens_; }
  const PermGroup& closure() const { return closure_; }
  std::uint64_t order() const { return closure_.order(); }

  // Canonical list of all actions in the closure.
  std::vector<GOmegaAction> actions() const {
    std::vector<GOmegaAction> out;
    out.reserve(closure_.elements().size());
    for (const Perm& b : closure_.elements()) out.push_back(GOmegaAction::from_big(*parent_, b));
    return out;
  }

  GOmegaGroup extended_with(const std::vector<GOmegaAction>& more) const {
    std::vector<GOmegaAction> gens = gens_;
    gens.insert(gens.end(), more.begin(), more.end());
    return GOmegaGroup(parent_, std::move(gens), closure_.element_cap());
  }

  // True iff the generated coordinate permutations act transitively on the
  // factor indices (plinth minimality).
  bool coordinate_orbit_transitive() const {
    std::vector<Perm> coords;
    for (const GOmegaAction& g : gens_) coords.push_back(g.coord_perm());
    PermGroup cg(parent_->k(), std::move(coords));
    return cg.is_transitive();
  }

  bool normalizes(const ProductSubgroup& h) const {
    for (const GOmegaAction& g : gens_) {
      for (const Perm& gen : h.group().generators())
        if (!h.group().contains(gen.conjugated_by(g.big()))) return false;
    }
    return true;
  }

  // First closure action (canonical order) mapping h1 onto h2, if any.
  std::optional<GOmegaAction> conjugating_action(const ProductSubgroup& h1,
                                                 const ProductSubgroup& h2) const {
    if (h1.order() != h2.order()) return std::nullopt;
    for (const Perm& b : closure_.elements()) {
      bool ok = true;
      for (const Perm& gen : h1.group().generators())
        if (!h2.group().contains(gen.conjugated_by(b))) {
          ok = false;
          break;
        }
      if (ok) return GOmegaAction::from_big(*parent_, b);
    }
    return std::nullopt;
  }

  // Closure elements normalizing a subgroup of M (as carrier permutations).
  std::vector<Perm> normalizer_of(const PermGroup& h) const {
    std::vector<Perm> out;
    for (const Perm& b : closure_.elements()) {
      bool ok = true;
      for (const Perm& gen : h.generators())
        if (!h.contains(gen.conjugated_by(b))) {
          ok = false;
          break;
        }
      if (ok) out.push_back(b);
    }
    return out;
  }

 private:
  std::shared_ptr<const ProductGroup> parent_;
  std::vector<GOmegaAction> gens_;
  PermGroup closure_;
};

}  // namespace cartdec
