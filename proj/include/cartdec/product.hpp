#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cartdec/error.hpp"
#include "cartdec/perm.hpp"
#include "cartdec/perm_group.hpp"

namespace cartdec {

// M = T_1 x ... x T_k for a common simple factor T of degree d, realized as a
// permutation group on k*d points: coordinate i acts on the block
// [i*d, (i+1)*d). Elements of M are exactly the block-diagonal permutations,
// so subgroup machinery from PermGroup applies unchanged.
class ProductGroup {
 public:
  ProductGroup() = default;

  ProductGroup(PermGroup t, int k, bool assume_simple = false,
               std::uint64_t element_cap = kDefaultElementCap)
      : t_(std::move(t)), k_(k), cap_(element_cap) {
    if (k_ < 1) fail(ErrorKind::InvalidInstance, "k must be positive");
    if (static_cast<long long>(k_) * t_.degree() > 65535)
      fail(ErrorKind::InvalidInstance, "carrier degree k*d exceeds the point type");
    if (!assume_simple) {
      if (!t_.is_simple())
        fail(ErrorKind::InvalidInstance, "factor T must be nonabelian simple (or pass assume_simple)");
    }
    std::vector<Perm> gens;
    for (int i = 0; i < k_; ++i)
      for (const Perm& g : t_.generators()) gens.push_back(embed_factor(g, i));
    big_ = PermGroup(degree(), std::move(gens), cap_);
  }

  const PermGroup& factor() const { return t_; }
  int k() const { return k_; }
  int factor_degree() const { return t_.degree(); }
  int degree() const { return k_ * t_.degree(); }
  std::uint64_t element_cap() const { return cap_; }

  // M as a plain permutation group on k*d points.
  const PermGroup& big() const { return big_; }

  Perm embed_factor(const Perm& p, int coord) const {
    int d = t_.degree();
    std::vector<std::uint16_t> img(degree());
    for (int i = 0; i < degree(); ++i) img[i] = static_cast<std::uint16_t>(i);
    for (int a = 0; a < d; ++a) img[coord * d + a] = static_cast<std::uint16_t>(coord * d + p[a]);
    return Perm::from_images(std::move(img));
  }

  Perm embed_tuple(const std::vector<Perm>& coords) const {
    if (static_cast<int>(coords.size()) != k_) fail(ErrorKind::InvalidInstance, "tuple arity != k");
    int d = t_.degree();
    std::vector<std::uint16_t> img(degree());
    for (int c = 0; c < k_; ++c) {
      if (coords[c].degree() != d) fail(ErrorKind::InvalidPermutation, "tuple entry degree != d");
      for (int a = 0; a < d; ++a) img[c * d + a] = static_cast<std::uint16_t>(c * d + coords[c][a]);
    }
    return Perm::from_images(std::move(img));
  }

  bool block_diagonal(const Perm& p) const {
    int d = t_.degree();
    if (p.degree() != degree()) return false;
    for (int c = 0; c < k_; ++c)
      for (int a = 0; a < d; ++a) {
        int im = p[c * d + a];
        if (im < c * d || im >= (c + 1) * d) return false;
      }
    return true;
  }

  std::vector<Perm> split(const Perm& p) const {
    if (!block_diagonal(p)) fail(ErrorKind::InvalidPermutation, "element is not block-diagonal");
    int d = t_.degree();
    std::vector<Perm> out;
    out.reserve(k_);
    for (int c = 0; c < k_; ++c) {
      std::vector<std::uint16_t> img(d);
      for (int a = 0; a < d; ++a) img[a] = static_cast<std::uint16_t>(p[c * d + a] - c * d);
      out.push_back(Perm::from_images(std::move(img)));
    }
    return out;
  }

  // The i-th coordinate of p, as a degree-d permutation.
  Perm coordinate(const Perm& p, int c) const {
    int d = t_.degree();
    std::vector<std::uint16_t> img(d);
    for (int a = 0; a < d; ++a) img[a] = static_cast<std::uint16_t>(p[c * d + a] - c * d);
    return Perm::from_images(std::move(img));
  }

  // The full sub-product prod_{i in I} T_i, embedded (identity off I).
  PermGroup sub_product(const std::vector<int>& coords) const {
    std::vector<Perm> gens;
    for (int c : coords)
      for (const Perm& g : t_.generators()) gens.push_back(embed_factor(g, c));
    return PermGroup(degree(), std::move(gens), cap_);
  }

 private:
  PermGroup t_;
  int k_ = 0;
  std::uint64_t cap_ = kDefaultElementCap;
  PermGroup big_;
};

// A subgroup of M, kept in the embedded k*d-point representation.
class ProductSubgroup {
 public:
  ProductSubgroup() = default;

  ProductSubgroup(std::shared_ptr<const ProductGroup> parent, PermGroup sub)
      : parent_(std::move(parent)), sub_(std::move(sub)) {
    for (const Perm& g : sub_.generators())
      if (!parent_->block_diagonal(g))
        fail(ErrorKind::InvalidPermutation, "subgroup generator is not an element of the product");
  }

  static ProductSubgroup from_tuples(std::shared_ptr<const ProductGroup> parent,
                                     const std::vector<std::vector<Perm>>& tuples) {
    std::vector<Perm> gens;
    for (const auto& t : tuples) gens.push_back(parent->embed_tuple(t));
    if (gens.empty()) gens.push_back(Perm::identity(parent->degree()));
    PermGroup sub(parent->degree(), std::move(gens), parent->element_cap());
    return ProductSubgroup(std::move(parent), std::move(sub));
  }

  const std::shared_ptr<const ProductGroup>& parent_ptr() const { return parent_; }
  const ProductGroup& parent() const { return *parent_; }
  const PermGroup& group() const { return sub_; }
  std::uint64_t order() const { return sub_.order(); }

  bool same_subgroup(const ProductSubgroup& other) const { return sub_.same_group(other.sub_); }

  // Canonical comparison used wherever member sets must be ordered.
  static bool canonical_less(const ProductSubgroup& a, const ProductSubgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.group().elements() < b.group().elements();
  }

  // sigma_I: generators restricted to I, identity elsewhere.
  ProductSubgroup project(const std::vector<int>& coords) const {
    if (coords.empty()) fail(ErrorKind::EmptyIndexSet, "projection needs a nonempty index set");
    const ProductGroup& m = parent();
    int d = m.factor_degree();
    std::set<int> keep(coords.begin(), coords.end());
    std::vector<Perm> gens;
    for (const Perm& g : sub_.generators()) {
      std::vector<std::uint16_t> img(m.degree());
      for (int i = 0; i < m.degree(); ++i) img[i] = static_cast<std::uint16_t>(i);
      for (int c : keep)
        for (int a = 0; a < d; ++a) img[c * d + a] = static_cast<std::uint16_t>(g[c * d + a]);
      gens.push_back(Perm::from_images(std::move(img)));
    }
    return ProductSubgroup(parent_, PermGroup(m.degree(), std::move(gens), sub_.element_cap()));
  }

  // sigma_i as a degree-d group on the factor's points.
  PermGroup project_factor(int coord) const {
    const ProductGroup& m = parent();
    std::vector<Perm> gens;
    for (const Perm& g : sub_.generators()) gens.push_back(m.coordinate(g, coord));
    return PermGroup(m.factor_degree(), std::move(gens), sub_.element_cap());
  }

  ProductSubgroup conjugated_by_big(const Perm& x) const {
    return ProductSubgroup(parent_, sub_.conjugated_by(x));
  }

  static ProductSubgroup intersection(const ProductSubgroup& a, const ProductSubgroup& b) {
    return ProductSubgroup(a.parent_, PermGroup::intersection(a.sub_, b.sub_));
  }

 private:
  std::shared_ptr<const ProductGroup> parent_;
  PermGroup sub_;
};

// A strip: a subgroup of M projecting injectively onto each factor in its
// support and trivially elsewhere.
struct Strip {
  ProductSubgroup subgroup;
  std::vector<int> support;  // ascending
  bool full = false;         // sigma_i = T on the support

  bool nontrivial() const { return support.size() >= 2; }
  int min_support() const { return support.front(); }
  int max_support() const { return support.back(); }
};

// Recovers the coordinate isomorphism phi_c : sigma_{s0}(X) -> sigma_c(X)
// from the element table of the strip (s0 = first support coordinate).
inline std::map<Perm, Perm> strip_coordinate_map(const Strip& x, int coord) {
  const ProductGroup& m = x.subgroup.parent();
  std::map<Perm, Perm> phi;
  for (const Perm& e : x.subgroup.group().elements())
    phi[m.coordinate(e, x.min_support())] = m.coordinate(e, coord);
  return phi;
}

struct StripDecomposition {
  std::vector<Strip> strips;      // nontrivial full strips, by ascending min support
  std::vector<int> residual;      // coordinates not covered by any strip
  bool clean = false;             // K = (prod strips) x sigma_residual(K) verified
  std::string detail;
};

// Classifies a strip candidate on a linked component S: strip iff
// |sigma_S(K)| = |sigma_i(K)| for all i in S.
inline bool is_strip_on(const ProductSubgroup& k, const std::vector<int>& support, bool& full) {
  std::uint64_t proj = k.project(support).order();
  full = true;
  for (int c : support) {
    PermGroup f = k.project_factor(c);
    if (f.order() != proj) return false;
    if (f.order() != k.parent().factor().order()) full = false;
  }
  return true;
}

// Splits K into the nontrivial strips it involves plus a residual part,
// linking coordinates i~j iff sigma_{i,j}(K) != sigma_i(K) x sigma_j(K) and
// taking connected components. `clean` records whether the factorization
// K = X_1 x ... x X_m x sigma_R(K) holds exactly (order arithmetic). With
// require_full (the default, matching the involvement notion for system
// members) a non-full linked component voids the decomposition.
inline StripDecomposition split_into_strips(const ProductSubgroup& k, bool require_full) {
  const ProductGroup& m = k.parent();
  int n = m.k();
  std::vector<std::uint64_t> proj_order(n);
  for (int i = 0; i < n; ++i) proj_order[i] = k.project_factor(i).order();

  // union-find over linked coordinates
  std::vector<int> root(n);
  for (int i = 0; i < n; ++i) root[i] = i;
  auto find = [&](int a) {
    while (root[a] != a) a = root[a] = root[root[a]];
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (proj_order[i] == 1 || proj_order[j] == 1) continue;
      std::uint64_t pair_order = k.project({i, j}).order();
      if (pair_order != proj_order[i] * proj_order[j]) root[find(i)] = find(j);
    }

  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);

  StripDecomposition out;
  std::uint64_t strip_product = 1;
  for (auto& [r, comp] : comps) {
    if (comp.size() < 2) {
      out.residual.push_back(comp.front());
      continue;
    }
    bool full = false;
    if (!is_strip_on(k, comp, full) || (require_full && !full)) {
      out.clean = false;
      out.detail = require_full ? "linked component is not a full strip"
                                : "linked component is not a strip";
      out.strips.clear();
      out.residual.clear();
      for (int i = 0; i < n; ++i) out.residual.push_back(i);
      return out;
    }
    Strip x;
    x.subgroup = k.project(comp);
    x.support = comp;
    x.full = full;
    strip_product *= x.subgroup.order();
    out.strips.push_back(std::move(x));
  }
  std::sort(out.residual.begin(), out.residual.end());
  std::sort(out.strips.begin(), out.strips.end(),
            [](const Strip& a, const Strip& b) { return a.min_support() < b.min_support(); });

  std::uint64_t residual_order = 1;
  if (!out.residual.empty()) residual_order = k.project(out.residual).order();
  out.clean = (strip_product * residual_order == k.order());
  if (!out.clean) out.detail = "order arithmetic refutes the strip factorization";
  return out;
}

// The nontrivial full strips involved in K, plus the residual coordinates.
inline StripDecomposition detect_strips(const ProductSubgroup& k) { return split_into_strips(k, true); }

// Normalizer of a strip inside the product over its support, via the closed
// formula: elements (t, c_2 phi_2(t), ..., c_k phi_k(t)) with t in N_T(H_1)
// and c_i in C_T(phi_i(H_1)). Returned embedded in M (identity off support).
//
// phi_c is only known on H_1 (from the strip's element table), so for each
// t in N_T(H_1) the coordinate entries are found as transporter solutions
// t_c with phi_c(h)^{t_c} = phi_c(h^t) for all h; any two solutions differ by
// an element of C_T(phi_c(H_1)), which is adjoined separately.
inline ProductSubgroup normalizer_of_strip(const Strip& x) {
  if (!x.nontrivial()) fail(ErrorKind::InvalidInstance, "normalizer_of_strip needs |support| >= 2");
  const ProductGroup& m = x.subgroup.parent();
  const PermGroup& t = m.factor();
  int s0 = x.min_support();
  PermGroup h1 = x.subgroup.project_factor(s0);
  PermGroup n1 = t.normalizer(h1);

  std::vector<std::map<Perm, Perm>> phi;  // full element maps per support coordinate
  for (int c : x.support) phi.push_back(strip_coordinate_map(x, c));

  std::vector<Perm> gens;
  for (const Perm& tg : n1.elements()) {
    std::vector<Perm> tuple(m.k(), Perm::identity(t.degree()));
    tuple[s0] = tg;
    bool solvable = true;
    for (std::size_t ci = 1; ci < x.support.size() && solvable; ++ci) {
      solvable = false;
      for (const Perm& cand : t.elements()) {
        bool ok = true;
        for (const Perm& hgen : h1.generators()) {
          if (!(phi[ci].at(hgen).conjugated_by(cand) == phi[ci].at(hgen.conjugated_by(tg)))) {
            ok = false;
            break;
          }
        }
        if (ok) {
          tuple[x.support[ci]] = cand;
          solvable = true;
          break;
        }
      }
    }
    if (solvable) gens.push_back(m.embed_tuple(tuple));
  }
  for (std::size_t ci = 1; ci < x.support.size(); ++ci) {
    PermGroup hc = x.subgroup.project_factor(x.support[ci]);
    PermGroup cent = t.centralizer(hc);
    for (const Perm& cg : cent.generators()) gens.push_back(m.embed_factor(cg, x.support[ci]));
  }
  if (gens.empty()) gens.push_back(Perm::identity(m.degree()));
  return ProductSubgroup(x.subgroup.parent_ptr(), PermGroup(m.degree(), std::move(gens), m.element_cap()));
}

// Brute-force reference: scan the full support product for elements
// normalizing the strip. Used by tests and --check-level full.
inline ProductSubgroup normalizer_of_strip_brute(const Strip& x) {
  const ProductGroup& m = x.subgroup.parent();
  PermGroup ambient = m.sub_product(x.support);
  std::vector<Perm> result;
  const PermGroup& xs = x.subgroup.group();
  for (const Perm& e : ambient.elements()) {
    bool ok = true;
    for (const Perm& gen : xs.generators())
      if (!xs.contains(gen.conjugated_by(e))) {
        ok = false;
        break;
      }
    if (ok) result.push_back(e);
  }
  return ProductSubgroup(x.subgroup.parent_ptr(),
                         PermGroup::from_elements(m.degree(), std::move(result), m.element_cap()));
}

}  // namespace cartdec
