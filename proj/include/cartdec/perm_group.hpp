#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cartdec/error.hpp"
#include "cartdec/perm.hpp"

namespace cartdec {

inline constexpr std::uint64_t kDefaultElementCap = 200000;

// A finite permutation group given by generators, with full deterministic
// element enumeration behind every operation. The element list is sorted
// lexicographically on image arrays; all witnesses and set-valued outputs
// follow that canonical order, so two runs over the same input agree byte
// for byte.
class PermGroup {
 public:
  PermGroup() = default;

  PermGroup(int degree, std::vector<Perm> generators, std::uint64_t element_cap = kDefaultElementCap)
      : degree_(degree), gens_(std::move(generators)), cap_(element_cap), cache_(std::make_shared<Cache>()) {
    if (gens_.empty()) gens_.push_back(Perm::identity(degree_));
    for (const Perm& g : gens_)
      if (g.degree() != degree_) fail(ErrorKind::InvalidPermutation, "generator degree mismatch");
  }

  static PermGroup trivial(int degree, std::uint64_t cap = kDefaultElementCap) {
    return PermGroup(degree, {Perm::identity(degree)}, cap);
  }

  // Builds a group from its full (sorted, deduplicated) element list, keeping a
  // reduced generating set chosen greedily in canonical order.
  static PermGroup from_elements(int degree, std::vector<Perm> elements, std::uint64_t cap = kDefaultElementCap) {
    elements.push_back(Perm::identity(degree));
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::vector<Perm> gens;
    std::unordered_set<Perm, PermHash> have;
    have.insert(Perm::identity(degree));
    for (const Perm& e : elements) {
      if (have.count(e)) continue;
      gens.push_back(e);
      // re-close with the new generator
      std::vector<Perm> frontier(have.begin(), have.end());
      while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const Perm& x : frontier) {
          for (const Perm& g : gens) {
            Perm y = x * g;
            if (have.insert(y).second) next.push_back(y);
          }
        }
        frontier = std::move(next);
      }
      if (have.size() == elements.size()) break;
    }
    PermGroup grp(degree, gens.empty() ? std::vector<Perm>{Perm::identity(degree)} : gens, cap);
    grp.cache_->set(std::move(elements));
    return grp;
  }

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  std::uint64_t element_cap() const { return cap_; }

  std::uint64_t order() const { return static_cast<std::uint64_t>(elements().size()); }

  // Canonical (lexicographically sorted) element list.
  const std::vector<Perm>& elements() const {
    if (!cache_->ready.load(std::memory_order_acquire))
      std::call_once(cache_->once, [&] { cache_->set(enumerate()); });
    return cache_->elements;
  }

  bool contains(const Perm& p) const {
    const auto& els = elements();
    return std::binary_search(els.begin(), els.end(), p);
  }

  bool is_subgroup_of(const PermGroup& g) const {
    for (const Perm& x : gens_)
      if (!g.contains(x)) return false;
    return true;
  }

  bool same_group(const PermGroup& other) const {
    return degree_ == other.degree_ && elements() == other.elements();
  }

  // Orbit of a point under the generated group, ascending.
  std::vector<int> orbit(int point) const {
    std::vector<bool> seen(degree_, false);
    std::vector<int> queue{point};
    seen[point] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const Perm& g : gens_) {
        int im = g[queue[i]];
        if (!seen[im]) {
          seen[im] = true;
          queue.push_back(im);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

  bool is_transitive() const { return static_cast<int>(orbit(0).size()) == degree_; }

  PermGroup point_stabilizer(int point) const {
    std::vector<Perm> fixed;
    for (const Perm& e : elements())
      if (e[point] == point) fixed.push_back(e);
    return from_elements(degree_, std::move(fixed), cap_);
  }

  // {x in g : h^x = h}; requires h <= g.
  PermGroup normalizer(const PermGroup& h) const {
    require_subgroup(h, "normalizer");
    std::vector<Perm> result;
    for (const Perm& x : elements()) {
      bool ok = true;
      for (const Perm& gen : h.generators()) {
        if (!h.contains(gen.conjugated_by(x))) {
          ok = false;
          break;
        }
      }
      if (ok) result.push_back(x);
    }
    return from_elements(degree_, std::move(result), cap_);
  }

  PermGroup centralizer(const PermGroup& h) const {
    require_subgroup(h, "centralizer");
    std::vector<Perm> result;
    for (const Perm& x : elements()) {
      bool ok = true;
      for (const Perm& gen : h.generators()) {
        if (!(gen * x == x * gen)) {
          ok = false;
          break;
        }
      }
      if (ok) result.push_back(x);
    }
    return from_elements(degree_, std::move(result), cap_);
  }

  // Normal closure of the commutators of generator pairs.
  PermGroup derived_subgroup() const {
    std::vector<Perm> seeds;
    for (const Perm& a : gens_)
      for (const Perm& b : gens_) seeds.push_back(a.inverse() * b.inverse() * a * b);
    PermGroup d(degree_, seeds, cap_);
    for (;;) {
      std::vector<Perm> extra;
      for (const Perm& gen : d.generators())
        for (const Perm& g : gens_) {
          Perm c = gen.conjugated_by(g);
          if (!d.contains(c)) extra.push_back(c);
        }
      if (extra.empty()) break;
      std::vector<Perm> next = d.generators();
      next.insert(next.end(), extra.begin(), extra.end());
      d = PermGroup(degree_, next, cap_);
    }
    return from_elements(degree_, d.elements(), cap_);
  }

  bool is_abelian() const {
    for (const Perm& a : gens_)
      for (const Perm& b : gens_)
        if (!(a * b == b * a)) return false;
    return true;
  }

  // First element (canonical order) conjugating h1 onto h2, if any.
  std::optional<Perm> conjugating_element(const PermGroup& h1, const PermGroup& h2) const {
    require_subgroup(h1, "are_conjugate");
    require_subgroup(h2, "are_conjugate");
    if (h1.order() != h2.order()) return std::nullopt;
    for (const Perm& x : elements()) {
      bool ok = true;
      for (const Perm& gen : h1.generators()) {
        if (!h2.contains(gen.conjugated_by(x))) {
          ok = false;
          break;
        }
      }
      if (ok) return x;
    }
    return std::nullopt;
  }

  PermGroup conjugated_by(const Perm& x) const {
    std::vector<Perm> gens;
    gens.reserve(gens_.size());
    for (const Perm& g : gens_) gens.push_back(g.conjugated_by(x));
    return PermGroup(degree_, std::move(gens), cap_);
  }

  static PermGroup intersection(const PermGroup& a, const PermGroup& b) {
    const PermGroup& small = a.order() <= b.order() ? a : b;
    const PermGroup& big = a.order() <= b.order() ? b : a;
    std::vector<Perm> common;
    for (const Perm& e : small.elements())
      if (big.contains(e)) common.push_back(e);
    return from_elements(a.degree(), std::move(common), a.element_cap());
  }

  // |AB| as a set; AB is a group iff this equals the order of <A,B>.
  static std::uint64_t product_size(const PermGroup& a, const PermGroup& b) {
    return a.order() / intersection(a, b).order() * b.order();
  }

  // True iff the group has trivial centre and no proper nontrivial normal
  // subgroup. Desk-scale only: walks conjugacy classes and normal closures.
  bool is_simple() const {
    const auto& els = elements();
    if (els.size() == 1) return false;
    // centre
    for (const Perm& e : els) {
      if (e.is_identity()) continue;
      bool central = true;
      for (const Perm& g : gens_)
        if (!(e * g == g * e)) {
          central = false;
          break;
        }
      if (central) return false;
    }
    std::unordered_set<Perm, PermHash> visited;
    for (const Perm& e : els) {
      if (e.is_identity() || visited.count(e)) continue;
      // mark the conjugacy class of e
      std::vector<Perm> frontier{e};
      visited.insert(e);
      while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const Perm& x : frontier)
          for (const Perm& g : gens_) {
            Perm y = x.conjugated_by(g);
            if (visited.insert(y).second) next.push_back(y);
          }
        frontier = std::move(next);
      }
      if (normal_closure_of(e).order() != order()) return false;
    }
    return true;
  }

  PermGroup normal_closure_of(const Perm& seed) const {
    PermGroup h(degree_, {seed}, cap_);
    for (;;) {
      std::vector<Perm> extra;
      for (const Perm& gen : h.generators())
        for (const Perm& g : gens_) {
          Perm c = gen.conjugated_by(g);
          if (!h.contains(c)) extra.push_back(c);
        }
      if (extra.empty()) return h;
      std::vector<Perm> next = h.generators();
      next.insert(next.end(), extra.begin(), extra.end());
      h = PermGroup(degree_, next, cap_);
    }
  }

  void require_subgroup(const PermGroup& h, const char* op) const {
    if (h.degree() != degree_) fail(ErrorKind::NotSubgroup, std::string(op) + ": degree mismatch");
    if (!h.is_subgroup_of(*this)) fail(ErrorKind::NotSubgroup, std::string(op) + ": not a subgroup");
  }

 private:
  struct Cache {
    std::once_flag once;
    std::atomic<bool> ready{false};
    std::vector<Perm> elements;
    void set(std::vector<Perm> els) {
      elements = std::move(els);
      ready.store(true, std::memory_order_release);
    }
  };

  std::vector<Perm> enumerate() const {
    std::unordered_set<Perm, PermHash> seen;
    seen.reserve(1024);
    seen.insert(Perm::identity(degree_));
    std::vector<Perm> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const Perm& x : frontier) {
        for (const Perm& g : gens_) {
          Perm y = x * g;
          if (seen.insert(y).second) {
            if (seen.size() > cap_)
              fail(ErrorKind::CapExceeded, "closure exceeds element cap " + std::to_string(cap_));
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<Perm> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  int degree_ = 0;
  std::vector<Perm> gens_;
  std::uint64_t cap_ = kDefaultElementCap;
  std::shared_ptr<Cache> cache_;
};

// Closure with an early exit: returns the element set of <base, extra> unless
// it would exceed `limit`, in which case nullopt.
inline std::optional<std::vector<Perm>> bounded_closure(int degree, const std::vector<Perm>& base,
                                                        const std::vector<Perm>& extra, std::size_t limit) {
  std::vector<Perm> gens = base;
  gens.insert(gens.end(), extra.begin(), extra.end());
  std::unordered_set<Perm, PermHash> seen;
  seen.insert(Perm::identity(degree));
  std::vector<Perm> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier)
      for (const Perm& g : gens) {
        Perm y = x * g;
        if (seen.insert(y).second) {
          if (seen.size() > limit) return std::nullopt;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  std::vector<Perm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct CosetAction {
  PermGroup image;        // the induced group on coset indices
  std::vector<Perm> gen_images;
  int basepoint = 0;      // index of the trivial coset
  std::vector<Perm> reps; // canonical (minimal) coset representatives
};

// Right-coset action of g on h\g with canonical minimal representatives.
// Coset 0 is h itself. Throws NotSubgroup / CapExceeded.
inline CosetAction coset_action(const PermGroup& g, const PermGroup& h,
                                std::uint64_t point_cap = kDefaultElementCap) {
  g.require_subgroup(h, "coset_action");
  std::uint64_t index = g.order() / h.order();
  if (index > point_cap) fail(ErrorKind::CapExceeded, "coset space larger than point cap");
  const auto& hels = h.elements();
  auto canon = [&](const Perm& x) {
    Perm best = hels.front() * x;
    for (std::size_t i = 1; i < hels.size(); ++i) {
      Perm c = hels[i] * x;
      if (c < best) best = c;
    }
    return best;
  };
  std::vector<Perm> reps{canon(Perm::identity(g.degree()))};
  std::unordered_map<Perm, int, PermHash> rep_index{{reps[0], 0}};
  std::vector<std::vector<int>> images(g.generators().size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
      Perm moved = canon(reps[i] * g.generators()[gi]);
      auto [it, inserted] = rep_index.try_emplace(moved, static_cast<int>(reps.size()));
      if (inserted) reps.push_back(moved);
      images[gi].push_back(it->second);
    }
  }
  int n = static_cast<int>(reps.size());
  std::vector<Perm> gen_imgs;
  for (auto& row : images) {
    std::vector<std::uint16_t> img(row.begin(), row.end());
    gen_imgs.push_back(Perm::from_images(std::move(img)));
  }
  CosetAction act;
  act.reps = std::move(reps);
  act.gen_images = gen_imgs;
  act.image = PermGroup(n, std::move(gen_imgs), point_cap);
  act.basepoint = 0;
  return act;
}

}  // namespace cartdec
