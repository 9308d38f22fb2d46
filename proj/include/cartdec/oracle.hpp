#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cartdec/classify.hpp"
#include "cartdec/system.hpp"

namespace cartdec {

inline constexpr std::uint64_t kOracleCap = 10000;

// Every subgroup of `top` containing the given base, by closure saturation:
// repeatedly adjoin single elements and close, deduplicating on the element
// set. Complete because every overgroup H > B contains some closure(B, x).
inline std::vector<PermGroup> subgroups_between(const PermGroup& top, const std::vector<Perm>& base,
                                                std::uint64_t cap) {
  if (top.order() > cap) fail(ErrorKind::CapExceeded, "interval enumeration above the oracle cap");
  struct Key {
    std::size_t operator()(const std::vector<Perm>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (const Perm& p : v) h ^= p.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    }
  };
  auto closure_of = [&](const std::vector<Perm>& gens) {
    auto els = bounded_closure(top.degree(), gens, {}, top.order());
    return *els;  // bounded by |top|, always succeeds for subsets of top
  };
  std::vector<std::vector<Perm>> queue{closure_of(base.empty()
                                                      ? std::vector<Perm>{Perm::identity(top.degree())}
                                                      : base)};
  std::unordered_set<std::vector<Perm>, Key> seen{queue[0]};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<Perm> current = queue[qi];
    for (const Perm& g : top.elements()) {
      if (std::binary_search(current.begin(), current.end(), g)) continue;
      std::vector<Perm> gens = current;
      gens.push_back(g);
      std::vector<Perm> bigger = closure_of(gens);
      if (seen.insert(bigger).second) queue.push_back(std::move(bigger));
    }
  }
  std::vector<PermGroup> out;
  out.reserve(queue.size());
  for (auto& els : queue) out.push_back(PermGroup::from_elements(top.degree(), std::move(els), top.element_cap()));
  std::sort(out.begin(), out.end(), [](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

struct IntervalCatalog {
  std::vector<ProductSubgroup> subgroups;  // canonical order, M_omega first, M last
};

// All subgroups H with M_omega <= H <= M.
inline IntervalCatalog enumerate_interval(const std::shared_ptr<const PointedInstance>& inst,
                                          std::uint64_t oracle_cap = kOracleCap) {
  const PermGroup& top = inst->m().big();
  std::vector<PermGroup> raw = subgroups_between(top, inst->m_omega().group().elements(), oracle_cap);
  IntervalCatalog cat;
  for (PermGroup& g : raw) cat.subgroups.emplace_back(inst->m_ptr(), std::move(g));
  return cat;
}

// The oracle's own reading of the two defining equations, by literal set
// arithmetic (explicit product enumeration), independent of the index
// formulas used by verify_system.
inline bool oracle_system_predicate(const PointedInstance& inst,
                                    const std::vector<const ProductSubgroup*>& members) {
  if (members.empty()) return false;
  const PermGroup& m = inst.m().big();
  for (const ProductSubgroup* k : members)
    if (k->order() >= m.order()) return false;  // properness
  // distinctness
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (members[i]->same_subgroup(*members[j])) return false;
  // Eq (1)
  std::vector<Perm> common = members[0]->group().elements();
  for (std::size_t i = 1; i < members.size(); ++i) {
    std::vector<Perm> next;
    for (const Perm& e : common)
      if (members[i]->group().contains(e)) next.push_back(e);
    common = std::move(next);
  }
  if (common != inst.m_omega().group().elements()) return false;
  // Eq (2) via explicit product sets
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::vector<Perm> rest;
    bool first = true;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j == i) continue;
      if (first) {
        rest = members[j]->group().elements();
        first = false;
      } else {
        std::vector<Perm> next;
        for (const Perm& e : rest)
          if (members[j]->group().contains(e)) next.push_back(e);
        rest = std::move(next);
      }
    }
    if (first) continue;  // l = 1: empty intersection is M by convention
    std::unordered_set<Perm, PermHash> product;
    for (const Perm& a : members[i]->group().elements())
      for (const Perm& b : rest) product.insert(a * b);
    if (product.size() != m.order()) return false;
  }
  return true;
}

struct OracleSystemEntry {
  std::vector<int> member_indices;  // into the catalog
  bool invariant = false;
  bool transitive = false;
  std::optional<ClassLabel> label;
};

struct OracleSearchResult {
  IntervalCatalog catalog;
  std::vector<OracleSystemEntry> systems;
  std::uint64_t subsets_tested = 0;
  std::uint64_t predicate_agreements = 0;
  std::uint64_t predicate_disagreements = 0;
};

// Exhaustive subset search for Cartesian systems over the interval catalog,
// pruned by the counting identity (the product of member indices must divide
// |M : M_omega| and reach it exactly). Each subset is also fed to
// verify_system and the two verdicts compared.
inline OracleSearchResult enumerate_systems(const std::shared_ptr<const PointedInstance>& inst,
                                            int max_len, std::uint64_t oracle_cap = kOracleCap) {
  OracleSearchResult res;
  res.catalog = enumerate_interval(inst, oracle_cap);
  const auto& cat = res.catalog.subgroups;
  const PermGroup& m = inst->m().big();
  std::uint64_t omega = m.order() / inst->m_omega().order();

  std::vector<int> chosen;
  auto test_subset = [&](const std::vector<int>& idxs) {
    ++res.subsets_tested;
    std::vector<const ProductSubgroup*> members;
    for (int i : idxs) members.push_back(&cat[i]);
    bool oracle_ok = oracle_system_predicate(*inst, members);
    // primary route
    std::vector<ProductSubgroup> copy;
    for (int i : idxs) copy.push_back(cat[i]);
    bool primary_ok = false;
    try {
      CartesianSystem s(inst, copy);
      primary_ok = verify_system(s).valid;
      if (oracle_ok) {
        OracleSystemEntry entry;
        entry.member_indices = idxs;
        entry.invariant = s.is_g_invariant();
        entry.transitive = s.is_transitive();
        if (entry.invariant) {
          ClassifyOptions lenient;
          lenient.throw_on_violation = false;
          entry.label = classify(s, lenient).label;
        }
        res.systems.push_back(std::move(entry));
      }
    } catch (const Error&) {
      primary_ok = false;  // duplicate members cannot happen over a catalog
    }
    if (oracle_ok == primary_ok)
      ++res.predicate_agreements;
    else
      ++res.predicate_disagreements;
  };

  std::vector<int> stack;
  auto dfs = [&](auto&& self, std::size_t start, std::uint64_t grid) -> void {
    if (!stack.empty()) test_subset(stack);
    if (static_cast<int>(stack.size()) == max_len) return;
    for (std::size_t i = start; i < cat.size(); ++i) {
      if (cat[i].order() >= m.order()) continue;  // proper members only
      std::uint64_t index = m.order() / cat[i].order();
      if (grid * index > omega || omega % (grid * index) != 0) continue;
      stack.push_back(static_cast<int>(i));
      self(self, i + 1, grid * index);
      stack.pop_back();
    }
  };
  dfs(dfs, 0, 1);
  return res;
}

struct BijectionCrossCheck {
  CheckList checks;
  int systems_checked = 0;
};

// Correspondence-level sanity for a batch of systems over one instance: every valid
// system round-trips through its decomposition, and distinct systems give
// distinct decompositions.
inline BijectionCrossCheck cross_check_bijection(const std::shared_ptr<const PointedInstance>& inst,
                                                 const std::vector<CartesianSystem>& systems) {
  BijectionCrossCheck out;
  std::vector<std::vector<Partition>> decomps;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const CartesianSystem& s = systems[i];
    CartesianDecomposition d = decomposition_from_system(s);
    out.checks.require("bijection.decomposition_valid[" + std::to_string(i) + "]",
                       validate_decomposition(d).all_pass());
    CartesianSystem back = system_from_decomposition(d);
    bool same = back.size() == s.size();
    if (same)
      for (std::size_t j = 0; j < s.size(); ++j)
        same = same && back.members()[j].same_subgroup(s.members()[j]);
    out.checks.require("bijection.round_trip[" + std::to_string(i) + "]", same);
    decomps.push_back(d.partitions());
    ++out.systems_checked;
  }
  bool all_distinct = true;
  for (std::size_t i = 0; i < decomps.size(); ++i)
    for (std::size_t j = i + 1; j < decomps.size(); ++j) {
      // compare as partition sets
      std::vector<std::vector<int>> a, b;
      for (const Partition& p : decomps[i]) a.push_back(p.block_of);
      for (const Partition& p : decomps[j]) b.push_back(p.block_of);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a == b) all_distinct = false;
    }
  out.checks.require("bijection.injective", all_distinct);
  return out;
}

}  // namespace cartdec
