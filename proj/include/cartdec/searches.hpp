#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cartdec/ggraph.hpp"
#include "cartdec/oracle.hpp"
#include "cartdec/report.hpp"

namespace cartdec {

// ---------------------------------------------------------------------------
// Exhaustive certificates for the three small combinatorial facts the
// structure theory leans on. Each search records the size of the space it
// walked, so the certificate is auditable.
// ---------------------------------------------------------------------------

struct SimpleGraphCertificate {
  std::uint64_t labeled_graphs_scanned = 0;
  std::map<std::string, int> qualifying_classes;   // shape -> labeled count
  std::uint64_t generalized_scanned = 0;           // edge multisets up to relabeling
  std::uint64_t generalized_qualifying = 0;
  std::uint64_t first_conclusion_violations = 0;   // expect 0
  CheckList checks;
};

namespace detail_search {

inline std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out.emplace_back(a, b);
  return out;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<std::uint16_t> base(n);
  for (int i = 0; i < n; ++i) base[i] = static_cast<std::uint16_t>(i);
  std::vector<Perm> out;
  std::sort(base.begin(), base.end());
  do {
    out.push_back(Perm::from_images(std::vector<std::uint16_t>(base)));
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

// 2-transitivity of a permutation group given by generators on m points
// (vacuously true for m < 2).
inline bool two_transitive(const std::vector<Perm>& gens, int m) {
  if (m < 2) return true;
  std::set<std::pair<int, int>> orbit{{0, 1}};
  std::vector<std::pair<int, int>> queue{{0, 1}};
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (const Perm& g : gens) {
      std::pair<int, int> im{g[queue[qi].first], g[queue[qi].second]};
      if (orbit.insert(im).second) queue.push_back(im);
    }
  return orbit.size() == static_cast<std::size_t>(m) * (m - 1);
}

inline bool transitive_on(const std::vector<Perm>& gens, int m) {
  if (m <= 1) return true;
  std::vector<bool> seen(m, false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (const Perm& g : gens) {
      int im = g[queue[qi]];
      if (!seen[im]) {
        seen[im] = true;
        queue.push_back(im);
      }
    }
  return static_cast<int>(queue.size()) == m;
}

// Enumerates multisets of size e over {0..m-1} (combinations with repetition).
inline void for_each_multiset(int m, int e, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(e, 0);
  std::function<void(int, int)> rec = [&](int pos, int minval) {
    if (pos == e) {
      fn(pick);
      return;
    }
    for (int v = minval; v < m; ++v) {
      pick[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
}

}  // namespace detail_search

// Search (a): among simple graphs on <= max_vertices vertices with nonempty
// edge set, a vertex-transitive automorphism group acting 2-transitively on
// edges occurs only for K3 and disjoint unions of K2. A second sweep over
// generalized graphs (edge multisets) confirms the dichotomy "two vertices or
// simple" with no exceptions.
inline SimpleGraphCertificate search_vertex_transitive_graphs(int max_vertices = 6,
                                                              int max_parallel_edges = 6) {
  SimpleGraphCertificate cert;
  using namespace detail_search;

  for (int n = 1; n <= max_vertices; ++n) {
    auto pairs = all_pairs(n);
    auto perms = all_perms(n);
    int np = static_cast<int>(pairs.size());
    for (std::uint64_t mask = 1; mask < (1ull << np); ++mask) {
      ++cert.labeled_graphs_scanned;
      std::vector<std::pair<int, int>> edges;
      for (int b = 0; b < np; ++b)
        if (mask & (1ull << b)) edges.push_back(pairs[b]);
      // vertex-transitivity needs regular degree
      std::vector<int> deg(n, 0);
      for (auto [a, b] : edges) {
        ++deg[a];
        ++deg[b];
      }
      if (std::count(deg.begin(), deg.end(), deg[0]) != n || deg[0] == 0) continue;

      // automorphisms = vertex perms preserving the edge set
      std::set<std::pair<int, int>> eset(edges.begin(), edges.end());
      std::vector<Perm> vauts;
      std::vector<Perm> eauts;
      std::map<std::pair<int, int>, int> eindex;
      for (int i = 0; i < static_cast<int>(edges.size()); ++i) eindex[edges[i]] = i;
      for (const Perm& p : perms) {
        bool ok = true;
        std::vector<std::uint16_t> eimg(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
          int a = p[edges[i].first], b = p[edges[i].second];
          auto it = eindex.find({std::min(a, b), std::max(a, b)});
          if (it == eindex.end()) {
            ok = false;
            break;
          }
          eimg[i] = static_cast<std::uint16_t>(it->second);
        }
        if (!ok) continue;
        vauts.push_back(p);
        eauts.push_back(Perm::from_images(std::move(eimg)));
      }
      if (!transitive_on(vauts, n)) continue;
      if (!two_transitive(eauts, static_cast<int>(edges.size()))) continue;

      // classify the qualifying shape
      bool all_deg_one = deg[0] == 1;
      std::string shape;
      if (all_deg_one && static_cast<int>(edges.size()) * 2 == n)
        shape = std::to_string(edges.size()) + "K2";
      else if (n == 3 && edges.size() == 3)
        shape = "K3";
      else
        shape = "unexpected(n=" + std::to_string(n) + ",e=" + std::to_string(edges.size()) + ")";
      ++cert.qualifying_classes[shape];
    }
  }

  // generalized sweep: multisets of vertex pairs, with the pair image of
  // every vertex permutation precomputed once per n
  for (int n = 2; n <= max_vertices; ++n) {
    auto pairs = all_pairs(n);
    auto perms = all_perms(n);
    int np = static_cast<int>(pairs.size());
    std::map<std::pair<int, int>, int> pidx;
    for (int c = 0; c < np; ++c) pidx[pairs[c]] = c;
    std::vector<std::vector<int>> pimage(perms.size(), std::vector<int>(np));
    for (std::size_t pi = 0; pi < perms.size(); ++pi)
      for (int b = 0; b < np; ++b) {
        int a1 = perms[pi][pairs[b].first], b1 = perms[pi][pairs[b].second];
        pimage[pi][b] = pidx.at({std::min(a1, b1), std::max(a1, b1)});
      }

    for (int e = 1; e <= max_parallel_edges; ++e) {
      detail_search::for_each_multiset(np, e, [&](const std::vector<int>& pick) {
        ++cert.generalized_scanned;
        std::vector<int> mult(np, 0);
        for (int v : pick) ++mult[v];
        // isolated vertices are immaterial padding; require every vertex
        // to meet an edge so |V| = 2 really means two vertices
        std::vector<int> covered(n, 0);
        for (int v : pick) {
          covered[pairs[v].first] = 1;
          covered[pairs[v].second] = 1;
        }
        if (std::count(covered.begin(), covered.end(), 1) != n) return;
        std::vector<std::size_t> vauts;
        for (std::size_t pi = 0; pi < perms.size(); ++pi) {
          bool ok = true;
          for (int b = 0; b < np; ++b)
            if (mult[b] != mult[pimage[pi][b]]) {
              ok = false;
              break;
            }
          if (ok) vauts.push_back(pi);
        }
        // edge group: canonical lifts of preserving vertex perms plus fiber
        // symmetries
        std::vector<std::vector<int>> fiber(np);
        for (int i = 0; i < e; ++i) fiber[pick[i]].push_back(i);
        std::vector<Perm> egens;
        for (const auto& f : fiber)
          for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            std::vector<std::uint16_t> img(e);
            for (int j = 0; j < e; ++j) img[j] = static_cast<std::uint16_t>(j);
            std::swap(img[f[i]], img[f[i + 1]]);
            egens.push_back(Perm::from_images(std::move(img)));
          }
        for (std::size_t pi : vauts) {
          std::vector<std::uint16_t> img(e);
          std::vector<int> used(np, 0);
          for (int i = 0; i < e; ++i) {
            int target = pimage[pi][pick[i]];
            img[i] = static_cast<std::uint16_t>(fiber[target][used[target]++]);
          }
          egens.push_back(Perm::from_images(std::move(img)));
        }
        if (egens.empty()) return;
        if (!two_transitive(egens, e)) return;
        ++cert.generalized_qualifying;
        bool simple = *std::max_element(mult.begin(), mult.end()) <= 1;
        if (!(n == 2 || simple)) ++cert.first_conclusion_violations;
      });
    }
  }

  bool expected = true;
  for (const auto& [shape, count] : cert.qualifying_classes)
    if (shape != "K3" && shape.find("K2") == std::string::npos) expected = false;
  cert.checks.require("graphsearch.shapes", expected);
  cert.checks.require("graphsearch.k3_found", cert.qualifying_classes.count("K3") > 0);
  cert.checks.require("graphsearch.k2_found", cert.qualifying_classes.count("1K2") > 0);
  cert.checks.require("graphsearch.2k2_found", cert.qualifying_classes.count("2K2") > 0);
  cert.checks.require("graphsearch.3k2_found", cert.qualifying_classes.count("3K2") > 0);
  cert.checks.require("graphsearch.first_conclusion", cert.first_conclusion_violations == 0);
  return cert;
}

struct DiGraphCertificate {
  std::uint64_t configurations_scanned = 0;
  std::uint64_t survivors_of_degree_filter = 0;
  std::uint64_t qualifying = 0;  // expect 0
  CheckList checks;
};

// Search (b): no generalized digraph with exactly four arcs admits a vertex-
// and arc-transitive automorphism group inducing A4 or S4 on the arcs.
inline DiGraphCertificate search_four_arc_digraphs(int max_vertices = 8) {
  DiGraphCertificate cert;
  using namespace detail_search;
  const int arcs = 4;

  for (int n = 2; n <= max_vertices; ++n) {
    std::vector<std::pair<int, int>> opairs;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) opairs.emplace_back(a, b);
    int np = static_cast<int>(opairs.size());
    auto perms = all_perms(n);

    for_each_multiset(np, arcs, [&](const std::vector<int>& pick) {
      ++cert.configurations_scanned;
      std::vector<int> outdeg(n, 0), indeg(n, 0), covered(n, 0);
      for (int v : pick) {
        ++outdeg[opairs[v].first];
        ++indeg[opairs[v].second];
        covered[opairs[v].first] = covered[opairs[v].second] = 1;
      }
      if (std::count(covered.begin(), covered.end(), 1) != n) return;
      if (std::count(outdeg.begin(), outdeg.end(), outdeg[0]) != n) return;
      if (std::count(indeg.begin(), indeg.end(), indeg[0]) != n) return;
      ++cert.survivors_of_degree_filter;

      std::vector<int> mult(np, 0);
      for (int v : pick) ++mult[v];
      auto pair_index = [&](int a, int b) {
        for (int c = 0; c < np; ++c)
          if (opairs[c] == std::make_pair(a, b)) return c;
        return -1;
      };
      // combined automorphisms on n + 4 points (vertices then arcs)
      std::vector<std::vector<int>> fiber(np);
      for (int i = 0; i < arcs; ++i) fiber[pick[i]].push_back(i);
      std::vector<Perm> gens;
      auto add_gen = [&](const std::vector<int>& vimg, const std::vector<int>& aimg) {
        std::vector<std::uint16_t> img(n + arcs);
        for (int i = 0; i < n; ++i) img[i] = static_cast<std::uint16_t>(vimg[i]);
        for (int i = 0; i < arcs; ++i) img[n + i] = static_cast<std::uint16_t>(n + aimg[i]);
        gens.push_back(Perm::from_images(std::move(img)));
      };
      std::vector<int> idv(n);
      for (int i = 0; i < n; ++i) idv[i] = i;
      for (const auto& f : fiber)
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
          std::vector<int> aimg(arcs);
          for (int j = 0; j < arcs; ++j) aimg[j] = j;
          std::swap(aimg[f[i]], aimg[f[i + 1]]);
          add_gen(idv, aimg);
        }
      for (const Perm& p : perms) {
        bool ok = true;
        for (int b = 0; b < np && ok; ++b) {
          int t = pair_index(p[opairs[b].first], p[opairs[b].second]);
          if (mult[b] != mult[t]) ok = false;
        }
        if (!ok) continue;
        std::vector<int> vimg(n), aimg(arcs);
        for (int i = 0; i < n; ++i) vimg[i] = p[i];
        std::vector<int> used(np, 0);
        for (int i = 0; i < arcs; ++i) {
          int t = pair_index(p[opairs[pick[i]].first], p[opairs[pick[i]].second]);
          aimg[i] = fiber[t][used[t]++];
        }
        add_gen(vimg, aimg);
      }
      if (gens.empty()) return;
      PermGroup aut(n + arcs, gens);
      if (aut.order() > 100000) return;  // never at these sizes

      // any subgroup acting vertex- and arc-transitively and inducing A4/S4?
      for (const PermGroup& sub : subgroups_between(aut, {}, 100000)) {
        std::vector<Perm> vparts, aparts;
        for (const Perm& g : sub.generators()) {
          std::vector<std::uint16_t> vi(n), ai(arcs);
          for (int i = 0; i < n; ++i) vi[i] = static_cast<std::uint16_t>(g[i]);
          for (int i = 0; i < arcs; ++i) ai[i] = static_cast<std::uint16_t>(g[n + i] - n);
          vparts.push_back(Perm::from_images(std::move(vi)));
          aparts.push_back(Perm::from_images(std::move(ai)));
        }
        if (!transitive_on(vparts, n) || !transitive_on(aparts, arcs)) continue;
        PermGroup arc_image(arcs, aparts);
        if (arc_image.order() == 12 || arc_image.order() == 24) {
          ++cert.qualifying;
        }
      }
    });
  }
  cert.checks.require("digraph.search.none", cert.qualifying == 0,
                      std::to_string(cert.configurations_scanned) + " configurations scanned");
  return cert;
}

struct BipartiteCertificate {
  std::uint64_t configurations_scanned = 0;
  std::uint64_t survivors_of_shape_filter = 0;
  std::uint64_t qualifying = 0;  // expect 0
  CheckList checks;
};

// Search (c): no bipartite graph with |V2| = 4, disjoint labeled edge sets
// (one involvement edge per V2 vertex, one or two proper-projection edges),
// and an automorphism group making V1, V2, E1, E2 single orbits while
// inducing A4 on V2.
inline BipartiteCertificate search_bipartite_shapes(int max_v1 = 8) {
  BipartiteCertificate cert;
  using namespace detail_search;
  const int n2 = 4;

  for (int n1 = 1; n1 <= max_v1; ++n1) {
    // E2 is one orbit with every V2 vertex meeting exactly one edge, so the
    // V1-side degree is constant: |V1| must divide |E2| = 4
    if (4 % n1 != 0) continue;
    auto perms1 = all_perms(n1);
    auto perms2 = all_perms(n2);
    // E2: one partner in V1 per V2 vertex
    std::vector<int> e2(n2, 0);
    std::function<void(int)> rec_e2 = [&](int pos) {
      if (pos == n2) {
        {  // balanced E2 only
          std::vector<int> d2(n1, 0);
          for (int u = 0; u < n2; ++u) ++d2[e2[u]];
          if (std::count(d2.begin(), d2.end(), d2[0]) != n1) return;
        }
        // E1: each V2 vertex picks 1 or 2 partners, disjoint from its E2 edge
        std::vector<std::vector<int>> choices(n2);
        std::function<void(int)> rec_e1 = [&](int pos1) {
          if (pos1 > 0 && pos1 < n2 && choices[pos1 - 1].size() != choices[0].size())
            return;  // uniform E1 valency on V2
          if (pos1 == n2) {
            ++cert.configurations_scanned;
            std::size_t val = choices[0].size();
            for (int u = 0; u < n2; ++u)
              if (choices[u].size() != val) return;
            std::vector<int> d1(n1, 0);
            for (int u = 0; u < n2; ++u)
              for (int v : choices[u]) ++d1[v];
            if (std::count(d1.begin(), d1.end(), d1[0]) != n1) return;
            if (d1[0] == 0) return;
            ++cert.survivors_of_shape_filter;

            std::set<std::pair<int, int>> s1, s2;
            for (int u = 0; u < n2; ++u) {
              s2.insert({e2[u], u});
              for (int v : choices[u]) s1.insert({v, u});
            }
            // automorphisms: pairs (p1, p2) preserving both edge sets
            std::vector<Perm> gens;
            for (const Perm& p1 : perms1)
              for (const Perm& p2 : perms2) {
                bool ok = true;
                for (auto [v, u] : s1)
                  if (!s1.count({p1[v], p2[u]})) {
                    ok = false;
                    break;
                  }
                if (ok)
                  for (auto [v, u] : s2)
                    if (!s2.count({p1[v], p2[u]})) {
                      ok = false;
                      break;
                    }
                if (!ok) continue;
                std::vector<std::uint16_t> img(n1 + n2);
                for (int i = 0; i < n1; ++i) img[i] = static_cast<std::uint16_t>(p1[i]);
                for (int i = 0; i < n2; ++i) img[n1 + i] = static_cast<std::uint16_t>(n1 + p2[i]);
                gens.push_back(Perm::from_images(std::move(img)));
              }
            if (gens.empty()) return;
            PermGroup aut(n1 + n2, gens);
            {
              // necessary conditions on the full group before scanning subgroups
              std::vector<Perm> p1s, p2s;
              for (const Perm& g : gens) {
                std::vector<std::uint16_t> a(n1), b(n2);
                for (int i = 0; i < n1; ++i) a[i] = static_cast<std::uint16_t>(g[i]);
                for (int i = 0; i < n2; ++i) b[i] = static_cast<std::uint16_t>(g[n1 + i] - n1);
                p1s.push_back(Perm::from_images(std::move(a)));
                p2s.push_back(Perm::from_images(std::move(b)));
              }
              if (!transitive_on(p1s, n1) || !transitive_on(p2s, n2)) return;
            }
            for (const PermGroup& sub : subgroups_between(aut, {}, 100000)) {
              std::vector<Perm> p1s, p2s;
              for (const Perm& g : sub.generators()) {
                std::vector<std::uint16_t> a(n1), b(n2);
                for (int i = 0; i < n1; ++i) a[i] = static_cast<std::uint16_t>(g[i]);
                for (int i = 0; i < n2; ++i) b[i] = static_cast<std::uint16_t>(g[n1 + i] - n1);
                p1s.push_back(Perm::from_images(std::move(a)));
                p2s.push_back(Perm::from_images(std::move(b)));
              }
              if (!transitive_on(p1s, n1) || !transitive_on(p2s, n2)) continue;
              // E1 and E2 single orbits
              auto orbit_all = [&](const std::set<std::pair<int, int>>& edges) {
                auto first = *edges.begin();
                std::set<std::pair<int, int>> seen{first};
                std::vector<std::pair<int, int>> queue{first};
                for (std::size_t qi = 0; qi < queue.size(); ++qi)
                  for (std::size_t gi = 0; gi < p1s.size(); ++gi) {
                    std::pair<int, int> im{p1s[gi][queue[qi].first], p2s[gi][queue[qi].second]};
                    if (seen.insert(im).second) queue.push_back(im);
                  }
                return seen == edges;
              };
              if (!orbit_all(s1) || !orbit_all(s2)) continue;
              PermGroup v2_image(n2, p2s);
              if (v2_image.order() == 12) ++cert.qualifying;  // A4 induced on V2
            }
          } else {
            int partner = e2[pos1];
            for (int a = 0; a < n1; ++a) {
              if (a == partner) continue;
              choices[pos1] = {a};
              rec_e1(pos1 + 1);
              for (int b = a + 1; b < n1; ++b) {
                if (b == partner) continue;
                choices[pos1] = {a, b};
                rec_e1(pos1 + 1);
              }
            }
          }
        };
        rec_e1(0);
        return;
      }
      for (int v = 0; v < n1; ++v) {
        e2[pos] = v;
        rec_e2(pos + 1);
      }
    };
    rec_e2(0);
  }
  cert.checks.require("bipartite.search.none", cert.qualifying == 0,
                      std::to_string(cert.configurations_scanned) + " configurations scanned");
  return cert;
}

struct NonexistenceCertificates {
  SimpleGraphCertificate graphs;
  DiGraphCertificate digraphs;
  BipartiteCertificate bipartite;

  bool all_pass() const {
    return graphs.checks.all_pass() && digraphs.checks.all_pass() && bipartite.checks.all_pass();
  }
};

inline NonexistenceCertificates exhaustive_nonexistence_searches() {
  NonexistenceCertificates certs;
  certs.graphs = search_vertex_transitive_graphs();
  certs.digraphs = search_four_arc_digraphs();
  certs.bipartite = search_bipartite_shapes();
  return certs;
}

}  // namespace cartdec
