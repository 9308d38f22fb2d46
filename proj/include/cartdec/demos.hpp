#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cartdec/error.hpp"
#include "cartdec/gomega.hpp"
#include "cartdec/instance.hpp"
#include "cartdec/perm_group.hpp"
#include "cartdec/system.hpp"

namespace cartdec {
namespace demos {

// ---------------------------------------------------------------------------
// Small finite fields and projective lines, enough for PSL/PGL/PGammaL(2,9)
// on 10 points and PSL(2,11) with the Mathieu extension on 12 points.
// ---------------------------------------------------------------------------

struct SmallField {
  int q = 0;
  int p = 0;  // characteristic
  std::vector<std::vector<int>> add, mul;
  std::vector<int> neg, inv;

  static SmallField prime(int pp) {
    SmallField f;
    f.q = pp;
    f.p = pp;
    f.add.assign(pp, std::vector<int>(pp));
    f.mul.assign(pp, std::vector<int>(pp));
    f.neg.assign(pp, 0);
    f.inv.assign(pp, 0);
    for (int a = 0; a < pp; ++a) {
      f.neg[a] = (pp - a) % pp;
      for (int b = 0; b < pp; ++b) {
        f.add[a][b] = (a + b) % pp;
        f.mul[a][b] = (a * b) % pp;
      }
    }
    for (int a = 1; a < pp; ++a)
      for (int b = 1; b < pp; ++b)
        if (a * b % pp == 1) f.inv[a] = b;
    return f;
  }

  // GF(9) = GF(3)[i]/(i^2 + 1), element a + b*i encoded as a + 3b.
  static SmallField gf9() {
    SmallField f;
    f.q = 9;
    f.p = 3;
    f.add.assign(9, std::vector<int>(9));
    f.mul.assign(9, std::vector<int>(9));
    f.neg.assign(9, 0);
    f.inv.assign(9, 0);
    auto enc = [](int a, int b) { return (a % 3 + 3) % 3 + 3 * ((b % 3 + 3) % 3); };
    for (int a0 = 0; a0 < 3; ++a0)
      for (int b0 = 0; b0 < 3; ++b0) {
        int x = enc(a0, b0);
        f.neg[x] = enc(-a0, -b0);
        for (int a1 = 0; a1 < 3; ++a1)
          for (int b1 = 0; b1 < 3; ++b1) {
            int y = enc(a1, b1);
            f.add[x][y] = enc(a0 + a1, b0 + b1);
            // (a0 + b0 i)(a1 + b1 i) with i^2 = -1
            f.mul[x][y] = enc(a0 * a1 - b0 * b1, a0 * b1 + a1 * b0);
          }
      }
    for (int x = 1; x < 9; ++x)
      for (int y = 1; y < 9; ++y)
        if (f.mul[x][y] == 1) f.inv[x] = y;
    return f;
  }

  int power(int x, int e) const {
    int r = 1;
    for (int i = 0; i < e; ++i) r = mul[r][x];
    return r;
  }
};

// Projective line: points 0..q-1 are the field elements, point q is infinity.
struct ProjectiveLine {
  SmallField f;
  int infinity() const { return f.q; }
  int degree() const { return f.q + 1; }

  Perm from_map(const std::vector<int>& images) const {
    std::vector<std::uint16_t> img(images.begin(), images.end());
    return Perm::from_images(std::move(img));
  }

  Perm translation() const {  // t -> t + 1
    std::vector<int> img(degree());
    for (int t = 0; t < f.q; ++t) img[t] = f.add[t][1];
    img[infinity()] = infinity();
    return from_map(img);
  }

  Perm scale(int s) const {  // t -> s t
    std::vector<int> img(degree());
    for (int t = 0; t < f.q; ++t) img[t] = f.mul[s][t];
    img[infinity()] = infinity();
    return from_map(img);
  }

  Perm inversion() const {  // t -> -1/t
    std::vector<int> img(degree());
    img[0] = infinity();
    img[infinity()] = 0;
    for (int t = 1; t < f.q; ++t) img[t] = f.neg[f.inv[t]];
    return from_map(img);
  }

  Perm frobenius() const {  // t -> t^p
    std::vector<int> img(degree());
    for (int t = 0; t < f.q; ++t) img[t] = f.power(t, f.p);
    img[infinity()] = infinity();
    return from_map(img);
  }

  Perm monomial(int a, int e) const {  // t -> a t^e, infinity fixed
    std::vector<int> img(degree());
    for (int t = 0; t < f.q; ++t) img[t] = f.mul[a][f.power(t, e)];
    img[infinity()] = infinity();
    return from_map(img);
  }
};

// A6 in its degree-10 representation PSL(2,9), together with the outer
// elements available inside PGammaL(2,9): the nonsquare scaling and the
// field automorphism.
struct A6Degree10 {
  PermGroup t;            // PSL(2,9), order 360
  PermGroup pgammal;      // order 1440
  Perm pgl_twist;         // scale by a primitive element
  Perm field_twist;       // Frobenius
};

inline A6Degree10 build_a6_degree10() {
  ProjectiveLine line{SmallField::gf9()};
  int g = 4;  // 1 + i is primitive: (1+i)^2 = 2i, order 8
  int g2 = line.f.mul[g][g];
  Perm tr = line.translation();
  Perm sc = line.scale(g2);
  Perm iv = line.inversion();
  PermGroup t(line.degree(), {tr, sc, iv});
  if (t.order() != 360) fail(ErrorKind::InvalidInstance, "PSL(2,9) construction is wrong");
  Perm pgl = line.scale(g);
  Perm fro = line.frobenius();
  PermGroup big(line.degree(), {tr, sc, iv, pgl, fro});
  if (big.order() != 1440) fail(ErrorKind::InvalidInstance, "PGammaL(2,9) construction is wrong");
  return A6Degree10{std::move(t), std::move(big), pgl, fro};
}

// Derived data for the degree-10 A6 demos: D10 as a Sylow-5 normalizer, its
// two A5 overgroups (one per conjugacy class), and an outer twist normalizing
// D10 while swapping the two overgroups.
struct A6DemoData {
  A6Degree10 amb;
  PermGroup d10;
  PermGroup a5_first, a5_second;
  Perm outer;  // in PGammaL(2,9) \ PSL(2,9)
};

inline A6DemoData build_a6_demo_data() {
  A6DemoData d{build_a6_degree10(), {}, {}, {}, {}};
  const PermGroup& t = d.amb.t;

  // canonical Sylow-5 and its normalizer
  Perm c5;
  for (const Perm& e : t.elements())
    if (e.order() == 5) {
      c5 = e;
      break;
    }
  PermGroup sylow(t.degree(), {c5});
  d.d10 = t.normalizer(sylow);
  if (d.d10.order() != 10) fail(ErrorKind::InvalidInstance, "Sylow-5 normalizer is not D10");

  // the two order-60 overgroups of D10
  std::vector<PermGroup> overgroups;
  for (const Perm& e : t.elements()) {
    if (d.d10.contains(e)) continue;
    auto closed = bounded_closure(t.degree(), d.d10.generators(), {e}, 61);
    if (!closed || closed->size() != 60) continue;
    PermGroup h = PermGroup::from_elements(t.degree(), *closed);
    bool known = false;
    for (const PermGroup& o : overgroups)
      if (o.same_group(h)) known = true;
    if (!known) overgroups.push_back(std::move(h));
  }
  if (overgroups.size() != 2)
    fail(ErrorKind::InvalidInstance, "expected exactly two A5 overgroups of D10 in A6");
  d.a5_first = overgroups[0];
  d.a5_second = overgroups[1];
  if (PermGroup::intersection(d.a5_first, d.a5_second).order() != 10)
    fail(ErrorKind::InvalidInstance, "A5 overgroups should meet in D10");

  // outer element normalizing D10 and swapping the two overgroups
  bool found = false;
  for (const Perm& e : d.amb.pgammal.elements()) {
    if (t.contains(e)) continue;
    bool norm_d10 = true;
    for (const Perm& gd : d.d10.generators())
      if (!d.d10.contains(gd.conjugated_by(e))) norm_d10 = false;
    if (!norm_d10) continue;
    bool swaps = true;
    for (const Perm& ga : d.a5_first.generators())
      if (!d.a5_second.contains(ga.conjugated_by(e))) swaps = false;
    if (!swaps) continue;
    d.outer = e;
    found = true;
    break;
  }
  if (!found) fail(ErrorKind::InvalidInstance, "no outer twist fusing the two A5 classes");
  return d;
}

// ---------------------------------------------------------------------------
// A5 on 5 points with the A4 / D10 pair meeting in an involution.
// ---------------------------------------------------------------------------

struct A5DemoData {
  PermGroup t;      // A5
  PermGroup a4;     // even permutations of {0,1,2,3}
  PermGroup d10;    // <(0 1 2 3 4), (1 4)(2 3)>
  PermGroup meet;   // their intersection, order 2
};

inline A5DemoData build_a5_demo_data() {
  A5DemoData d;
  d.t = PermGroup(5, {Perm::parse_cycles("(0 1 2)", 5), Perm::parse_cycles("(0 1 2 3 4)", 5)});
  d.a4 = PermGroup(5, {Perm::parse_cycles("(0 1 2)", 5), Perm::parse_cycles("(0 1)(2 3)", 5)});
  d.d10 = PermGroup(5, {Perm::parse_cycles("(0 1 2 3 4)", 5), Perm::parse_cycles("(1 4)(2 3)", 5)});
  d.meet = PermGroup::intersection(d.a4, d.d10);
  if (d.t.order() != 60 || d.a4.order() != 12 || d.d10.order() != 10 || d.meet.order() != 2)
    fail(ErrorKind::InvalidInstance, "A5 demo data is wrong");
  return d;
}

// ---------------------------------------------------------------------------
// M12 on 12 points: PSL(2,11) plus a Mathieu extender, with the two M11
// overgroup classes meeting in PSL(2,11).
// ---------------------------------------------------------------------------

struct M12DemoData {
  PermGroup m12;       // degree 12, order 95040
  PermGroup k1;        // point stabilizer M11 (fixes `fixed_point`)
  PermGroup k2;        // transitive M11
  PermGroup l0;        // k1 meet k2, PSL(2,11) of order 660
  int fixed_point = 0;
};

inline PermGroup build_m12_degree12() {
  ProjectiveLine line{SmallField::prime(11)};
  Perm tr = line.translation();
  Perm iv = line.inversion();
  PermGroup l(line.degree(), {tr, iv});
  if (l.order() != 660) fail(ErrorKind::InvalidInstance, "PSL(2,11) construction is wrong");

  std::vector<Perm> candidates;
  // the classical extender fixing {0, 1, infinity} setwise
  candidates.push_back(Perm::parse_cycles("(2 10)(3 4)(5 9)(6 7)", 12));
  for (int e : {3, 7, 9})
    for (int a = 1; a < 11; ++a) candidates.push_back(line.monomial(a, e));
  for (const Perm& c : candidates) {
    auto closed = bounded_closure(line.degree(), l.generators(), {c}, 95041);
    if (closed && closed->size() == 95040) {
      PermGroup m12(line.degree(), {tr, iv, c});
      return m12;
    }
  }
  fail(ErrorKind::InvalidInstance, "no Mathieu extender found over PSL(2,11)");
}

inline M12DemoData build_m12_demo_data() {
  M12DemoData d;
  d.m12 = build_m12_degree12();

  // an order-11 element fixes exactly one point; its point stabilizer is M11
  Perm x11;
  for (const Perm& e : d.m12.elements())
    if (e.order() == 11) {
      x11 = e;
      break;
    }
  for (int pt = 0; pt < 12; ++pt)
    if (x11[pt] == pt) d.fixed_point = pt;
  d.k1 = d.m12.point_stabilizer(d.fixed_point);
  if (d.k1.order() != 7920) fail(ErrorKind::InvalidInstance, "point stabilizer is not M11");

  // the unique PSL(2,11) of k1 containing the Sylow-11
  bool found = false;
  for (const Perm& e : d.k1.elements()) {
    auto closed = bounded_closure(12, {x11}, {e}, 661);
    if (closed && closed->size() == 660) {
      d.l0 = PermGroup::from_elements(12, *closed);
      found = true;
      break;
    }
  }
  if (!found) fail(ErrorKind::InvalidInstance, "no PSL(2,11) above the Sylow-11 inside M11");

  // the transitive M11 overgroup of l0
  found = false;
  for (const Perm& e : d.m12.elements()) {
    if (d.k1.contains(e)) continue;
    auto closed = bounded_closure(12, d.l0.generators(), {e}, 7921);
    if (closed && closed->size() == 7920) {
      d.k2 = PermGroup::from_elements(12, *closed);
      found = true;
      break;
    }
  }
  if (!found) fail(ErrorKind::InvalidInstance, "no transitive M11 above PSL(2,11)");
  if (!d.k2.is_transitive()) fail(ErrorKind::InvalidInstance, "second M11 overgroup is not transitive");
  if (PermGroup::intersection(d.k1, d.k2).order() != 660)
    fail(ErrorKind::InvalidInstance, "M11 overgroups should meet in PSL(2,11)");
  d.l0 = PermGroup::intersection(d.k1, d.k2);
  return d;
}

// The experimental degree-24 representation: M12 acting diagonally on its
// natural points and on the cosets of the transitive M11, where the
// class-fusing outer automorphism becomes a normalizing permutation.
struct M12OuterData {
  PermGroup t24;               // diagonal M12 on 12 + 12 points
  std::vector<Perm> k1_gens;   // images of k1 generators
  std::vector<Perm> k2_gens;
  std::vector<Perm> l0_gens;
  Perm outer;                  // normalizes t24 and the diagonal l0, swaps k1/k2
};

inline M12OuterData build_m12_outer_data(const M12DemoData& d) {
  // second 12-point action: cosets of k2
  CosetAction act2 = coset_action(d.m12, d.k2);
  if (act2.image.degree() != 12) fail(ErrorKind::InvalidInstance, "K2 coset action degree != 12");

  // elementwise second-action map, from the generator correspondence
  std::unordered_map<Perm, Perm, PermHash> second;
  {
    std::vector<Perm> first_frontier{Perm::identity(12)};
    second[Perm::identity(12)] = Perm::identity(12);
    std::vector<Perm> frontier = first_frontier;
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const Perm& e : frontier) {
        const Perm& im = second.at(e);
        for (std::size_t gi = 0; gi < d.m12.generators().size(); ++gi) {
          Perm e2 = e * d.m12.generators()[gi];
          if (second.count(e2)) continue;
          second[e2] = im * act2.gen_images[gi];
          next.push_back(e2);
        }
      }
      frontier = std::move(next);
    }
  }

  auto to24 = [&](const Perm& g) {
    const Perm& g2 = second.at(g);
    std::vector<std::uint16_t> img(24);
    for (int i = 0; i < 12; ++i) img[i] = static_cast<std::uint16_t>(g[i]);
    for (int i = 0; i < 12; ++i) img[12 + i] = static_cast<std::uint16_t>(12 + g2[i]);
    return Perm::from_images(std::move(img));
  };

  M12OuterData out;
  std::vector<Perm> t24_gens;
  for (const Perm& g : d.m12.generators()) t24_gens.push_back(to24(g));
  out.t24 = PermGroup(24, t24_gens, 100000);
  if (out.t24.order() != 95040) fail(ErrorKind::InvalidInstance, "diagonal M12 has wrong order");
  for (const Perm& g : d.k1.generators()) out.k1_gens.push_back(to24(g));
  for (const Perm& g : d.k2.generators()) out.k2_gens.push_back(to24(g));
  for (const Perm& g : d.l0.generators()) out.l0_gens.push_back(to24(g));

  // Fixed points of l0 on the two halves: the natural fixed point, and the
  // trivial coset of k2 (l0 <= k2).
  int p1 = d.fixed_point;
  int p2 = 12 + 0;

  // l0 elements with both action halves, plus its point stabilizers
  std::vector<Perm> l0_elements = d.l0.elements();
  auto stab_of_p1 = [&](int pt) {
    std::vector<Perm> out_elems;
    for (const Perm& e : l0_elements)
      if (e[pt] == pt) out_elems.push_back(e);
    return out_elems;
  };
  auto stab_of_p2 = [&](int pt) {  // pt in 0..11 on the second half
    std::vector<Perm> out_elems;
    for (const Perm& e : l0_elements)
      if (second.at(e)[pt] == pt) out_elems.push_back(e);
    return out_elems;
  };

  // an outer automorphism of PSL(2,11), transported onto l0 through a
  // generator-matching isomorphism with the projective-line copy
  ProjectiveLine line{SmallField::prime(11)};
  PermGroup l2(12, {line.translation(), line.inversion()});
  Perm pi = line.scale(2);  // 2 is a nonsquare mod 11
  {
    bool pi_outer = true;
    for (const Perm& g : l2.generators())
      if (!l2.contains(g.conjugated_by(pi))) pi_outer = false;
    if (!pi_outer || l2.contains(pi)) {
      if (!pi_outer) fail(ErrorKind::InvalidInstance, "scaling does not normalize PSL(2,11)");
      fail(ErrorKind::InvalidInstance, "nonsquare scaling is not outer for PSL(2,11)");
    }
  }

  Perm xp;  // canonical order-11 element of l2
  for (const Perm& e : l2.elements())
    if (e.order() == 11) {
      xp = e;
      break;
    }
  Perm x0;  // canonical order-11 element of l0
  for (const Perm& e : l0_elements)
    if (e.order() == 11) {
      x0 = e;
      break;
    }

  // isomorphism theta : l2 -> l0 by the paired-closure test
  std::unordered_map<Perm, Perm, PermHash> theta;
  {
    bool found = false;
    std::vector<Perm> x_targets;
    Perm acc = x0;
    for (int j = 1; j <= 10; ++j) {
      x_targets.push_back(acc);
      acc = acc * x0;
    }
    for (const Perm& xt : x_targets) {
      if (found) break;
      for (const Perm& y0 : l0_elements) {
        if (y0.order() != 2) continue;
        // does xp -> xt, iv -> y0 extend to an isomorphism?
        auto glue = [&](const Perm& a, const Perm& b) {
          std::vector<std::uint16_t> img(24);
          for (int i = 0; i < 12; ++i) img[i] = static_cast<std::uint16_t>(a[i]);
          for (int i = 0; i < 12; ++i) img[12 + i] = static_cast<std::uint16_t>(12 + b[i]);
          return Perm::from_images(std::move(img));
        };
        auto closed = bounded_closure(24, {glue(xp, xt)}, {glue(l2.generators()[1], y0)}, 661);
        if (!closed || closed->size() != 660) continue;
        theta.clear();
        for (const Perm& pair : *closed) {
          std::vector<std::uint16_t> a(12), b(12);
          for (int i = 0; i < 12; ++i) a[i] = static_cast<std::uint16_t>(pair[i]);
          for (int i = 0; i < 12; ++i) b[i] = static_cast<std::uint16_t>(pair[12 + i] - 12);
          theta[Perm::from_images(std::move(a))] = Perm::from_images(std::move(b));
        }
        found = true;
        break;
      }
    }
    if (!found) fail(ErrorKind::InvalidInstance, "no isomorphism from PSL(2,11) onto l0");
  }
  std::unordered_map<Perm, Perm, PermHash> theta_inv;
  for (const auto& [a, b] : theta) theta_inv[b] = a;

  // gamma = theta o conj(pi) o theta^-1, an outer automorphism of l0
  auto gamma = [&](const Perm& g) { return theta.at(theta_inv.at(g).conjugated_by(pi)); };

  // candidate tau built from an automorphism kappa of l0 and matched base
  // points: tau(p1) = 12+0 is forced (unique l0 fixed point per half), the
  // rest propagates by equivariance tau(z^l) = tau(z)^kappa(l).
  int x0_point = (p1 == 0) ? 1 : 0;       // first-half base point, not fixed by l0
  int y0_base_point = 1;                  // second-half base point (0 is the fixed coset)

  auto elements_sorted = [](std::vector<Perm> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<Perm> base1 = elements_sorted(stab_of_p1(x0_point));
  std::vector<Perm> base2 = elements_sorted(stab_of_p2(y0_base_point));
  std::vector<std::vector<Perm>> stabs1(12), stabs2(12);
  for (int pt = 0; pt < 12; ++pt) {
    stabs1[pt] = elements_sorted(stab_of_p1(pt));
    stabs2[pt] = elements_sorted(stab_of_p2(pt));
  }

  const std::vector<Perm>& t24_els = out.t24.elements();
  auto in_t24 = [&](const Perm& x) {
    return std::binary_search(t24_els.begin(), t24_els.end(), x);
  };

  for (int use_gamma = 1; use_gamma >= 0; --use_gamma) {
    for (const Perm& l : l0_elements) {
      auto kappa = [&](const Perm& g) {
        Perm h = use_gamma ? gamma(g) : g;
        return h.conjugated_by(l);
      };
      // tau(x0_point) = 12 + y0 where the second-half stabilizer matches
      std::vector<Perm> image1;
      for (const Perm& e : base1) image1.push_back(kappa(e));
      image1 = elements_sorted(std::move(image1));
      int y0 = -1;
      for (int pt = 0; pt < 12; ++pt)
        if (pt != 0 && stabs2[pt] == image1) {
          y0 = pt;
          break;
        }
      if (y0 < 0) continue;
      // tau(12 + y0_base_point) = x1 likewise
      std::vector<Perm> image2;
      for (const Perm& e : base2) image2.push_back(kappa(e));
      image2 = elements_sorted(std::move(image2));
      int x1 = -1;
      for (int pt = 0; pt < 12; ++pt)
        if (pt != p1 && stabs1[pt] == image2) {
          x1 = pt;
          break;
        }
      if (x1 < 0) continue;

      std::vector<int> img(24, -1);
      img[p1] = 12 + 0;
      img[12 + 0] = p1;
      bool consistent = true;
      for (const Perm& e : l0_elements) {
        Perm ke = kappa(e);
        int from = e[x0_point];
        int to = 12 + second.at(ke)[y0];
        if (img[from] < 0)
          img[from] = to;
        else if (img[from] != to)
          consistent = false;
        int from2 = 12 + second.at(e)[y0_base_point];
        int to2 = ke[x1];
        if (img[from2] < 0)
          img[from2] = to2;
        else if (img[from2] != to2)
          consistent = false;
        if (!consistent) break;
      }
      if (!consistent) continue;
      if (!std::all_of(img.begin(), img.end(), [](int v) { return v >= 0; })) continue;
      std::vector<std::uint16_t> imgu(img.begin(), img.end());
      Perm tau;
      try {
        tau = Perm::from_images(std::move(imgu));
      } catch (const Error&) {
        continue;
      }
      bool normalizes = true;
      for (const Perm& g : out.t24.generators())
        if (!in_t24(g.conjugated_by(tau))) normalizes = false;
      if (!normalizes) continue;
      // the forced fixed-point images already swap the two M11 overgroups
      out.outer = tau;
      return out;
    }
  }
  fail(ErrorKind::InvalidInstance, "no outer action found for the diagonal M12");
}

// ---------------------------------------------------------------------------
// Bundled demo instances.
// ---------------------------------------------------------------------------

inline const A5DemoData& a5_demo_data() {
  static const A5DemoData d = build_a5_demo_data();
  return d;
}

inline const A6DemoData& a6_demo_data() {
  static const A6DemoData d = build_a6_demo_data();
  return d;
}

inline const M12DemoData& m12_demo_data() {
  static const M12DemoData d = build_m12_demo_data();
  return d;
}

inline const M12OuterData& m12_outer_data() {
  static const M12OuterData d = build_m12_outer_data(m12_demo_data());
  return d;
}

struct BuiltDemo {
  std::string name;
  std::shared_ptr<const PointedInstance> instance;
  std::vector<ProductSubgroup> members;

  CartesianSystem system() const { return CartesianSystem(instance, members); }
};

inline ProductSubgroup embed_subgroup_at(const std::shared_ptr<const ProductGroup>& m,
                                         const PermGroup& h, int coord) {
  std::vector<Perm> gens;
  for (const Perm& g : h.generators()) gens.push_back(m->embed_factor(g, coord));
  return ProductSubgroup(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
}

inline ProductSubgroup diagonal_subgroup(const std::shared_ptr<const ProductGroup>& m,
                                         const PermGroup& h) {
  std::vector<std::vector<Perm>> tuples;
  for (const Perm& g : h.generators()) tuples.push_back(std::vector<Perm>(m->k(), g));
  return ProductSubgroup::from_tuples(m, tuples);
}

// M = A5, M_omega the involution A4 meets D10 in, members {A4, D10}.
inline BuiltDemo demo_a5_2nsim() {
  const A5DemoData& d = a5_demo_data();
  auto m = std::make_shared<const ProductGroup>(d.t, 1);
  ProductSubgroup m_omega = embed_subgroup_at(m, d.meet, 0);
  std::vector<GOmegaAction> gens;
  for (const Perm& g : d.meet.generators()) gens.push_back(GOmegaAction(*m, Perm::identity(1), {g}));
  GOmegaGroup gw(m, std::move(gens));
  auto inst = std::make_shared<const PointedInstance>(m, m_omega, std::move(gw));
  return BuiltDemo{"a5-2nsim", inst, {embed_subgroup_at(m, d.a4, 0), embed_subgroup_at(m, d.d10, 0)}};
}

// M = A6 in degree 10, M_omega = D10, members the two A5 overgroups, outer
// twist fusing them.
inline BuiltDemo demo_a6_2sim() {
  const A6DemoData& d = a6_demo_data();
  auto m = std::make_shared<const ProductGroup>(d.amb.t, 1);
  ProductSubgroup m_omega = embed_subgroup_at(m, d.d10, 0);
  std::vector<GOmegaAction> gens;
  for (const Perm& g : d.d10.generators()) gens.push_back(GOmegaAction(*m, Perm::identity(1), {g}));
  gens.push_back(GOmegaAction(*m, Perm::identity(1), {d.outer}));
  GOmegaGroup gw(m, std::move(gens));
  auto inst = std::make_shared<const PointedInstance>(m, m_omega, std::move(gw));
  return BuiltDemo{"a6-2sim", inst,
                   {embed_subgroup_at(m, d.a5_first, 0), embed_subgroup_at(m, d.a5_second, 0)}};
}

// M = A6 x A6, M_omega the diagonal D10 strip, members the diagonal A6 and
// the product of the two A5 classes, coordinate swap twisted by the outer
// element.
inline BuiltDemo demo_a6a6_1s() {
  const A6DemoData& d = a6_demo_data();
  auto m = std::make_shared<const ProductGroup>(d.amb.t, 2);
  ProductSubgroup m_omega = diagonal_subgroup(m, d.d10);
  std::vector<GOmegaAction> gens;
  for (const Perm& g : d.d10.generators())
    gens.push_back(GOmegaAction(*m, Perm::identity(2), {g, g}));
  gens.push_back(GOmegaAction(*m, Perm::parse_cycles("(0 1)", 2), {d.outer, d.outer}));
  GOmegaGroup gw(m, std::move(gens));
  auto inst = std::make_shared<const PointedInstance>(m, m_omega, std::move(gw));

  ProductSubgroup k_strip = diagonal_subgroup(m, d.amb.t);
  std::vector<std::vector<Perm>> tuples;
  for (const Perm& g : d.a5_first.generators()) tuples.push_back({g, Perm::identity(10)});
  for (const Perm& g : d.a5_second.generators()) tuples.push_back({Perm::identity(10), g});
  ProductSubgroup k_box = ProductSubgroup::from_tuples(m, tuples);
  return BuiltDemo{"a6a6-1s", inst, {k_strip, k_box}};
}

// M = M12, M_omega = PSL(2,11), members the two M11 overgroup classes.
// Without the experimental outer action the stabilizer group is inner only
// (equation-level verification); with it the degree-24 diagonal action plus
// the fusing outer permutation is used, so the pair classifies as 2sim.
inline BuiltDemo demo_m12_2sim(bool experimental_outer = false) {
  if (!experimental_outer) {
    const M12DemoData& d = m12_demo_data();
    auto m = std::make_shared<const ProductGroup>(d.m12, 1, /*assume_simple=*/true);
    ProductSubgroup m_omega = embed_subgroup_at(m, d.l0, 0);
    std::vector<GOmegaAction> gens;
    for (const Perm& g : d.l0.generators()) gens.push_back(GOmegaAction(*m, Perm::identity(1), {g}));
    GOmegaGroup gw(m, std::move(gens));
    auto inst = std::make_shared<const PointedInstance>(m, m_omega, std::move(gw));
    return BuiltDemo{"m12-2sim", inst,
                     {embed_subgroup_at(m, d.k1, 0), embed_subgroup_at(m, d.k2, 0)}};
  }
  const M12OuterData& od = m12_outer_data();
  auto m = std::make_shared<const ProductGroup>(od.t24, 1, /*assume_simple=*/true, 100000);
  auto embed = [&](const std::vector<Perm>& gens24) {
    std::vector<Perm> gens;
    for (const Perm& g : gens24) gens.push_back(m->embed_factor(g, 0));
    return ProductSubgroup(m, PermGroup(m->degree(), std::move(gens), m->element_cap()));
  };
  ProductSubgroup m_omega = embed(od.l0_gens);
  std::vector<GOmegaAction> gens;
  for (const Perm& g : od.l0_gens) gens.push_back(GOmegaAction(*m, Perm::identity(1), {g}));
  gens.push_back(GOmegaAction(*m, Perm::identity(1), {od.outer}));
  GOmegaGroup gw(m, std::move(gens));
  auto inst = std::make_shared<const PointedInstance>(m, m_omega, std::move(gw));
  return BuiltDemo{"m12-2sim-outer", inst, {embed(od.k1_gens), embed(od.k2_gens)}};
}

inline BuiltDemo build_demo(const std::string& name, bool experimental_outer = false) {
  if (name == "a5-2nsim") return demo_a5_2nsim();
  if (name == "a6-2sim") return demo_a6_2sim();
  if (name == "a6a6-1s") return demo_a6a6_1s();
  if (name == "m12-2sim") return demo_m12_2sim(experimental_outer);
  fail(ErrorKind::ParseError, "unknown demo name: " + name);
}

}  // namespace demos
}  // namespace cartdec
