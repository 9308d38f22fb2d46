#include <doctest.h>

#include <algorithm>

#include "cartdec/perm_group.hpp"
#include "test_helpers.hpp"

using namespace cartdec;
using namespace cartdec::testing;

namespace {

// Independent reference scans, kept separate from the library paths they check.
std::vector<Perm> scan_normalizing(const PermGroup& g, const PermGroup& h) {
  std::vector<Perm> out;
  for (const Perm& x : g.elements()) {
    bool ok = true;
    for (const Perm& e : h.elements())
      if (!h.contains(e.conjugated_by(x))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<Perm> scan_centralizing(const PermGroup& g, const PermGroup& h) {
  std::vector<Perm> out;
  for (const Perm& x : g.elements()) {
    bool ok = true;
    for (const Perm& e : h.elements())
      if (!(e * x == x * e)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("orders of the staple groups") {
  CHECK(PermGroup::trivial(5).order() == 1);
  CHECK(group(3, {"(0 1 2)"}).order() == 3);
  CHECK(a5().order() == 60);
  CHECK(a4_in_a5().order() == 12);
  CHECK(d10_in_a5().order() == 10);
  CHECK(s4().order() == 24);
  CHECK(a6().order() == 360);
}

TEST_CASE("element cap is enforced") {
  PermGroup g(5, {p("(0 1 2)", 5), p("(0 1 2 3 4)", 5)}, 30);
  CHECK_THROWS_AS(g.order(), Error);
}

TEST_CASE("canonical element ordering is lexicographic and deterministic") {
  PermGroup g = a5();
  const auto& els = g.elements();
  CHECK(std::is_sorted(els.begin(), els.end()));
  CHECK(els.front().is_identity());
  PermGroup g2 = a5();
  CHECK(g2.elements() == els);
}

TEST_CASE("orbits") {
  CHECK(group(3, {"(0 1 2)"}).orbit(0) == std::vector<int>{0, 1, 2});
  CHECK(a5().orbit(3) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(group(4, {"(0 1)(2 3)"}).orbit(2) == std::vector<int>{2, 3});
}

TEST_CASE("point stabilizers satisfy orbit-stabilizer") {
  PermGroup g = a5();
  PermGroup st = g.point_stabilizer(0);
  CHECK(st.order() == 12);
  CHECK(g.order() == g.orbit(0).size() * st.order());
  CHECK(PermGroup::trivial(5).point_stabilizer(2).order() == 1);
  PermGroup h = a6();
  CHECK(h.point_stabilizer(0).order() == 60);
  for (int pt = 0; pt < 5; ++pt)
    CHECK(g.order() == g.orbit(pt).size() * g.point_stabilizer(pt).order());
}

TEST_CASE("normalizer agrees with an element scan") {
  PermGroup g = a5();
  PermGroup d10 = d10_in_a5();
  PermGroup n = g.normalizer(d10);
  CHECK(n.order() == 10);  // self-normalizing
  CHECK(n.elements() == scan_normalizing(g, d10));
  CHECK(g.normalizer(g).same_group(g));

  PermGroup c2 = group(5, {"(0 1)(2 3)"});
  PermGroup nc2 = g.normalizer(c2);
  CHECK(nc2.order() == 4);
  CHECK(nc2.elements() == scan_normalizing(g, c2));
}

TEST_CASE("normalizer validates subgroup input") {
  PermGroup g = a5();
  PermGroup s4_bad = group(5, {"(0 1 2 3)", "(0 1)"});  // odd permutations, not in A5
  CHECK_THROWS_AS(g.normalizer(s4_bad), Error);
}

TEST_CASE("centralizer agrees with an element scan") {
  PermGroup g = a5();
  CHECK(g.centralizer(g).order() == 1);  // centerless
  CHECK(g.centralizer(PermGroup::trivial(5)).same_group(g));
  PermGroup d10 = d10_in_a5();
  PermGroup c = g.centralizer(d10);
  CHECK(c.order() == 1);
  CHECK(c.elements() == scan_centralizing(g, d10));
}

TEST_CASE("derived subgroups") {
  CHECK(s4().derived_subgroup().order() == 12);
  CHECK(group(5, {"(0 1 2 3 4)"}).derived_subgroup().order() == 1);
  PermGroup g = a5();
  CHECK(g.derived_subgroup().same_group(g));  // perfect
}

TEST_CASE("conjugacy with canonical witness") {
  PermGroup g = a5();
  PermGroup d10 = d10_in_a5();
  auto w = g.conjugating_element(d10, d10);
  REQUIRE(w.has_value());
  CHECK(w->is_identity());

  // two point stabilizers of a transitive group are conjugate
  auto w2 = g.conjugating_element(g.point_stabilizer(0), g.point_stabilizer(3));
  REQUIRE(w2.has_value());
  CHECK((*w2)[0] == 3);

  // different orders: never conjugate
  CHECK(!g.conjugating_element(a4_in_a5(), d10).has_value());
}

TEST_CASE("two A5 classes in A6 are not conjugate inside A6") {
  PermGroup g = a6();
  PermGroup point_a5 = g.point_stabilizer(0);
  // an icosahedral A5, transitive on the 6 points: <(0 1 2 3 4), (0 1)(2 5)>? derive instead:
  // scan for a transitive subgroup of order 60 not fixing a point.
  PermGroup cand = group(6, {"(0 1 2 3 4)", "(1 2)(3 4)"});
  // <(0..4),(1 2)(3 4)> is D10 extended...; build the transitive A5 by closure search
  PermGroup trans_a5 = cand;
  bool found = false;
  for (const Perm& e : g.elements()) {
    auto closed = bounded_closure(6, {p("(0 1 2 3 4)", 6)}, {e}, 61);
    if (!closed) continue;
    if (closed->size() == 60) {
      PermGroup h = PermGroup::from_elements(6, *closed);
      if (h.is_transitive()) {
        trans_a5 = h;
        found = true;
        break;
      }
    }
  }
  REQUIRE(found);
  CHECK(trans_a5.order() == 60);
  CHECK(trans_a5.is_transitive());
  CHECK(!g.conjugating_element(point_a5, trans_a5).has_value());
}

TEST_CASE("coset actions") {
  PermGroup g = a5();

  auto whole = coset_action(g, g);
  CHECK(whole.image.degree() == 1);

  auto on5 = coset_action(g, a4_in_a5());
  CHECK(on5.image.degree() == 5);
  CHECK(on5.image.is_transitive());

  PermGroup c2 = group(5, {"(0 1)(2 3)"});
  auto on30 = coset_action(g, c2);
  CHECK(on30.image.degree() == 30);
  CHECK(on30.image.is_transitive());
  CHECK(on30.basepoint == 0);

  // kernel of the action equals the core: A5 simple, proper subgroup -> faithful
  CHECK(on30.image.order() == 60);
}

TEST_CASE("coset action kernel equals the core on a non-faithful case") {
  // S4 acting on cosets of a subgroup containing the Klein four group's core:
  // take H = D8 = <(0 1 2 3),(0 2)> of order 8; core = V4; index 3 action has kernel V4.
  PermGroup g = s4();
  PermGroup d8 = group(4, {"(0 1 2 3)", "(0 2)"});
  CHECK(d8.order() == 8);
  auto act = coset_action(g, d8);
  CHECK(act.image.degree() == 3);
  CHECK(act.image.order() == 6);  // S3 image, kernel of order 4

  // explicit kernel scan: elements inducing the identity coset map
  std::uint64_t kernel = 0;
  for (const Perm& e : g.elements()) {
    bool in_kernel = true;
    for (const Perm& r : act.reps) {
      // e fixes coset H r iff r e r^-1 in H
      if (!d8.contains(r * e * r.inverse())) {
        in_kernel = false;
        break;
      }
    }
    if (in_kernel) ++kernel;
  }
  CHECK(kernel == 4);
}

TEST_CASE("from_elements produces a reduced deterministic generating set") {
  PermGroup g = a5();
  PermGroup rebuilt = PermGroup::from_elements(5, g.elements());
  CHECK(rebuilt.same_group(g));
  CHECK(rebuilt.generators().size() <= 3);
  PermGroup rebuilt2 = PermGroup::from_elements(5, g.elements());
  CHECK(rebuilt.generators() == rebuilt2.generators());
}

TEST_CASE("intersection and product size") {
  PermGroup a4 = a4_in_a5();
  PermGroup d10 = d10_in_a5();
  PermGroup meet = PermGroup::intersection(a4, d10);
  CHECK(meet.order() == 2);
  CHECK(PermGroup::product_size(a4, d10) == 60);  // A4 * D10 = A5
}

TEST_CASE("simplicity check") {
  CHECK(a5().is_simple());
  CHECK(a6().is_simple());
  CHECK(!s4().is_simple());
  CHECK(!group(4, {"(0 1)(2 3)", "(0 2)(1 3)"}).is_simple());
  CHECK(!PermGroup::trivial(3).is_simple());
}
