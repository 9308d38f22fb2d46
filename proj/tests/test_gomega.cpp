#include <doctest.h>

#include <memory>

#include "cartdec/gomega.hpp"
#include "test_helpers.hpp"

using namespace cartdec;
using namespace cartdec::testing;

namespace {

std::shared_ptr<const ProductGroup> a5_squared() {
  static auto g = std::make_shared<const ProductGroup>(a5(), 2);
  return g;
}

ProductSubgroup box2(std::shared_ptr<const ProductGroup> m, const PermGroup& g0, const PermGroup& g1) {
  std::vector<std::vector<Perm>> tuples;
  for (const Perm& g : g0.generators()) tuples.push_back({g, Perm::identity(5)});
  for (const Perm& g : g1.generators()) tuples.push_back({Perm::identity(5), g});
  return ProductSubgroup::from_tuples(m, tuples);
}

}  // namespace

TEST_CASE("actions compose by the wreath law and invert") {
  auto m = a5_squared();
  Perm swap01 = p("(0 1)", 2);
  Perm t = p("(0 1 2 3 4)", 5);
  GOmegaAction g(*m, swap01, {t, Perm::identity(5)});
  GOmegaAction h(*m, swap01, {Perm::identity(5), t.inverse()});

  Perm prod = g.big() * h.big();
  GOmegaAction gh = GOmegaAction::from_big(*m, prod);
  CHECK(gh.coord_perm().is_identity());
  // (swap; t, 1) * (swap; 1, t^-1): coordinate 0 twist = t * (second of h after swap) = t * t^-1
  CHECK(gh.twists()[0].is_identity());
  CHECK(gh.twists()[1].is_identity());

  GOmegaAction ginv = GOmegaAction::from_big(*m, g.big().inverse());
  CHECK((g.big() * ginv.big()).is_identity());
}

TEST_CASE("action application preserves order and products") {
  auto m = a5_squared();
  GOmegaAction g(*m, p("(0 1)", 2), {p("(0 1 2)", 5), p("(0 1 2 3 4)", 5)});
  Perm x = m->embed_tuple({p("(0 1 2)", 5), p("(1 2 3)", 5)});
  Perm y = m->embed_tuple({p("(0 1)(2 3)", 5), Perm::identity(5)});
  CHECK(g.apply(x * y) == g.apply(x) * g.apply(y));
  CHECK(g.apply(x).order() == x.order());
  CHECK(m->block_diagonal(g.apply(x)));
}

TEST_CASE("twists must normalize T") {
  // A5 is normal in Sym(5), so use the transitive PSL(2,5) on 6 points, whose
  // Sym(6)-normalizer is PGL(2,5): a transposition fails the check.
  PermGroup l = group(6, {"(0 1 2 3 4)", "(0 5)(1 4)"});
  REQUIRE(l.order() == 60);
  REQUIRE(l.is_transitive());
  auto m = std::make_shared<const ProductGroup>(l, 2);
  CHECK_THROWS_AS(GOmegaAction(*m, Perm::identity(2), {p("(0 1)", 6), Perm::identity(6)}), Error);
  // the inversion t -> -1/t style twist is inside L, hence fine
  GOmegaAction ok(*m, Perm::identity(2), {p("(0 5)(1 4)", 6), Perm::identity(6)});
  CHECK(ok.big().degree() == 12);
}

TEST_CASE("identity action fixes subgroups; swap exchanges box factors") {
  auto m = a5_squared();
  ProductSubgroup k = box2(m, a4_in_a5(), d10_in_a5());

  GOmegaAction id(*m, Perm::identity(2), {Perm::identity(5), Perm::identity(5)});
  CHECK(act(id, k).same_subgroup(k));

  GOmegaAction swap(*m, p("(0 1)", 2), {Perm::identity(5), Perm::identity(5)});
  ProductSubgroup swapped = act(swap, k);
  CHECK(swapped.same_subgroup(box2(m, d10_in_a5(), a4_in_a5())));
  CHECK(swapped.order() == k.order());

  // inner twist on coordinate 0
  Perm t = p("(0 1 2 3 4)", 5);
  GOmegaAction tw(*m, Perm::identity(2), {t, Perm::identity(5)});
  ProductSubgroup twisted = act(tw, k);
  CHECK(twisted.same_subgroup(box2(m, a4_in_a5().conjugated_by(t), d10_in_a5())));

  // applying g then g^-1 is the identity on subgroups
  GOmegaAction swinv = GOmegaAction::from_big(*m, swap.big().inverse());
  CHECK(act(swinv, swapped).same_subgroup(k));
}

TEST_CASE("coordinate orbit transitivity") {
  auto m = a5_squared();
  GOmegaAction id(*m, Perm::identity(2), {Perm::identity(5), Perm::identity(5)});
  GOmegaAction swap(*m, p("(0 1)", 2), {Perm::identity(5), Perm::identity(5)});

  GOmegaGroup only_id(m, {id});
  CHECK(!only_id.coordinate_orbit_transitive());

  GOmegaGroup with_swap(m, {id, swap});
  CHECK(with_swap.coordinate_orbit_transitive());

  auto m1 = std::make_shared<const ProductGroup>(a5(), 1);
  GOmegaGroup k1(m1, {GOmegaAction(*m1, Perm::identity(1), {Perm::identity(5)})});
  CHECK(k1.coordinate_orbit_transitive());
}

TEST_CASE("conjugacy under the action group") {
  auto m = a5_squared();
  GOmegaAction swap(*m, p("(0 1)", 2), {Perm::identity(5), Perm::identity(5)});
  GOmegaGroup gw(m, {swap});

  ProductSubgroup k1 = box2(m, a4_in_a5(), d10_in_a5());
  ProductSubgroup k2 = box2(m, d10_in_a5(), a4_in_a5());
  auto w = gw.conjugating_action(k1, k2);
  REQUIRE(w.has_value());
  CHECK(act(*w, k1).same_subgroup(k2));

  auto self = gw.conjugating_action(k1, k1);
  REQUIRE(self.has_value());
  CHECK(self->big().is_identity());

  ProductSubgroup a4a4 = box2(m, a4_in_a5(), a4_in_a5());
  CHECK(!gw.conjugating_action(k1, a4a4).has_value());
}
