#include <doctest.h>

#include "cartdec/demos.hpp"
#include "cartdec/properties.hpp"
#include "test_helpers.hpp"

using namespace cartdec;
using namespace cartdec::demos;

TEST_CASE("the degree-10 A6 construction is sound") {
  const A6DemoData& d = a6_demo_data();
  CHECK(d.amb.t.order() == 360);
  CHECK(d.amb.t.is_transitive());
  CHECK(d.amb.t.is_simple());
  CHECK(d.amb.pgammal.order() == 1440);
  CHECK(d.d10.order() == 10);
  CHECK(d.a5_first.order() == 60);
  CHECK(d.a5_second.order() == 60);
  CHECK(!d.a5_first.same_group(d.a5_second));
  // the outer element lies outside PSL(2,9) and fuses the two classes
  CHECK(!d.amb.t.contains(d.outer));
  bool fuses = true;
  for (const Perm& g : d.a5_first.generators())
    if (!d.a5_second.contains(g.conjugated_by(d.outer))) fuses = false;
  CHECK(fuses);
  // inside A6 the two A5 overgroups are not conjugate
  CHECK(!d.amb.t.conjugating_element(d.a5_first, d.a5_second).has_value());
}

TEST_CASE("the M12 construction is sound") {
  const M12DemoData& d = m12_demo_data();
  CHECK(d.m12.order() == 95040);
  CHECK(d.m12.is_transitive());
  CHECK(d.k1.order() == 7920);
  CHECK(d.k2.order() == 7920);
  CHECK(d.k2.is_transitive());
  CHECK(!d.k1.is_transitive());
  CHECK(d.l0.order() == 660);
  CHECK(PermGroup::intersection(d.k1, d.k2).same_group(d.l0));
  // the pair is an exact factorization: |K1 K2| = |M12|
  CHECK(PermGroup::product_size(d.k1, d.k2) == 95040);
  // PSL(2,11) is self-normalizing in M12
  CHECK(d.m12.normalizer(d.l0).same_group(d.l0));
}

TEST_CASE("M12 is simple") {
  CHECK(m12_demo_data().m12.is_simple());
}

TEST_CASE("the degree-24 outer action normalizes the diagonal M12 and fuses the M11 classes") {
  const M12OuterData& od = m12_outer_data();
  CHECK(od.t24.order() == 95040);
  const Perm& tau = od.outer;
  CHECK(!od.t24.contains(tau));
  for (const Perm& g : od.t24.generators()) CHECK(od.t24.contains(g.conjugated_by(tau)));
  // K1-diag and K2-diag are swapped
  PermGroup k1(24, od.k1_gens);
  PermGroup k2(24, od.k2_gens);
  bool swaps = true;
  for (const Perm& g : k1.generators())
    if (!k2.contains(g.conjugated_by(tau))) swaps = false;
  CHECK(swaps);
  // the diagonal PSL(2,11) is normalized
  PermGroup l0(24, od.l0_gens);
  for (const Perm& g : l0.generators()) CHECK(l0.contains(g.conjugated_by(tau)));
}

TEST_CASE("m12 demo: equation-level verification and both classification modes") {
  BuiltDemo plain = demo_m12_2sim(false);
  CartesianSystem s = plain.system();
  SystemReport rep = verify_system(s);
  CHECK(rep.valid);
  CHECK(plain.instance->omega_size() == 144);
  CHECK(rep.member_indices == std::vector<std::uint64_t>{12, 12});
  // without the outer action the two M11 classes are not fused
  CHECK(classify(s).label == ClassLabel::C2Nsim);

  BuiltDemo outer = demo_m12_2sim(true);
  CartesianSystem so = outer.system();
  CHECK(outer.instance->omega_size() == 144);
  Classification cls = classify(so);
  CHECK(cls.label == ClassLabel::C2Sim);
  REQUIRE(cls.conjugacy_witness.has_value());

  PropertyRunReport props = run_property_suites(so);
  CHECK(props.all_pass());
  REQUIRE(props.row.has_value());
  CHECK(props.row->row == 2);  // (95040, 7920, 660)
}

TEST_CASE("unknown demo names are rejected") {
  CHECK_THROWS_AS(build_demo("nope"), Error);
}
