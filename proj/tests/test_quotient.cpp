#include <doctest.h>

#include "cartdec/demos.hpp"
#include "cartdec/properties.hpp"
#include "cartdec/quotient.hpp"
#include "test_helpers.hpp"

using namespace cartdec;
using namespace cartdec::demos;

TEST_CASE("quotient partitions: identity, whole, and error paths") {
  BuiltDemo demo = demo_a6_2sim();
  const auto& inst = demo.instance;

  QuotientResult identity = quotient_partition(inst, inst->m_omega());
  CHECK(identity.identity);
  CHECK(identity.partition.num_blocks == 36);
  CHECK(identity.block_size == 1);
  REQUIRE(identity.instance);
  CHECK(identity.instance->m_omega().same_subgroup(inst->m_omega()));

  ProductSubgroup whole(inst->m_ptr(), inst->m().big());
  QuotientResult one = quotient_partition(inst, whole);
  CHECK(one.whole);
  CHECK(one.partition.num_blocks == 1);
  CHECK(!one.instance);

  // M0 not above M_omega
  ProductSubgroup a5_member = demo.members[0];
  ProductSubgroup below(inst->m_ptr(), PermGroup::trivial(inst->m().degree()));
  CHECK_THROWS_AS(quotient_partition(inst, below), Error);
}

TEST_CASE("N_A6(D10) = D10, so the Table row 1 quotient is the identity") {
  BuiltDemo demo = demo_a6_2sim();
  const A6DemoData& d = a6_demo_data();
  PermGroup n = d.amb.t.normalizer(d.d10);
  CHECK(n.order() == 10);
  CHECK(n.same_group(d.d10));
  QuotientResult q = quotient_partition(demo.instance, demo.instance->m_omega());
  CHECK(q.identity);
}

TEST_CASE("quotient respects normalization precondition") {
  // over the A6 demo, D10 is normalized but an A5 member also contains it;
  // pick M0 = first A5 overgroup: the outer twist maps it to the second, so
  // G_omega does not normalize it
  BuiltDemo demo = demo_a6_2sim();
  CHECK_THROWS_AS(quotient_partition(demo.instance, demo.members[0]), Error);
}

TEST_CASE("2sim quotient equals the original on the A6 demo") {
  CartesianSystem s = demo_a6_2sim().system();
  QuotientSystemResult q = quotient_system(s, ClassLabel::C2Sim);
  CHECK(q.equals_original);
  CHECK(q.classification.label == ClassLabel::C2Sim);
  CHECK(q.checks.all_pass());
  REQUIRE(q.system.has_value());
  CHECK(q.system->members()[0].same_subgroup(s.members()[0]));
  CHECK(q.system->members()[1].same_subgroup(s.members()[1]));
}

TEST_CASE("2nsim quotient equals the original on the A5 demo") {
  CartesianSystem s = demo_a5_2nsim().system();
  QuotientSystemResult q = quotient_system(s, ClassLabel::C2Nsim);
  CHECK(q.equals_original);
  CHECK(q.classification.label == ClassLabel::C2Nsim);
  CHECK(q.checks.all_pass());
}

TEST_CASE("1S quotient equals the original on the A6xA6 demo") {
  CartesianSystem s = demo_a6a6_1s().system();
  QuotientSystemResult q = quotient_system(s, ClassLabel::C1S);
  CHECK(q.equals_original);
  CHECK(q.classification.label == ClassLabel::C1S);
  CHECK(q.checks.all_pass());
  // the stabilizer is the self-normalizing diagonal D10
  CHECK(q.stabilizer.order() == 10);
}

TEST_CASE("quotient_system rejects wrong labels") {
  CartesianSystem s = demo_a6_2sim().system();
  CHECK_THROWS_AS(quotient_system(s, ClassLabel::C2Nsim), Error);
  CHECK_THROWS_AS(quotient_system(s, ClassLabel::S), Error);
}

TEST_CASE("synthetic non-product members report UnsupportedRow") {
  // members Diag<u>, Diag<v> over A5^2 with a transposition twist fusing
  // them: classifies 2sim at detection level, but the members differ from
  // their projection products (the executable-table shape fails)
  PermGroup a5 = cartdec::testing::a5();
  auto m = std::make_shared<const ProductGroup>(a5, 2);
  Perm u = cartdec::testing::p("(0 1)(2 3)", 5);
  Perm v = cartdec::testing::p("(0 2)(1 3)", 5);
  ProductSubgroup k1 = ProductSubgroup::from_tuples(m, {{u, u}});
  ProductSubgroup k2 = ProductSubgroup::from_tuples(m, {{v, v}});
  ProductSubgroup trivial_stab(m, PermGroup::trivial(m->degree()));
  Perm sigma = cartdec::testing::p("(1 2)", 5);  // normalizes A5, swaps u and v
  GOmegaGroup gw(m, {GOmegaAction(*m, cartdec::testing::p("(0 1)", 2),
                                  {Perm::identity(5), Perm::identity(5)}),
                     GOmegaAction(*m, Perm::identity(2), {sigma, sigma})});
  auto inst = std::make_shared<const PointedInstance>(m, trivial_stab, std::move(gw));
  CartesianSystem s(inst, {k1, k2});
  ClassifyOptions lenient;
  lenient.throw_on_violation = false;
  CHECK(classify(s, lenient).label == ClassLabel::C2Sim);
  bool saw_unsupported = false;
  try {
    quotient_system(s, ClassLabel::C2Sim, lenient);
  } catch (const Error& e) {
    saw_unsupported = e.kind() == ErrorKind::UnsupportedRow;
  }
  CHECK(saw_unsupported);
}

TEST_CASE("property suites pass on the A5 and A6 demos") {
  {
    PropertyRunReport rep = run_property_suites(demo_a5_2nsim().system());
    CHECK(rep.label == ClassLabel::C2Nsim);
    CHECK(rep.all_pass());
    CHECK(!rep.row.has_value());
  }
  {
    PropertyRunReport rep = run_property_suites(demo_a6_2sim().system());
    CHECK(rep.label == ClassLabel::C2Sim);
    CHECK(rep.all_pass());
    REQUIRE(rep.row.has_value());
    CHECK(rep.row->row == 1);
  }
}

TEST_CASE("A6 intersection facts match the first table row") {
  const A6DemoData& d = a6_demo_data();
  PermGroup meet = PermGroup::intersection(d.a5_first, d.a5_second);
  CHECK(meet.order() == 10);
  CHECK(d.amb.t.normalizer(meet).same_group(meet));  // N_T(A meet B) = A meet B
  auto row = match_table_row(360, 60, 10);
  REQUIRE(row.has_value());
  CHECK(row->row == 1);
}

TEST_CASE("isomorphism property rejects labels without a table") {
  CartesianSystem s = demo_a5_2nsim().system();
  CHECK_THROWS_AS(verify_isomorphism_property(s, ClassLabel::C2Nsim), Error);
}

TEST_CASE("isomorphism property reports UnsupportedRow for an unknown factorization") {
  // the synthetic 2sim pair over A5^2 from the quotient test: (|T|,|A|,|meet|)
  // = (60, 2, 1) matches no executable row
  PermGroup a5 = cartdec::testing::a5();
  auto m = std::make_shared<const ProductGroup>(a5, 2);
  Perm u = cartdec::testing::p("(0 1)(2 3)", 5);
  Perm v = cartdec::testing::p("(0 2)(1 3)", 5);
  ProductSubgroup k1 = ProductSubgroup::from_tuples(m, {{u, u}});
  ProductSubgroup k2 = ProductSubgroup::from_tuples(m, {{v, v}});
  ProductSubgroup trivial_stab(m, PermGroup::trivial(m->degree()));
  Perm sigma = cartdec::testing::p("(1 2)", 5);
  GOmegaGroup gw(m, {GOmegaAction(*m, cartdec::testing::p("(0 1)", 2),
                                  {Perm::identity(5), Perm::identity(5)}),
                     GOmegaAction(*m, Perm::identity(2), {sigma, sigma})});
  auto inst = std::make_shared<const PointedInstance>(m, trivial_stab, std::move(gw));
  CartesianSystem s(inst, {k1, k2});
  ClassifyOptions lenient;
  lenient.throw_on_violation = false;
  bool saw = false;
  try {
    verify_isomorphism_property(s, ClassLabel::C2Sim, lenient);
  } catch (const Error& e) {
    saw = e.kind() == ErrorKind::UnsupportedRow;
  }
  CHECK(saw);
}

TEST_CASE("1S classification is stable under basepoint change") {
  CartesianSystem s = demos::demo_a6a6_1s().system();
  const auto& els = s.instance().m().big().elements();
  CartesianSystem moved = s.conjugated_by_plinth_element(els[12345]);
  CHECK(classify(moved).label == ClassLabel::C1S);
  CHECK(verify_system(moved).valid);
}
