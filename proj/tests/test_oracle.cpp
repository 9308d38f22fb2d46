#include <doctest.h>

#include "cartdec/demos.hpp"
#include "cartdec/oracle.hpp"
#include "test_helpers.hpp"

using namespace cartdec;
using namespace cartdec::demos;

TEST_CASE("interval catalog over the A5 instance") {
  BuiltDemo demo = demo_a5_2nsim();
  IntervalCatalog cat = enumerate_interval(demo.instance);
  // above a fixed involution in A5: C2, V4, two S3, two D10, A4, A5
  CHECK(cat.subgroups.size() == 8);
  std::vector<std::uint64_t> orders;
  for (const auto& h : cat.subgroups) orders.push_back(h.order());
  CHECK(orders == std::vector<std::uint64_t>{2, 4, 6, 6, 10, 10, 12, 60});
  // the catalog contains the demo members
  int hits = 0;
  for (const auto& h : cat.subgroups)
    for (const auto& k : demo.members)
      if (h.same_subgroup(k)) ++hits;
  CHECK(hits == 2);
}

TEST_CASE("degenerate intervals") {
  // M_omega = M would not be a valid instance; instead check the top end:
  // interval over A4 inside A5 contains only A4 and A5
  const A5DemoData& d = a5_demo_data();
  auto m = std::make_shared<const ProductGroup>(d.t, 1);
  ProductSubgroup a4 = embed_subgroup_at(m, d.a4, 0);
  std::vector<GOmegaAction> gens;
  for (const Perm& g : d.a4.generators()) gens.push_back(GOmegaAction(*m, Perm::identity(1), {g}));
  auto inst = std::make_shared<const PointedInstance>(m, a4, GOmegaGroup(m, gens));
  IntervalCatalog cat = enumerate_interval(inst);
  CHECK(cat.subgroups.size() == 2);
}

TEST_CASE("oracle cap is enforced") {
  CartesianSystem s = demo_a6a6_1s().system();  // |M| = 129600 > oracle cap
  CHECK_THROWS_AS(enumerate_interval(s.instance_ptr()), Error);
}

TEST_CASE("system search finds the A4/D10 pair and agrees with verify_system") {
  BuiltDemo demo = demo_a5_2nsim();
  OracleSearchResult res = enumerate_systems(demo.instance, 3);
  CHECK(res.predicate_disagreements == 0);
  CHECK(res.subsets_tested > 0);

  // expected systems: {M_omega} and {A4, D10} for each of the two D10s
  // above the involution... only subgroups meeting in exactly M_omega count.
  REQUIRE(!res.systems.empty());
  bool found_pair = false;
  bool found_singleton = false;
  for (const auto& entry : res.systems) {
    if (entry.member_indices.size() == 1 &&
        res.catalog.subgroups[entry.member_indices[0]].same_subgroup(demo.instance->m_omega()))
      found_singleton = true;
    if (entry.member_indices.size() == 2) {
      std::uint64_t o1 = res.catalog.subgroups[entry.member_indices[0]].order();
      std::uint64_t o2 = res.catalog.subgroups[entry.member_indices[1]].order();
      if (o1 == 10 && o2 == 12) found_pair = true;
    }
  }
  CHECK(found_pair);
  CHECK(found_singleton);

  // every found system is tagged
  for (const auto& entry : res.systems) {
    CHECK(entry.invariant);
    CHECK(entry.label.has_value());
  }
}

TEST_CASE("oracle search on the A6 demo finds the two-A5 system") {
  BuiltDemo demo = demo_a6_2sim();
  OracleSearchResult res = enumerate_systems(demo.instance, 2);
  CHECK(res.predicate_disagreements == 0);
  bool found = false;
  for (const auto& entry : res.systems)
    if (entry.member_indices.size() == 2 &&
        res.catalog.subgroups[entry.member_indices[0]].order() == 60 &&
        res.catalog.subgroups[entry.member_indices[1]].order() == 60) {
      found = true;
      CHECK(entry.transitive);
      CHECK(entry.label == ClassLabel::C2Sim);
    }
  CHECK(found);
}

TEST_CASE("bijection cross-check over all oracle systems") {
  BuiltDemo demo = demo_a5_2nsim();
  OracleSearchResult res = enumerate_systems(demo.instance, 3);
  std::vector<CartesianSystem> systems;
  for (const auto& entry : res.systems) {
    std::vector<ProductSubgroup> members;
    for (int i : entry.member_indices) members.push_back(res.catalog.subgroups[i]);
    systems.emplace_back(demo.instance, members);
  }
  BijectionCrossCheck cross = cross_check_bijection(demo.instance, systems);
  CHECK(cross.checks.all_pass());
  CHECK(cross.systems_checked == static_cast<int>(systems.size()));
}

TEST_CASE("cross-check is trivially consistent on a single system") {
  BuiltDemo demo = demo_a5_2nsim();
  BijectionCrossCheck cross = cross_check_bijection(demo.instance, {demo.system()});
  CHECK(cross.checks.all_pass());
  CHECK(cross.systems_checked == 1);
}

TEST_CASE("oracle predicate agrees with the index-formula route on handmade subsets") {
  BuiltDemo demo = demo_a5_2nsim();
  IntervalCatalog cat = enumerate_interval(demo.instance);
  // pairwise subsets: compare the two routes exhaustively
  for (std::size_t i = 0; i < cat.subgroups.size(); ++i)
    for (std::size_t j = i + 1; j < cat.subgroups.size(); ++j) {
      std::vector<const ProductSubgroup*> ptrs{&cat.subgroups[i], &cat.subgroups[j]};
      bool oracle_ok = oracle_system_predicate(*demo.instance, ptrs);
      bool primary_ok = false;
      try {
        CartesianSystem s(demo.instance, {cat.subgroups[i], cat.subgroups[j]});
        primary_ok = verify_system(s).valid;
      } catch (const Error&) {
        primary_ok = false;
      }
      CHECK(oracle_ok == primary_ok);
    }
}

TEST_CASE("A6 interval over D10 contains both A5 overgroups") {
  BuiltDemo demo = demo_a6_2sim();
  IntervalCatalog cat = enumerate_interval(demo.instance);
  int a5_count = 0;
  bool d10_present = false, whole_present = false;
  for (const auto& h : cat.subgroups) {
    if (h.order() == 60) ++a5_count;
    if (h.order() == 10) d10_present = true;
    if (h.order() == 360) whole_present = true;
  }
  CHECK(a5_count == 2);
  CHECK(d10_present);
  CHECK(whole_present);
  CHECK(cat.subgroups.size() == 4);  // D10, the two A5 classes, A6
}

TEST_CASE("invariant oracle systems carry consistent classification evidence") {
  for (auto* build : {demos::demo_a5_2nsim, demos::demo_a6_2sim}) {
    BuiltDemo demo = build();
    OracleSearchResult res = enumerate_systems(demo.instance, 3);
    for (const auto& entry : res.systems) {
      if (!entry.invariant) continue;
      std::vector<ProductSubgroup> members;
      for (int i : entry.member_indices) members.push_back(res.catalog.subgroups[i]);
      CartesianSystem s(demo.instance, members);
      ClassifyOptions lenient;
      lenient.throw_on_violation = false;
      Classification cls = classify(s, lenient);
      CHECK(cls.label == *entry.label);
      CHECK(cls.checks.all_pass());  // the structural facts hold on every found system
    }
  }
}
