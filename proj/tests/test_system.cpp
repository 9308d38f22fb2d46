#include <doctest.h>

#include "cartdec/demos.hpp"
#include "cartdec/system.hpp"
#include "test_helpers.hpp"

using namespace cartdec;
using namespace cartdec::demos;

TEST_CASE("A5 pair {A4, D10} is a valid system on 30 points") {
  BuiltDemo demo = demo_a5_2nsim();
  CartesianSystem s = demo.system();
  SystemReport rep = verify_system(s);
  CHECK(rep.valid);
  CHECK(rep.m_order == 60);
  CHECK(rep.m_omega_order == 2);
  CHECK(demo.instance->omega_size() == 30);
  // canonical member order sorts by order: D10 (10) before A4 (12)
  CHECK(rep.member_indices == std::vector<std::uint64_t>{6, 5});
}

TEST_CASE("duplicate members are rejected at construction") {
  BuiltDemo demo = demo_a5_2nsim();
  CHECK_THROWS_AS(CartesianSystem(demo.instance, {demo.members[0], demo.members[0]}), Error);
}

TEST_CASE("a non-proper member fails verification with the clause named") {
  BuiltDemo demo = demo_a5_2nsim();
  ProductSubgroup whole(demo.instance->m_ptr(), demo.instance->m().big());
  CartesianSystem s(demo.instance, {whole});
  SystemReport rep = verify_system(s);
  CHECK(!rep.valid);
  bool saw = false;
  for (const auto& id : rep.checks.failed_ids())
    if (id.rfind("system.proper", 0) == 0) saw = true;
  CHECK(saw);
}

TEST_CASE("A5 decomposition is a 5 x 6 grid and round-trips") {
  BuiltDemo demo = demo_a5_2nsim();
  CartesianSystem s = demo.system();
  CartesianDecomposition d = decomposition_from_system(s);
  REQUIRE(d.partitions().size() == 2);
  // members sorted canonically: D10 first (6 blocks of 5), then A4 (5 blocks of 6)
  CHECK(d.partitions()[0].num_blocks == 6);
  CHECK(d.partitions()[1].num_blocks == 5);
  CHECK(validate_decomposition(d).all_pass());

  CartesianSystem back = system_from_decomposition(d);
  REQUIRE(back.size() == 2);
  CHECK(back.members()[0].same_subgroup(s.members()[0]));
  CHECK(back.members()[1].same_subgroup(s.members()[1]));

  CartesianDecomposition d2 = decomposition_from_system(back);
  CHECK(d2.partitions()[0] == d.partitions()[0]);
  CHECK(d2.partitions()[1] == d.partitions()[1]);
}

TEST_CASE("singleton system {M_omega} maps to the discrete decomposition") {
  BuiltDemo demo = demo_a5_2nsim();
  CartesianSystem s(demo.instance, {demo.instance->m_omega()});
  SystemReport rep = verify_system(s);
  CHECK(rep.valid);
  CartesianDecomposition d = decomposition_from_system(s);
  CHECK(d.partitions()[0].num_blocks == 30);
  CartesianSystem back = system_from_decomposition(d);
  CHECK(back.members()[0].same_subgroup(demo.instance->m_omega()));
}

TEST_CASE("degenerate single proper member system") {
  BuiltDemo demo = demo_a5_2nsim();
  CartesianSystem s(demo.instance, {demo.members[0]});  // {A4} alone: eq1 fails (A4 != C2)
  SystemReport rep = verify_system(s);
  CHECK(!rep.valid);
  bool eq1_failed = false;
  for (const auto& id : rep.checks.failed_ids())
    if (id == "system.eq1") eq1_failed = true;
  CHECK(eq1_failed);
}

TEST_CASE("A5 demo invariance and transitivity status") {
  BuiltDemo demo = demo_a5_2nsim();
  CartesianSystem s = demo.system();
  CHECK(s.is_g_invariant());
  CHECK(!s.is_transitive());  // members of different orders
}

TEST_CASE("A6 two-A5 system: 6 x 6 grid on 36 points") {
  BuiltDemo demo = demo_a6_2sim();
  CartesianSystem s = demo.system();
  SystemReport rep = verify_system(s);
  CHECK(rep.valid);
  CHECK(demo.instance->omega_size() == 36);
  CHECK(rep.member_indices == std::vector<std::uint64_t>{6, 6});
  CHECK(s.is_g_invariant());
  CHECK(s.is_transitive());  // the outer twist fuses the two members

  CartesianDecomposition d = decomposition_from_system(s);
  CHECK(d.partitions()[0].num_blocks == 6);
  CHECK(d.partitions()[1].num_blocks == 6);
  CartesianSystem back = system_from_decomposition(d);
  CHECK(back.members()[0].same_subgroup(s.members()[0]));
  CHECK(back.members()[1].same_subgroup(s.members()[1]));
}

TEST_CASE("grid decomposition built by hand recovers its two subgroups") {
  BuiltDemo demo = demo_a5_2nsim();
  const PointedInstance& inst = *demo.instance;
  Partition p1 = partition_from_subgroup(inst, demo.members[0]);
  Partition p2 = partition_from_subgroup(inst, demo.members[1]);
  CartesianDecomposition d(demo.instance, {p1, p2});
  CartesianSystem s = system_from_decomposition(d);
  REQUIRE(s.size() == 2);
  CHECK((s.members()[0].same_subgroup(demo.members[0]) || s.members()[0].same_subgroup(demo.members[1])));
  CHECK((s.members()[1].same_subgroup(demo.members[0]) || s.members()[1].same_subgroup(demo.members[1])));
}

TEST_CASE("corrupted decomposition is rejected") {
  BuiltDemo demo = demo_a5_2nsim();
  CartesianSystem s = demo.system();
  CartesianDecomposition d = decomposition_from_system(s);
  // move one point to a different block in the first partition
  Partition broken = d.partitions()[0];
  broken.block_of[1] = (broken.block_of[1] + 1) % broken.num_blocks;
  CartesianDecomposition bad(demo.instance, {broken, d.partitions()[1]});
  CHECK(!validate_decomposition(bad).all_pass());
  CHECK_THROWS_AS(system_from_decomposition(bad), Error);
}

TEST_CASE("basepoint change preserves the system data") {
  BuiltDemo demo = demo_a6_2sim();
  CartesianSystem s = demo.system();
  // conjugate by a plinth element moving the basepoint
  Perm mover = demo.instance->m().big().elements()[5];
  CartesianSystem moved = s.conjugated_by_plinth_element(mover);
  SystemReport rep = verify_system(moved);
  CHECK(rep.valid);
  CHECK(moved.is_g_invariant());
  CHECK(moved.is_transitive());
}

TEST_CASE("counting identity |Omega| = prod |M : K_i|") {
  for (auto* build : {demo_a5_2nsim, demo_a6_2sim}) {
    BuiltDemo demo = build();
    CartesianSystem s = demo.system();
    SystemReport rep = verify_system(s);
    REQUIRE(rep.valid);
    std::uint64_t grid = 1;
    for (auto idx : rep.member_indices) grid *= idx;
    CHECK(grid == demo.instance->omega_size());
  }
}
