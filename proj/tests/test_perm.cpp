#include <doctest.h>

#include "cartdec/perm.hpp"
#include "test_helpers.hpp"

using namespace cartdec;
using cartdec::testing::p;

TEST_CASE("composition acts left to right") {
  Perm a = p("(0 1)", 3);
  Perm b = p("(1 2)", 3);
  Perm ab = a * b;
  // 0 -a-> 1 -b-> 2
  CHECK(ab[0] == 2);
  CHECK(ab[1] == 0);
  CHECK(ab[2] == 1);
}

TEST_CASE("inverse composes to identity") {
  Perm a = p("(0 3 1)(2 4)", 5);
  CHECK((a * a.inverse()).is_identity());
  CHECK((a.inverse() * a).is_identity());
}

TEST_CASE("conjugation relabels cycles") {
  Perm c = p("(0 1 2 3 4)", 5);
  Perm s = p("(1 4)(2 3)", 5);
  CHECK(c.conjugated_by(s) == p("(0 4 3 2 1)", 5));
}

TEST_CASE("cycle round trip and identity spelling") {
  Perm a = p("(0 2)(1 4 3)", 5);
  CHECK(Perm::parse_cycles(a.to_cycles(), 5) == a);
  CHECK(Perm::identity(4).to_cycles() == "()");
  CHECK(Perm::parse_cycles("()", 4).is_identity());
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(Perm::parse_cycles("(0 1", 3), Error);
  CHECK_THROWS_AS(Perm::parse_cycles("(0 5)", 3), Error);
  CHECK_THROWS_AS(Perm::parse_cycles("(0 1)(1 2)", 3), Error);
  CHECK_THROWS_AS(Perm::parse_cycles("", 3), Error);
  CHECK_THROWS_AS(Perm::from_images({0, 0, 1}), Error);
}

TEST_CASE("element order") {
  CHECK(p("(0 1 2 3 4)", 5).order() == 5);
  CHECK(p("(0 1)(2 3 4)", 5).order() == 6);
  CHECK(Perm::identity(5).order() == 1);
}
