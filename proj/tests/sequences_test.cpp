#include <doctest.h>

#include "test_families.hpp"
#include "treedim/error.hpp"
#include "treedim/sequences.hpp"

using namespace treedim;
using treedim::testing::explicit_seq;

TEST_CASE("q_at on explicit lists") {
  QSequence seq = explicit_seq({{1, 2}, {1, 3}});
  CHECK(q_at(seq, 0) == Rat(Int(1), Int(2)));
  CHECK(q_at(seq, 1) == Rat(Int(1), Int(3)));
  CHECK_THROWS_AS(q_at(seq, 2), Error);
}

TEST_CASE("alternating family evaluates the formula exactly") {
  AlternatingSeq alt;
  alt.c = Rat(Int(1), Int(2));
  alt.d = Rat(1);
  alt.m = 3;
  QSequence seq = alt;
  CHECK(q_at(seq, 0) == Rat(Int(5), Int(6)));   // 1/2 + 1/3
  CHECK(q_at(seq, 1) == Rat(Int(1), Int(4)));   // 1/2 - 1/4
  CHECK(q_at(seq, 2) == Rat(Int(7), Int(10)));
  CHECK(q_at(seq, 3) == Rat(Int(1), Int(3)));
}

TEST_CASE("builtin families signal out-of-range terms") {
  AlternatingSeq alt;
  alt.c = Rat(Int(1), Int(2));
  alt.d = Rat(3);  // q_0 = 1/2 + 1 = 3/2
  alt.m = 2;
  QSequence seq = alt;
  CHECK_THROWS_AS(q_at(seq, 0), Error);
}

TEST_CASE("validate_sequence reports admissibility violations") {
  CHECK(validate_sequence(explicit_seq({{1, 2}, {1, 3}, {1, 4}}), 3).ok());

  auto rep = validate_sequence(explicit_seq({{1, 2}, {1, 2}}), 2);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].index == 1);
  CHECK(rep.violations[0].what.find("equal") != std::string::npos);

  auto rep2 = validate_sequence(explicit_seq({{3, 2}}), 1);
  REQUIRE(rep2.violations.size() == 1);
  CHECK(rep2.violations[0].index == 0);
  CHECK(rep2.violations[0].what.find("outside") != std::string::npos);

  CHECK_THROWS_AS(validate_sequence(explicit_seq({{1, 2}}), 0), Error);
}

TEST_CASE("liminf_window takes the exact minimum") {
  CHECK(liminf_window(explicit_seq({{1, 2}, {1, 3}, {2, 5}}), 0, 2) == Rat(Int(1), Int(3)));
  CHECK(liminf_window(explicit_seq({{1, 2}}), 0, 0) == Rat(Int(1), Int(2)));
  CHECK_THROWS_AS(liminf_window(explicit_seq({{1, 2}}), 1, 0), Error);

  AlternatingSeq alt;
  alt.c = Rat(Int(1), Int(2));
  alt.d = Rat(1);
  alt.m = 3;
  CHECK(liminf_window(QSequence(alt), 0, 3) == Rat(Int(1), Int(4)));
}

TEST_CASE("liminf_window is non-increasing as the window grows") {
  AlternatingSeq alt;
  alt.c = Rat(Int(2), Int(5));
  alt.d = Rat(Int(1), Int(2));
  alt.m = 2;
  QSequence seq = alt;
  Rat prev = liminf_window(seq, 0, 0);
  for (std::size_t to = 1; to < 24; ++to) {
    Rat cur = liminf_window(seq, 0, to);
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("every builtin family stays admissible over a long range") {
  GeometricSeq geo;
  geo.target = Rat(Int(1), Int(3));
  geo.delta0 = Rat(Int(1), Int(3));
  geo.ratio = Rat(Int(1), Int(2));

  std::vector<QSequence> families;
  AlternatingSeq alt;
  alt.c = Rat(Int(1), Int(2));
  alt.d = Rat(1);
  alt.m = 3;
  families.emplace_back(alt);
  families.emplace_back(geo);
  families.emplace_back(treedim::testing::oscillating_seq());

  for (const auto& seq : families) {
    CHECK(validate_sequence(seq, 48).ok());
    for (std::size_t i = 0; i < 47; ++i) {
      Rat q = q_at(seq, i);
      CHECK(q > Rat(0));
      CHECK(q < Rat(1));
      CHECK(q != q_at(seq, i + 1));
      CHECK(q == q_at(seq, i));  // referentially transparent
    }
  }
}

TEST_CASE("the slow oscillation has non-monotone sliding-window minima") {
  QSequence seq = treedim::testing::oscillating_seq();
  // Deep dip at 5, shallow at 7: the window minimum drops, then recovers.
  Rat w1 = liminf_window(seq, 2, 4);
  Rat w2 = liminf_window(seq, 4, 6);
  Rat w3 = liminf_window(seq, 6, 8);
  CHECK(w1 > w2);
  CHECK(w3 > w2);
  CHECK(q_at(seq, 5) == Rat(Int(7), Int(20)));
  CHECK(q_at(seq, 7) == Rat(Int(59), Int(100)));
}
