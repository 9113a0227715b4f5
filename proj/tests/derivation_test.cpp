#include <doctest.h>

#include <random>

#include "test_families.hpp"
#include "treedim/error.hpp"

using namespace treedim;
using treedim::testing::explicit_seq;

namespace {

Rat rat(long n, long d) { return Rat(Int(n), Int(d)); }

}  // namespace

TEST_CASE("derive_level on a decreasing step") {
  // q = 1/2 (k=1, ell=2) -> 1/3: a/b = 2/3.
  auto delta = derive_level(rat(1, 2), rat(1, 3), Int(1), Int(2), Int(1));
  CHECK(delta.step.r == 2);
  CHECK(delta.step.p == 1);
  CHECK(delta.step.kappa == 0);
  CHECK(delta.step.appendix == AppendixKind::singleton);
  CHECK(delta.k_next == 2);
  CHECK(delta.ell_next == 6);
}

TEST_CASE("derive_level on an increasing step") {
  // q = 1/3 (k=1, ell=3) -> 1/2: a/b = 3/2.
  auto delta = derive_level(rat(1, 3), rat(1, 2), Int(1), Int(3), Int(1));
  CHECK(delta.step.r == 3);  // 2*3 - 3*1
  CHECK(delta.step.p == 1);
  CHECK(delta.step.kappa == 1);
  CHECK(delta.step.appendix == AppendixKind::full);
  CHECK(delta.k_next == 6);
  CHECK(delta.ell_next == 12);
}

TEST_CASE("derive_level honors the scale") {
  auto delta = derive_level(rat(1, 2), rat(1, 3), Int(1), Int(2), Int(2));
  CHECK(delta.step.r == 4);
  CHECK(delta.step.p == 2);
  CHECK(delta.step.appendix == AppendixKind::singleton);
  CHECK(delta.k_next == 4);
  CHECK(delta.ell_next == 12);
}

TEST_CASE("derive_level rejects equal consecutive terms") {
  CHECK_THROWS_AS(derive_level(rat(1, 2), rat(1, 2), Int(1), Int(2), Int(1)), Error);
  CHECK_THROWS_AS(derive_level(rat(1, 2), rat(1, 3), Int(1), Int(3), Int(1)), Error);
}

TEST_CASE("derive_family composes levels") {
  TreeFamily a = treedim::testing::family_a();
  REQUIRE(a.level_count() == 2);
  CHECK(a.levels[0].k == 1);
  CHECK(a.levels[0].ell == 2);
  CHECK(a.levels[0].next->r == 2);
  CHECK(a.levels[0].next->p == 1);
  CHECK(a.levels[0].next->kappa == 0);
  CHECK(a.levels[0].next->appendix == AppendixKind::singleton);
  CHECK(a.levels[1].k == 2);
  CHECK(a.levels[1].ell == 6);
  CHECK(validate_family(a).empty());

  TreeFamily b = treedim::testing::family_b();
  CHECK(b.levels[0].k == 1);
  CHECK(b.levels[0].ell == 3);
  CHECK(b.levels[0].next->r == 3);
  CHECK(b.levels[0].next->p == 1);
  CHECK(b.levels[0].next->kappa == 1);
  CHECK(b.levels[0].next->appendix == AppendixKind::full);
  CHECK(b.levels[1].k == 6);
  CHECK(b.levels[1].ell == 12);
  CHECK(validate_family(b).empty());
}

TEST_CASE("derive_family picks the smallest scale meeting the ratio floor") {
  GrowthPolicy policy;
  policy.min_ell = GrowthSpec{GrowthKind::constant, 1};
  policy.min_ratio = GrowthSpec{GrowthKind::constant, 5};
  TreeFamily fam = derive_family(explicit_seq({{1, 2}, {1, 3}}), 1, policy,
                                 T0Variant::suffix_pad);
  CHECK(fam.levels[1].ell == 12);  // scale 2, ratio 6 >= 5
  CHECK(fam.levels[1].k == 4);
  CHECK(fam.level_q(1) == rat(1, 3));
}

TEST_CASE("derive_family meets a binding min_ell floor") {
  GrowthPolicy policy;
  policy.min_ell = GrowthSpec{GrowthKind::quadratic, 3000};
  policy.min_ratio = GrowthSpec{GrowthKind::constant, 1};
  TreeFamily fam = derive_family(explicit_seq({{1, 2}, {1, 3}}), 1, policy,
                                 T0Variant::suffix_pad);
  CHECK(fam.levels[0].ell == 2);     // min_ell(0) clamps to 1
  CHECK(fam.levels[1].ell == 3000);  // scale 500 on base 6
  CHECK(fam.level_q(1) == rat(1, 3));
}

TEST_CASE("derive_family propagates sequence violations") {
  CHECK_THROWS_WITH_AS(
      (void)derive_family(explicit_seq({{1, 2}, {1, 2}}), 1, GrowthPolicy::trivial(),
                          T0Variant::suffix_pad),
      doctest::Contains("consecutive terms equal"), Error);
}

TEST_CASE("growth specs evaluate with the >= 1 clamp") {
  CHECK(GrowthSpec{GrowthKind::quadratic, 1}.eval(0) == 1);
  CHECK(GrowthSpec{GrowthKind::quadratic, 1}.eval(5) == 25);
  CHECK(GrowthSpec{GrowthKind::linear, 3}.eval(0) == 1);
  CHECK(GrowthSpec{GrowthKind::linear, 3}.eval(4) == 12);
  CHECK(GrowthSpec{GrowthKind::affine, 1}.eval(6) == 7);
  CHECK(GrowthSpec::parse("constant:5").eval(9) == 5);
  CHECK(GrowthSpec::parse("affine:1").str() == "affine:1");
  CHECK_THROWS_AS(GrowthSpec::parse("cubic:2"), Error);
}

TEST_CASE("defaults enforce the quadratic floor and the growing ratio") {
  TreeFamily fam = derive_family(QSequence(treedim::testing::oscillating_seq()), 6,
                                 GrowthPolicy::defaults(), T0Variant::suffix_pad);
  REQUIRE(fam.level_count() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    Int floor = Int(static_cast<unsigned long>(i * i));
    CHECK(fam.levels[i].ell >= floor);
    CHECK(fam.level_q(i) == q_at(QSequence(treedim::testing::oscillating_seq()), i));
  }
  for (std::size_t i = 0; i + 1 < 7; ++i)
    CHECK(fam.levels[i + 1].ell >= Int(static_cast<unsigned long>(i + 1)) * fam.levels[i].ell);
}

TEST_CASE("random admissible pairs satisfy the exact step identities") {
  std::mt19937_64 rng(20240817);
  auto rand_q = [&rng]() {
    std::uniform_int_distribution<long> den_dist(2, 50);
    long d = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(1, d - 1);
    return rat(num_dist(rng), d);
  };

  int done = 0;
  while (done < 60) {
    Rat q = rand_q(), qn = rand_q();
    if (q == qn) continue;
    long mult = static_cast<long>(rng() % 3 + 1);
    Int k = q.num() * mult, ell = q.den() * mult;
    Int scale(static_cast<long>(rng() % 3 + 1));

    auto delta = derive_level(q, qn, k, ell, scale);
    const auto& t = delta.step;
    CHECK(Rat(delta.k_next, delta.ell_next) == qn);
    CHECK(delta.ell_next == (t.r + t.p) * ell);
    CHECK(delta.k_next == t.r * k + t.kappa * ell);
    CHECK(t.r >= 1);
    CHECK(t.p >= 1);
    if (q > qn) {
      CHECK(t.kappa == 0);
      CHECK(t.appendix == AppendixKind::singleton);
    } else {
      CHECK(t.kappa == t.p);
      CHECK(t.appendix == AppendixKind::full);
    }

    // Monotone bound chain at the endpoints and the midpoint.
    Int t_hi = t.p * ell;
    for (const Int& tt : {Int(0), Int(t_hi / 2), t_hi}) {
      if (q > qn) {
        Rat mid(t.r * k, t.r * ell + tt);
        CHECK(q >= mid);
        CHECK(mid >= qn);
      } else {
        Rat mid(t.r * k + tt, t.r * ell + tt);
        CHECK(q <= mid);
        CHECK(mid <= qn);
      }
    }
    ++done;
  }
}

TEST_CASE("scaling preserves the successor density") {
  for (long scale = 1; scale <= 5; ++scale) {
    auto delta = derive_level(rat(2, 5), rat(3, 7), Int(4), Int(10), Int(scale));
    CHECK(Rat(delta.k_next, delta.ell_next) == rat(3, 7));
    auto delta2 = derive_level(rat(3, 7), rat(1, 9), Int(3), Int(7), Int(scale));
    CHECK(Rat(delta2.k_next, delta2.ell_next) == rat(1, 9));
  }
}

TEST_CASE("validate_family flags broken recurrences") {
  TreeFamily fam = treedim::testing::family_a();
  fam.levels[0].next->r += 1;
  CHECK(!validate_family(fam).empty());

  TreeFamily fam2 = treedim::testing::family_a();
  fam2.levels[1].k += 1;
  CHECK(!validate_family(fam2).empty());

  TreeFamily fam3 = treedim::testing::family_a();
  fam3.levels[0].next->appendix = AppendixKind::full;
  CHECK(!validate_family(fam3).empty());
}
