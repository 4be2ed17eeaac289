#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "thickset/set_model.hpp"
#include "thickset/thickness.hpp"

using namespace thickset;

static SetDescriptor thirds() {
  return make_central_cantor(0, 1, Rat(1, 3));
}

TEST_CASE("middle-thirds gaps to depth 2") {
  auto en = enumerate_gaps(thirds(), 2);
  REQUIRE(en.gaps.size() == 3);
  auto iv = [](const Gap& g) {
    const auto& b = std::get<Box>(g.shape);
    return std::pair<Rat, Rat>(b.lower[0], b.upper[0]);
  };
  CHECK(iv(en.gaps[0]) == std::pair<Rat, Rat>(Rat(1, 3), Rat(2, 3)));
  CHECK(iv(en.gaps[1]) == std::pair<Rat, Rat>(Rat(1, 9), Rat(2, 9)));
  CHECK(iv(en.gaps[2]) == std::pair<Rat, Rat>(Rat(7, 9), Rat(8, 9)));
  CHECK(en.tail_bound == doctest::Approx(1.0 / 27).epsilon(1e-15));
}

TEST_CASE("explicit single ball gap") {
  Shape hull = Box{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}};
  Gap g;
  g.shape = Ball{{Rat(1, 2), Rat(1, 2)}, Rat(1, 10)};
  g.diam2 = shape_diam2(g.shape);
  g.diam = 0.2;
  auto spec = make_explicit(2, hull, {g});
  auto en = enumerate_gaps(spec, 5);
  REQUIRE(en.gaps.size() == 1);
  CHECK(en.tail_bound == 0);
}

TEST_CASE("sponge 3x3 depth 1 is the open central box") {
  auto en = enumerate_gaps(make_sponge({3, 3}), 1);
  REQUIRE(en.gaps.size() == 1);
  const auto& b = std::get<Box>(en.gaps[0].shape);
  CHECK(b.lower[0] == Rat(1, 3));
  CHECK(b.upper[1] == Rat(2, 3));
  CHECK(en.gaps[0].diam == doctest::Approx(std::sqrt(2.0) / 3).epsilon(1e-14));
}

TEST_CASE("sponge gap counts per generation") {
  auto en = enumerate_gaps(make_sponge({3, 3}), 3);
  CHECK(en.gaps.size() == 1 + 8 + 64);
  auto en5 = enumerate_gaps(make_sponge({3, 5}), 3);
  CHECK(en5.gaps.size() == 1 + 14 + 14 * 14);
}

TEST_CASE("gap_distance closed forms") {
  int d = 3;
  Gap a, b;
  a.shape = Box{Point(1, Rat(0)), Point(1, Rat(1, 5))};
  b.shape = Box{Point(1, Rat(1, 2)), Point(1, Rat(7, 10))};
  CHECK(gap_distance(a, b) == doctest::Approx(0.3).epsilon(1e-15));

  Gap c1, c2;
  c1.shape = Ball{Point(d, Rat(0)), Rat(1, 10)};
  Point p2(d, Rat(0));
  p2[0] = 1;
  c2.shape = Ball{p2, Rat(1, 5)};
  CHECK(gap_distance(c1, c2) == doctest::Approx(0.7).epsilon(1e-15));

  Gap bx, bl;
  bx.shape = Box{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}};
  bl.shape = Ball{{Rat(2), Rat(2)}, Rat(1, 2)};
  CHECK(gap_distance(bx, bl) ==
        doctest::Approx(std::sqrt(2.0) - 0.5).epsilon(1e-14));
}

TEST_CASE("distance_to_external") {
  auto en = enumerate_gaps(make_sponge({3, 3}), 1);
  CHECK(distance_to_external(en.gaps[0], make_sponge({3, 3})) ==
        doctest::Approx(1.0 / 3).epsilon(1e-15));

  Gap g;
  g.shape = Box{{Rat(2, 5)}, {Rat(3, 5)}};
  g.diam2 = shape_diam2(g.shape);
  auto spec = make_explicit(1, Box{{Rat(0)}, {Rat(1)}}, {g});
  CHECK(distance_to_external(g, spec) == doctest::Approx(0.4).epsilon(1e-15));

  auto moved = apply_homothety(spec, 1, {Rat(7)});
  auto en2 = enumerate_gaps(moved, 1);
  CHECK(distance_to_external(en2.gaps[0], moved) ==
        doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("homothety scales gaps") {
  auto doubled = apply_homothety(thirds(), 2, {Rat(0)});
  auto en = enumerate_gaps(doubled, 2);
  CHECK(en.gaps[0].diam == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(en.gaps[1].diam == doctest::Approx(2.0 / 9).epsilon(1e-15));

  auto moved = apply_homothety(make_sponge({3, 3}), 3, {Rat(1), Rat(1)});
  auto en2 = enumerate_gaps(moved, 1);
  const auto& b = std::get<Box>(en2.gaps[0].shape);
  CHECK(b.lower[0] == Rat(2));
  CHECK(b.upper[0] == Rat(3));
}

TEST_CASE("prefix stability and non-increasing diameters") {
  for (int depth = 1; depth <= 5; ++depth) {
    auto a = enumerate_gaps(make_sponge({3, 5}), depth);
    auto b = enumerate_gaps(make_sponge({3, 5}), depth + 1);
    for (size_t i = 0; i < a.gaps.size(); ++i) {
      CHECK(a.gaps[i].generation == b.gaps[i].generation);
      CHECK(a.gaps[i].cell_id == b.gaps[i].cell_id);
    }
    for (size_t i = 1; i < a.gaps.size(); ++i)
      CHECK(a.gaps[i - 1].diam2 >= a.gaps[i].diam2);
    // New gaps obey the previous tail bound.
    for (size_t i = a.gaps.size(); i < b.gaps.size(); ++i)
      CHECK(b.gaps[i].diam <= a.tail_bound * (1 + 1e-12));
  }
}

TEST_CASE("malformed descriptors rejected") {
  Gap g1, g2;
  g1.shape = Box{{Rat(0)}, {Rat(1, 2)}};
  g2.shape = Box{{Rat(1, 4)}, {Rat(3, 4)}};
  auto bad = make_explicit(1, Box{{Rat(0)}, {Rat(1)}}, {g1, g2});
  CHECK_THROWS_AS(enumerate_gaps(bad, 1), Error);

  Gap esc;
  esc.shape = Box{{Rat(1, 2)}, {Rat(3, 2)}};
  auto bad2 = make_explicit(1, Box{{Rat(0)}, {Rat(1)}}, {esc});
  CHECK_THROWS_AS(enumerate_gaps(bad2, 1), Error);

  CHECK_THROWS_AS(make_sponge({4, 3}), Error);
  CHECK_THROWS_AS(make_central_cantor(0, 1, Rat(1, 2)), Error);
}

TEST_CASE("depth cap") {
  CHECK_THROWS_AS(enumerate_gaps(make_sponge({3, 3}), 10, 100), Error);
}

TEST_CASE("locate_gap descends the construction") {
  auto spec = thirds();
  auto lg = locate_gap(spec, {Rat(1, 2)}, 10);
  REQUIRE(lg.has_value());
  CHECK(lg->gap.generation == 1);
  CHECK(lg->separation == doctest::Approx(1.0 / 3).epsilon(1e-15));

  auto lg2 = locate_gap(spec, {Rat(5, 27)}, 10);
  REQUIRE(lg2.has_value());
  CHECK(lg2->gap.generation == 2);
  CHECK(lg2->separation == doctest::Approx(1.0 / 9).epsilon(1e-15));

  CHECK(!locate_gap(spec, {Rat(1, 3)}, 10).has_value());
  CHECK(!locate_gap(spec, {Rat(2)}, 10).has_value());

  auto sp = make_sponge({3, 3});
  auto lg3 = locate_gap(sp, {Rat(1, 2), Rat(1, 2)}, 10);
  REQUIRE(lg3.has_value());
  CHECK(lg3->gap.generation == 1);
  auto lg4 = locate_gap(sp, {Rat(1, 6), Rat(1, 6)}, 10);
  REQUIRE(lg4.has_value());
  CHECK(lg4->gap.generation == 2);
}

TEST_CASE("membership to depth") {
  auto spec = thirds();
  CHECK(member_to_depth(spec, {Rat(0)}, 12));
  CHECK(member_to_depth(spec, {Rat(1, 3)}, 12));
  CHECK(!member_to_depth(spec, {Rat(1, 2)}, 12));
  CHECK(!member_to_depth(spec, {Rat(3, 2)}, 12));
}

TEST_CASE("descriptor json round trip") {
  auto spec = apply_homothety(make_sponge({3, 5}, 7), Rat(2), {Rat(1), Rat(0)});
  auto text = descriptor_to_json(spec);
  auto back = parse_descriptor(text);
  auto a = enumerate_gaps(spec, 2);
  auto b = enumerate_gaps(back, 2);
  REQUIRE(a.gaps.size() == b.gaps.size());
  for (size_t i = 0; i < a.gaps.size(); ++i)
    CHECK(a.gaps[i].diam2 == b.gaps[i].diam2);
}
