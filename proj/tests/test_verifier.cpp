#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "thickset/verifier.hpp"

using namespace thickset;

namespace {

SetDescriptor thirds() {
  return make_central_cantor(Rat(0), Rat(1), Rat(1, 3));
}
SetDescriptor fifths() {
  return make_central_cantor(Rat(0), Rat(1), Rat(2, 5));
}

SetDescriptor solid_square() {
  Box hull;
  hull.lower = {Rat(0), Rat(0)};
  hull.upper = {Rat(1), Rat(1)};
  return make_explicit(2, Shape{hull}, {});
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("rasterize: digit-exact counts for generative families") {
  // middle thirds at its natural base: the 2^k construction cells, all
  // certified on both sides of the sandwich
  for (int k = 1; k <= 6; ++k) {
    CellGrid g = rasterize(thirds(), k);
    CHECK(g.bases == std::vector<long long>{3});
    CHECK(g.may_count == ipow(2, k));
    CHECK(g.inside_count == ipow(2, k));
    CHECK(static_cast<long long>(g.cells.size()) == g.may_count);
  }
  // level-2 indices are the base-9 strings avoiding a middle digit
  CellGrid g2 = rasterize(thirds(), 2);
  std::vector<long long> got;
  for (const auto& [idx, kind] : g2.cells) {
    got.push_back(idx[0]);
    CHECK(kind == CellKind::CertifiedInside);
  }
  CHECK(got == std::vector<long long>{0, 2, 6, 8});

  // planar sponge on a 3x3 grid: 8^k cells, all certified
  SetDescriptor sp = make_sponge({3, 3});
  for (int k = 1; k <= 4; ++k) {
    auto [may, inside] = rasterize_counts(sp, k);
    CHECK(may == ipow(8, k));
    CHECK(inside == ipow(8, k));
  }

  // a gap-free hull rasterizes to the full grid
  for (int k = 1; k <= 4; ++k) {
    auto [may, inside] = rasterize_counts(solid_square(), k);
    CHECK(may == ipow(4, k));
    CHECK(inside == ipow(4, k));
  }
}

TEST_CASE("rasterize: fat Cantor set is digit-exact on its natural grid") {
  // middle fifths keeps intervals whose endpoints are 5-adic, so the base-5
  // grid resolves the depth-k set exactly: 2^k kept intervals x 2^k cells
  for (int k = 1; k <= 8; ++k) {
    auto [may, inside] = rasterize_counts(fifths(), k);
    CHECK(may == ipow(4, k));
    CHECK(inside == ipow(4, k));
    CHECK(inside <= may);
  }
  // outer cover counts are monotone in the level
  long long prev = 0;
  for (int k = 1; k <= 8; ++k) {
    auto [may, inside] = rasterize_counts(fifths(), k);
    (void)inside;
    CHECK(may >= prev);
    prev = may;
  }
}

TEST_CASE("rasterize: pointwise membership agrees with the cell sandwich") {
  const int k = 5;
  CellGrid g = rasterize(fifths(), k);
  std::set<long long> occupied;
  for (const auto& [idx, kind] : g.cells) {
    occupied.insert(idx[0]);
    // certified cell centers are members at the same depth
    if (kind == CellKind::CertifiedInside)
      CHECK(member_to_depth(fifths(), g.cell_center(idx), k));
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(0, ipow(5, k + 3) - 1);
  for (int t = 0; t < 2000; ++t) {
    // the +1/2 keeps samples off the grid planes, where a boundary point
    // belongs to two cells
    Rat x(2 * num(rng) + 1, 2 * ipow(5, k + 3));
    if (member_to_depth(fifths(), {x}, k)) {
      long long cell = (x * ipow(5, k)).convert_to<long long>();
      CHECK(occupied.count(cell) == 1);
    }
  }
}

TEST_CASE("rasterize: budget is enforced") {
  CHECK_THROWS_WITH_AS(rasterize(make_sponge({3, 3}), 8, 1000),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("brute_intersection: idempotence and disjointness") {
  IntersectVerdict one = brute_intersection({thirds()}, 4);
  IntersectVerdict two = brute_intersection({thirds(), thirds()}, 4);
  CHECK(one.tag == IntersectTag::NonemptyWitness);
  CHECK(two.tag == IntersectTag::NonemptyWitness);
  CHECK(one.common_cells == two.common_cells);
  REQUIRE(one.witness.has_value());
  REQUIRE(two.witness.has_value());
  CHECK((*one.witness)[0] == (*two.witness)[0]);

  // separated hulls certify disjointness at any level
  SetDescriptor far_copy = apply_homothety(thirds(), 1, {Rat(2)});
  IntersectVerdict dj = brute_intersection({thirds(), far_copy}, 3);
  CHECK(dj.tag == IntersectTag::CertifiedDisjoint);
  CHECK(dj.common_cells == 0);
}

TEST_CASE("brute_intersection: two linked fat Cantor sets meet") {
  SetDescriptor a = fifths();
  SetDescriptor b = apply_homothety(fifths(), 1, {Rat(3, 10)});
  std::optional<Point> witness;
  int found_level = -1;
  for (int k = 4; k <= 12 && !witness; ++k) {
    IntersectVerdict v = brute_intersection({a, b}, k, 20000000);
    if (v.tag == IntersectTag::NonemptyWitness) {
      witness = v.witness;
      found_level = k;
    }
  }
  REQUIRE(witness.has_value());
  CHECK(found_level <= 12);
  // independent pointwise recheck in both sets
  const Point& w = *witness;
  CHECK(member_to_depth(a, w, found_level));
  CHECK(member_to_depth(b, w, found_level));
}

TEST_CASE("box_counting: slopes recover known box dimensions") {
  DimensionEstimate sponge =
      box_counting(make_sponge({3, 3}), {1, 2, 3, 4, 5, 6, 7}, 20000000);
  CHECK(std::abs(sponge.slope - std::log(8) / std::log(3)) < 0.05);
  CHECK(sponge.slope <= 2.0);

  DimensionEstimate th =
      box_counting(thirds(), {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(std::abs(th.slope - std::log(2) / std::log(3)) < 0.02);
  CHECK(th.residual < 1e-9);  // exact power law, zero residual

  DimensionEstimate sq = box_counting(solid_square(), {1, 2, 3, 4, 5});
  CHECK(sq.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sq.log_inv_scale.size() >= 4);

  CHECK_THROWS_WITH_AS(box_counting(thirds(), {1, 2, 3}),
                       doctest::Contains("DegenerateRange"), Error);
  CHECK_THROWS_WITH_AS(box_counting(thirds(), {2, 2, 2, 2, 3, 4}),
                       doctest::Contains("DegenerateRange"), Error);
}

TEST_CASE("box_counting: slope respects applicable lower bounds") {
  // a fatter Cantor set has a larger dimension; estimates must order the
  // same way and stay within the ambient dimension
  DimensionEstimate thin = box_counting(thirds(), {1, 2, 3, 4, 5, 6, 7});
  DimensionEstimate fat = box_counting(fifths(), {1, 2, 3, 4, 5, 6, 7});
  CHECK(thin.slope >= 0.0);
  CHECK(fat.slope <= 1.0 + 1e-9);
  CHECK(fat.slope > thin.slope);
  CHECK(std::abs(fat.slope - std::log(2) / std::log(5.0 / 2.0)) < 0.05);
  // the deepened enumeration tracks the limit set, not the depth-k cover
  const long long fat_counts[] = {4, 16, 64, 224, 768, 2560, 8704};
  for (size_t i = 0; i < 7; ++i)
    CHECK(std::llround(std::exp(fat.log_count[i])) == fat_counts[i]);
}

TEST_CASE("pattern_search: single point recovers the certified core") {
  const int k = 3;
  std::vector<Point> w =
      pattern_search(make_sponge({3, 3}), {{Rat(0), Rat(0)}}, Rat(1), k);
  auto [may, inside] = rasterize_counts(make_sponge({3, 3}), k);
  (void)may;
  CHECK(static_cast<long long>(w.size()) == inside);
  for (const Point& x : w) CHECK(member_to_depth(make_sponge({3, 3}), x, k));
}

TEST_CASE("pattern_search: two-point and arithmetic patterns in the carpet") {
  SetDescriptor carpet = make_sponge({3, 3});
  // horizontal translate by 2/3: column digits 0 -> 2 stay off the hole
  std::vector<Point> pairs = pattern_search(
      carpet, {{Rat(0), Rat(0)}, {Rat(2, 3), Rat(0)}}, Rat(1), 2);
  CHECK(!pairs.empty());
  for (const Point& x : pairs) {
    CHECK(member_to_depth(carpet, x, 2));
    CHECK(member_to_depth(carpet, {x[0] + Rat(2, 3), x[1]}, 2));
  }
  // three-term arithmetic progression with gap 1/3
  std::vector<Point> ap = pattern_search(
      carpet,
      {{Rat(0), Rat(0)}, {Rat(1, 3), Rat(0)}, {Rat(2, 3), Rat(0)}}, Rat(1),
      2);
  CHECK(!ap.empty());
  for (const Point& x : ap)
    for (int j = 0; j < 3; ++j)
      CHECK(member_to_depth(carpet, {x[0] + Rat(j, 3), x[1]}, 2));
}

TEST_CASE("pattern_search: failure modes") {
  SetDescriptor carpet = make_sponge({3, 3});
  // a pattern wider than the set leaves no translate at any depth
  CHECK_THROWS_WITH_AS(
      pattern_search(carpet, {{Rat(0), Rat(0)}, {Rat(2), Rat(0)}}, Rat(1), 2),
      doctest::Contains("EmptyAtThisDepth"), Error);
  // theorem mode rejects patterns too large for the scale hypothesis
  CHECK_THROWS_WITH_AS(
      pattern_search(carpet, {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(0)}}, Rat(1),
                     2, true),
      doctest::Contains("ScaleTooLarge"), Error);
  // shrunk far enough, the same pattern is admissible in theorem mode
  std::vector<Point> ok = pattern_search(
      carpet, {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(0)}}, Rat(2, 27), 3, true);
  CHECK(!ok.empty());
}
