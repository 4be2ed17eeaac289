#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "thickset/game.hpp"
#include "thickset/thickness.hpp"

using namespace thickset;

namespace {

GameParams thirds_params() {
  // alpha = 1/(tau*beta) with tau = 1, beta = 1/4, rho = beta*diam(C)/2
  GameParams p;
  p.alpha = 4;
  p.beta = Rat(1, 4);
  p.c = 0;
  p.rho = Rat(1, 8);
  p.d = 1;
  return p;
}

SetDescriptor thirds() { return make_central_cantor(0, 1, Rat(1, 3)); }

Ball ball1(const Rat& x, const Rat& r) { return Ball{{x}, r, true}; }

}  // namespace

TEST_CASE("referee accepts boundary-legal Bob moves") {
  auto st = new_game(thirds_params());
  CHECK(st.bob_to_move());
  referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));  // first radius exactly rho
  CHECK_FALSE(st.bob_to_move());
  referee_alice(st, {});
  // concentric shrink to exactly beta * rho_0
  referee_bob(st, ball1(Rat(1, 2), Rat(1, 32)));
  CHECK(st.turns.size() == 2);
}

TEST_CASE("referee rejects illegal Bob moves") {
  auto st = new_game(thirds_params());
  CHECK_THROWS_WITH_AS(referee_bob(st, ball1(0, Rat(1, 16))),
                       doctest::Contains("rho"), Error);
  referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
  referee_alice(st, {});
  // radius ratio below beta
  CHECK_THROWS_AS(referee_bob(st, ball1(Rat(1, 2), Rat(1, 64))), Error);
  // center displaced by rho_0: B1 not inside B0
  CHECK_THROWS_WITH_AS(referee_bob(st, ball1(Rat(5, 8), Rat(1, 16))),
                       doctest::Contains("escapes"), Error);
  // exactly-touching displacement |x1-x0| = rho_0 - rho_1 is legal
  referee_bob(st, ball1(Rat(1, 2) + Rat(1, 16), Rat(1, 16)));
  CHECK(st.turns.size() == 2);
}

TEST_CASE("referee enforces Alice's erasure budget") {
  auto p = thirds_params();

  SUBCASE("pass is always legal") {
    auto st = new_game(p);
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
    referee_alice(st, {});
    CHECK(st.turns.back().alice_done);
    CHECK(st.turns.back().erased.empty());
  }
  SUBCASE("c = 0: one set at exactly alpha*rho is accepted") {
    auto st = new_game(p);
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
    // diameter = alpha * rho = 1/2
    referee_alice(st, {Shape{Box{{Rat(1, 4)}, {Rat(3, 4)}}}});
    CHECK(st.turns.back().erased.size() == 1);
  }
  SUBCASE("c = 0: two sets are rejected outright") {
    auto st = new_game(p);
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
    CHECK_THROWS_WITH_AS(
        referee_alice(st, {Shape{Box{{0}, {Rat(1, 100)}}},
                           Shape{Box{{Rat(1, 2)}, {Rat(51, 100)}}}}),
        doctest::Contains("one set"), Error);
  }
  SUBCASE("c = 0: oversized set is rejected") {
    auto st = new_game(p);
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
    CHECK_THROWS_AS(referee_alice(st, {Shape{Box{{0}, {Rat(51, 100)}}}}),
                    Error);
  }
  SUBCASE("c = 1: diameter sums are what is budgeted") {
    p.c = 1;
    auto st = new_game(p);
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
    // two intervals summing to exactly alpha*rho = 1/2: legal
    auto st2 = st;
    referee_alice(st2, {Shape{Box{{0}, {Rat(1, 4)}}},
                        Shape{Box{{Rat(1, 2)}, {Rat(3, 4)}}}});
    CHECK(st2.turns.back().erased.size() == 2);
    // sum 0.51 > 1/2: rejected
    CHECK_THROWS_AS(
        referee_alice(st, {Shape{Box{{0}, {Rat(26, 100)}}},
                           Shape{Box{{Rat(1, 2)}, {Rat(3, 4)}}}}),
        Error);
  }
}

TEST_CASE("outcome lies in every ball of the transcript") {
  auto st = new_game(thirds_params());
  referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
  referee_alice(st, {});
  referee_bob(st, ball1(Rat(9, 16), Rat(1, 16)));
  referee_alice(st, {});
  referee_bob(st, ball1(Rat(37, 64), Rat(1, 32)));
  referee_alice(st, {});
  auto x = game_outcome(st);
  for (const auto& t : st.turns) {
    Rat d2 = dist2(x, t.bob.center);
    CHECK(d2 <= t.bob.radius * t.bob.radius);
  }
}

TEST_CASE("thickness strategy erases the triggered gap") {
  auto C = thirds();
  auto st = new_game(thirds_params());
  // ball at the gap midpoint: diam(B) = 1/4 < 1/3 = separation of (1/3,2/3)
  referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
  auto moves = alice_thickness_move(C, 1.0, st);
  REQUIRE(moves.size() == 1);
  const auto& g = std::get<Box>(moves[0]);
  CHECK(g.lower[0] == Rat(1, 3));
  CHECK(g.upper[0] == Rat(2, 3));
  // the proof's legality inequality: diam(G) <= diam(B)/(tau*beta)
  double diam_g = to_d(g.upper[0] - g.lower[0]);
  double diam_b = 2 * to_d(st.ball().radius);
  double tau = 1.0, beta = 0.25;
  CHECK(diam_g <= diam_b / (tau * beta) + 1e-15);
  referee_alice(st, moves);  // and the referee agrees it is legal
}

TEST_CASE("thickness strategy passes without a trigger") {
  auto C = thirds();

  SUBCASE("ball disjoint from every gap") {
    auto st = new_game(thirds_params());
    referee_bob(st, ball1(Rat(-2), Rat(1, 8)));  // outside the hull
    CHECK(alice_thickness_move(C, 1.0, st).empty());
  }
  SUBCASE("ball intersects the gap but is too large") {
    auto p = thirds_params();
    p.rho = Rat(1, 4);
    auto st = new_game(p);
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 4)));  // diam 1/2 >= sep 1/3
    CHECK(alice_thickness_move(C, 1.0, st).empty());
  }
  SUBCASE("an already-erased gap is never erased twice") {
    auto st = new_game(thirds_params());
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
    auto first = alice_thickness_move(C, 1.0, st);
    REQUIRE(first.size() == 1);
    referee_alice(st, first);
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 16)));
    CHECK(alice_thickness_move(C, 1.0, st).empty());
  }
}

TEST_CASE("make_thickness_strategy certifies the target's thickness") {
  auto s = make_thickness_strategy(thirds());
  const auto& ts = std::get<ThicknessStrategy>(s.node);
  CHECK(ts.tau == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("union strategy: degenerate families") {
  // empty family collapses to Pass
  auto empty = union_strategy({}, {}, 1, 1.0);
  CHECK(std::holds_alternative<PassStrategy>(empty.node));

  // c = 0 is not allowed
  CHECK_THROWS_AS(
      union_strategy({AliceStrategy{PassStrategy{}}}, {Rat(1)}, 1, 0.0), Error);

  // exponent budget violation
  CHECK_THROWS_WITH_AS(
      union_strategy({AliceStrategy{PassStrategy{}},
                      AliceStrategy{PassStrategy{}}},
                     {Rat(3), Rat(3)}, Rat(4), 1.0),
      doctest::Contains("exceed"), Error);

  // singleton union with ambient == component plays identical moves
  auto base = make_thickness_strategy(thirds());
  auto single = union_strategy({base}, {Rat(4)}, Rat(4), 1.0);
  auto p = thirds_params();
  p.c = 1;
  auto st = new_game(p);
  referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
  auto a = alice_move(base, st);
  auto b = alice_move(single, st);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == 1);
  CHECK(std::get<Box>(a[0]).lower == std::get<Box>(b[0]).lower);
}

TEST_CASE("union of two strategies stays within the combined budget") {
  // two copies of the middle-thirds strategy on disjoint translates;
  // alpha_j = 4 each, ambient alpha = 8 at c = 1, so 4 + 4 <= 8
  auto left = thirds();
  auto right = apply_homothety(thirds(), 1, {Rat(2)});
  auto parts = std::vector<AliceStrategy>{make_thickness_strategy(left),
                                          make_thickness_strategy(right)};
  auto u = union_strategy(std::move(parts), {Rat(4), Rat(4)}, Rat(8), 1.0);

  GameParams p;
  p.alpha = 8;
  p.beta = Rat(1, 4);
  p.c = 1;
  p.rho = Rat(1, 8);
  p.d = 1;

  // the referee inside play_match throws if any combined move overspends
  int nontrivial = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    auto res = play_match(u, RandomLegal{seed}, p, 1e-3);
    for (const auto& t : res.state.turns)
      if (!t.erased.empty()) ++nontrivial;
  }
  CHECK(nontrivial > 0);  // the simulation actually exercised erasures
}

TEST_CASE("conjugate strategy maps moves through the similarity") {
  auto base = make_thickness_strategy(thirds());

  SUBCASE("identity similarity changes nothing") {
    auto conj = conjugate_strategy(base, 1, {Rat(0)});
    auto st = new_game(thirds_params());
    referee_bob(st, ball1(Rat(1, 2), Rat(1, 8)));
    auto a = alice_move(base, st);
    auto b = alice_move(conj, st);
    REQUIRE(a.size() == 1);
    REQUIRE(b.size() == 1);
    CHECK(std::get<Box>(a[0]).lower == std::get<Box>(b[0]).lower);
    CHECK(std::get<Box>(a[0]).upper == std::get<Box>(b[0]).upper);
  }
  SUBCASE("lambda = 2 erases the doubled gaps") {
    auto conj = conjugate_strategy(base, 2, {Rat(0)});
    auto p = thirds_params();
    p.rho = Rat(1, 4);  // rho scales with lambda
    auto st = new_game(p);
    referee_bob(st, ball1(Rat(1), Rat(1, 4)));
    auto moves = alice_move(conj, st);
    REQUIRE(moves.size() == 1);
    CHECK(std::get<Box>(moves[0]).lower[0] == Rat(2, 3));
    CHECK(std::get<Box>(moves[0]).upper[0] == Rat(4, 3));
  }
  SUBCASE("conjugated match outcome equals the image of the base outcome") {
    // Bob shrinks onto a member point; the conjugated Bob onto its image
    auto pb = thirds_params();
    auto rb = play_match(base, ConcentricShrink{{Rat(1, 4)}}, pb, 1e-4,
                         nullptr);
    auto conj = conjugate_strategy(base, 2, {Rat(1)});
    auto pc = pb;
    pc.rho = 2 * pb.rho;
    auto rc = play_match(conj, ConcentricShrink{{Rat(3, 2)}}, pc, 2e-4,
                         nullptr);
    REQUIRE(rb.state.turns.size() == rc.state.turns.size());
    CHECK(rc.outcome[0] == 2 * rb.outcome[0] + 1);
  }
}

TEST_CASE("monotone relaxations accept every legal transcript") {
  // Monotonicity: transcripts legal under (alpha, beta~, c, rho)
  // replay verbatim under (2*alpha, beta, 2, 2*rho) when beta <= beta~ and
  // the generator only uses radius ratios >= beta~.
  GameParams tight;
  tight.alpha = 1;
  tight.beta = Rat(1, 3);
  tight.c = 1;
  tight.rho = 1;
  tight.d = 2;
  GameParams loose = tight;
  loose.alpha = 2;
  loose.beta = Rat(1, 4);
  loose.c = 2;
  loose.rho = 2;

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pct(0, 99);
  for (int trial = 0; trial < 100; ++trial) {
    // generate a random transcript legal under the tight referee
    auto st = new_game(tight);
    Ball b{{Rat(0), Rat(0)}, tight.rho * 2, true};
    for (int m = 0; m < 5; ++m) {
      referee_bob(st, b);
      std::vector<Shape> erased;
      int k = pct(rng) % 3;
      Rat budget = tight.alpha * b.radius;  // c = 1: diameters sum freely
      for (int i = 0; i < k; ++i) {
        Rat diam = budget * Rat(pct(rng) + 1, 300);
        budget -= diam;
        Rat lo(pct(rng), 100);
        erased.push_back(Shape{Box{{lo, lo}, {lo + diam, lo}}});
      }
      referee_alice(st, erased);
      // next ball: ratio beta~ >= both betas, shifted by half the slack
      Rat r2 = b.radius * Rat(1, 3);
      b.center[0] += (b.radius - r2) / 2;
      b.radius = r2;
    }
    // replay under the relaxed referee
    auto relaxed = new_game(loose);
    for (const auto& t : st.turns) {
      referee_bob(relaxed, t.bob);
      referee_alice(relaxed, t.erased);
    }
    CHECK(relaxed.turns.size() == st.turns.size());
  }
}

TEST_CASE("match verdicts") {
  auto C = thirds();
  auto alice = make_thickness_strategy(C);
  auto p = thirds_params();

  SUBCASE("Bob shrinks onto a member point: outcome is in the set") {
    auto res =
        play_match(alice, ConcentricShrink{{Rat(1, 4)}}, p, 1e-4, &C);
    CHECK(res.verdict == MatchVerdict::InTargetWithinRho);
    CHECK(res.outcome[0] == Rat(1, 4));
  }
  SUBCASE("passing Alice loses to a gap-seeking Bob") {
    AliceStrategy pass{PassStrategy{}};
    auto res =
        play_match(pass, ConcentricShrink{{Rat(1, 2)}}, p, 1e-4, &C);
    CHECK(res.verdict == MatchVerdict::Escaped);
  }
  SUBCASE("gap-chasing Bob never escapes the thickness strategy") {
    std::set<MatchVerdict> seen;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      auto res = play_match(alice, GapChaser{C, seed}, p, 1e-3, &C);
      CHECK(res.verdict != MatchVerdict::Escaped);
      seen.insert(res.verdict);

      // single-erasure invariant: no gap erased twice in any match
      std::vector<Shape> all;
      for (const auto& t : res.state.turns)
        for (const auto& e : t.erased) all.push_back(e);
      for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
          const auto& a = std::get<Box>(all[i]);
          const auto& b2 = std::get<Box>(all[j]);
          CHECK((a.lower != b2.lower || a.upper != b2.upper));
        }

      // outcome containment across the transcript
      for (const auto& t : res.state.turns) {
        Rat d2 = dist2(res.outcome, t.bob.center);
        CHECK(d2 <= t.bob.radius * t.bob.radius);
      }
    }
    CHECK(!seen.empty());
  }
  SUBCASE("random Bob is also handled under a doubled budget") {
    // The strategy's trigger bound gives diam(G) <= diam(B)/(tau*beta),
    // i.e. twice alpha*rho; a random Bob can land in exactly that window,
    // so this run uses the monotone relaxation alpha = 2/(tau*beta).
    GameParams q = p;
    q.alpha = 8;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      auto res = play_match(alice, RandomLegal{seed}, q, 1e-3, &C);
      CHECK(res.verdict != MatchVerdict::Escaped);
    }
  }
}
