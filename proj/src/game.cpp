#include "thickset/game.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "thickset/thickness.hpp"

namespace thickset {

namespace {

std::shared_ptr<const GapCache::Entry> gap_entry(const SetDescriptor& target,
                                                 int depth, GapCache* cache) {
  if (cache) {
    std::scoped_lock lk(cache->mu);
    if (cache->overflow_depth != 0 && depth >= cache->overflow_depth)
      throw Error("DepthOverflow", "gap cap exceeded");
    if (auto it = cache->by_depth.find(depth); it != cache->by_depth.end())
      return it->second;
  }
  auto entry = std::make_shared<GapCache::Entry>();
  try {
    entry->en = enumerate_gaps(target, depth, 200000);
  } catch (const Error&) {
    if (cache) {
      std::scoped_lock lk(cache->mu);
      if (cache->overflow_depth == 0 || depth < cache->overflow_depth)
        cache->overflow_depth = depth;
    }
    throw;
  }
  if (entry->en.dimension == 1) {
    bool all_boxes = true;
    for (const auto& g : entry->en.gaps)
      if (!std::holds_alternative<Box>(g.shape)) {
        all_boxes = false;
        break;
      }
    if (all_boxes && !entry->en.gaps.empty()) {
      entry->by_lower.resize(entry->en.gaps.size());
      for (std::size_t i = 0; i < entry->by_lower.size(); ++i)
        entry->by_lower[i] = i;
      // sort on double keys, falling back to exact compares only on ties
      std::vector<double> key(entry->en.gaps.size());
      for (std::size_t i = 0; i < key.size(); ++i)
        key[i] = to_d(std::get<Box>(entry->en.gaps[i].shape).lower[0]);
      std::sort(entry->by_lower.begin(), entry->by_lower.end(),
                [&](std::size_t a, std::size_t b) {
                  if (key[a] != key[b]) return key[a] < key[b];
                  return std::get<Box>(entry->en.gaps[a].shape).lower[0] <
                         std::get<Box>(entry->en.gaps[b].shape).lower[0];
                });
      entry->max_diam = 0;
      for (const auto& g : entry->en.gaps) {
        Rat w = std::get<Box>(g.shape).upper[0] -
                std::get<Box>(g.shape).lower[0];
        entry->max_diam = std::max(entry->max_diam, w);
      }
    }
  }
  if (cache) {
    std::scoped_lock lk(cache->mu);
    cache->by_depth.emplace(depth, entry);
  }
  return entry;
}

using F50 = boost::multiprecision::cpp_bin_float_50;

void check_params(const GameParams& p) {
  if (!(p.alpha > 0)) throw Error("OutOfRange", "alpha must be positive");
  if (!(p.beta > 0 && p.beta < 1))
    throw Error("OutOfRange", "beta must lie in (0,1)");
  if (p.c < 0) throw Error("OutOfRange", "c must be nonnegative");
  if (!(p.rho > 0)) throw Error("OutOfRange", "rho must be positive");
  if (p.d < 1) throw Error("OutOfRange", "d must be >= 1");
}

bool shape_equal(const Shape& a, const Shape& b) {
  const auto* ab = std::get_if<Box>(&a);
  const auto* bb = std::get_if<Box>(&b);
  if (ab && bb) return ab->lower == bb->lower && ab->upper == bb->upper;
  const auto* al = std::get_if<Ball>(&a);
  const auto* bl = std::get_if<Ball>(&b);
  if (al && bl) return al->center == bl->center && al->radius == bl->radius;
  return false;
}

// Farthest legal point toward `to` within an exact step budget.
Point step_toward(const Point& from, const Point& to, const Rat& max_step) {
  if (max_step <= 0) return from;
  Rat m2 = max_step * max_step;
  if (dist2(from, to) <= m2) return to;
  double scale =
      to_d(max_step) / std::sqrt(to_d(dist2(from, to)));
  for (int k = 0; k < 80; ++k) {
    Rat s(scale);
    Point q(from.size());
    for (size_t i = 0; i < from.size(); ++i)
      q[i] = from[i] + s * (to[i] - from[i]);
    if (dist2(q, from) <= m2) return q;
    scale *= 0.999;
  }
  return from;
}

double shape_diam_of(const Shape& s) { return shape_diam(s); }

}  // namespace

GameState new_game(const GameParams& params) {
  check_params(params);
  GameState st;
  st.params = params;
  return st;
}

void referee_bob(GameState& state, const Ball& ball) {
  if (!state.bob_to_move()) throw Error("NotBobTurn", "Alice has not replied");
  if (int(ball.center.size()) != state.params.d)
    throw Error("DimensionMismatch", "ball dimension");
  if (!(ball.radius > 0)) throw Error("IllegalRadius", "radius must be positive");
  if (state.turns.empty()) {
    if (ball.radius < state.params.rho)
      throw Error("IllegalRadius", "first radius below rho");
  } else {
    const Ball& prev = state.turns.back().bob;
    if (ball.radius < state.params.beta * prev.radius)
      throw Error("IllegalRadius", "radius ratio below beta");
    if (ball.radius > prev.radius)
      throw Error("NotNested", "radius grew");
    Rat slack = prev.radius - ball.radius;
    if (dist2(ball.center, prev.center) > slack * slack)
      throw Error("NotNested", "ball escapes its predecessor");
  }
  Turn t;
  t.bob = ball;
  state.turns.push_back(std::move(t));
}

void referee_alice(GameState& state, std::vector<Shape> erased) {
  if (state.bob_to_move()) throw Error("NotAliceTurn", "Bob moves first");
  Turn& t = state.turns.back();
  const GameParams& p = state.params;
  Rat cap = p.alpha * t.bob.radius;
  if (p.c == 0) {
    if (erased.size() > 1)
      throw Error("MultipleSetsAtCZero", "one set only when c = 0");
    if (!erased.empty()) {
      Rat d2 = shape_diam2(erased.front());
      if (d2 > cap * cap)
        throw Error("BudgetExceeded", "diameter above alpha*rho");
      t.budget_used = std::sqrt(to_d(d2));
    }
  } else {
    F50 sum = 0;
    for (const auto& s : erased)
      sum += pow(sqrt(F50(to_d(shape_diam2(s)))), F50(p.c));
    F50 lim = pow(F50(to_d(cap)), F50(p.c));
    if (sum > lim * (1 + F50("1e-30")))
      throw Error("BudgetExceeded", "sum of diam^c above (alpha*rho)^c");
    t.budget_used = double(sum);
  }
  t.erased = std::move(erased);
  t.alice_done = true;
}

Point game_outcome(const GameState& state) {
  if (state.turns.empty()) throw Error("OutOfRange", "no moves played");
  return state.turns.back().bob.center;
}

AliceStrategy make_thickness_strategy(const SetDescriptor& target) {
  ThicknessStrategy ts;
  ts.target = target;
  ts.tau = thickness_rd(enumerate_gaps(target, 4)).certified_lower;
  if (!(ts.tau > 0))
    throw Error("OutOfRange", "target thickness not certified positive");
  ts.cache = std::make_shared<GapCache>();
  return AliceStrategy{std::move(ts)};
}

AliceStrategy union_strategy(std::vector<AliceStrategy> parts,
                             const std::vector<Rat>& alphas, const Rat& ambient,
                             double c) {
  if (parts.empty()) return AliceStrategy{PassStrategy{}};
  if (!(c > 0))
    throw Error("ExponentBudgetExceeded", "union combinator needs c > 0");
  if (alphas.size() != parts.size())
    throw Error("OutOfRange", "one alpha per component");
  F50 sum = 0;
  for (const auto& a : alphas) sum += pow(F50(to_d(a)), F50(c));
  if (sum > pow(F50(to_d(ambient)), F50(c)) * (1 + F50("1e-30")))
    throw Error("ExponentBudgetExceeded", "component alphas exceed ambient");
  UnionStrategy u;
  u.parts = std::move(parts);
  u.alphas = alphas;
  return AliceStrategy{std::move(u)};
}

AliceStrategy conjugate_strategy(AliceStrategy base, const Rat& lambda,
                                 Point offset) {
  if (!(lambda > 0)) throw Error("OutOfRange", "lambda must be positive");
  ConjugateStrategy c;
  c.base = std::make_shared<AliceStrategy>(std::move(base));
  c.lambda = lambda;
  c.offset = std::move(offset);
  return AliceStrategy{std::move(c)};
}

namespace {

std::vector<Shape> thickness_move(const SetDescriptor& target, double tau,
                                  const GameState& state, GapCache* cache) {
  if (state.bob_to_move()) throw Error("NotAliceTurn", "Bob moves first");
  const Ball& ball = state.turns.back().bob;
  double diam_b = 2 * to_d(ball.radius);

  auto already_erased = [&](const Shape& s) {
    for (const auto& t : state.turns)
      for (const auto& e : t.erased)
        if (shape_equal(e, s)) return true;
    return false;
  };

  // At most one gap can both meet the ball and exceed it in separation (it
  // would otherwise be within diam(B) of an earlier gap). Once found, Alice
  // erases it when legal and not already erased, else passes.
  Rat cap = state.params.alpha * ball.radius;
  auto consider = [&](const Gap& g) -> std::optional<std::vector<Shape>> {
    auto loc = locate_gap(target, shape_center(g.shape), g.generation + 1);
    double sep = loc ? loc->separation : distance_to_external(g, target);
    if (!(diam_b < sep)) return std::nullopt;  // ball too large for this gap
    if (g.diam2 > cap * cap) return std::vector<Shape>{};
    if (already_erased(g.shape)) return std::vector<Shape>{};
    return std::vector<Shape>{g.shape};
  };

  // Every gap of a central Cantor set satisfies sep = tau_exact * diam, so a
  // gap that can trigger (sep > diam(B)) has diameter above
  // diam(B)/tau_exact; probing the ball on a grid finer than a quarter of
  // that finds it by digit walks, with no enumeration at all.
  ResolvedSpec rs = resolve(target);
  const auto* cc = std::get_if<CentralCantor1D>(&rs.base->node);
  double a = cc ? to_d(cc->keep_ratio) : 0;
  double tau_exact = cc ? a / (1 - 2 * a) : 0;
  if (cc && ball.center.size() == 1 && tau_exact > 0 && tau_exact <= 1024 &&
      a > 0 && a < 0.5) {
    int steps = std::max(8, 4 * static_cast<int>(std::ceil(tau_exact)));
    double hull_diam = spec_diam(target);
    int max_gen = 8;
    if (diam_b < hull_diam && hull_diam > 0)
      max_gen = std::min(
          300, static_cast<int>(std::ceil(std::log(diam_b / hull_diam) /
                                          std::log(a))) +
                   4);
    for (int k = 0; k <= steps; ++k) {
      Rat x = ball.center[0] - ball.radius + 2 * ball.radius * Rat(k, steps);
      auto loc = locate_gap(target, {x}, max_gen);
      if (!loc) continue;
      if (auto r = consider(loc->gap)) return *r;
    }
    return {};
  }

  // Enumerate deep enough that unseen gaps are too separated-small to trigger.
  std::shared_ptr<const GapCache::Entry> entry;
  for (int depth = 1; depth <= 32; ++depth) {
    entry = gap_entry(target, depth, cache);
    if (entry->en.tail_bound == 0) break;
    if (entry->en.tail_bound * std::max(8.0, 4 * (tau + 1)) < diam_b) break;
  }
  const GapEnumeration& en = entry->en;

  if (!entry->by_lower.empty()) {
    // 1-d window scan over gaps sorted by left endpoint
    Rat lo = ball.center[0] - ball.radius;
    Rat hi = ball.center[0] + ball.radius;
    Rat from = lo - entry->max_diam;
    auto first = std::lower_bound(
        entry->by_lower.begin(), entry->by_lower.end(), from,
        [&](std::size_t idx, const Rat& v) {
          return std::get<Box>(en.gaps[idx].shape).lower[0] < v;
        });
    for (auto it = first; it != entry->by_lower.end(); ++it) {
      const auto& g = en.gaps[*it];
      const auto& b = std::get<Box>(g.shape);
      if (b.lower[0] >= hi) break;
      if (b.upper[0] <= lo || b.lower[0] >= b.upper[0]) continue;
      if (auto r = consider(g)) return *r;
    }
    return {};
  }
  for (const auto& g : en.gaps) {
    if (!open_shape_meets_closed_ball(g.shape, ball)) continue;
    if (auto r = consider(g)) return *r;
  }
  return {};
}

}  // namespace

std::vector<Shape> alice_thickness_move(const SetDescriptor& target, double tau,
                                        const GameState& state) {
  return thickness_move(target, tau, state, nullptr);
}

std::vector<Shape> alice_move(const AliceStrategy& strategy,
                              const GameState& state) {
  if (const auto* p = std::get_if<PassStrategy>(&strategy.node)) {
    (void)p;
    return {};
  }
  if (const auto* t = std::get_if<ThicknessStrategy>(&strategy.node))
    return thickness_move(t->target, t->tau, state, t->cache.get());
  if (const auto* u = std::get_if<UnionStrategy>(&strategy.node)) {
    std::vector<Shape> all;
    for (size_t j = 0; j < u->parts.size(); ++j) {
      GameState sub = state;
      sub.params.alpha = u->alphas[j];  // component plays its own budget
      for (auto& s : alice_move(u->parts[j], sub)) all.push_back(std::move(s));
    }
    return all;
  }
  const auto& c = std::get<ConjugateStrategy>(strategy.node);
  // Replay the transcript through f^{-1} and map the reply through f.
  GameState base;
  base.params = state.params;
  base.params.rho = state.params.rho / c.lambda;
  for (const auto& t : state.turns) {
    Turn bt;
    bt.bob.closed = t.bob.closed;
    bt.bob.radius = t.bob.radius / c.lambda;
    bt.bob.center.resize(t.bob.center.size());
    for (size_t i = 0; i < t.bob.center.size(); ++i)
      bt.bob.center[i] = (t.bob.center[i] - c.offset[i]) / c.lambda;
    for (const auto& e : t.erased) {
      Point neg(c.offset.size());
      for (size_t i = 0; i < neg.size(); ++i) neg[i] = -c.offset[i] / c.lambda;
      bt.erased.push_back(
          translate_shape(scale_shape(e, 1 / c.lambda), neg));
    }
    bt.alice_done = t.alice_done;
    base.turns.push_back(std::move(bt));
  }
  auto moves = alice_move(*c.base, base);
  for (auto& m : moves) m = translate_shape(scale_shape(m, c.lambda), c.offset);
  return moves;
}

namespace {

Point hull_center(const SetDescriptor& spec) {
  return shape_center(spec_hull(spec));
}

Ball first_ball(const BobPolicy& policy, const GameParams& p) {
  Ball b;
  b.radius = p.rho;
  if (const auto* cs = std::get_if<ConcentricShrink>(&policy)) {
    b.center = cs->target;
  } else if (const auto* gc = std::get_if<GapChaser>(&policy)) {
    b.center = hull_center(gc->target);
  } else {
    b.center = Point(p.d, Rat(0));
  }
  return b;
}

Ball next_ball(const BobPolicy& policy, const GameState& state,
               std::mt19937_64& rng) {
  const GameParams& p = state.params;
  const Ball& prev = state.turns.back().bob;
  Ball b;
  b.radius = p.beta * prev.radius;
  Rat step = prev.radius - b.radius;
  if (const auto* cs = std::get_if<ConcentricShrink>(&policy)) {
    b.center = step_toward(prev.center, cs->target, step);
    return b;
  }
  if (const auto* gc = std::get_if<GapChaser>(&policy)) {
    // steer toward the largest unerased gap, with a seeded jitter among the
    // leaders so repeated matches explore different lines of play
    // only the few largest unerased gaps matter, so a shallow enumeration is
    // enough: each erasure retires one leader and matches last ~15 turns
    std::shared_ptr<const GapCache::Entry> entry;
    for (int depth = 1; depth <= 8; ++depth) {
      std::shared_ptr<const GapCache::Entry> next;
      try {
        next = gap_entry(gc->target, depth, gc->cache.get());
      } catch (const Error&) {
        break;  // gap cap reached; steer from the deepest cached level
      }
      entry = next;
      if (entry->en.tail_bound == 0 ||
          Rat(entry->en.tail_bound) < b.radius / 4)
        break;
    }
    if (!entry)
      throw Error("DepthOverflow", "gap cap exceeded at the first generation");
    const GapEnumeration& en = entry->en;
    std::vector<const Gap*> cand;
    for (const auto& g : en.gaps) {
      bool erased = false;
      for (const auto& t : state.turns)
        for (const auto& e : t.erased)
          if (shape_equal(e, g.shape)) erased = true;
      if (!erased) cand.push_back(&g);
      if (cand.size() >= 4) break;  // gaps come sorted by diameter
    }
    if (cand.empty()) return Ball{prev.center, b.radius, true};
    std::uniform_int_distribution<size_t> pick(0, cand.size() - 1);
    const Gap* g = cand[pick(rng)];
    b.center = step_toward(prev.center, shape_center(g->shape), step);
    return b;
  }
  // RandomLegal: random direction, random fraction of the legal step
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  Point dir(prev.center.size());
  double n2 = 0;
  for (size_t i = 0; i < dir.size(); ++i) {
    double x = uni(rng);
    dir[i] = Rat(x);
    n2 += x * x;
  }
  Point goal = prev.center;
  if (n2 > 0) {
    double scale = frac(rng) * to_d(step) / std::sqrt(n2);
    for (size_t i = 0; i < dir.size(); ++i)
      goal[i] = prev.center[i] + Rat(scale) * dir[i];
  }
  b.center = step_toward(prev.center, goal, step);
  return b;
}

}  // namespace

MatchResult play_match(const AliceStrategy& alice, const BobPolicy& bob,
                       const GameParams& params, double stop_radius,
                       const SetDescriptor* target) {
  if (!(stop_radius > 0)) throw Error("OutOfRange", "stop_radius");
  std::uint64_t seed = 1;
  if (const auto* gc = std::get_if<GapChaser>(&bob)) {
    seed = gc->seed;
    if (!gc->cache) gc->cache = std::make_shared<GapCache>();
  }
  if (const auto* rl = std::get_if<RandomLegal>(&bob)) seed = rl->seed;
  std::mt19937_64 rng(seed);

  MatchResult res;
  res.state = new_game(params);
  referee_bob(res.state, first_ball(bob, params));
  referee_alice(res.state, alice_move(alice, res.state));
  while (to_d(res.state.ball().radius) >= stop_radius) {
    Ball nb = next_ball(bob, res.state, rng);
    referee_bob(res.state, nb);
    referee_alice(res.state, alice_move(alice, res.state));
  }
  res.outcome = game_outcome(res.state);
  res.final_radius = to_d(res.state.ball().radius);

  for (const auto& t : res.state.turns)
    for (const auto& e : t.erased)
      if (shape_contains_point_open(e, res.outcome)) {
        res.verdict = MatchVerdict::Erased;
        return res;
      }
  if (target) {
    // Construction pieces shrink by at least 1/2 per generation, so any gap
    // of generation beyond this depth has diameter (hence boundary margin)
    // below final_radius and yields the same verdict as finding no gap.
    int depth = 300;
    double hull_diam = spec_diam(*target);
    if (res.final_radius > 0 && hull_diam > res.final_radius)
      depth = std::min(
          300,
          static_cast<int>(std::ceil(std::log2(hull_diam / res.final_radius))) +
              2);
    auto loc = locate_gap(*target, res.outcome, depth);
    if (!loc) {
      res.verdict = MatchVerdict::InTargetWithinRho;  // in C or in E
      return res;
    }
    // distance from the outcome to the gap boundary (which lies in C)
    double margin = 0;
    if (const auto* gb = std::get_if<Box>(&loc->gap.shape)) {
      Rat m = gb->upper[0] - gb->lower[0];
      for (int i = 0; i < gb->dim(); ++i) {
        m = std::min(m, Rat(res.outcome[i] - gb->lower[i]));
        m = std::min(m, Rat(gb->upper[i] - res.outcome[i]));
      }
      margin = to_d(m);
    } else if (const auto* gl = std::get_if<Ball>(&loc->gap.shape)) {
      margin = to_d(gl->radius) -
               std::sqrt(to_d(dist2(res.outcome, gl->center)));
    } else {
      margin = shape_diam_of(loc->gap.shape);
    }
    res.verdict = margin <= res.final_radius ? MatchVerdict::InTargetWithinRho
                                             : MatchVerdict::Escaped;
    return res;
  }
  res.verdict = MatchVerdict::Escaped;
  return res;
}

}  // namespace thickset
