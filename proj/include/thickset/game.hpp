#ifndef THICKSET_GAME_HPP
#define THICKSET_GAME_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "thickset/set_model.hpp"

namespace thickset {

struct GameParams {
  Rat alpha;
  Rat beta;
  double c = 0;
  Rat rho;
  int d = 1;
};

struct Turn {
  Ball bob;
  std::vector<Shape> erased;  // Alice's reply; empty = pass
  double budget_used = 0;     // sum of diam^c (diam of the single set at c=0)
  bool alice_done = false;
};

struct GameState {
  GameParams params;
  std::vector<Turn> turns;
  bool bob_to_move() const {
    return turns.empty() || turns.back().alice_done;
  }
  const Ball& ball() const { return turns.back().bob; }
};

GameState new_game(const GameParams& params);

// Appends Bob's ball after exact legality checks (radius ratio, nesting).
void referee_bob(GameState& state, const Ball& ball);

// Appends Alice's erased sets after the budget check; empty list passes.
void referee_alice(GameState& state, std::vector<Shape> erased);

// Center of the last ball; every ball of the transcript contains it.
Point game_outcome(const GameState& state);

struct PassStrategy {};
// Gap enumerations are immutable per (target, depth); matches and scaffold
// replays query them every turn, so strategies and policies memoize them.
// For 1-d box gaps an index sorted by left endpoint supports window scans.
struct GapCache {
  struct Entry {
    GapEnumeration en;
    std::vector<std::size_t> by_lower;  // filled only on the 1-d box path
    Rat max_diam;
  };
  std::mutex mu;
  std::map<int, std::shared_ptr<const Entry>> by_depth;
  int overflow_depth = 0;  // smallest depth known to exceed the gap cap; 0 = none
};
struct ThicknessStrategy {
  SetDescriptor target;
  double tau = 0;  // certified lower bound; computed by make_thickness_strategy
  std::shared_ptr<GapCache> cache;
};
struct AliceStrategy;
struct UnionStrategy {
  std::vector<AliceStrategy> parts;
  std::vector<Rat> alphas;  // each part plays with its own erasure budget
};
struct ConjugateStrategy {
  std::shared_ptr<const AliceStrategy> base;
  Rat lambda;
  Point offset;  // plays on x -> lambda x + offset of the base target
};
struct AliceStrategy {
  std::variant<PassStrategy, ThicknessStrategy, UnionStrategy,
               ConjugateStrategy>
      node;
};

AliceStrategy make_thickness_strategy(const SetDescriptor& target);
// Requires c > 0 and sum alpha_j^c <= ambient_alpha^c.
AliceStrategy union_strategy(std::vector<AliceStrategy> parts,
                             const std::vector<Rat>& alphas, const Rat& ambient,
                             double c);
AliceStrategy conjugate_strategy(AliceStrategy base, const Rat& lambda,
                                 Point offset);

// Replayable: the move is a pure function of the transcript.
std::vector<Shape> alice_move(const AliceStrategy& strategy,
                              const GameState& state);

// The proof's trigger gap for the thickness strategy: Bob's ball intersects
// the gap and is smaller than the gap's separation; at most one erasure per
// gap across the transcript.
std::vector<Shape> alice_thickness_move(const SetDescriptor& target, double tau,
                                        const GameState& state);

struct ConcentricShrink {
  Point target;
};
struct GapChaser {
  SetDescriptor target;
  std::uint64_t seed = 1;
  // shared across copies so repeated matches reuse the enumerations; filled
  // lazily by play_match when left empty
  mutable std::shared_ptr<GapCache> cache;
};
struct RandomLegal {
  std::uint64_t seed = 1;
};
using BobPolicy = std::variant<ConcentricShrink, GapChaser, RandomLegal>;

enum class MatchVerdict { InTargetWithinRho, Erased, Escaped };

struct MatchResult {
  GameState state;
  MatchVerdict verdict = MatchVerdict::Escaped;
  Point outcome;
  double final_radius = 0;
};

// Runs until the radius drops below stop_radius; the verdict is relative to
// S = target ∪ exterior when a target is supplied.
MatchResult play_match(const AliceStrategy& alice, const BobPolicy& bob,
                       const GameParams& params, double stop_radius,
                       const SetDescriptor* target = nullptr);

}  // namespace thickset

#endif
