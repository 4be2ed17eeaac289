#ifndef THICKSET_SCAFFOLD_HPP
#define THICKSET_SCAFFOLD_HPP

#include <cstdint>
#include <optional>

#include "thickset/game.hpp"

namespace thickset {

// Lattice ball families: E_n has centers (rho_n/2)z + x0, D_n has centers
// 3 rho_n z + x0 (a sub-lattice of E_n: 3 rho_n z = (rho_n/2)(6z)); every
// ball at level n has radius rho_n = beta^n * rho. The root center x0 is 0.
enum class LatticeFamily { E, D };

struct LatticeBall {
  int level = 0;
  std::vector<long long> z;
  LatticeFamily family = LatticeFamily::E;
};

struct ScaffoldParams {
  int d = 1;
  Rat alpha;
  Rat beta;   // <= 1/4
  double c = 0.5;  // in (0, d)
  Rat rho;
  Rat gamma;  // in (0,1)
  long long N = 0;       // floor(gamma^d / alpha^d)
  long long M = 0;       // children per node; -1 when it overflows
  double log_M = 0;      // log(M), usable even when M overflows
};

// gamma = (1/3) * [ (1 - 2^-d) / ((8 sqrt d)^d (1 + 2*4^d)) ]^(1/d)
double gamma_for_dimension(int d);

// Computes N and M; gamma defaults to gamma_for_dimension(d) (exactly 1/432
// at d = 1, where the closed form is rational).
ScaffoldParams make_scaffold_params(int d, const Rat& alpha, const Rat& beta,
                                    double c, const Rat& rho,
                                    std::optional<Rat> gamma = std::nullopt);

// The child-count hypothesis: alpha^c <= (1/K2(gamma)) (1 - beta^(d-c)) with
// K2(gamma) = max{gamma^-2d, 2 gamma^-d log(gamma^-d)}.
double scaffold_k2(double gamma, int d);
bool scaffold_feasible(const ScaffoldParams& p);

struct ClaimsReport {
  bool hypothesis = false;  // alpha^c <= (1/K2(gamma))(1 - beta^(d-c))
  bool claim_i = false;     // N alpha^d <= gamma^d
  bool claim_ii = false;    // alpha^c gamma^-c sum_k beta^(k(d-c)) <= gamma^d
  bool claim_iii = false;   // beta^(N(d-c)) <= gamma^d
  double margin_i = 0, margin_ii = 0, margin_iii = 0;  // rhs - lhs
  double k2_gamma = 0;
  double k2_global = 0;  // the dimension-bound constant; >= k2_gamma here
};
ClaimsReport check_claims(const ScaffoldParams& p);

Ball lattice_ball(const LatticeBall& b, const ScaffoldParams& p);

// The level-(n-1) ancestor of a level-n lattice ball: the containing E ball
// with the smallest center distance (ties: lexicographically smallest
// index), overridden by the unique containing D ball at scheduled levels
// n - 1 = jN.
LatticeBall project_pi(const LatticeBall& ball, const ScaffoldParams& p);

// phi of a level-jN ball: sum of diam^c over all erased sets in the history
// (one entry per level n < jN) that meet the ball.
double potential_phi(const LatticeBall& b,
                     const std::vector<std::vector<Shape>>& history,
                     const ScaffoldParams& p);

struct ScaffoldNode {
  LatticeBall ball;
  int level = 0;  // j: the ball lives at lattice level jN
  double phi = 0;
  std::vector<ScaffoldNode> children;
};

// Builds the depth-J tree with exactly M surviving children per node, where
// a child survives when phi <= (gamma rho_(j+1)N)^c and the history is the
// replay of the Alice strategy along the child's projection chain.
ScaffoldNode build_scaffold(const ScaffoldParams& p, const AliceStrategy& alice,
                            int depth, bool waive_feasibility = false,
                            std::size_t node_budget = 100000);

struct ScaffoldDimension {
  double from_tree = 0;     // log(M) / (N |log beta|)
  double from_formula = 0;  // d - K1 alpha^d / |log beta|
  bool formula_dominated = false;  // from_tree >= from_formula
};
ScaffoldDimension scaffold_dimension(const ScaffoldParams& p);

}  // namespace thickset

#endif
