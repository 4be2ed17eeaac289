#include "thickset/scaffold.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "thickset/bounds.hpp"

namespace thickset {

namespace {

using F50 = boost::multiprecision::cpp_bin_float_50;
using Int = boost::multiprecision::cpp_int;

Int rat_floor(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int f = n / d;
  if (f * d != n && n < 0) --f;
  return f;
}

Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

// Nearest integer, ties toward the smaller value.
Int rat_round(const Rat& q) { return rat_ceil(q - Rat(1, 2)); }

Rat rat_pow(Rat base, long long e) {
  Rat out = 1;
  for (; e > 0; e >>= 1, base *= base)
    if (e & 1) out *= base;
  return out;
}

// 1/(2^d 4^d sqrt(d)^d) - 3^d gamma^d (1 + 2*4^d), exact when sqrt(d)^d is
// rational (d = 1 or d even).
Rat bracket_exact(int d, const Rat& gamma) {
  Int sqrt_dd;  // sqrt(d)^d as an integer
  if (d == 1) sqrt_dd = 1;
  else {
    sqrt_dd = 1;
    for (int i = 0; i < d / 2; ++i) sqrt_dd *= d;
  }
  Rat lead = Rat(1) / (rat_pow(Rat(8), d) * Rat(sqrt_dd));
  return lead - rat_pow(Rat(3), d) * rat_pow(gamma, d) *
                    (1 + 2 * rat_pow(Rat(4), d));
}

double bracket_value(int d, const Rat& gamma) {
  if (d == 1 || d % 2 == 0) return to_d(bracket_exact(d, gamma));
  double g = to_d(gamma);
  return 1.0 / std::pow(8 * std::sqrt(double(d)), d) -
         std::pow(3, d) * std::pow(g, d) * (1 + 2 * std::pow(4, d));
}

}  // namespace

double gamma_for_dimension(int d) {
  if (d < 1) throw Error("OutOfRange", "d must be >= 1");
  double num = 1 - std::pow(2.0, -d);
  double den = std::pow(8 * std::sqrt(double(d)), d) * (1 + 2 * std::pow(4, d));
  return std::pow(num / den, 1.0 / d) / 3.0;
}

ScaffoldParams make_scaffold_params(int d, const Rat& alpha, const Rat& beta,
                                    double c, const Rat& rho,
                                    std::optional<Rat> gamma) {
  if (d < 1) throw Error("OutOfRange", "d must be >= 1");
  if (!(alpha > 0)) throw Error("OutOfRange", "alpha must be positive");
  if (!(beta > 0 && beta <= Rat(1, 4)))
    throw Error("OutOfRange", "beta must lie in (0, 1/4]");
  if (!(c > 0 && c < d)) throw Error("OutOfRange", "c must lie in (0, d)");
  if (!(rho > 0)) throw Error("OutOfRange", "rho must be positive");

  ScaffoldParams p;
  p.d = d;
  p.alpha = alpha;
  p.beta = beta;
  p.c = c;
  p.rho = rho;
  p.gamma = gamma ? *gamma
                  : (d == 1 ? Rat(1, 432) : Rat(gamma_for_dimension(d)));
  if (!(p.gamma > 0 && p.gamma < 1))
    throw Error("OutOfRange", "gamma must lie in (0,1)");

  Int n = rat_floor(rat_pow(p.gamma / p.alpha, d));
  if (n > Int(std::numeric_limits<long long>::max()))
    throw Error("OutOfRange", "N overflows");
  p.N = n.convert_to<long long>();

  double br = bracket_value(d, p.gamma);
  if (br <= 0)
    throw Error("InfeasibleParams", "gamma too large for a positive child count");
  double log_val =
      double(p.N) * d * std::log(to_d(Rat(1) / beta)) + std::log(br);
  if (log_val < std::log(1e15) && (d == 1 || d % 2 == 0)) {
    Rat val = rat_pow(Rat(1) / beta, p.N * d) * bracket_exact(d, p.gamma);
    Int m = rat_ceil(val);
    p.M = m.convert_to<long long>();
    p.log_M = std::log(double(p.M));
  } else if (log_val < std::log(1e15)) {
    p.M = (long long)std::ceil(std::exp(log_val));
    p.log_M = std::log(double(p.M));
  } else {
    p.M = -1;  // too large to materialize; log form only
    p.log_M = log_val;
  }
  if (p.M == 0) p.M = 1;  // ceil of a positive quantity
  return p;
}

double scaffold_k2(double gamma, int d) {
  double gd = std::pow(gamma, -d);
  return std::max(gd * gd, 2 * gd * std::log(gd));
}

bool scaffold_feasible(const ScaffoldParams& p) {
  double k2 = scaffold_k2(to_d(p.gamma), p.d);
  double lhs = std::pow(to_d(p.alpha), p.c);
  double rhs = (1 - std::pow(to_d(p.beta), p.d - p.c)) / k2;
  return lhs <= rhs * (1 + 1e-12);
}

ClaimsReport check_claims(const ScaffoldParams& p) {
  ClaimsReport r;
  double a = to_d(p.alpha), b = to_d(p.beta), g = to_d(p.gamma);
  int d = p.d;
  double gd = std::pow(g, d);
  r.k2_gamma = scaffold_k2(g, d);
  r.k2_global = constants(d).K2;
  r.hypothesis =
      std::pow(a, p.c) <= (1 - std::pow(b, d - p.c)) / r.k2_gamma * (1 + 1e-12);

  double lhs_i = double(p.N) * std::pow(a, d);
  r.margin_i = gd - lhs_i;
  r.claim_i = lhs_i <= gd * (1 + 1e-12);

  double geom = 1.0 / (1 - std::pow(b, d - p.c));  // sum over k in N_0
  double lhs_ii = std::pow(a, p.c) * std::pow(g, -p.c) * geom;
  r.margin_ii = gd - lhs_ii;
  r.claim_ii = lhs_ii <= gd * (1 + 1e-12);

  double lhs_iii = std::exp(double(p.N) * (d - p.c) * std::log(b));
  r.margin_iii = gd - lhs_iii;
  r.claim_iii = lhs_iii <= gd * (1 + 1e-12);
  return r;
}

Ball lattice_ball(const LatticeBall& b, const ScaffoldParams& p) {
  Rat rn = p.rho * rat_pow(p.beta, b.level);
  Ball out;
  out.radius = rn;
  out.closed = true;
  out.center.resize(b.z.size());
  Rat step = b.family == LatticeFamily::D ? Rat(3 * rn) : Rat(rn / 2);
  for (size_t i = 0; i < b.z.size(); ++i) out.center[i] = step * b.z[i];
  return out;
}

LatticeBall project_pi(const LatticeBall& ball, const ScaffoldParams& p) {
  if (ball.level < 1) throw Error("OutOfRange", "no level below the root");
  int n = ball.level - 1;
  Ball child = lattice_ball(ball, p);
  Rat rn = p.rho * rat_pow(p.beta, n);
  Rat slack = rn - child.radius;
  Rat slack2 = slack * slack;

  if (n % p.N == 0) {
    // scheduled level: the unique containing D ball wins if it exists
    LatticeBall cand{n, std::vector<long long>(child.center.size()),
                     LatticeFamily::D};
    Rat d2 = 0;
    for (size_t i = 0; i < child.center.size(); ++i) {
      Int u = rat_round(child.center[i] / (3 * rn));
      cand.z[i] = u.convert_to<long long>();
      Rat v = 3 * rn * cand.z[i] - child.center[i];
      d2 += v * v;
    }
    if (d2 <= slack2) return cand;
  }

  // nearest containing E ball; per-axis rounding minimizes the center
  // distance, ties resolved toward the smaller index
  LatticeBall cand{n, std::vector<long long>(child.center.size()),
                   LatticeFamily::E};
  Rat d2 = 0;
  for (size_t i = 0; i < child.center.size(); ++i) {
    Int w = rat_round(2 * child.center[i] / rn);
    cand.z[i] = w.convert_to<long long>();
    Rat v = rn / 2 * cand.z[i] - child.center[i];
    d2 += v * v;
  }
  if (d2 > slack2) throw Error("NoContainingBall", "projection failed");
  return cand;
}

double potential_phi(const LatticeBall& b,
                     const std::vector<std::vector<Shape>>& history,
                     const ScaffoldParams& p) {
  if ((long long)history.size() < b.level)
    throw Error("MissingHistory", "need one entry per level below the ball");
  Ball bb = lattice_ball(b, p);
  double phi = 0;
  for (int n = 0; n < b.level; ++n)
    for (const auto& a : history[n])
      if (open_shape_meets_closed_ball(a, bb))
        phi += std::pow(shape_diam(a), p.c);
  return phi;
}

namespace {

struct Expansion {
  const ScaffoldParams& p;
  const AliceStrategy& alice;
  std::size_t node_budget;

  // Extends the transcript along the child's projection chain and returns
  // the transcript together with the child's potential.
  std::pair<GameState, double> replay_chain(const GameState& parent_state,
                                            const LatticeBall& child) const {
    std::vector<LatticeBall> chain;
    LatticeBall lb = child;
    while (lb.level > (int)parent_state.turns.size() - 1) {
      chain.push_back(lb);
      lb = project_pi(lb, p);
    }
    std::reverse(chain.begin(), chain.end());
    GameState st = parent_state;
    for (const auto& step : chain) {
      referee_bob(st, lattice_ball(step, p));
      referee_alice(st, alice_move(alice, st));
    }
    Ball cb = lattice_ball(child, p);
    double phi = 0;
    for (size_t n = 0; n + 1 < st.turns.size(); ++n)
      for (const auto& a : st.turns[n].erased)
        if (open_shape_meets_closed_ball(a, cb))
          phi += std::pow(shape_diam(a), p.c);
    return {std::move(st), phi};
  }

  void expand(ScaffoldNode& node, const GameState& state, int depth) const {
    if (node.level >= depth) return;
    Ball parent = lattice_ball(node.ball, p);
    long long level = (long long)(node.level + 1) * p.N;
    Rat rl = p.rho * rat_pow(p.beta, level);
    Rat reach = parent.radius / 2 - rl;  // child must fit inside half-B
    Rat reach2 = reach * reach;

    std::vector<std::pair<long long, long long>> range(p.d);
    std::size_t count = 1;
    for (int i = 0; i < p.d; ++i) {
      long long lo =
          rat_ceil((parent.center[i] - reach) / (3 * rl)).convert_to<long long>();
      long long hi =
          rat_floor((parent.center[i] + reach) / (3 * rl)).convert_to<long long>();
      range[i] = {lo, hi};
      long long extent = std::max<long long>(0, hi - lo + 1);
      if ((unsigned long long)extent > node_budget)
        throw Error("NodeBudgetExceeded", "too many lattice candidates");
      count *= (std::size_t)extent;
      if (count > node_budget)
        throw Error("NodeBudgetExceeded", "too many lattice candidates");
    }

    double threshold = std::pow(to_d(p.gamma * rl), p.c);
    std::vector<std::pair<ScaffoldNode, GameState>> kept;
    std::vector<long long> u(p.d);
    for (int i = 0; i < p.d; ++i) u[i] = range[i].first;
    bool more = p.d > 0;
    while (more && (long long)kept.size() < p.M) {
      Rat d2 = 0;
      for (int i = 0; i < p.d; ++i) {
        Rat v = 3 * rl * u[i] - parent.center[i];
        d2 += v * v;
      }
      if (d2 <= reach2) {
        LatticeBall cand{(int)level, u, LatticeFamily::D};
        auto [st, phi] = replay_chain(state, cand);
        if (phi <= threshold * (1 + 1e-9)) {
          ScaffoldNode ch;
          ch.ball = cand;
          ch.level = node.level + 1;
          ch.phi = phi;
          kept.emplace_back(std::move(ch), std::move(st));
        }
      }
      // lexicographic advance
      int i = p.d - 1;
      while (i >= 0 && ++u[i] > range[i].second) u[i--] = range[i].first;
      more = i >= 0;
    }
    if ((long long)kept.size() < p.M)
      throw Error("SurvivorShortfall",
                  "level " + std::to_string(level) + ": found " +
                      std::to_string(kept.size()) + " survivors, need " +
                      std::to_string(p.M));
    for (auto& [ch, st] : kept) {
      node.children.push_back(std::move(ch));
      expand(node.children.back(), st, depth);
    }
  }
};

}  // namespace

ScaffoldNode build_scaffold(const ScaffoldParams& p, const AliceStrategy& alice,
                            int depth, bool waive_feasibility,
                            std::size_t node_budget) {
  if (depth < 1) throw Error("OutOfRange", "depth must be >= 1");
  if (!waive_feasibility && !scaffold_feasible(p))
    throw Error("InfeasibleParams",
                "alpha^c exceeds (1 - beta^(d-c)) / K2(gamma)");
  if (p.M < 0) throw Error("NodeBudgetExceeded", "M too large to materialize");
  if (p.N < 1) throw Error("OutOfRange", "N must be >= 1 (alpha <= gamma)");

  GameParams gp;
  gp.alpha = p.alpha;
  gp.beta = p.beta;
  gp.c = p.c;
  gp.rho = p.rho;
  gp.d = p.d;

  ScaffoldNode root;
  root.ball = LatticeBall{0, std::vector<long long>(p.d, 0), LatticeFamily::D};
  root.level = 0;
  root.phi = 0;

  GameState st = new_game(gp);
  referee_bob(st, lattice_ball(root.ball, p));
  referee_alice(st, alice_move(alice, st));

  Expansion ex{p, alice, node_budget};
  ex.expand(root, st, depth);
  return root;
}

ScaffoldDimension scaffold_dimension(const ScaffoldParams& p) {
  if (!scaffold_feasible(p))
    throw Error("InfeasibleParams",
                "alpha^c exceeds (1 - beta^(d-c)) / K2(gamma)");
  double log_beta = std::abs(std::log(to_d(p.beta)));
  ScaffoldDimension out;
  out.from_tree = p.log_M / (double(p.N) * log_beta);
  double ad = std::pow(to_d(p.alpha), p.d);
  out.from_formula = p.d - constants(p.d).K1 * ad / log_beta;
  out.formula_dominated = out.from_tree >= out.from_formula;

  // the chain's true endpoint: d - 2 alpha^d |log bracket| / (gamma^d |log b|)
  double br = bracket_value(p.d, p.gamma);
  double endpoint =
      p.d - 2 * ad * std::abs(std::log(br)) /
                (std::pow(to_d(p.gamma), p.d) * log_beta);
  if (out.from_tree < endpoint - 1e-9)
    throw Error("DimensionChainViolated", "tree bound below the derived bound");
  return out;
}

}  // namespace thickset
