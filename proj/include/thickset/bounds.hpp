#ifndef THICKSET_BOUNDS_HPP
#define THICKSET_BOUNDS_HPP

#include <vector>

#include "thickset/geometry.hpp"

namespace thickset {

struct Constants {
  int d = 1;
  double K1 = 0;
  double K2 = 0;
};
Constants constants(int d);

enum class BoundKind { Intersection, SingleSet, ConvexGap, Classic1D, IntersectionGeneral };

struct DimensionBound {
  BoundKind kind = BoundKind::Intersection;
  double value = 0;
  bool feasible = false;
  int d = 1;
  double c = 0;
  double beta = 0;
  std::vector<double> taus;
  double slack = 0;  // feasibility RHS - LHS; sign decided in high precision
};

// beta = min{1/4, diam_B/sup_diam}; feasibility is the sum condition
// sum tau_i^-c <= beta^c (1 - beta^(d-c)) / K2.
DimensionBound intersection_bound(const std::vector<double>& taus,
                                  double sup_diam, double diam_B, int d,
                                  double c);

// Best feasible bound over c in (0,d): grid + golden-section refinement, and
// the proof's choice c = d - 1/log(tau*beta) for a single tau. Throws
// NoFeasibleC when the feasibility region is empty.
DimensionBound optimize_c(const std::vector<double>& taus, double sup_diam,
                          double diam_B, int d);

struct PatternCapacity {
  long long N = 0;
  double tau = 0;
  double beta = 0;
  double raw = 0;           // pre-floor capacity (0 for tau <= 1)
  bool pre_asymptotic = false;  // 1 < tau < e
  int d = 1;
};
// beta = min{1/4, 15 diam_B / (16 diam_C)}; N = 0 for tau <= 1.
PatternCapacity pattern_capacity(double tau, double diam_B, double diam_C,
                                 int d);

// log 2 / log(2 + 1/tau).
double dim_lower_1d(double tau);
// d - 1 + dim_lower_1d(tau), for d >= 2.
double convex_gap_dim_bound(double tau, int d);

// One-set case with beta = min{1/4, diam_B/diam_C}.
DimensionBound single_set_bound(double tau, double diam_B, double diam_C,
                                int d, double c);

}  // namespace thickset

#endif
