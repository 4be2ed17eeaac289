#include "thickset/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace thickset {

namespace {

using F50 = boost::multiprecision::cpp_bin_float_50;

void check_common(const std::vector<double>& taus, double sup_diam,
                  double diam_B, int d) {
  if (d < 1) throw Error("OutOfRange", "d must be >= 1");
  if (taus.empty()) throw Error("OutOfRange", "need at least one thickness");
  for (double t : taus)
    if (!(t > 0)) throw Error("OutOfRange", "thicknesses must be positive");
  if (!(sup_diam > 0) || !(diam_B > 0))
    throw Error("OutOfRange", "diameters must be positive");
}

// Feasibility of the sum condition, decided with 50-digit floats so the sign
// of the slack is not a double-rounding artifact; exact equality counts as
// feasible.
std::pair<bool, double> feasibility(const std::vector<double>& taus, double c,
                                    double beta, int d) {
  F50 lhs = 0;
  for (double t : taus) lhs += pow(F50(t), -F50(c));
  F50 a = pow(24 * sqrt(F50(d)), d);
  F50 k2 = a * (1 + pow(F50(4), d) * 2) / (1 - pow(F50(2), -d));
  k2 *= k2;
  F50 b(beta);
  F50 rhs = pow(b, F50(c)) * (1 - pow(b, F50(d) - F50(c))) / k2;
  bool feas = lhs <= rhs * (1 + F50("1e-40"));
  return {feas, double(rhs - lhs)};
}

}  // namespace

Constants constants(int d) {
  if (d < 1) throw Error("OutOfRange", "d must be >= 1");
  Constants k;
  k.d = d;
  double rd = std::sqrt(double(d));
  double a = std::pow(24 * rd, double(d));
  double denom = 1 - std::pow(2.0, -double(d));
  k.K1 = 2 * d * a * std::log(16 * rd) / denom;
  double b = a * (1 + std::pow(4.0, double(d)) * 2) / denom;
  k.K2 = b * b;
  return k;
}

DimensionBound intersection_bound(const std::vector<double>& taus,
                                  double sup_diam, double diam_B, int d,
                                  double c) {
  check_common(taus, sup_diam, diam_B, d);
  if (!(c > 0) || !(c < d)) throw Error("InvalidC", "need c in (0, d)");
  Constants k = constants(d);
  DimensionBound out;
  out.kind = BoundKind::Intersection;
  out.d = d;
  out.c = c;
  out.taus = taus;
  out.beta = std::min(0.25, diam_B / sup_diam);
  double sum = 0;
  for (double t : taus) sum += std::pow(t, -c);
  out.value = d - k.K1 * std::pow(sum, double(d) / c) /
                      (std::pow(out.beta, double(d)) *
                       std::abs(std::log(out.beta)));
  auto [feas, slack] = feasibility(taus, c, out.beta, d);
  out.feasible = feas;
  out.slack = slack;
  return out;
}

DimensionBound optimize_c(const std::vector<double>& taus, double sup_diam,
                          double diam_B, int d) {
  check_common(taus, sup_diam, diam_B, d);
  auto eval = [&](double c) {
    return intersection_bound(taus, sup_diam, diam_B, d, c);
  };
  std::optional<DimensionBound> best;
  auto consider = [&](const DimensionBound& b) {
    if (!b.feasible) return;
    if (!best || b.value > best->value) best = b;
  };

  const int grid = 4096;
  int best_i = -1;
  for (int i = 1; i < grid; ++i) {
    double c = d * double(i) / grid;
    auto b = eval(c);
    if (b.feasible && (best_i < 0 || b.value > best->value)) best_i = i;
    consider(b);
  }
  if (best_i >= 0) {
    // Golden-section refinement around the best grid point.
    double lo = d * double(std::max(1, best_i - 1)) / grid;
    double hi = d * double(std::min(grid - 1, best_i + 1)) / grid;
    const double phi = (std::sqrt(5.0) - 1) / 2;
    auto score = [&](double c) {
      auto b = eval(c);
      consider(b);
      return b.feasible ? b.value
                        : -std::numeric_limits<double>::infinity();
    };
    double a = lo, b2 = hi;
    double x1 = b2 - phi * (b2 - a), x2 = a + phi * (b2 - a);
    double f1 = score(x1), f2 = score(x2);
    while (b2 - a > 1e-9) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (b2 - a);
        f2 = score(x2);
      } else {
        b2 = x2;
        x2 = x1;
        f2 = f1;
        x1 = b2 - phi * (b2 - a);
        f1 = score(x1);
      }
    }
  }
  if (taus.size() == 1) {
    double beta = std::min(0.25, diam_B / sup_diam);
    double lg = std::log(taus[0] * beta);
    if (lg > 0) {
      double cp = d - 1 / lg;
      if (cp > 0 && cp < d) consider(eval(cp));
    }
  }
  if (!best) throw Error("NoFeasibleC", "feasibility fails for every c");
  return *best;
}

PatternCapacity pattern_capacity(double tau, double diam_B, double diam_C,
                                 int d) {
  if (d < 1) throw Error("OutOfRange", "d must be >= 1");
  if (!(tau > 0) || !(diam_B > 0) || !(diam_C > 0))
    throw Error("OutOfRange", "tau and diameters must be positive");
  PatternCapacity out;
  out.d = d;
  out.tau = tau;
  out.beta = std::min(0.25, 15 * diam_B / (16 * diam_C));
  if (tau <= 1) return out;  // no guarantee at this thickness
  Constants k = constants(d);
  out.raw = std::pow(out.beta, double(d)) * std::abs(std::log(out.beta)) *
            std::pow(tau, double(d)) /
            (std::exp(1.0) * k.K2 * std::log(tau));
  out.N = (long long)std::floor(out.raw);
  out.pre_asymptotic = tau < std::exp(1.0);
  return out;
}

double dim_lower_1d(double tau) {
  if (!(tau > 0)) throw Error("OutOfRange", "tau must be positive");
  return std::log(2.0) / std::log(2 + 1 / tau);
}

double convex_gap_dim_bound(double tau, int d) {
  if (d < 2) throw Error("OutOfRange", "d must be >= 2");
  return d - 1 + dim_lower_1d(tau);
}

DimensionBound single_set_bound(double tau, double diam_B, double diam_C,
                                int d, double c) {
  auto out = intersection_bound({tau}, diam_C, diam_B, d, c);
  out.kind = BoundKind::SingleSet;
  return out;
}

}  // namespace thickset
