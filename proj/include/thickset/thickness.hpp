#ifndef THICKSET_THICKNESS_HPP
#define THICKSET_THICKNESS_HPP

#include <limits>

#include "thickset/set_model.hpp"

namespace thickset {

struct RatioEntry {
  size_t gap_index = 0;
  double dist = 0;   // dist(G_n, earlier gaps + E)
  double diam = 0;
  double ratio = 0;
};

enum class Truncation { Exact, Truncated };

struct ThicknessReport {
  double value = 0;  // certified value (may be +inf)
  std::vector<RatioEntry> ratios;
  std::optional<size_t> argmin;
  Truncation truncation = Truncation::Exact;
  int depth = 0;
  double upper = std::numeric_limits<double>::infinity();  // min materialized ratio
  double certified_lower = 0;
  std::string note;
};

// Definition-style thickness on the real line (interval splitting).
ThicknessReport thickness_1d(const GapEnumeration& en);

// Thickness in R^d via pairwise gap distances and distance to E.
ThicknessReport thickness_rd(const GapEnumeration& en);

// Closed-form sponge thickness: inf_k dist_k/diam_k with
// dist_k = min_i (n_i-1)/(2 n_i^k), diam_k = sqrt(sum_i n_i^(-2k)).
struct SpongeThickness {
  double value = 0;
  bool attained = false;   // infimum attained at a finite generation
  int argmin_generation = 0;  // meaningful when attained
  std::vector<double> generation_ratios;
};
SpongeThickness sponge_thickness_closed_form(const std::vector<int>& grid,
                                             int probe_generations = 64);

// Per-generation ratio of the sponge family, dist_k/diam_k.
double sponge_generation_ratio(const std::vector<int>& grid, int k);
// min over generations 1..depth; the truncated upper bound without
// materializing the enumeration.
double sponge_truncated_thickness(const std::vector<int>& grid, int depth);

// a/(1-2a) for the two-end-piece central family.
double central_cantor_thickness(const Rat& keep_ratio);
Rat central_cantor_thickness_exact(const Rat& keep_ratio);

struct Line {
  std::vector<double> point;
  std::vector<double> direction;  // need not be unit
};

// Induced 1-d enumeration of a convex-hull, convex-gap descriptor on a line.
// The section lives on the arc-length parameter of the line.
GapEnumeration line_section(const SetDescriptor& spec, const Line& line,
                            int depth);

}  // namespace thickset

#endif
