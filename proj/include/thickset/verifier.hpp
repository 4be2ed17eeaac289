#ifndef THICKSET_VERIFIER_HPP
#define THICKSET_VERIFIER_HPP

#include <string>

#include "thickset/set_model.hpp"

namespace thickset {

// Two-sided rasterization: CertifiedInside cells are contained in the set at
// the rasterization depth; MayIntersect cells form a superset of the truth.
enum class CellKind { CertifiedInside, MayIntersect };

struct CellGrid {
  int d = 1;
  int level = 0;
  std::vector<long long> bases;  // cells per axis = bases[i]^level
  Box domain;                    // subdivided uniformly per axis
  // occupied cells only, lexicographically sorted indices
  std::vector<std::pair<std::vector<long long>, CellKind>> cells;
  long long may_count = 0;     // all occupied cells
  long long inside_count = 0;  // the certified subset

  Box cell_box(const std::vector<long long>& idx) const;
  Point cell_center(const std::vector<long long>& idx) const;
};

// The subdivision base the family's digit structure aligns with: the keep
// denominator for Cantor sets, the grid for sponges, 2 otherwise.
std::vector<long long> natural_bases(const SetDescriptor& spec);

CellGrid rasterize(const SetDescriptor& spec, int level,
                   std::size_t budget = 5000000);

// Counting-only variant (no cell storage): (MayIntersect, CertifiedInside).
std::pair<long long, long long> rasterize_counts(const SetDescriptor& spec,
                                                 int level,
                                                 std::size_t budget = 5000000);

enum class IntersectTag { NonemptyWitness, PossiblyEmpty, CertifiedDisjoint };

struct IntersectVerdict {
  IntersectTag tag = IntersectTag::PossiblyEmpty;
  std::optional<Point> witness;  // a common certified cell's center
  long long common_cells = 0;    // cells where every outer cover overlaps
};

IntersectVerdict brute_intersection(const std::vector<SetDescriptor>& specs,
                                    int level, std::size_t budget = 5000000);

struct DimensionEstimate {
  double slope = 0;
  std::vector<double> log_inv_scale;  // one per level used
  std::vector<double> log_count;
  double residual = 0;  // max absolute deviation from the fit
  std::string note;
};

// Least-squares slope of log(count) against log(1/scale) over >= 4 levels.
DimensionEstimate box_counting(const SetDescriptor& spec,
                               const std::vector<int>& levels,
                               std::size_t budget = 5000000);

// Translates x (cell centers) with x + lambda * a certified inside the set
// at the given depth for every a in the pattern; each witness re-verified by
// an independent pointwise membership test.
std::vector<Point> pattern_search(const SetDescriptor& C,
                                  const std::vector<Point>& pattern,
                                  const Rat& lambda, int level,
                                  bool theorem_mode = false,
                                  std::size_t budget = 5000000);

}  // namespace thickset

#endif
