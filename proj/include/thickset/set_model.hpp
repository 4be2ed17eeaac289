#ifndef THICKSET_SET_MODEL_HPP
#define THICKSET_SET_MODEL_HPP

#include <memory>
#include <optional>
#include <string>

#include "thickset/geometry.hpp"

namespace thickset {

constexpr int kUnboundedDepth = -1;
constexpr size_t kDefaultGapCap = 1000000;

// A bounded open complementary component, with provenance for reproducible
// tie-breaking (generation, then cell index within the generation).
struct Gap {
  Shape shape;
  size_t index = 0;       // position after diameter sort
  int generation = 1;     // 1-based for generative families, 0 for explicit
  size_t cell_id = 0;     // lexicographic id within the generation
  double diam = 0;        // cached
  Rat diam2;              // exact squared diameter
};

struct ExplicitSet {
  int dimension = 1;
  Shape hull;             // Box or Ball
  std::vector<Gap> gaps;  // stored in input order; enumerate_gaps sorts
};

// Each interval keeps two end pieces of relative length keep_ratio in (0,1/2).
struct CentralCantor1D {
  Rat a, b;
  Rat keep_ratio;
  int depth = kUnboundedDepth;
};

struct SpongeSet {
  std::vector<int> grid;  // odd, >= 3
  int depth = kUnboundedDepth;
};

struct SetDescriptor;
using DescriptorPtr = std::shared_ptr<const SetDescriptor>;

struct TranslateSet {
  DescriptorPtr inner;
  Point offset;
};

struct ScaleSet {
  DescriptorPtr inner;
  Rat factor;  // > 0
};

struct SetDescriptor {
  std::variant<ExplicitSet, CentralCantor1D, SpongeSet, TranslateSet, ScaleSet>
      node;
};

SetDescriptor make_central_cantor(const Rat& a, const Rat& b,
                                  const Rat& keep_ratio,
                                  int depth = kUnboundedDepth);
SetDescriptor make_sponge(std::vector<int> grid, int depth = kUnboundedDepth);
SetDescriptor make_explicit(int dimension, Shape hull, std::vector<Gap> gaps);
SetDescriptor apply_homothety(const SetDescriptor& spec, const Rat& factor,
                              const Point& offset);

// Affine resolution of Translate/Scale wrappers: x -> factor*x + offset
// applied to the base descriptor.
struct ResolvedSpec {
  const SetDescriptor* base = nullptr;
  Rat factor = 1;
  Point offset;  // sized on resolve
  DescriptorPtr keepalive;
  int dim() const;
  Point map(const Point& p) const;
  Shape map(const Shape& s) const;
};
ResolvedSpec resolve(const SetDescriptor& spec);

int spec_dim(const SetDescriptor& spec);
Shape spec_hull(const SetDescriptor& spec);
double spec_diam(const SetDescriptor& spec);

struct GapEnumeration {
  DescriptorPtr source;  // owning copy; null for self-contained enumerations
  int depth = 0;
  std::vector<Gap> gaps;   // non-increasing diameter, stable ties
  double tail_bound = 0;   // upper bound on any unenumerated gap diameter
  int dimension = 1;
  Shape hull;
  bool hull_degenerate = false;  // single-point hull
};

GapEnumeration enumerate_gaps(const SetDescriptor& spec, int depth,
                              size_t gap_cap = kDefaultGapCap);

double gap_distance(const Gap& g1, const Gap& g2);
double distance_to_external(const Gap& g, const SetDescriptor& spec);
double distance_to_external(const Shape& g, const Shape& hull);

// Point-location against the generative structure, without materializing the
// full enumeration: the open gap containing p (if any, descending at most
// max_generation levels), together with its separation
// dist(G, earlier gaps + E).
struct LocatedGap {
  Gap gap;
  double separation = 0;
};
std::optional<LocatedGap> locate_gap(const SetDescriptor& spec, const Point& p,
                                     int max_generation);

// Membership certified against the depth-limited approximation: true means p
// lies in no gap of generation <= depth and inside the hull.
bool member_to_depth(const SetDescriptor& spec, const Point& p, int depth);

// JSON descriptor files ("schema": 1).
SetDescriptor load_descriptor(const std::string& path);
SetDescriptor parse_descriptor(const std::string& json_text);
std::string descriptor_to_json(const SetDescriptor& spec);

}  // namespace thickset

#endif
