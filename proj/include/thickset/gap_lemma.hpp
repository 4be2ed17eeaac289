#ifndef THICKSET_GAP_LEMMA_HPP
#define THICKSET_GAP_LEMMA_HPP

#include "thickset/thickness.hpp"

namespace thickset {

// The unbounded complementary region of a hull, as an open set.
struct Exterior {
  Shape hull;
};
using Region = std::variant<Shape, Exterior>;

enum class LinkTag { Disjoint, Linked, NotLinked };

struct LinkVerdict {
  LinkTag tag = LinkTag::Disjoint;
  std::vector<Point> witnesses;       // boundary points outside the other set
  bool resolution_limited = false;    // cell-union fallback was used
};

// Linkedness of two open regions: nonempty intersection and neither boundary
// swallowed by the other region.
LinkVerdict linked(const Region& u, const Region& v);

// True iff a sits inside a single gap of b or outside b's hull entirely.
bool containment_in_gap(const SetDescriptor& a, const SetDescriptor& b,
                        int depth = 8);

enum class GapLemmaTag { IntersectGuaranteed, HypothesisFails, TriviallyIntersect };
enum class FailReason { None, ContainmentInGap, ProductAtMostOne, ThicknessUnknown };

struct GapLemmaVerdict {
  GapLemmaTag tag = GapLemmaTag::HypothesisFails;
  FailReason which = FailReason::None;
  double tau_product = 0;  // product of certified lower bounds
  std::string detail;
};

// Never claims disjointness; inconclusive cases come back as HypothesisFails.
GapLemmaVerdict gap_lemma_decide(const SetDescriptor& c1,
                                 const SetDescriptor& c2, int depth = 6);

struct RefineResult {
  Point point;
  int iterations = 0;
  double dist1 = 0, dist2 = 0;  // certified offsets to the two sets
};

// Walks linked gap pairs until a common point (or an eps-close one) appears.
RefineResult linked_refine(const SetDescriptor& c1, const SetDescriptor& c2,
                           double eps, int max_iter = 10000);

}  // namespace thickset

#endif
