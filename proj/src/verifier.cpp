#include "thickset/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace thickset {

namespace {

Box bounding_box(const Shape& s) {
  if (const auto* b = std::get_if<Box>(&s)) return *b;
  if (const auto* bl = std::get_if<Ball>(&s)) {
    Box out;
    out.lower.resize(bl->center.size());
    out.upper.resize(bl->center.size());
    for (size_t i = 0; i < bl->center.size(); ++i) {
      out.lower[i] = bl->center[i] - bl->radius;
      out.upper[i] = bl->center[i] + bl->radius;
    }
    return out;
  }
  const auto& cu = std::get<CellUnion>(s);
  Box out = cu.cells.front();
  for (const Box& c : cu.cells)
    for (size_t i = 0; i < out.lower.size(); ++i) {
      if (c.lower[i] < out.lower[i]) out.lower[i] = c.lower[i];
      if (c.upper[i] > out.upper[i]) out.upper[i] = c.upper[i];
    }
  return out;
}

// Exact squared distance from the closed box to the ball center.
Rat box_ball_dist2(const Box& cell, const Ball& b) {
  Rat s = 0;
  for (size_t i = 0; i < b.center.size(); ++i) {
    Rat x = b.center[i];
    if (x < cell.lower[i]) x = cell.lower[i] - x;
    else if (x > cell.upper[i]) x = x - cell.upper[i];
    else continue;
    s += x * x;
  }
  return s;
}

bool boxes_overlap_strict(const Box& cell, const Box& g) {
  for (size_t i = 0; i < g.lower.size(); ++i)
    if (!(cell.lower[i] < g.upper[i] && cell.upper[i] > g.lower[i]))
      return false;
  return true;
}

// The closed cell meets the open gap.
bool cell_meets_open(const Box& cell, const Shape& gap) {
  if (const auto* g = std::get_if<Box>(&gap)) {
    for (size_t i = 0; i < g->lower.size(); ++i)
      if (!(g->lower[i] < g->upper[i])) return false;  // empty interior
    return boxes_overlap_strict(cell, *g);
  }
  if (const auto* b = std::get_if<Ball>(&gap))
    return box_ball_dist2(cell, *b) < b->radius * b->radius;
  const auto& cu = std::get<CellUnion>(gap);
  for (const Box& c : cu.cells)
    if (boxes_overlap_strict(cell, c)) return true;
  return false;
}

// The open cell is contained in the open gap.  Conservative for cell
// unions (covering by several pieces jointly is not detected).
bool cell_inside_open(const Box& cell, const Shape& gap) {
  if (const auto* g = std::get_if<Box>(&gap)) {
    for (size_t i = 0; i < g->lower.size(); ++i)
      if (!(cell.lower[i] >= g->lower[i] && cell.upper[i] <= g->upper[i]))
        return false;
    return true;
  }
  if (const auto* b = std::get_if<Ball>(&gap)) {
    Rat r2 = b->radius * b->radius;
    for (const Point& c : box_corners(cell))
      if (!(dist2(c, b->center) <= r2)) return false;
    return true;
  }
  const auto& cu = std::get<CellUnion>(gap);
  for (const Box& c : cu.cells)
    if (cell_inside_open(cell, Shape{c})) return true;
  return false;
}

// The open cell meets the closed hull.
bool cell_meets_hull(const Box& cell, const Shape& hull) {
  if (const auto* h = std::get_if<Box>(&hull)) {
    for (size_t i = 0; i < h->lower.size(); ++i)
      if (cell.lower[i] >= h->upper[i] || cell.upper[i] <= h->lower[i])
        return false;
    return true;
  }
  if (const auto* b = std::get_if<Ball>(&hull))
    return box_ball_dist2(cell, *b) < b->radius * b->radius;
  const auto& cu = std::get<CellUnion>(hull);
  for (const Box& c : cu.cells)
    if (cell_meets_hull(cell, Shape{c})) return true;
  return false;
}

struct Raster {
  const GapEnumeration* en = nullptr;
  std::vector<long long> bases;
  int target = 0;
  std::size_t budget = 0;
  std::size_t nodes = 0;
  int cert_depth = 0;
  CellGrid* store = nullptr;  // null => counting only
  long long may = 0, inside = 0;

  std::vector<long long> idx;  // current per-axis index, valid at each level

  void bump() {
    if (++nodes > budget)
      throw Error("BudgetExceeded",
                  "rasterization exceeded the node budget of " +
                      std::to_string(budget));
  }

  void recurse(const Box& cell, int level, const std::vector<uint32_t>& alive,
               bool hull_in) {
    bump();
    if (!hull_in) {
      if (!cell_meets_hull(cell, en->hull)) return;
      hull_in = shape_inside_convex(Shape{cell}, en->hull);
    }
    for (uint32_t gi : alive)
      if (cell_inside_open(cell, en->gaps[gi].shape)) return;
    if (level == target) {
      ++may;
      bool cert = hull_in;
      for (uint32_t gi : alive)
        if (en->gaps[gi].generation <= cert_depth) {
          cert = false;
          break;
        }
      if (cert) ++inside;
      if (store)
        store->cells.emplace_back(
            idx, cert ? CellKind::CertifiedInside : CellKind::MayIntersect);
      return;
    }
    if (!store && hull_in && alive.empty()) {
      // fully certified subtree: count leaves in closed form
      long long leaves = 1;
      for (size_t i = 0; i < bases.size(); ++i)
        for (int l = level; l < target; ++l) leaves *= bases[i];
      may += leaves;
      inside += leaves;
      return;
    }
    const size_t d = bases.size();
    std::vector<long long> child(d, 0);
    std::vector<long long> saved = idx;
    Box cb;
    cb.lower.resize(d);
    cb.upper.resize(d);
    std::vector<uint32_t> child_alive;
    for (;;) {
      for (size_t i = 0; i < d; ++i) {
        Rat w = (cell.upper[i] - cell.lower[i]) / bases[i];
        cb.lower[i] = cell.lower[i] + w * child[i];
        cb.upper[i] = cell.lower[i] + w * (child[i] + 1);
        idx[i] = saved[i] * bases[i] + child[i];
      }
      child_alive.clear();
      for (uint32_t gi : alive)
        if (cell_meets_open(cb, en->gaps[gi].shape)) child_alive.push_back(gi);
      recurse(cb, level + 1, child_alive, hull_in);
      size_t axis = d;
      while (axis > 0) {
        --axis;
        if (++child[axis] < bases[axis]) break;
        child[axis] = 0;
        if (axis == 0) {
          idx = saved;
          return;
        }
      }
    }
  }
};

struct RasterResult {
  long long may = 0, inside = 0;
};

// Integer specialization: when the domain, hull, and every gap are boxes, each
// axis is rescaled so cell boundaries at the target level are integers; gap
// and hull bounds are kept as floor/ceil pairs so every strict / non-strict
// comparison against a cell boundary stays exact.
struct IntRaster {
  struct IBounds {
    // per axis: lower/upper bound of the box, pre-rounded for each test
    std::vector<long long> lo_ceil, lo_floor1;  // ceil(lo), floor(lo)+1
    std::vector<long long> up_floor, up_ceil1;  // floor(up), ceil(up)-1
    int generation = 0;
  };
  std::vector<long long> bases;
  int target = 0, cert_depth = 0;
  std::size_t budget = 0, nodes = 0;
  CellGrid* store = nullptr;
  long long may = 0, inside = 0;
  IBounds hull;
  std::vector<IBounds> gaps;
  std::vector<long long> idx;

  // open cell (l,u) meets the open box: strict overlap per axis
  bool meets(const IBounds& g, const std::vector<long long>& lo,
             const std::vector<long long>& up) const {
    for (size_t i = 0; i < lo.size(); ++i)
      if (lo[i] > g.up_ceil1[i] || up[i] < g.lo_floor1[i]) return false;
    return true;
  }
  bool inside_open(const IBounds& g, const std::vector<long long>& lo,
                   const std::vector<long long>& up) const {
    for (size_t i = 0; i < lo.size(); ++i)
      if (lo[i] < g.lo_ceil[i] || up[i] > g.up_floor[i]) return false;
    return true;
  }

  void recurse(std::vector<long long>& lo, std::vector<long long>& up,
               int level, const std::vector<uint32_t>& alive, bool hull_in) {
    if (++nodes > budget)
      throw Error("BudgetExceeded",
                  "rasterization exceeded the node budget of " +
                      std::to_string(budget));
    if (!hull_in) {
      if (!meets(hull, lo, up)) return;
      hull_in = inside_open(hull, lo, up);  // closed-in-closed coincides here
    }
    for (uint32_t gi : alive)
      if (inside_open(gaps[gi], lo, up)) return;
    if (level == target) {
      ++may;
      bool cert = hull_in;
      for (uint32_t gi : alive)
        if (gaps[gi].generation <= cert_depth) {
          cert = false;
          break;
        }
      if (cert) ++inside;
      if (store)
        store->cells.emplace_back(
            idx, cert ? CellKind::CertifiedInside : CellKind::MayIntersect);
      return;
    }
    if (!store && hull_in && alive.empty()) {
      long long leaves = 1;
      for (size_t i = 0; i < bases.size(); ++i)
        for (int l = level; l < target; ++l) leaves *= bases[i];
      may += leaves;
      inside += leaves;
      return;
    }
    const size_t d = bases.size();
    std::vector<long long> child(d, 0), saved = idx;
    std::vector<long long> clo(d), cup(d), w(d);
    for (size_t i = 0; i < d; ++i) w[i] = (up[i] - lo[i]) / bases[i];
    std::vector<uint32_t> child_alive;
    for (;;) {
      for (size_t i = 0; i < d; ++i) {
        clo[i] = lo[i] + w[i] * child[i];
        cup[i] = clo[i] + w[i];
        idx[i] = saved[i] * bases[i] + child[i];
      }
      child_alive.clear();
      for (uint32_t gi : alive)
        if (meets(gaps[gi], clo, cup)) child_alive.push_back(gi);
      recurse(clo, cup, level + 1, child_alive, hull_in);
      size_t axis = d;
      while (axis > 0) {
        --axis;
        if (++child[axis] < bases[axis]) break;
        child[axis] = 0;
        if (axis == 0) {
          idx = saved;
          return;
        }
      }
    }
  }
};

using boost::multiprecision::cpp_int;

long long i_floor(const Rat& q) {
  cpp_int f = numerator(q) / denominator(q);
  if (f * denominator(q) > numerator(q)) --f;  // toward -inf
  return f.convert_to<long long>();
}
long long i_ceil(const Rat& q) {
  cpp_int c = numerator(q) / denominator(q);
  if (c * denominator(q) < numerator(q)) ++c;
  return c.convert_to<long long>();
}

// Attempt the integer path; returns nothing when shapes or ranges rule it out.
std::optional<RasterResult> int_rasterize(const GapEnumeration& en,
                                          const Box& domain,
                                          const std::vector<long long>& bases,
                                          int level, int cert_depth,
                                          std::size_t budget, CellGrid* out) {
  const size_t d = bases.size();
  const Box* hull = std::get_if<Box>(&en.hull);
  if (!hull) return std::nullopt;
  for (const Gap& g : en.gaps)
    if (!std::holds_alternative<Box>(g.shape)) return std::nullopt;
  std::vector<Rat> scale(d), off(d);
  std::vector<long long> n(d);
  for (size_t i = 0; i < d; ++i) {
    Rat width = domain.upper[i] - domain.lower[i];
    if (!(width > 0)) return std::nullopt;
    Rat cells = 1;
    for (int l = 0; l < level; ++l) {
      cells *= bases[i];
      if (cells > Rat(1000000000)) return std::nullopt;  // int64 safety
    }
    n[i] = cells.convert_to<long long>();
    scale[i] = cells / width;
    off[i] = domain.lower[i];
  }
  auto fill = [&](const Box& b, int gen) {
    IntRaster::IBounds ib;
    ib.generation = gen;
    ib.lo_ceil.resize(d);
    ib.lo_floor1.resize(d);
    ib.up_floor.resize(d);
    ib.up_ceil1.resize(d);
    for (size_t i = 0; i < d; ++i) {
      Rat lo = (b.lower[i] - off[i]) * scale[i];
      Rat up = (b.upper[i] - off[i]) * scale[i];
      ib.lo_ceil[i] = i_ceil(lo);
      ib.lo_floor1[i] = i_floor(lo) + 1;
      ib.up_floor[i] = i_floor(up);
      ib.up_ceil1[i] = i_ceil(up) - 1;
    }
    return ib;
  };
  IntRaster r;
  r.bases = bases;
  r.target = level;
  r.cert_depth = cert_depth;
  r.budget = budget;
  r.store = out;
  r.hull = fill(*hull, 0);
  r.gaps.reserve(en.gaps.size());
  for (const Gap& g : en.gaps) r.gaps.push_back(fill(std::get<Box>(g.shape), g.generation));
  r.idx.assign(d, 0);
  std::vector<long long> lo(d, 0), up(d);
  for (size_t i = 0; i < d; ++i) up[i] = n[i];
  std::vector<uint32_t> alive;
  for (uint32_t i = 0; i < r.gaps.size(); ++i)
    if (r.meets(r.gaps[i], lo, up)) alive.push_back(i);
  r.recurse(lo, up, 0, alive, r.inside_open(r.hull, lo, up));
  return RasterResult{r.may, r.inside};
}

RasterResult rasterize_on(const SetDescriptor& spec, const Box& domain,
                          const std::vector<long long>& bases, int level,
                          int enum_depth, std::size_t budget, CellGrid* out) {
  if (level < 0) throw Error("BadLevel", "negative rasterization level");
  GapEnumeration en;
  try {
    en = enumerate_gaps(spec, std::max(enum_depth, 1), kDefaultGapCap);
  } catch (const Error& e) {
    if (e.kind == "DepthOverflow")
      throw Error("BudgetExceeded",
                  "gap enumeration at depth " + std::to_string(enum_depth) +
                      " exceeds the cap");
    throw;
  }
  RasterResult res;
  if (std::optional<RasterResult> fast =
          int_rasterize(en, domain, bases, level, level, budget, out)) {
    res = *fast;
  } else {
    Raster r;
    r.en = &en;
    r.bases = bases;
    r.target = level;
    r.cert_depth = level;
    r.budget = budget;
    r.store = out;
    r.idx.assign(bases.size(), 0);
    std::vector<uint32_t> alive;
    for (uint32_t i = 0; i < en.gaps.size(); ++i)
      if (cell_meets_open(domain, en.gaps[i].shape)) alive.push_back(i);
    r.recurse(domain, 0, alive, shape_inside_convex(Shape{domain}, en.hull));
    res = {r.may, r.inside};
  }
  if (out) {
    out->d = static_cast<int>(bases.size());
    out->level = level;
    out->bases = bases;
    out->domain = domain;
    out->may_count = res.may;
    out->inside_count = res.inside;
  }
  return res;
}

double pattern_diam(const std::vector<Point>& pattern) {
  double m = 0;
  for (size_t i = 0; i < pattern.size(); ++i)
    for (size_t j = i + 1; j < pattern.size(); ++j)
      m = std::max(m, std::sqrt(to_d(dist2(pattern[i], pattern[j]))));
  return m;
}

}  // namespace

Box CellGrid::cell_box(const std::vector<long long>& idx) const {
  Box out;
  out.lower.resize(idx.size());
  out.upper.resize(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    Rat n = 1;
    for (int l = 0; l < level; ++l) n *= bases[i];
    Rat w = (domain.upper[i] - domain.lower[i]) / n;
    out.lower[i] = domain.lower[i] + w * idx[i];
    out.upper[i] = domain.lower[i] + w * (idx[i] + 1);
  }
  return out;
}

Point CellGrid::cell_center(const std::vector<long long>& idx) const {
  return cell_box(idx).center();
}

std::vector<long long> natural_bases(const SetDescriptor& spec) {
  ResolvedSpec rs = resolve(spec);
  if (const auto* c = std::get_if<CentralCantor1D>(&rs.base->node)) {
    using boost::multiprecision::cpp_int;
    cpp_int den = denominator(c->keep_ratio);
    return {den.convert_to<long long>()};
  }
  if (const auto* s = std::get_if<SpongeSet>(&rs.base->node)) {
    std::vector<long long> out;
    for (int n : s->grid) out.push_back(n);
    return out;
  }
  return std::vector<long long>(static_cast<size_t>(spec_dim(spec)), 2);
}

CellGrid rasterize(const SetDescriptor& spec, int level, std::size_t budget) {
  CellGrid grid;
  rasterize_on(spec, bounding_box(spec_hull(spec)), natural_bases(spec), level,
               level, budget, &grid);
  return grid;
}

std::pair<long long, long long> rasterize_counts(const SetDescriptor& spec,
                                                 int level,
                                                 std::size_t budget) {
  RasterResult r = rasterize_on(spec, bounding_box(spec_hull(spec)),
                                natural_bases(spec), level, level, budget,
                                nullptr);
  return {r.may, r.inside};
}

IntersectVerdict brute_intersection(const std::vector<SetDescriptor>& specs,
                                    int level, std::size_t budget) {
  if (specs.empty()) throw Error("BadInput", "no sets to intersect");
  const int d = spec_dim(specs.front());
  for (const SetDescriptor& s : specs)
    if (spec_dim(s) != d)
      throw Error("DimensionMismatch", "sets of different ambient dimension");
  Box domain = bounding_box(spec_hull(specs.front()));
  for (const SetDescriptor& s : specs) {
    Box b = bounding_box(spec_hull(s));
    for (int i = 0; i < d; ++i) {
      if (b.lower[i] < domain.lower[i]) domain.lower[i] = b.lower[i];
      if (b.upper[i] > domain.upper[i]) domain.upper[i] = b.upper[i];
    }
  }
  std::vector<long long> bases = natural_bases(specs.front());

  CellGrid acc;
  rasterize_on(specs.front(), domain, bases, level, level, budget, &acc);
  // (index, running certified-in-all flag), sorted as produced
  std::vector<std::pair<std::vector<long long>, bool>> common;
  common.reserve(acc.cells.size());
  for (const auto& [idx, kind] : acc.cells)
    common.emplace_back(idx, kind == CellKind::CertifiedInside);
  for (size_t s = 1; s < specs.size(); ++s) {
    CellGrid g;
    rasterize_on(specs[s], domain, bases, level, level, budget, &g);
    std::vector<std::pair<std::vector<long long>, bool>> next;
    size_t i = 0, j = 0;
    while (i < common.size() && j < g.cells.size()) {
      if (common[i].first < g.cells[j].first) ++i;
      else if (g.cells[j].first < common[i].first) ++j;
      else {
        next.emplace_back(common[i].first,
                          common[i].second &&
                              g.cells[j].second == CellKind::CertifiedInside);
        ++i;
        ++j;
      }
    }
    common.swap(next);
    if (common.empty()) break;
  }

  IntersectVerdict v;
  v.common_cells = static_cast<long long>(common.size());
  if (common.empty()) {
    v.tag = IntersectTag::CertifiedDisjoint;
    return v;
  }
  for (const auto& [idx, all_inside] : common)
    if (all_inside) {
      v.tag = IntersectTag::NonemptyWitness;
      v.witness = acc.cell_center(idx);
      return v;
    }
  v.tag = IntersectTag::PossiblyEmpty;
  return v;
}

DimensionEstimate box_counting(const SetDescriptor& spec,
                               const std::vector<int>& levels,
                               std::size_t budget) {
  std::vector<int> lv = levels;
  std::sort(lv.begin(), lv.end());
  lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
  if (lv.size() < 4)
    throw Error("DegenerateRange", "need at least 4 distinct levels");
  if (lv.front() < 1)
    throw Error("DegenerateRange", "levels must be positive");
  std::vector<long long> bases = natural_bases(spec);
  for (long long b : bases)
    if (b != bases.front())
      throw Error("DegenerateRange",
                  "anisotropic subdivision has no single scale per level");
  const double logb = std::log(static_cast<double>(bases.front()));

  DimensionEstimate est;
  Box domain = bounding_box(spec_hull(spec));
  for (int k : lv) {
    Rat min_w = domain.upper[0] - domain.lower[0];
    for (size_t i = 0; i < bases.size(); ++i) {
      Rat n = 1;
      for (int l = 0; l < k; ++l) n *= bases[i];
      Rat w = (domain.upper[i] - domain.lower[i]) / n;
      if (w < min_w) min_w = w;
    }
    if (!(min_w > 0)) throw Error("DegenerateRange", "degenerate hull");
    // counts track the limit set: enumerate gaps until every unseen gap is
    // smaller than one grid cell (or the cap stops us, which only inflates
    // the outer count)
    int D = k;
    while (D < 8 * k + 64) {
      GapEnumeration probe;
      try {
        probe = enumerate_gaps(spec, D, kDefaultGapCap);
      } catch (const Error& e) {
        if (e.kind == "DepthOverflow") { --D; break; }
        throw;
      }
      if (probe.tail_bound < to_d(min_w)) break;
      ++D;
    }
    D = std::max(D, k);
    RasterResult rr = rasterize_on(spec, domain, bases, k, D, budget, nullptr);
    long long may = rr.may;
    est.log_inv_scale.push_back(k * logb);
    est.log_count.push_back(std::log(static_cast<double>(may)));
  }
  const size_t m = lv.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += est.log_inv_scale[i];
    sy += est.log_count[i];
    sxx += est.log_inv_scale[i] * est.log_inv_scale[i];
    sxy += est.log_inv_scale[i] * est.log_count[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom <= 0) throw Error("DegenerateRange", "collinear scales");
  est.slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - est.slope * sx) / m;
  for (size_t i = 0; i < m; ++i)
    est.residual =
        std::max(est.residual, std::abs(est.log_count[i] -
                                        (intercept +
                                         est.slope * est.log_inv_scale[i])));
  est.note = "least-squares over " + std::to_string(m) +
             " levels, base " + std::to_string(bases.front()) +
             "; max log-residual " + std::to_string(est.residual);
  return est;
}

std::vector<Point> pattern_search(const SetDescriptor& C,
                                  const std::vector<Point>& pattern,
                                  const Rat& lambda, int level,
                                  bool theorem_mode, std::size_t budget) {
  if (pattern.empty()) throw Error("BadInput", "empty pattern");
  if (!(lambda > 0)) throw Error("BadInput", "scale must be positive");
  const int d = spec_dim(C);
  for (const Point& a : pattern)
    if (static_cast<int>(a.size()) != d)
      throw Error("DimensionMismatch", "pattern point of wrong dimension");
  if (theorem_mode) {
    const double da = pattern_diam(pattern);
    if (da > 0 && !(to_d(lambda) * 16 * da < spec_diam(C)))
      throw Error("ScaleTooLarge",
                  "theorem mode needs lambda * diam(pattern) < diam(set)/16");
  }

  std::vector<SetDescriptor> translated;
  translated.reserve(pattern.size());
  for (const Point& a : pattern) {
    Point off(a.size());
    for (size_t i = 0; i < a.size(); ++i) off[i] = -lambda * a[i];
    translated.push_back(apply_homothety(C, 1, off));
  }

  // shared grid over the union of the translated hulls
  Box domain = bounding_box(spec_hull(translated.front()));
  for (const SetDescriptor& s : translated) {
    Box b = bounding_box(spec_hull(s));
    for (int i = 0; i < d; ++i) {
      if (b.lower[i] < domain.lower[i]) domain.lower[i] = b.lower[i];
      if (b.upper[i] > domain.upper[i]) domain.upper[i] = b.upper[i];
    }
  }
  std::vector<long long> bases = natural_bases(C);

  std::vector<std::pair<std::vector<long long>, bool>> common;
  CellGrid geom;
  for (size_t s = 0; s < translated.size(); ++s) {
    CellGrid g;
    rasterize_on(translated[s], domain, bases, level, level, budget, &g);
    if (s == 0) {
      geom = g;
      common.reserve(g.cells.size());
      for (const auto& [idx, kind] : g.cells)
        if (kind == CellKind::CertifiedInside) common.emplace_back(idx, true);
    } else {
      std::vector<std::pair<std::vector<long long>, bool>> next;
      size_t i = 0, j = 0;
      while (i < common.size() && j < g.cells.size()) {
        if (common[i].first < g.cells[j].first) ++i;
        else if (g.cells[j].first < common[i].first) ++j;
        else {
          if (g.cells[j].second == CellKind::CertifiedInside)
            next.push_back(common[i]);
          ++i;
          ++j;
        }
      }
      common.swap(next);
    }
    if (common.empty()) break;
  }

  std::vector<Point> witnesses;
  for (const auto& [idx, flag] : common) {
    (void)flag;
    Point x = geom.cell_center(idx);
    bool ok = true;
    for (const Point& a : pattern) {
      Point y(x.size());
      for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] + lambda * a[i];
      if (!member_to_depth(C, y, level)) {
        ok = false;
        break;
      }
    }
    if (ok) witnesses.push_back(std::move(x));
  }
  if (witnesses.empty())
    throw Error("EmptyAtThisDepth",
                "no certified translate at depth " + std::to_string(level) +
                    " (not a disproof)");
  return witnesses;
}

}  // namespace thickset
