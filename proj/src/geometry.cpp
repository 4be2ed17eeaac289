#include "thickset/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace thickset {

namespace {

double rsqrt_of(const Rat& sq) { return std::sqrt(to_d(sq)); }

// Per-axis separation of two closed intervals, zero when they overlap.
Rat axis_gap(const Rat& lo1, const Rat& hi1, const Rat& lo2, const Rat& hi2) {
  if (lo2 > hi1) return lo2 - hi1;
  if (lo1 > hi2) return lo1 - hi2;
  return 0;
}

Rat box_box_dist2(const Box& a, const Box& b) {
  Rat s = 0;
  for (int i = 0; i < a.dim(); ++i) {
    Rat g = axis_gap(a.lower[i], a.upper[i], b.lower[i], b.upper[i]);
    s += g * g;
  }
  return s;
}

Rat point_box_dist2(const Point& p, const Box& b) {
  Rat s = 0;
  for (int i = 0; i < b.dim(); ++i) {
    Rat g = 0;
    if (p[i] < b.lower[i]) g = b.lower[i] - p[i];
    else if (p[i] > b.upper[i]) g = p[i] - b.upper[i];
    s += g * g;
  }
  return s;
}

}  // namespace

int shape_dim(const Shape& s) {
  return std::visit([](const auto& x) { return x.dim(); }, s);
}

Rat shape_diam2(const Shape& s) {
  if (const auto* b = std::get_if<Box>(&s)) return b->diam2();
  if (const auto* b = std::get_if<Ball>(&s)) {
    Rat d = b->diam_exact();
    return d * d;
  }
  const auto& cu = std::get<CellUnion>(s);
  // Diameter of a finite box union: attained at a pair of corners.
  Rat best = 0;
  std::vector<Point> pts;
  for (const auto& c : cu.cells)
    for (auto& p : box_corners(c)) pts.push_back(std::move(p));
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, dist2(pts[i], pts[j]));
  return best;
}

double shape_diam(const Shape& s) { return rsqrt_of(shape_diam2(s)); }

Point shape_center(const Shape& s) {
  if (const auto* b = std::get_if<Box>(&s)) return b->center();
  if (const auto* b = std::get_if<Ball>(&s)) return b->center;
  const auto& cu = std::get<CellUnion>(s);
  Point lo = cu.cells.front().lower, hi = cu.cells.front().upper;
  for (const auto& c : cu.cells)
    for (size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], c.lower[i]);
      hi[i] = std::max(hi[i], c.upper[i]);
    }
  Point out(lo.size());
  for (size_t i = 0; i < lo.size(); ++i) out[i] = (lo[i] + hi[i]) / 2;
  return out;
}

std::vector<Point> box_corners(const Box& b) {
  int d = b.dim();
  std::vector<Point> out;
  out.reserve(size_t(1) << d);
  for (size_t mask = 0; mask < (size_t(1) << d); ++mask) {
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = (mask >> i & 1) ? b.upper[i] : b.lower[i];
    out.push_back(std::move(p));
  }
  return out;
}

double point_box_distance(const Point& p, const Box& b) {
  return rsqrt_of(point_box_dist2(p, b));
}

double point_shape_distance(const Point& p, const Shape& s) {
  if (const auto* b = std::get_if<Box>(&s)) return point_box_distance(p, *b);
  if (const auto* b = std::get_if<Ball>(&s))
    return std::max(0.0, rsqrt_of(dist2(p, b->center)) - to_d(b->radius));
  const auto& cu = std::get<CellUnion>(s);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cu.cells) best = std::min(best, point_box_distance(p, c));
  return best;
}

std::optional<Rat> shape_distance2_exact(const Shape& a, const Shape& b) {
  auto boxes_of = [](const Shape& s) -> std::optional<std::vector<Box>> {
    if (const auto* bx = std::get_if<Box>(&s)) return std::vector<Box>{*bx};
    if (const auto* cu = std::get_if<CellUnion>(&s)) return cu->cells;
    return std::nullopt;
  };
  auto ba = boxes_of(a), bb = boxes_of(b);
  if (!ba || !bb) return std::nullopt;
  std::optional<Rat> best;
  for (const auto& x : *ba)
    for (const auto& y : *bb) {
      Rat d2 = box_box_dist2(x, y);
      if (!best || d2 < *best) best = d2;
    }
  return best;
}

double shape_distance(const Shape& a, const Shape& b) {
  if (auto ex = shape_distance2_exact(a, b)) return rsqrt_of(*ex);
  const auto* ba = std::get_if<Ball>(&a);
  const auto* bb = std::get_if<Ball>(&b);
  if (ba && bb)
    return std::max(0.0, rsqrt_of(dist2(ba->center, bb->center)) -
                             to_d(ba->radius + bb->radius));
  // Ball vs box-like: distance from the ball center minus its radius.
  const Ball* ball = ba ? ba : bb;
  const Shape& other = ba ? b : a;
  double dc;
  if (const auto* bx = std::get_if<Box>(&other)) {
    dc = point_box_distance(ball->center, *bx);
  } else {
    const auto& cu = std::get<CellUnion>(other);
    dc = std::numeric_limits<double>::infinity();
    for (const auto& c : cu.cells)
      dc = std::min(dc, point_box_distance(ball->center, c));
  }
  return std::max(0.0, dc - to_d(ball->radius));
}

bool shape_contains_point(const Shape& s, const Point& p) {
  if (const auto* b = std::get_if<Box>(&s)) return b->contains(p);
  if (const auto* b = std::get_if<Ball>(&s))
    return dist2(p, b->center) <= b->radius * b->radius;
  const auto& cu = std::get<CellUnion>(s);
  return std::any_of(cu.cells.begin(), cu.cells.end(),
                     [&](const Box& c) { return c.contains(p); });
}

bool shape_contains_point_open(const Shape& s, const Point& p) {
  if (const auto* b = std::get_if<Box>(&s)) return b->contains_open(p);
  if (const auto* b = std::get_if<Ball>(&s))
    return dist2(p, b->center) < b->radius * b->radius;
  // Open cell union: interior of the union; a point on a shared face of two
  // cells is interior, so test closed membership of a whole neighborhood is
  // overkill here -- closed membership in some cell while not on the outer
  // boundary. Conservative: open in at least one cell, or closed in two cells.
  const auto& cu = std::get<CellUnion>(s);
  int closed_hits = 0;
  for (const auto& c : cu.cells) {
    if (c.contains_open(p)) return true;
    if (c.contains(p)) ++closed_hits;
  }
  return closed_hits >= 2;
}

bool shape_inside_convex(const Shape& inner, const Shape& outer) {
  if (const auto* ob = std::get_if<Box>(&outer)) {
    if (const auto* ib = std::get_if<Box>(&inner)) {
      for (int i = 0; i < ib->dim(); ++i)
        if (ib->lower[i] < ob->lower[i] || ib->upper[i] > ob->upper[i])
          return false;
      return true;
    }
    if (const auto* ib = std::get_if<Ball>(&inner)) {
      for (int i = 0; i < ib->dim(); ++i)
        if (ib->center[i] - ib->radius < ob->lower[i] ||
            ib->center[i] + ib->radius > ob->upper[i])
          return false;
      return true;
    }
    const auto& cu = std::get<CellUnion>(inner);
    return std::all_of(cu.cells.begin(), cu.cells.end(), [&](const Box& c) {
      return shape_inside_convex(Shape{c}, outer);
    });
  }
  const auto& ob = std::get<Ball>(outer);
  if (const auto* ib = std::get_if<Ball>(&inner)) {
    if (ib->radius > ob.radius) return false;
    Rat slack = ob.radius - ib->radius;
    return dist2(ib->center, ob.center) <= slack * slack;
  }
  auto all_corners_in = [&](const Box& c) {
    for (const auto& p : box_corners(c))
      if (dist2(p, ob.center) > ob.radius * ob.radius) return false;
    return true;
  };
  if (const auto* ib = std::get_if<Box>(&inner)) return all_corners_in(*ib);
  const auto& cu = std::get<CellUnion>(inner);
  return std::all_of(cu.cells.begin(), cu.cells.end(), all_corners_in);
}

bool shape_inside_open(const Shape& inner, const Shape& outer) {
  if (const auto* ob = std::get_if<Box>(&outer)) {
    if (const auto* ib = std::get_if<Box>(&inner)) {
      for (int i = 0; i < ib->dim(); ++i)
        if (ib->lower[i] <= ob->lower[i] || ib->upper[i] >= ob->upper[i])
          return false;
      return true;
    }
    if (const auto* ib = std::get_if<Ball>(&inner)) {
      for (int i = 0; i < ib->dim(); ++i)
        if (ib->center[i] - ib->radius <= ob->lower[i] ||
            ib->center[i] + ib->radius >= ob->upper[i])
          return false;
      return true;
    }
    const auto& cu = std::get<CellUnion>(inner);
    return std::all_of(cu.cells.begin(), cu.cells.end(), [&](const Box& c) {
      return shape_inside_open(Shape{c}, outer);
    });
  }
  const auto& ob = std::get<Ball>(outer);
  if (const auto* ib = std::get_if<Ball>(&inner)) {
    if (ib->radius >= ob.radius) return false;
    Rat slack = ob.radius - ib->radius;
    return dist2(ib->center, ob.center) < slack * slack;
  }
  auto all_corners_strict = [&](const Box& c) {
    for (const auto& p : box_corners(c))
      if (dist2(p, ob.center) >= ob.radius * ob.radius) return false;
    return true;
  };
  if (const auto* ib = std::get_if<Box>(&inner)) return all_corners_strict(*ib);
  const auto& cu = std::get<CellUnion>(inner);
  return std::all_of(cu.cells.begin(), cu.cells.end(), all_corners_strict);
}

bool shapes_overlap_open(const Shape& a, const Shape& b) {
  const auto* xa = std::get_if<Ball>(&a);
  const auto* xb = std::get_if<Ball>(&b);
  if (xa && xb) {
    Rat rs = xa->radius + xb->radius;
    return dist2(xa->center, xb->center) < rs * rs;
  }
  if (!xa && !xb) {
    if (auto d2 = shape_distance2_exact(a, b); d2 && *d2 > 0) return false;
    // Boxes touch or overlap; open overlap requires a shared interior point:
    // every axis interval must overlap with positive length.
    auto boxes_of = [](const Shape& s) {
      if (const auto* bx = std::get_if<Box>(&s)) return std::vector<Box>{*bx};
      return std::get<CellUnion>(s).cells;
    };
    for (const auto& x : boxes_of(a))
      for (const auto& y : boxes_of(b)) {
        bool ok = true;
        for (int i = 0; i < x.dim(); ++i)
          if (std::min(x.upper[i], y.upper[i]) <=
              std::max(x.lower[i], y.lower[i])) {
            ok = false;
            break;
          }
        if (ok) return true;
      }
    return false;
  }
  const Ball* ball = xa ? xa : xb;
  const Shape& other = xa ? b : a;
  auto boxes_of = [](const Shape& s) {
    if (const auto* bx = std::get_if<Box>(&s)) return std::vector<Box>{*bx};
    return std::get<CellUnion>(s).cells;
  };
  for (const auto& c : boxes_of(other)) {
    Rat d2 = 0;
    bool interior_feasible = true;
    for (int i = 0; i < c.dim(); ++i) {
      if (c.lower[i] >= c.upper[i]) interior_feasible = false;
      Rat g = 0;
      if (ball->center[i] < c.lower[i]) g = c.lower[i] - ball->center[i];
      else if (ball->center[i] > c.upper[i]) g = ball->center[i] - c.upper[i];
      d2 += g * g;
    }
    if (interior_feasible && d2 < ball->radius * ball->radius) return true;
  }
  return false;
}

bool open_shape_meets_closed_ball(const Shape& s, const Ball& b) {
  Rat r2 = b.radius * b.radius;
  if (const auto* gb = std::get_if<Box>(&s)) {
    Rat d2 = 0;
    for (int i = 0; i < gb->dim(); ++i) {
      if (gb->lower[i] >= gb->upper[i]) return false;  // empty interior
      Rat v = 0;
      if (b.center[i] < gb->lower[i]) v = gb->lower[i] - b.center[i];
      else if (b.center[i] > gb->upper[i]) v = b.center[i] - gb->upper[i];
      d2 += v * v;
    }
    return d2 < r2;
  }
  if (const auto* gl = std::get_if<Ball>(&s)) {
    Rat rs = gl->radius + b.radius;
    return dist2(gl->center, b.center) < rs * rs;
  }
  for (const auto& c : std::get<CellUnion>(s).cells)
    if (open_shape_meets_closed_ball(Shape{c}, b)) return true;
  return false;
}

Shape translate_shape(const Shape& s, const Point& offset) {
  auto tp = [&](const Point& p) {
    Point q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = p[i] + offset[i];
    return q;
  };
  if (const auto* b = std::get_if<Box>(&s))
    return Box{tp(b->lower), tp(b->upper)};
  if (const auto* b = std::get_if<Ball>(&s))
    return Ball{tp(b->center), b->radius, b->closed};
  CellUnion out;
  for (const auto& c : std::get<CellUnion>(s).cells)
    out.cells.push_back(Box{tp(c.lower), tp(c.upper)});
  return out;
}

Shape scale_shape(const Shape& s, const Rat& factor) {
  auto sp = [&](const Point& p) {
    Point q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = p[i] * factor;
    return q;
  };
  if (const auto* b = std::get_if<Box>(&s))
    return Box{sp(b->lower), sp(b->upper)};
  if (const auto* b = std::get_if<Ball>(&s))
    return Ball{sp(b->center), b->radius * factor, b->closed};
  CellUnion out;
  for (const auto& c : std::get<CellUnion>(s).cells)
    out.cells.push_back(Box{sp(c.lower), sp(c.upper)});
  return out;
}

}  // namespace thickset
