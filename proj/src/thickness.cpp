#include "thickset/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace thickset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Infimum of the not-yet-enumerated generation ratios for generative
// families; nullopt when the enumeration is already complete.
std::optional<double> analytic_tail_infimum(const GapEnumeration& en) {
  if (!en.source) return std::nullopt;
  ResolvedSpec r = resolve(*en.source);
  if (const auto* c = std::get_if<CentralCantor1D>(&r.base->node)) {
    if (c->depth != kUnboundedDepth && en.depth >= c->depth) return std::nullopt;
    return central_cantor_thickness(c->keep_ratio);
  }
  if (const auto* s = std::get_if<SpongeSet>(&r.base->node)) {
    if (s->depth != kUnboundedDepth && en.depth >= s->depth) return std::nullopt;
    bool uniform = std::all_of(s->grid.begin(), s->grid.end(),
                               [&](int n) { return n == s->grid.front(); });
    if (uniform) return sponge_generation_ratio(s->grid, 1);
    return 0.0;  // mixed grids: generation ratios decay geometrically to 0
  }
  return std::nullopt;
}

void finish_report(ThicknessReport& rep, const GapEnumeration& en,
                   std::optional<std::pair<double, size_t>> min_override =
                       std::nullopt) {
  rep.depth = en.depth;
  double mn = kInf;
  std::optional<size_t> arg;
  for (const auto& e : rep.ratios)
    if (e.ratio < mn) {
      mn = e.ratio;
      arg = e.gap_index;
    }
  if (min_override) {
    mn = min_override->first;
    arg = min_override->second;
  }
  rep.upper = mn;
  rep.argmin = arg;
  auto tail = analytic_tail_infimum(en);
  if (tail) {
    rep.value = std::min(mn, *tail);
    rep.certified_lower = rep.value;
    rep.truncation = Truncation::Exact;
    rep.note = "self-similar tail resolved analytically";
  } else if (en.tail_bound > 0) {
    rep.value = mn;
    rep.certified_lower = 0;
    rep.truncation = Truncation::Truncated;
    rep.note = "tail not certified";
  } else {
    rep.value = mn;
    rep.certified_lower = mn;
    rep.truncation = Truncation::Exact;
  }
}

struct Interval {
  Rat lo, hi;
};

std::pair<Rat, Rat> gap_interval_1d(const Shape& s) {
  if (const auto* b = std::get_if<Box>(&s)) return {b->lower[0], b->upper[0]};
  if (const auto* b = std::get_if<Ball>(&s))
    return {b->center[0] - b->radius, b->center[0] + b->radius};
  const auto& cu = std::get<CellUnion>(s);
  Rat lo = cu.cells.front().lower[0], hi = cu.cells.front().upper[0];
  for (const auto& c : cu.cells) {
    lo = std::min(lo, c.lower[0]);
    hi = std::max(hi, c.upper[0]);
  }
  return {lo, hi};
}

// Cached double geometry for the pairwise sweep.
struct FastShape {
  bool is_boxes;  // box or cell union
  std::vector<std::array<std::vector<double>, 2>> boxes;  // lo, hi
  std::vector<double> c;
  double r = 0;
};

FastShape fast_of(const Shape& s) {
  FastShape f;
  auto push_box = [&](const Box& b) {
    std::array<std::vector<double>, 2> lh;
    lh[0] = to_dvec(b.lower);
    lh[1] = to_dvec(b.upper);
    f.boxes.push_back(std::move(lh));
  };
  if (const auto* b = std::get_if<Box>(&s)) {
    f.is_boxes = true;
    push_box(*b);
  } else if (const auto* cu = std::get_if<CellUnion>(&s)) {
    f.is_boxes = true;
    for (const auto& c : cu->cells) push_box(c);
  } else {
    const auto& bl = std::get<Ball>(s);
    f.is_boxes = false;
    f.c = to_dvec(bl.center);
    f.r = to_d(bl.radius);
  }
  return f;
}

// Squared margin from the gap to the complement of a box hull, in exact
// rationals; nullopt for ball hulls.
std::optional<Rat> exact_external_margin2(const Shape& g, const Shape& hull) {
  const auto* hb = std::get_if<Box>(&hull);
  if (!hb) return std::nullopt;
  auto margin_box = [&](const Box& b) {
    std::optional<Rat> m;
    for (int i = 0; i < b.dim(); ++i) {
      Rat v = std::min(Rat(b.lower[i] - hb->lower[i]),
                       Rat(hb->upper[i] - b.upper[i]));
      if (!m || v < *m) m = v;
    }
    return m.value_or(Rat(0));
  };
  Rat m;
  if (const auto* gb = std::get_if<Box>(&g)) {
    m = margin_box(*gb);
  } else if (const auto* gl = std::get_if<Ball>(&g)) {
    std::optional<Rat> mm;
    for (int i = 0; i < gl->dim(); ++i) {
      Rat v = std::min(Rat(gl->center[i] - gl->radius - hb->lower[i]),
                       Rat(hb->upper[i] - gl->center[i] - gl->radius));
      if (!mm || v < *mm) mm = v;
    }
    m = mm.value_or(Rat(0));
  } else {
    std::optional<Rat> mm;
    for (const auto& c : std::get<CellUnion>(g).cells) {
      Rat v = margin_box(c);
      if (!mm || v < *mm) mm = v;
    }
    m = mm.value_or(Rat(0));
  }
  if (m < 0) m = 0;
  return m * m;
}

double fast_distance(const FastShape& a, const FastShape& b) {
  auto box_box = [](const std::array<std::vector<double>, 2>& x,
                    const std::array<std::vector<double>, 2>& y) {
    double s = 0;
    for (size_t i = 0; i < x[0].size(); ++i) {
      double g = std::max({0.0, y[0][i] - x[1][i], x[0][i] - y[1][i]});
      s += g * g;
    }
    return std::sqrt(s);
  };
  auto point_box = [](const std::vector<double>& p,
                      const std::array<std::vector<double>, 2>& y) {
    double s = 0;
    for (size_t i = 0; i < p.size(); ++i) {
      double g = 0;
      if (p[i] < y[0][i]) g = y[0][i] - p[i];
      else if (p[i] > y[1][i]) g = p[i] - y[1][i];
      s += g * g;
    }
    return std::sqrt(s);
  };
  if (a.is_boxes && b.is_boxes) {
    double best = kInf;
    for (const auto& x : a.boxes)
      for (const auto& y : b.boxes) best = std::min(best, box_box(x, y));
    return best;
  }
  if (!a.is_boxes && !b.is_boxes) {
    double s = 0;
    for (size_t i = 0; i < a.c.size(); ++i) {
      double d = a.c[i] - b.c[i];
      s += d * d;
    }
    return std::max(0.0, std::sqrt(s) - a.r - b.r);
  }
  const FastShape& ball = a.is_boxes ? b : a;
  const FastShape& boxes = a.is_boxes ? a : b;
  double best = kInf;
  for (const auto& x : boxes.boxes)
    best = std::min(best, point_box(ball.c, x));
  return std::max(0.0, best - ball.r);
}

// Recompute the minimum ratio exactly for gaps whose double ratio is within
// relative 1e-9 of the approximate minimum: for box-like geometry the squared
// ratio is a rational invariant of homotheties, which makes the reported value
// exactly scale-invariant. Pairs involving balls keep their double value.
std::optional<std::pair<double, size_t>> refine_min_exact(
    const GapEnumeration& en, const std::vector<FastShape>& fast,
    const std::vector<RatioEntry>& ratios, double mn) {
  if (!std::isfinite(mn) || ratios.empty()) return std::nullopt;
  double thresh = mn * (1 + 1e-9);
  std::optional<Rat> best_r2;
  size_t best_r2_arg = 0;
  double best_fb = kInf;
  size_t best_fb_arg = 0;
  for (size_t n = 0; n < en.gaps.size(); ++n) {
    if (ratios[n].ratio > thresh) continue;
    double cut = ratios[n].dist * (1 + 1e-9);
    bool fallback = false;
    std::optional<Rat> g2;
    auto upd = [&](const Rat& v) {
      if (!g2 || v < *g2) g2 = v;
    };
    if (distance_to_external(en.gaps[n].shape, en.hull) <= cut) {
      if (auto e2 = exact_external_margin2(en.gaps[n].shape, en.hull))
        upd(*e2);
      else
        fallback = true;
    }
    for (size_t i = 0; i < n && !fallback; ++i) {
      if (fast_distance(fast[n], fast[i]) > cut) continue;
      if (auto d2 = shape_distance2_exact(en.gaps[n].shape, en.gaps[i].shape))
        upd(*d2);
      else
        fallback = true;
    }
    if (fallback || !g2) {
      if (ratios[n].ratio < best_fb) {
        best_fb = ratios[n].ratio;
        best_fb_arg = n;
      }
    } else {
      Rat r2 = *g2 / en.gaps[n].diam2;
      if (!best_r2 || r2 < *best_r2) {
        best_r2 = r2;
        best_r2_arg = n;
      }
    }
  }
  double refined = best_fb;
  size_t arg = best_fb_arg;
  if (best_r2) {
    double ex = std::sqrt(to_d(*best_r2));
    if (!(best_fb < ex)) {
      refined = ex;
      arg = best_r2_arg;
    }
  }
  if (!std::isfinite(refined)) return std::nullopt;
  return std::make_pair(refined, arg);
}

}  // namespace

ThicknessReport thickness_1d(const GapEnumeration& en) {
  if (en.dimension != 1)
    throw Error("DimensionMismatch", "thickness_1d requires d = 1");
  ThicknessReport rep;
  if (en.gaps.empty()) {
    rep.value = en.hull_degenerate ? 0.0 : kInf;
    rep.upper = rep.value;
    rep.certified_lower = rep.value;
    rep.depth = en.depth;
    if (en.tail_bound > 0) rep.truncation = Truncation::Truncated;
    return rep;
  }
  auto [hl, hu] = gap_interval_1d(en.hull);
  // Closed components of I minus the gaps removed so far, keyed by lower end.
  std::map<Rat, Rat> pieces{{hl, hu}};
  for (const auto& g : en.gaps) {
    auto [gl, gu] = gap_interval_1d(g.shape);
    auto it = pieces.upper_bound(gl);
    if (it == pieces.begin())
      throw Error("MalformedDescriptor", "gap outside remaining set");
    --it;
    if (gu > it->second)
      throw Error("MalformedDescriptor", "gap straddles removed region");
    Rat il = it->first, iu = it->second;
    Rat left = gl - il, right = iu - gu;
    Rat ratio = std::min(left, right) / (gu - gl);
    rep.ratios.push_back({g.index, to_d(std::min(left, right)), g.diam,
                          to_d(ratio)});
    pieces.erase(it);
    pieces.emplace(il, gl);
    pieces.emplace(gu, iu);
  }
  finish_report(rep, en);
  return rep;
}

ThicknessReport thickness_rd(const GapEnumeration& en) {
  ThicknessReport rep;
  if (en.gaps.empty()) {
    rep.value = en.hull_degenerate ? 0.0 : kInf;
    rep.upper = rep.value;
    rep.certified_lower = rep.value;
    rep.depth = en.depth;
    if (en.tail_bound > 0) rep.truncation = Truncation::Truncated;
    return rep;
  }

  // Exact rational path for 1-d interval structures: makes the agreement
  // with thickness_1d bit-for-bit.
  bool all_boxlike = std::holds_alternative<Box>(en.hull);
  if (en.dimension == 1 && all_boxlike) {
    std::vector<std::pair<Rat, Rat>> ivs;
    ivs.reserve(en.gaps.size());
    for (const auto& g : en.gaps) ivs.push_back(gap_interval_1d(g.shape));
    auto [hl, hu] = gap_interval_1d(en.hull);
    for (size_t n = 0; n < ivs.size(); ++n) {
      Rat best = std::min(ivs[n].first - hl, hu - ivs[n].second);
      for (size_t i = 0; i < n; ++i) {
        Rat d = 0;
        if (ivs[i].first > ivs[n].second) d = ivs[i].first - ivs[n].second;
        else if (ivs[n].first > ivs[i].second) d = ivs[n].first - ivs[i].second;
        best = std::min(best, d);
      }
      Rat diam = ivs[n].second - ivs[n].first;
      rep.ratios.push_back({en.gaps[n].index, to_d(best), to_d(diam),
                            to_d(best / diam)});
    }
    finish_report(rep, en);
    return rep;
  }

  std::vector<FastShape> fast;
  fast.reserve(en.gaps.size());
  for (const auto& g : en.gaps) fast.push_back(fast_of(g.shape));
  for (size_t n = 0; n < en.gaps.size(); ++n) {
    double best = distance_to_external(en.gaps[n].shape, en.hull);
    for (size_t i = 0; i < n; ++i)
      best = std::min(best, fast_distance(fast[n], fast[i]));
    rep.ratios.push_back(
        {en.gaps[n].index, best, en.gaps[n].diam, best / en.gaps[n].diam});
  }
  double mn = kInf;
  for (const auto& e : rep.ratios) mn = std::min(mn, e.ratio);
  finish_report(rep, en, refine_min_exact(en, fast, rep.ratios, mn));
  return rep;
}

double sponge_generation_ratio(const std::vector<int>& grid, int k) {
  double dist = kInf, diam2 = 0;
  for (int n : grid) {
    dist = std::min(dist, (n - 1) / 2.0 * std::pow(double(n), -double(k)));
    diam2 += std::pow(double(n), -2.0 * k);
  }
  return dist / std::sqrt(diam2);
}

double sponge_truncated_thickness(const std::vector<int>& grid, int depth) {
  double mn = kInf;
  for (int k = 1; k <= depth; ++k)
    mn = std::min(mn, sponge_generation_ratio(grid, k));
  return mn;
}

SpongeThickness sponge_thickness_closed_form(const std::vector<int>& grid,
                                             int probe_generations) {
  for (int n : grid)
    if (n < 3 || n % 2 == 0)
      throw Error("InvalidGrid", "grid sizes must be odd and >= 3");
  SpongeThickness out;
  for (int k = 1; k <= probe_generations; ++k)
    out.generation_ratios.push_back(sponge_generation_ratio(grid, k));
  bool uniform = std::all_of(grid.begin(), grid.end(),
                             [&](int n) { return n == grid.front(); });
  if (uniform) {
    // dist_k/diam_k = (n-1)/(2 sqrt(d)) at every generation.
    out.value = (grid.front() - 1) / (2.0 * std::sqrt(double(grid.size())));
    out.attained = true;
    out.argmin_generation = 1;
  } else {
    // Mixed grids: the ratio behaves like C (n_min/n_max)^k, so the
    // infimum is the limit 0.
    out.value = 0;
    out.attained = false;
  }
  return out;
}

Rat central_cantor_thickness_exact(const Rat& keep_ratio) {
  if (!(keep_ratio > 0 && keep_ratio < Rat(1, 2)))
    throw Error("OutOfRange", "keep_ratio must lie in (0, 1/2)");
  return keep_ratio / (1 - 2 * keep_ratio);
}

double central_cantor_thickness(const Rat& keep_ratio) {
  return to_d(central_cantor_thickness_exact(keep_ratio));
}

GapEnumeration line_section(const SetDescriptor& spec, const Line& line,
                            int depth) {
  GapEnumeration base = enumerate_gaps(spec, depth);
  if (!std::holds_alternative<Box>(base.hull) &&
      !std::holds_alternative<Ball>(base.hull))
    throw Error("NonConvexGap", "hull must be convex (box or ball)");

  int d = base.dimension;
  std::vector<double> p = line.point, u = line.direction;
  double norm = 0;
  for (double x : u) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0) throw Error("LineMissesSet", "zero direction");
  for (double& x : u) x /= norm;

  // Clip the line against a convex shape; open flag asks for the open body.
  auto clip = [&](const Shape& s) -> std::optional<std::pair<double, double>> {
    double t0 = -kInf, t1 = kInf;
    if (const auto* b = std::get_if<Box>(&s)) {
      for (int i = 0; i < d; ++i) {
        double lo = to_d(b->lower[i]), hi = to_d(b->upper[i]);
        if (std::abs(u[i]) < 1e-300) {
          if (p[i] < lo || p[i] > hi) return std::nullopt;
          continue;
        }
        double a = (lo - p[i]) / u[i], bb = (hi - p[i]) / u[i];
        if (a > bb) std::swap(a, bb);
        t0 = std::max(t0, a);
        t1 = std::min(t1, bb);
      }
    } else if (const auto* bl = std::get_if<Ball>(&s)) {
      double b2 = 0, c2 = 0;
      for (int i = 0; i < d; ++i) {
        double dc = p[i] - to_d(bl->center[i]);
        b2 += dc * u[i];
        c2 += dc * dc;
      }
      double r = to_d(bl->radius);
      double disc = b2 * b2 - (c2 - r * r);
      if (disc <= 0) return std::nullopt;
      t0 = -b2 - std::sqrt(disc);
      t1 = -b2 + std::sqrt(disc);
    } else {
      throw Error("NonConvexGap", "cell-union gaps are not convex");
    }
    if (t0 >= t1) return std::nullopt;
    return std::make_pair(t0, t1);
  };

  auto hull_t = clip(base.hull);
  if (!hull_t) throw Error("LineMissesSet", "line misses the hull interior");
  auto [ha, hb] = *hull_t;

  std::vector<Gap> gaps;
  size_t id = 0;
  for (const auto& g : base.gaps) {
    auto t = clip(g.shape);
    if (!t) continue;
    double a = std::max(t->first, ha), b = std::min(t->second, hb);
    if (b <= a) continue;
    Gap ng = Gap{};
    ng.shape = Box{{Rat(a)}, {Rat(b)}};
    ng.generation = 0;
    ng.cell_id = id++;
    ng.diam2 = shape_diam2(ng.shape);
    ng.diam = b - a;
    gaps.push_back(std::move(ng));
  }
  GapEnumeration out;
  out.source = nullptr;  // section enumerations are self-contained
  out.depth = depth;
  out.dimension = 1;
  out.hull = Box{{Rat(ha)}, {Rat(hb)}};
  out.hull_degenerate = (ha == hb);
  out.tail_bound = base.tail_bound;
  std::stable_sort(gaps.begin(), gaps.end(),
                   [](const Gap& a, const Gap& b) { return a.diam2 > b.diam2; });
  for (size_t i = 0; i < gaps.size(); ++i) gaps[i].index = i;
  out.gaps = std::move(gaps);
  return out;
}

}  // namespace thickset
