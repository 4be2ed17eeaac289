#include "thickset/set_model.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace thickset {

namespace {

using nlohmann::json;

void check_cantor(const CentralCantor1D& c) {
  if (c.a > c.b)
    throw Error("MalformedDescriptor", "cantor interval reversed");
  if (!(c.keep_ratio > 0 && c.keep_ratio < Rat(1, 2)))
    throw Error("OutOfRange", "keep_ratio must lie in (0, 1/2)");
}

void check_sponge(const SpongeSet& s) {
  if (s.grid.empty()) throw Error("InvalidGrid", "empty grid");
  for (int n : s.grid)
    if (n < 3 || n % 2 == 0)
      throw Error("InvalidGrid", "grid sizes must be odd and >= 3");
}

Gap make_gap(Shape shape, int generation, size_t cell_id) {
  Gap g;
  g.shape = std::move(shape);
  g.generation = generation;
  g.cell_id = cell_id;
  g.diam2 = shape_diam2(g.shape);
  g.diam = std::sqrt(to_d(g.diam2));
  return g;
}

// Cells of the level-(k-1) sponge construction, as boxes in [0,1]^d,
// visited lexicographically. Returns false once the cell budget is hit.
template <typename F>
bool walk_sponge_cells(const std::vector<int>& grid, int level, size_t budget,
                       size_t& used, F&& visit) {
  int d = static_cast<int>(grid.size());
  struct Frame {
    Box cell;
    int depth;
  };
  Point lo(d, Rat(0)), hi(d, Rat(1));
  std::vector<Frame> stack{{Box{lo, hi}, 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.depth == level) {
      if (++used > budget) return false;
      visit(f.cell);
      continue;
    }
    // Children in reverse-lex order so the stack pops lexicographically.
    std::vector<int> idx(d, 0);
    std::vector<std::vector<int>> all;
    bool done = false;
    while (!done) {
      bool central = true;
      for (int i = 0; i < d; ++i)
        if (idx[i] != (grid[i] - 1) / 2) {
          central = false;
          break;
        }
      if (!central) all.push_back(idx);
      for (int i = d - 1;; --i) {
        if (i < 0) {
          done = true;
          break;
        }
        if (++idx[i] < grid[i]) break;
        idx[i] = 0;
      }
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
      Point clo(d), chi(d);
      for (int i = 0; i < d; ++i) {
        Rat w = (f.cell.upper[i] - f.cell.lower[i]) / grid[i];
        clo[i] = f.cell.lower[i] + w * (*it)[i];
        chi[i] = clo[i] + w;
      }
      stack.push_back({Box{std::move(clo), std::move(chi)}, f.depth + 1});
    }
  }
  return true;
}

Box central_box(const Box& cell, const std::vector<int>& grid) {
  int d = cell.dim();
  Point lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    Rat w = (cell.upper[i] - cell.lower[i]) / grid[i];
    lo[i] = cell.lower[i] + w * ((grid[i] - 1) / 2);
    hi[i] = lo[i] + w;
  }
  return Box{lo, hi};
}

}  // namespace

SetDescriptor make_central_cantor(const Rat& a, const Rat& b,
                                  const Rat& keep_ratio, int depth) {
  CentralCantor1D c{a, b, keep_ratio, depth};
  check_cantor(c);
  return SetDescriptor{c};
}

SetDescriptor make_sponge(std::vector<int> grid, int depth) {
  SpongeSet s{std::move(grid), depth};
  check_sponge(s);
  return SetDescriptor{s};
}

SetDescriptor make_explicit(int dimension, Shape hull, std::vector<Gap> gaps) {
  return SetDescriptor{ExplicitSet{dimension, std::move(hull), std::move(gaps)}};
}

SetDescriptor apply_homothety(const SetDescriptor& spec, const Rat& factor,
                              const Point& offset) {
  if (!(factor > 0)) throw Error("OutOfRange", "homothety factor must be > 0");
  auto inner = std::make_shared<SetDescriptor>(spec);
  auto scaled = std::make_shared<SetDescriptor>(
      SetDescriptor{ScaleSet{inner, factor}});
  return SetDescriptor{TranslateSet{scaled, offset}};
}

int ResolvedSpec::dim() const {
  if (const auto* e = std::get_if<ExplicitSet>(&base->node))
    return e->dimension;
  if (std::get_if<CentralCantor1D>(&base->node)) return 1;
  return static_cast<int>(std::get<SpongeSet>(base->node).grid.size());
}

Point ResolvedSpec::map(const Point& p) const {
  Point q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = p[i] * factor + offset[i];
  return q;
}

Shape ResolvedSpec::map(const Shape& s) const {
  return translate_shape(scale_shape(s, factor), offset);
}

ResolvedSpec resolve(const SetDescriptor& spec) {
  ResolvedSpec out;
  const SetDescriptor* cur = &spec;
  out.factor = 1;
  // Accumulate x -> f*x + t from the outside in.
  Rat f = 1;
  std::vector<Rat> t;
  auto ensure_t = [&](size_t d) {
    if (t.empty()) t.assign(d, Rat(0));
  };
  while (true) {
    if (const auto* tr = std::get_if<TranslateSet>(&cur->node)) {
      ensure_t(tr->offset.size());
      for (size_t i = 0; i < t.size(); ++i) t[i] += f * tr->offset[i];
      out.keepalive = tr->inner;
      cur = tr->inner.get();
    } else if (const auto* sc = std::get_if<ScaleSet>(&cur->node)) {
      if (!(sc->factor > 0))
        throw Error("OutOfRange", "scale factor must be > 0");
      f *= sc->factor;
      out.keepalive = sc->inner;
      cur = sc->inner.get();
    } else {
      break;
    }
  }
  out.base = cur;
  out.factor = f;
  out.offset = t;
  if (out.offset.empty()) out.offset.assign(out.dim(), Rat(0));
  return out;
}

int spec_dim(const SetDescriptor& spec) { return resolve(spec).dim(); }

Shape spec_hull(const SetDescriptor& spec) {
  ResolvedSpec r = resolve(spec);
  Shape base_hull;
  if (const auto* e = std::get_if<ExplicitSet>(&r.base->node)) {
    base_hull = e->hull;
  } else if (const auto* c = std::get_if<CentralCantor1D>(&r.base->node)) {
    base_hull = Box{{c->a}, {c->b}};
  } else {
    int d = r.dim();
    base_hull = Box{Point(d, Rat(0)), Point(d, Rat(1))};
  }
  return r.map(base_hull);
}

double spec_diam(const SetDescriptor& spec) {
  return shape_diam(spec_hull(spec));
}

GapEnumeration enumerate_gaps(const SetDescriptor& spec, int depth,
                              size_t gap_cap) {
  if (depth < 1) throw Error("OutOfRange", "depth must be >= 1");
  ResolvedSpec r = resolve(spec);
  GapEnumeration out;
  out.source = std::make_shared<SetDescriptor>(spec);
  out.depth = depth;
  out.dimension = r.dim();
  out.hull = spec_hull(spec);

  Rat hull_d2 = shape_diam2(out.hull);
  out.hull_degenerate = (hull_d2 == 0);

  if (const auto* e = std::get_if<ExplicitSet>(&r.base->node)) {
    for (size_t i = 0; i < e->gaps.size(); ++i) {
      Gap g = make_gap(r.map(e->gaps[i].shape), 0, i);
      if (!(g.diam2 > 0))
        throw Error("MalformedDescriptor", "gap with zero diameter");
      if (!shape_inside_convex(g.shape, out.hull))
        throw Error("MalformedDescriptor", "gap escapes the hull");
      out.gaps.push_back(std::move(g));
    }
    for (size_t i = 0; i < out.gaps.size(); ++i)
      for (size_t j = i + 1; j < out.gaps.size(); ++j)
        if (shapes_overlap_open(out.gaps[i].shape, out.gaps[j].shape))
          throw Error("MalformedDescriptor", "overlapping explicit gaps");
    out.tail_bound = 0;
  } else if (const auto* c = std::get_if<CentralCantor1D>(&r.base->node)) {
    check_cantor(*c);
    int gens = (c->depth == kUnboundedDepth) ? depth : std::min(depth, c->depth);
    Rat L = c->b - c->a;
    if (L > 0) {
      size_t count = 0;
      // Intervals of the current generation, kept in lexicographic order.
      std::vector<Rat> starts{c->a};
      Rat len = L;
      for (int g = 1; g <= gens; ++g) {
        Rat keep = c->keep_ratio * len;
        Rat gap_len = len - 2 * keep;
        std::vector<Rat> next;
        next.reserve(starts.size() * 2);
        size_t cell = 0;
        for (const Rat& s : starts) {
          Box gb{{s + keep}, {s + keep + gap_len}};
          if (++count > gap_cap)
            throw Error("DepthOverflow", "gap cap exceeded");
          out.gaps.push_back(make_gap(r.map(Shape{gb}), g, cell++));
          next.push_back(s);
          next.push_back(s + len - keep);
        }
        starts = std::move(next);
        len = keep;
      }
      bool truncated = (c->depth == kUnboundedDepth) || depth < c->depth;
      if (truncated) {
        // Next generation's gap length.
        Rat next_gap = (1 - 2 * c->keep_ratio) * len;
        out.tail_bound = to_d(next_gap * r.factor);
      }
    }
  } else {
    const auto& s = std::get<SpongeSet>(r.base->node);
    check_sponge(s);
    int gens = (s.depth == kUnboundedDepth) ? depth : std::min(depth, s.depth);
    size_t used = 0;
    for (int g = 1; g <= gens; ++g) {
      size_t cell = 0;
      bool ok = walk_sponge_cells(s.grid, g - 1, gap_cap, used, [&](const Box& c) {
        out.gaps.push_back(
            make_gap(r.map(Shape{central_box(c, s.grid)}), g, cell++));
      });
      if (!ok) throw Error("DepthOverflow", "gap cap exceeded");
    }
    bool truncated = (s.depth == kUnboundedDepth) || depth < s.depth;
    if (truncated) {
      double t = 0;
      for (int n : s.grid) t += std::pow(double(n), -2.0 * (gens + 1));
      out.tail_bound = std::sqrt(t) * to_d(r.factor);
    }
  }

  std::stable_sort(out.gaps.begin(), out.gaps.end(),
                   [](const Gap& a, const Gap& b) { return a.diam2 > b.diam2; });
  for (size_t i = 0; i < out.gaps.size(); ++i) out.gaps[i].index = i;
  return out;
}

double gap_distance(const Gap& g1, const Gap& g2) {
  return shape_distance(g1.shape, g2.shape);
}

double distance_to_external(const Shape& g, const Shape& hull) {
  if (const auto* hb = std::get_if<Box>(&hull)) {
    // Distance from the gap to the complement of an axis box: the smallest
    // per-axis margin between the gap and a hull face.
    auto margin_box = [&](const Box& b) {
      double m = std::numeric_limits<double>::infinity();
      for (int i = 0; i < b.dim(); ++i) {
        m = std::min(m, to_d(b.lower[i] - hb->lower[i]));
        m = std::min(m, to_d(hb->upper[i] - b.upper[i]));
      }
      return m;
    };
    double m;
    if (const auto* gb = std::get_if<Box>(&g)) {
      m = margin_box(*gb);
    } else if (const auto* gl = std::get_if<Ball>(&g)) {
      double r = to_d(gl->radius);
      m = std::numeric_limits<double>::infinity();
      for (int i = 0; i < gl->dim(); ++i) {
        m = std::min(m, to_d(gl->center[i] - hb->lower[i]) - r);
        m = std::min(m, to_d(hb->upper[i] - gl->center[i]) - r);
      }
    } else {
      m = std::numeric_limits<double>::infinity();
      for (const auto& c : std::get<CellUnion>(g).cells)
        m = std::min(m, margin_box(c));
    }
    return std::max(0.0, m);
  }
  const auto& hball = std::get<Ball>(hull);
  // Distance to the complement of a ball: radius minus the farthest gap point.
  double far = 0;
  if (const auto* gb = std::get_if<Box>(&g)) {
    for (const auto& p : box_corners(*gb))
      far = std::max(far, std::sqrt(to_d(dist2(p, hball.center))));
  } else if (const auto* gl = std::get_if<Ball>(&g)) {
    far = std::sqrt(to_d(dist2(gl->center, hball.center))) + to_d(gl->radius);
  } else {
    for (const auto& c : std::get<CellUnion>(g).cells)
      for (const auto& p : box_corners(c))
        far = std::max(far, std::sqrt(to_d(dist2(p, hball.center))));
  }
  return std::max(0.0, to_d(hball.radius) - far);
}

double distance_to_external(const Gap& g, const SetDescriptor& spec) {
  return distance_to_external(g.shape, spec_hull(spec));
}

std::optional<LocatedGap> locate_gap(const SetDescriptor& spec, const Point& p,
                                     int max_generation) {
  ResolvedSpec r = resolve(spec);
  // Work in the base frame.
  Point q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = (p[i] - r.offset[i]) / r.factor;
  double fac = to_d(r.factor);

  if (const auto* e = std::get_if<ExplicitSet>(&r.base->node)) {
    GapEnumeration en = enumerate_gaps(spec, 1);
    for (const auto& g : en.gaps) {
      if (!shape_contains_point_open(g.shape, p)) continue;
      double sep = distance_to_external(g.shape, en.hull);
      for (const auto& h : en.gaps) {
        if (h.index >= g.index) break;
        sep = std::min(sep, shape_distance(g.shape, h.shape));
      }
      return LocatedGap{g, sep};
    }
    return std::nullopt;
  }
  if (const auto* c = std::get_if<CentralCantor1D>(&r.base->node)) {
    if (q[0] < c->a || q[0] > c->b) return std::nullopt;
    Rat lo = c->a, len = c->b - c->a;
    Rat L0 = len;
    int gens = (c->depth == kUnboundedDepth) ? max_generation
                                             : std::min(max_generation, c->depth);
    Rat sep_scale = 1;
    for (int g = 1; g <= gens; ++g) {
      Rat keep = c->keep_ratio * len;
      sep_scale *= c->keep_ratio;
      Rat gl = lo + keep, gu = lo + len - keep;
      if (q[0] > gl && q[0] < gu) {
        Gap gap = make_gap(r.map(Shape{Box{{gl}, {gu}}}), g, 0);
        // dist(G_g, earlier gaps + E) = a^g * |hull| for the central family.
        double sep = to_d(sep_scale * L0 * r.factor);
        return LocatedGap{gap, sep};
      }
      if (q[0] <= gl) {
        len = keep;  // left piece
      } else {
        lo = gu;
        len = keep;
      }
    }
    return std::nullopt;
  }
  const auto& s = std::get<SpongeSet>(r.base->node);
  int d = r.dim();
  for (int i = 0; i < d; ++i)
    if (q[i] < 0 || q[i] > 1) return std::nullopt;
  Point lo(d, Rat(0));
  std::vector<Rat> w(d, Rat(1));
  int gens = (s.depth == kUnboundedDepth) ? max_generation
                                          : std::min(max_generation, s.depth);
  for (int g = 1; g <= gens; ++g) {
    for (int i = 0; i < d; ++i) w[i] /= s.grid[i];
    // Which child cell per axis, and is the point strictly inside the
    // central box?
    std::vector<int> idx(d);
    bool central = true, on_boundary = false;
    for (int i = 0; i < d; ++i) {
      Rat rel = (q[i] - lo[i]) / w[i];
      // rel in [0, n_i]; child index floor(rel); rel >= 0 here.
      long ix = (numerator(rel) / denominator(rel)).convert_to<long>();
      if (ix == s.grid[i]) --ix;  // upper face
      if (rel == ix) on_boundary = true;
      idx[i] = static_cast<int>(ix);
      if (ix != (s.grid[i] - 1) / 2) central = false;
    }
    if (central && !on_boundary) {
      Point glo(d), ghi(d);
      for (int i = 0; i < d; ++i) {
        glo[i] = lo[i] + w[i] * idx[i];
        ghi[i] = glo[i] + w[i];
      }
      Gap gap = make_gap(r.map(Shape{Box{glo, ghi}}), g, 0);
      double sep = std::numeric_limits<double>::infinity();
      for (int i = 0; i < d; ++i)
        sep = std::min(sep, (s.grid[i] - 1) / 2.0 *
                                std::pow(double(s.grid[i]), -double(g)));
      return LocatedGap{gap, sep * fac};
    }
    if (on_boundary) return std::nullopt;  // grid planes lie in the set
    for (int i = 0; i < d; ++i) lo[i] += w[i] * idx[i];
  }
  return std::nullopt;
}

bool member_to_depth(const SetDescriptor& spec, const Point& p, int depth) {
  Shape hull = spec_hull(spec);
  if (!shape_contains_point(hull, p)) return false;
  return !locate_gap(spec, p, depth).has_value();
}

namespace {

Rat parse_rat(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(s);
    using boost::multiprecision::cpp_int;
    return Rat(cpp_int(s.substr(0, slash)), cpp_int(s.substr(slash + 1)));
  }
  if (j.is_number_integer()) return Rat(j.get<long long>());
  return Rat(j.get<double>());
}

Point parse_point(const json& j) {
  Point p;
  for (const auto& x : j) p.push_back(parse_rat(x));
  return p;
}

Shape parse_shape(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "box") return Box{parse_point(j.at("lower")), parse_point(j.at("upper"))};
  if (type == "ball") return Ball{parse_point(j.at("center")), parse_rat(j.at("radius"))};
  if (type == "cells") {
    CellUnion cu;
    for (const auto& c : j.at("cells"))
      cu.cells.push_back(Box{parse_point(c.at("lower")), parse_point(c.at("upper"))});
    return cu;
  }
  throw Error("MalformedDescriptor", "unknown shape type '" + type + "'");
}

json rat_json(const Rat& x) {
  if (denominator(x) == 1) {
    std::ostringstream os;
    os << numerator(x);
    return json(os.str());
  }
  std::ostringstream os;
  os << x;
  return json(os.str());
}

json point_json(const Point& p) {
  json out = json::array();
  for (const auto& x : p) out.push_back(rat_json(x));
  return out;
}

json shape_json(const Shape& s) {
  json out;
  if (const auto* b = std::get_if<Box>(&s)) {
    out["type"] = "box";
    out["lower"] = point_json(b->lower);
    out["upper"] = point_json(b->upper);
  } else if (const auto* b = std::get_if<Ball>(&s)) {
    out["type"] = "ball";
    out["center"] = point_json(b->center);
    out["radius"] = rat_json(b->radius);
  } else {
    out["type"] = "cells";
    out["cells"] = json::array();
    for (const auto& c : std::get<CellUnion>(s).cells) {
      json cc;
      cc["lower"] = point_json(c.lower);
      cc["upper"] = point_json(c.upper);
      out["cells"].push_back(cc);
    }
  }
  return out;
}

json spec_json(const SetDescriptor& spec) {
  json out;
  if (const auto* e = std::get_if<ExplicitSet>(&spec.node)) {
    out["variant"] = "explicit";
    out["dimension"] = e->dimension;
    out["hull"] = shape_json(e->hull);
    out["gaps"] = json::array();
    for (const auto& g : e->gaps) out["gaps"].push_back(shape_json(g.shape));
  } else if (const auto* c = std::get_if<CentralCantor1D>(&spec.node)) {
    out["variant"] = "central_cantor";
    out["interval"] = json::array({rat_json(c->a), rat_json(c->b)});
    out["keep_ratio"] = rat_json(c->keep_ratio);
    if (c->depth != kUnboundedDepth) out["depth"] = c->depth;
  } else if (const auto* s = std::get_if<SpongeSet>(&spec.node)) {
    out["variant"] = "sponge";
    out["grid"] = s->grid;
    if (s->depth != kUnboundedDepth) out["depth"] = s->depth;
  } else if (const auto* t = std::get_if<TranslateSet>(&spec.node)) {
    out["variant"] = "translate";
    out["offset"] = point_json(t->offset);
    out["inner"] = spec_json(*t->inner);
  } else {
    const auto& sc = std::get<ScaleSet>(spec.node);
    out["variant"] = "scale";
    out["factor"] = rat_json(sc.factor);
    out["inner"] = spec_json(*sc.inner);
  }
  return out;
}

SetDescriptor parse_spec(const json& j) {
  std::string variant = j.at("variant").get<std::string>();
  if (variant == "explicit") {
    std::vector<Gap> gaps;
    size_t id = 0;
    for (const auto& g : j.at("gaps"))
      gaps.push_back(make_gap(parse_shape(g), 0, id++));
    return make_explicit(j.at("dimension").get<int>(), parse_shape(j.at("hull")),
                         std::move(gaps));
  }
  if (variant == "central_cantor") {
    int depth = j.contains("depth") ? j.at("depth").get<int>() : kUnboundedDepth;
    return make_central_cantor(parse_rat(j.at("interval")[0]),
                               parse_rat(j.at("interval")[1]),
                               parse_rat(j.at("keep_ratio")), depth);
  }
  if (variant == "sponge") {
    int depth = j.contains("depth") ? j.at("depth").get<int>() : kUnboundedDepth;
    return make_sponge(j.at("grid").get<std::vector<int>>(), depth);
  }
  if (variant == "translate") {
    auto inner = std::make_shared<SetDescriptor>(parse_spec(j.at("inner")));
    return SetDescriptor{TranslateSet{inner, parse_point(j.at("offset"))}};
  }
  if (variant == "scale") {
    auto inner = std::make_shared<SetDescriptor>(parse_spec(j.at("inner")));
    return SetDescriptor{ScaleSet{inner, parse_rat(j.at("factor"))}};
  }
  throw Error("MalformedDescriptor", "unknown variant '" + variant + "'");
}

}  // namespace

SetDescriptor parse_descriptor(const std::string& json_text) {
  json j = json::parse(json_text);
  return parse_spec(j);
}

SetDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("MalformedDescriptor", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_descriptor(ss.str());
}

std::string descriptor_to_json(const SetDescriptor& spec) {
  json j = spec_json(spec);
  j["schema"] = 1;
  return j.dump(2);
}

}  // namespace thickset
