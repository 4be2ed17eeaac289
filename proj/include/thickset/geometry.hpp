#ifndef THICKSET_GEOMETRY_HPP
#define THICKSET_GEOMETRY_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace thickset {

// Exact rational scalar used for all generative-family coordinates.
using Rat = boost::multiprecision::cpp_rational;

inline double to_d(const Rat& r) { return r.convert_to<double>(); }

struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

using Point = std::vector<Rat>;

inline Point dpoint(const std::vector<double>& v) {
  Point p;
  p.reserve(v.size());
  for (double x : v) p.emplace_back(x);
  return p;
}

inline std::vector<double> to_dvec(const Point& p) {
  std::vector<double> v(p.size());
  for (size_t i = 0; i < p.size(); ++i) v[i] = to_d(p[i]);
  return v;
}

inline Rat dist2(const Point& a, const Point& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    Rat dxy = a[i] - b[i];
    s += dxy * dxy;
  }
  return s;
}

struct Box {
  Point lower, upper;  // componentwise lower < upper

  int dim() const { return static_cast<int>(lower.size()); }
  Rat diam2() const { return dist2(lower, upper); }
  double diam() const { return std::sqrt(to_d(diam2())); }
  Point center() const {
    Point c(lower.size());
    for (size_t i = 0; i < lower.size(); ++i) c[i] = (lower[i] + upper[i]) / 2;
    return c;
  }
  bool contains(const Point& p) const {  // closed containment
    for (size_t i = 0; i < lower.size(); ++i)
      if (p[i] < lower[i] || p[i] > upper[i]) return false;
    return true;
  }
  bool contains_open(const Point& p) const {
    for (size_t i = 0; i < lower.size(); ++i)
      if (p[i] <= lower[i] || p[i] >= upper[i]) return false;
    return true;
  }
};

struct Ball {
  Point center;
  Rat radius;
  bool closed = false;

  int dim() const { return static_cast<int>(center.size()); }
  Rat diam_exact() const { return 2 * radius; }
  double diam() const { return 2 * to_d(radius); }
};

// A finite face-connected union of boxes.
struct CellUnion {
  std::vector<Box> cells;
  int dim() const { return cells.empty() ? 0 : cells.front().dim(); }
};

using Shape = std::variant<Box, Ball, CellUnion>;

int shape_dim(const Shape& s);
double shape_diam(const Shape& s);
// Squared diameter, exact; balls give (2r)^2.
Rat shape_diam2(const Shape& s);
Point shape_center(const Shape& s);

// Euclidean distance between the two (closed) shapes, closed form per pair.
double shape_distance(const Shape& a, const Shape& b);
// Exact squared distance, available when both sides are boxes / cell unions.
std::optional<Rat> shape_distance2_exact(const Shape& a, const Shape& b);

bool shape_contains_point(const Shape& s, const Point& p);       // closed
bool shape_contains_point_open(const Shape& s, const Point& p);  // open

// Closed containment closure(inner) subseteq outer, outer convex (Box/Ball).
bool shape_inside_convex(const Shape& inner, const Shape& outer);
// closure(inner) subseteq open interior of outer.
bool shape_inside_open(const Shape& inner, const Shape& outer);
// Open sets intersect.
bool shapes_overlap_open(const Shape& a, const Shape& b);
// The open shape meets the closed ball, decided exactly.
bool open_shape_meets_closed_ball(const Shape& s, const Ball& b);

Shape translate_shape(const Shape& s, const Point& offset);
Shape scale_shape(const Shape& s, const Rat& factor);

std::vector<Point> box_corners(const Box& b);

// dist(p, box) for a closed box.
double point_box_distance(const Point& p, const Box& b);
double point_shape_distance(const Point& p, const Shape& s);

}  // namespace thickset

#endif
