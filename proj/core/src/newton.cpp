#include "knotslope/newton.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "knotslope/error.hpp"

namespace knotslope {

std::string ExtendedRational::to_string() const {
  if (infinite) return "inf";
  return value.get_str();
}

namespace {

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

ExtendedRational slope_between(const LatticePoint& a, const LatticePoint& b) {
  const long di = b.first - a.first;
  const long dj = b.second - a.second;
  if (di == 0) return ExtendedRational::infinity();
  Rational q(dj, di);
  q.canonicalize();
  return ExtendedRational::finite(q);
}

std::vector<ExtendedRational> sorted_unique(std::vector<ExtendedRational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

NewtonPolygon newton_polygon(const BiLaurent& a) {
  if (a.is_zero()) throw Error(ErrorCode::kUsage, "Newton polygon of the zero polynomial");
  std::vector<LatticePoint> pts;
  for (const auto& [e, c] : a.terms()) pts.emplace_back(e.first, e.second);
  // Terms are stored in lexicographic order already.
  NewtonPolygon out;
  if (pts.size() == 1) {
    out.vertices = pts;
    return out;
  }
  // Andrew's monotone chain; strict turns drop collinear points.
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  out.vertices = hull;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const LatticePoint& from = hull[i];
    const LatticePoint& to = hull[(i + 1) % hull.size()];
    out.sides.push_back({from, to, slope_between(from, to)});
  }
  return out;
}

std::vector<ExtendedRational> side_slopes(const NewtonPolygon& p) {
  if (p.sides.empty()) throw Error(ErrorCode::kUsage, "polygon is a single point");
  std::vector<ExtendedRational> out;
  for (const auto& s : p.sides) out.push_back(s.slope);
  return sorted_unique(std::move(out));
}

std::vector<ExtendedRational> IdealSlopeReport::distinct() const {
  std::vector<ExtendedRational> out;
  for (const auto& e : entries) out.push_back(e.ideal_slope);
  return sorted_unique(std::move(out));
}

IdealSlopeReport ideal_point_slopes(const BiLaurent& a) {
  if (a.is_zero() || a.is_monomial())
    throw Error(ErrorCode::kUsage, "ideal slopes need at least two terms");
  IdealSlopeReport report;
  for (const NewtonSide& s : newton_polygon(a).sides) {
    const long di = s.to.first - s.from.first;
    const long dj = s.to.second - s.from.second;
    const long g = std::gcd(di, dj);
    report.entries.push_back({s, s.slope, s.slope.negated(), {-dj / g, di / g}});
  }
  return report;
}

std::string newton_polygon_to_json(const NewtonPolygon& p) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : p.vertices) j["vertices"].push_back({v.first, v.second});
  j["sides"] = nlohmann::json::array();
  for (const auto& s : p.sides)
    j["sides"].push_back({{"from", {s.from.first, s.from.second}},
                          {"to", {s.to.first, s.to.second}},
                          {"slope", s.slope.infinite
                                        ? std::string("inf")
                                        : s.slope.value.get_num().get_str() + "/" +
                                              s.slope.value.get_den().get_str()}});
  return j.dump();
}

}  // namespace knotslope
