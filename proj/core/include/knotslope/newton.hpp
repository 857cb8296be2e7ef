#pragma once

// Newton polygons of Laurent polynomials in (L, M), side slopes and the
// slopes they induce at ideal points.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "knotslope/bilaurent.hpp"

namespace knotslope {

using LatticePoint = std::pair<long, long>;  // (L-exponent, M-exponent)

/// A rational number or infinity.
struct ExtendedRational {
  bool infinite = false;
  Rational value = 0;

  static ExtendedRational finite(const Rational& q) { return {false, q}; }
  static ExtendedRational infinity() { return {true, 0}; }

  /// -infinity is infinity.
  ExtendedRational negated() const { return infinite ? *this : finite(-value); }
  /// "p/q", "p" or "inf".
  std::string to_string() const;

  bool operator==(const ExtendedRational& rhs) const {
    return infinite == rhs.infinite && (infinite || value == rhs.value);
  }
  /// Finite values ascending, infinity last.
  bool operator<(const ExtendedRational& rhs) const {
    if (infinite || rhs.infinite) return !infinite && rhs.infinite;
    return value < rhs.value;
  }
};

struct NewtonSide {
  LatticePoint from;
  LatticePoint to;
  /// dM / dL along the side.
  ExtendedRational slope;
};

struct NewtonPolygon {
  /// Counterclockwise from the lexicographically smallest point; collinear
  /// support points are not vertices.
  std::vector<LatticePoint> vertices;
  /// vertices[k] -> vertices[k+1 mod n]; a segment has two opposite sides.
  std::vector<NewtonSide> sides;
};

/// Requires a nonzero polynomial.
NewtonPolygon newton_polygon(const BiLaurent& a);

/// Distinct side slopes, ascending with infinity last. Throws Error(kUsage)
/// for a single-point polygon.
std::vector<ExtendedRational> side_slopes(const NewtonPolygon& p);

struct IdealSlopeEntry {
  NewtonSide side;
  ExtendedRational side_slope;
  /// Minus the side slope.
  ExtendedRational ideal_slope;
  /// Inward primitive normal (v(L), v(M)); ideal_slope = v(L) / v(M).
  std::pair<long, long> valuations;
};

struct IdealSlopeReport {
  std::vector<IdealSlopeEntry> entries;  ///< one per polygon side

  /// Distinct ideal slopes, ascending with infinity last.
  std::vector<ExtendedRational> distinct() const;
};

/// Throws Error(kUsage) for zero or monomial input.
IdealSlopeReport ideal_point_slopes(const BiLaurent& a);

/// {"vertices": [[i,j],...], "sides": [{"from": [i,j], "to": [i,j], "slope": "p/q"|"inf"}]}
std::string newton_polygon_to_json(const NewtonPolygon& p);

}  // namespace knotslope
