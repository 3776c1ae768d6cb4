#pragma once

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "csmap/types.hpp"

namespace csmap::geometry {

enum class Orientation { ccw, cw };

/// Circular arc traversed from start_angle to end_angle in the given
/// direction. start_angle == end_angle means a full circle.
struct Arc {
  cplx center;
  double radius = 0.0;
  double start_angle = 0.0;  // rad
  double end_angle = 0.0;    // rad
  Orientation orientation = Orientation::ccw;
};

struct Line {
  cplx from;
  cplx to;
};

/// Axis-aligned elliptic arc, parameterized by the ellipse angle t:
/// point(t) = center + (a*cos t, b*sin t). Used by the bi-elliptic
/// benchmark cavity; not part of the documented input schema for arcs.
struct EllipticArc {
  cplx center;
  double semi_x = 0.0;  // a
  double semi_y = 0.0;  // b
  double start_param = 0.0;
  double end_param = 0.0;
  Orientation orientation = Orientation::ccw;
};

using Segment = std::variant<Arc, Line, EllipticArc>;

// Native-parameter evaluation, t in [0,1] along the traversal direction.
cplx seg_start(const Segment& s);
cplx seg_end(const Segment& s);
cplx seg_point(const Segment& s, double t);
cplx seg_tangent(const Segment& s, double t);  // unit tangent
double seg_length(const Segment& s);

/// Point at a given arc length from the segment start (ellipse arcs are
/// inverted numerically).
cplx seg_point_at_arclength(const Segment& s, double arclen);
double seg_param_at_arclength(const Segment& s, double arclen);
Segment seg_trim(const Segment& s, double cut_start, double cut_end);
Segment seg_reversed(const Segment& s);

/// Closed cavity contour. Cavity boundaries are stored clockwise
/// (geomaterial kept on the left); build_boundary normalizes.
struct BoundarySpec {
  std::vector<Segment> segments;
  std::vector<char> fillet;  // parallel flags, set by round_corners
  bool reversed_on_build = false;

  double perimeter() const;
  double diameter() const;  // max pairwise extent of segment endpoints
};

struct CollocationSet {
  std::vector<cplx> points;
  bool closed = true;
  std::vector<int> segment_index;        // provenance, -1 when synthetic
  std::vector<double> arclen;            // cumulative arc length at each point
  std::shared_ptr<const BoundarySpec> source;  // null when synthetic
  double total_length = 0.0;

  size_t size() const { return points.size(); }
  /// Boundary point halfway (in arc length) between points k and k+1
  /// (cyclic). Falls back to the chord midpoint without provenance.
  cplx midpoint_on_curve(size_t k) const;
};

struct QualityReport {
  std::vector<double> angle_variation_deg;  // per junction, wrapped
  std::vector<double> relative_distance;    // chord / chord-perimeter
  double max_angle_variation_deg = 0.0;
  double max_relative_distance = 0.0;
  bool angle_pass = false;
  bool distance_pass = false;
  bool pass = false;  // both rules
};

BoundarySpec build_boundary(std::vector<Segment> segments);
BoundarySpec round_corners(const BoundarySpec& spec, double fillet_radius);
CollocationSet discretize(const BoundarySpec& spec, std::span<const int> counts);

/// Per-segment counts for a target spacing; fillet segments are densified
/// to half the smaller adjacent spacing.
std::vector<int> default_counts(const BoundarySpec& spec, double target_spacing);

QualityReport quality_check(const CollocationSet& set);

/// Amano charge placement: one source per point, offset along the local
/// normal by offset_factor times the mean adjacent spacing. Cyclic
/// indexing; works on any closed point loop in any plane.
std::vector<cplx> charge_points(std::span<const cplx> points, double offset_factor);

CollocationSet translate(const CollocationSet& set, cplx shift);

double polygon_signed_area(std::span<const cplx> points);
int winding_number(std::span<const cplx> polygon, cplx z);

}  // namespace csmap::geometry
