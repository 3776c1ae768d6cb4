#pragma once

#include <vector>

#include "csmap/deep_map.hpp"
#include "csmap/shallow_map.hpp"
#include "csmap/types.hpp"

namespace csmap::diag {

/// Midpoint error estimates. Forward errors are the radial distance of
/// the mapped midpoints to the target circle; the literal point-distance
/// variant (which also penalizes rotation) is recorded alongside.
struct MappingErrorReport {
  // deep
  double eps_f = 0.0;
  double eps_b = 0.0;
  double eps_f_literal = 0.0;
  std::vector<double> per_point_f;
  std::vector<double> per_point_b;

  // shallow
  double eps_fe = 0.0, eps_be = 0.0;
  double eps_fi = 0.0, eps_bi = 0.0;
  double eps_fe_literal = 0.0, eps_fi_literal = 0.0;
  std::vector<double> per_point_fe, per_point_be, per_point_fi, per_point_bi;

  std::vector<numerics::ConditionReport> conds;
  bool shallow = false;
};

MappingErrorReport deep_error_report(const deep::DeepForwardMap& fwd,
                                     const deep::DeepBackwardMap& bwd,
                                     const geometry::CollocationSet& set);

MappingErrorReport shallow_error_report(const shallow::ShallowCompositeMap& map);

/// Images of concentric circles (rho-lines) and radial rays (theta-lines)
/// under a backward map; a smooth orthogonal grid in the physical plane
/// indicates analyticity of the map.
struct GridPullback {
  struct Polyline {
    std::vector<cplx> points;
    int id = 0;
    char kind = 'r';  // 'r' rho-line, 't' theta-line
  };
  std::vector<Polyline> lines;
};

GridPullback grid_pullback(const deep::DeepBackwardMap& map, int rho_count, int theta_count,
                           double rho_min, double rho_max);

GridPullback grid_pullback(const shallow::ShallowCompositeMap& map, int rho_count,
                           int theta_count, double rho_min, double rho_max);

}  // namespace csmap::diag
