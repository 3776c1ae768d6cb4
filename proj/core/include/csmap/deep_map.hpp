#pragma once

#include <Eigen/Dense>
#include <vector>

#include "csmap/geometry.hpp"
#include "csmap/numerics.hpp"
#include "csmap/types.hpp"

namespace csmap::deep {

/// CSM forward map of the exterior of a cavity onto the exterior of the
/// unit disk: zeta(z) = (z - z_c1) * exp[ Gamma + sum Q_k ln((z-Z_k)/(z-z_c1)) ],
/// with all logarithms on the principal branch so the evaluation is
/// single-valued.
struct DeepForwardMap {
  cplx z_c1;                       // normalization point, zeta(z_c1) = 0
  double log_scale = 0.0;          // Gamma = lim ln|zeta'(inf)|
  Eigen::VectorXd charges;         // Q_k, sum to 0
  std::vector<cplx> charge_points; // Z_k, inside the cavity
  std::vector<cplx> collocation;   // z_i
  double offset_factor = 1.0;
  numerics::ConditionReport cond;  // C_Nf_d

  cplx eval(cplx z) const;
  double charge_sum_residual() const;
};

/// Rational backward map z(zeta) = p_m1*zeta + p_0 + sum p_k/(zeta - pole_k),
/// poles strictly inside the unit circle.
struct DeepBackwardMap {
  cplx p_m1;
  cplx p_0;
  Eigen::VectorXcd coeffs;     // p_k, k = 1..N-2
  std::vector<cplx> poles;     // zeta_k, |zeta_k| < 1
  double offset_factor = 1.0;
  numerics::ConditionReport cond;  // C_Nb_d

  cplx eval(cplx zeta) const;
  cplx deriv(cplx zeta) const;
};

struct DeepMapPair {
  DeepForwardMap fwd;
  DeepBackwardMap bwd;
  geometry::CollocationSet collocation;
};

DeepForwardMap solve_deep_forward(const geometry::CollocationSet& set, cplx z_c1,
                                  double offset_factor);

DeepBackwardMap solve_deep_backward(const DeepForwardMap& fwd, double offset_factor);

/// Power-basis backward map (plain Laurent polynomial fitted by point
/// correspondence). Kept behind this diagnostic entry point only, to
/// expose its much larger condition number; the pole-basis map above is
/// the production path.
struct DeepBackwardPowerMap {
  Eigen::VectorXcd coeffs;  // q_{-1}, q_0, q_1..q_{N-2}
  numerics::ConditionReport cond;

  cplx eval(cplx zeta) const;
};

DeepBackwardPowerMap solve_deep_backward_power(const DeepForwardMap& fwd);

}  // namespace csmap::deep
