#pragma once

#include <Eigen/Dense>
#include <vector>

#include "csmap/geometry.hpp"
#include "csmap/numerics.hpp"
#include "csmap/types.hpp"

namespace csmap::shallow {

/// Exact first step: lower half-plane onto the interval annulus,
/// w(z) = beta (z - z_c2)/(z - conj(z_c2)). Sends the real axis to
/// |w| = beta and z_c2 to 0.
struct MobiusMap {
  cplx z_c2;          // in-cavity point, Im < 0
  double beta = 1.0;  // exterior radius of the interval annulus

  cplx forward(cplx z) const;
  cplx backward(cplx w) const;
  cplx backward_deriv(cplx w) const;  // dz/dw
};

/// Second-step CSM forward map of the interval annulus onto a circular
/// annulus r_i <= |zeta| <= r_o, rotation-normalized by zeta(w_beta) = 1.
struct AnnulusForwardMap {
  cplx w_beta;                      // normalization point on |w| = beta
  cplx w_ref;                       // branch reference point inside the annulus
  Eigen::VectorXd charges_ext;      // Q_{1,k}, sum to -1
  Eigen::VectorXd charges_int;      // Q_{2,k}, sum to 0
  std::vector<cplx> sources_ext;    // W_{1,k}, outside |w| = beta
  std::vector<cplx> sources_int;    // W_{2,k}, inside the cavity image
  std::vector<cplx> colloc_ext;     // w_{1,i} on |w| = beta
  std::vector<cplx> colloc_int;     // w(z_{2,j})
  double r_o = 1.0;
  double r_i = 0.0;
  numerics::ConditionReport cond;   // C_Nf_s

  cplx eval(cplx w) const;
  double ext_charge_sum_residual() const;  // |sum Q_1 + 1|
  double int_charge_sum_residual() const;  // |sum Q_2|
};

/// CDSM backward map w(zeta) = sum q_{1,k}/(zeta - s_{1,k})
///                           + sum q_{2,k}/(zeta - s_{2,k}),
/// dipoles outside the closed annulus on each side.
struct AnnulusBackwardMap {
  Eigen::VectorXcd coeffs_ext;   // q_{1,k}
  Eigen::VectorXcd coeffs_int;   // q_{2,k}
  std::vector<cplx> dipoles_ext; // |s_{1,k}| > r_o
  std::vector<cplx> dipoles_int; // |s_{2,k}| < r_i
  numerics::ConditionReport cond;  // C_Nb_s

  cplx eval(cplx zeta) const;
  cplx deriv(cplx zeta) const;  // dw/dzeta
};

struct ShallowCompositeMap {
  MobiusMap mobius;
  AnnulusForwardMap fwd2;
  AnnulusBackwardMap bwd2;
  geometry::CollocationSet cavity;  // physical-plane collocation, provenance kept

  cplx forward(cplx z) const { return fwd2.eval(mobius.forward(z)); }
  cplx backward(cplx zeta) const { return mobius.backward(bwd2.eval(zeta)); }
  cplx backward_deriv(cplx zeta) const;  // dz/dzeta by the chain rule
};

struct ShallowOptions {
  double beta = 1.0;
  int n_exterior = 90;      // N_1' uniform points on |w| = beta
  double offset_ext = 1.0;  // K_1
  double offset_int = 1.0;  // K_2
  double offset_bwd_ext = 1.0;  // k_1
  double offset_bwd_int = 1.0;  // k_2
};

AnnulusForwardMap solve_annulus_forward(std::span<const cplx> exterior_pts,
                                        std::span<const cplx> interior_pts,
                                        double offset_ext, double offset_int,
                                        cplx w_beta);

AnnulusBackwardMap solve_annulus_backward(const AnnulusForwardMap& fwd2,
                                          double offset_ext, double offset_int);

/// Full pipeline: Mobius step, exterior collocation on |w| = beta, CSM
/// forward and CDSM backward solves.
ShallowCompositeMap solve_shallow(const geometry::CollocationSet& cavity, cplx z_c2,
                                  const ShallowOptions& opt = {});

}  // namespace csmap::shallow
