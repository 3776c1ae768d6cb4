#include "csmap/deep_map.hpp"

#include <cmath>

namespace csmap::deep {

using geometry::CollocationSet;

cplx DeepForwardMap::eval(cplx z) const {
  if (z == z_c1) return 0.0;  // normalization, exact by construction
  cplx expo = log_scale;
  for (size_t k = 0; k < charge_points.size(); ++k) {
    if (z == charge_points[k]) throw EvalAtCharge("eval_deep_forward: z hits a charge point");
    expo += charges(static_cast<Eigen::Index>(k)) * std::log((z - charge_points[k]) / (z - z_c1));
  }
  return (z - z_c1) * std::exp(expo);
}

double DeepForwardMap::charge_sum_residual() const {
  return std::abs(charges.sum());
}

DeepForwardMap solve_deep_forward(const CollocationSet& set, cplx z_c1, double offset_factor) {
  const int n = static_cast<int>(set.points.size());
  if (n < 4) throw Error("solve_deep_forward: need at least 4 collocation points");

  if (geometry::winding_number(set.points, z_c1) == 0)
    throw NormalizationPointOutside("solve_deep_forward: z_c1 not enclosed by the cavity");

  DeepForwardMap map;
  map.z_c1 = z_c1;
  map.offset_factor = offset_factor;
  map.collocation = set.points;
  map.charge_points = geometry::charge_points(set.points, offset_factor);

  // Collocation rows: sum_k Q_k ln|z_i - Z_k| + Gamma = -ln|z_i - z_c1|,
  // plus the zero-total-charge constraint row.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Eigen::VectorXd b(n + 1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k)
      A(i, k) = std::log(std::abs(set.points[static_cast<size_t>(i)] -
                                  map.charge_points[static_cast<size_t>(k)]));
    A(i, n) = 1.0;
    b(i) = -std::log(std::abs(set.points[static_cast<size_t>(i)] - z_c1));
  }
  for (int k = 0; k < n; ++k) A(n, k) = 1.0;
  b(n) = 0.0;

  map.cond = numerics::condition_number(A, "C_Nf_d");
  const Eigen::VectorXd x = numerics::solve_dense(A, b);
  map.charges = x.head(n);
  map.log_scale = x(n);
  return map;
}

cplx DeepBackwardMap::eval(cplx zeta) const {
  cplx acc = p_m1 * zeta + p_0;
  for (size_t k = 0; k < poles.size(); ++k) {
    if (zeta == poles[k]) throw EvalAtSingularity("eval_deep_backward: zeta hits a pole");
    acc += coeffs(static_cast<Eigen::Index>(k)) / (zeta - poles[k]);
  }
  return acc;
}

cplx DeepBackwardMap::deriv(cplx zeta) const {
  cplx acc = p_m1;
  for (size_t k = 0; k < poles.size(); ++k) {
    const cplx d = zeta - poles[k];
    if (d == 0.0) throw EvalAtSingularity("deep backward derivative at a pole");
    acc -= coeffs(static_cast<Eigen::Index>(k)) / (d * d);
  }
  return acc;
}

DeepBackwardMap solve_deep_backward(const DeepForwardMap& fwd, double offset_factor) {
  const int n = static_cast<int>(fwd.collocation.size());
  if (n < 4) throw Error("solve_deep_backward: need at least 4 points");

  std::vector<cplx> images(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<size_t>(i)] = fwd.eval(fwd.collocation[static_cast<size_t>(i)]);

  // Amano placement applied to the mapped collocation images; the image
  // loop is clockwise, so the offsets land inside the unit circle.
  std::vector<cplx> poles_all = geometry::charge_points(images, offset_factor);
  DeepBackwardMap map;
  map.offset_factor = offset_factor;
  map.poles.assign(poles_all.begin(), poles_all.begin() + (n - 2));
  for (const cplx& p : map.poles)
    if (std::abs(p) >= 1.0)
      throw Error("solve_deep_backward: singular point outside the unit disk");

  Eigen::MatrixXcd A(n, n);
  Eigen::VectorXcd b(n);
  for (int i = 0; i < n; ++i) {
    const cplx zi = images[static_cast<size_t>(i)];
    A(i, 0) = zi;
    A(i, 1) = 1.0;
    for (int k = 0; k < n - 2; ++k) A(i, k + 2) = 1.0 / (zi - map.poles[static_cast<size_t>(k)]);
    b(i) = fwd.collocation[static_cast<size_t>(i)];
  }
  map.cond = numerics::condition_number(A, "C_Nb_d");
  const Eigen::VectorXcd x = numerics::solve_dense(A, b);
  map.p_m1 = x(0);
  map.p_0 = x(1);
  map.coeffs = x.segment(2, n - 2);
  return map;
}

cplx DeepBackwardPowerMap::eval(cplx zeta) const {
  cplx acc = coeffs(0) * zeta + coeffs(1);
  cplx zpow = 1.0;
  for (Eigen::Index k = 2; k < coeffs.size(); ++k) {
    zpow /= zeta;
    acc += coeffs(k) * zpow;
  }
  return acc;
}

DeepBackwardPowerMap solve_deep_backward_power(const DeepForwardMap& fwd) {
  const int n = static_cast<int>(fwd.collocation.size());
  Eigen::MatrixXcd A(n, n);
  Eigen::VectorXcd b(n);
  for (int i = 0; i < n; ++i) {
    const cplx zi = fwd.eval(fwd.collocation[static_cast<size_t>(i)]);
    A(i, 0) = zi;
    A(i, 1) = 1.0;
    cplx zpow = 1.0;
    for (int k = 2; k < n; ++k) {
      zpow /= zi;
      A(i, k) = zpow;
    }
    b(i) = fwd.collocation[static_cast<size_t>(i)];
  }
  DeepBackwardPowerMap map;
  map.cond = numerics::condition_number(A, "C_Nb_d_power");
  map.coeffs = numerics::solve_dense(A, b);
  return map;
}

}  // namespace csmap::deep
