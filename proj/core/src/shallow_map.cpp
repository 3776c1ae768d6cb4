#include "csmap/shallow_map.hpp"

#include <cmath>

namespace csmap::shallow {

cplx MobiusMap::forward(cplx z) const {
  const cplx pole = std::conj(z_c2);
  if (z == pole) throw PoleHit("mobius_forward: z at the upper half-plane pole");
  return beta * (z - z_c2) / (z - pole);
}

cplx MobiusMap::backward(cplx w) const {
  if (w == cplx(beta, 0.0)) throw PoleHit("mobius_backward: w = beta corresponds to z = inf");
  return (w * std::conj(z_c2) - beta * z_c2) / (w - beta);
}

cplx MobiusMap::backward_deriv(cplx w) const {
  const cplx d = w - beta;
  if (d == 0.0) throw PoleHit("mobius backward derivative at w = beta");
  return beta * (z_c2 - std::conj(z_c2)) / (d * d);
}

cplx AnnulusForwardMap::eval(cplx w) const {
  // Eq-form with every logarithm referenced so its argument stays inside
  // the principal range; uses the two charge-sum constraints.
  cplx expo = 0.0;
  for (size_t k = 0; k < sources_ext.size(); ++k) {
    const cplx wk = sources_ext[k];
    if (w == wk) throw EvalAtCharge("eval_annulus_forward: w hits an exterior charge");
    expo += charges_ext(static_cast<Eigen::Index>(k)) *
            (std::log((w - wk) / (w_ref - wk)) - std::log((w_beta - wk) / (w_ref - wk)));
  }
  for (size_t k = 0; k < sources_int.size(); ++k) {
    const cplx wk = sources_int[k];
    if (w == wk) throw EvalAtCharge("eval_annulus_forward: w hits an interior charge");
    expo += charges_int(static_cast<Eigen::Index>(k)) *
            (std::log((w - wk) / w) - std::log((w_beta - wk) / w_beta));
  }
  return (w / w_beta) * std::exp(expo);
}

double AnnulusForwardMap::ext_charge_sum_residual() const {
  return std::abs(charges_ext.sum() + 1.0);
}

double AnnulusForwardMap::int_charge_sum_residual() const {
  return std::abs(charges_int.sum());
}

AnnulusForwardMap solve_annulus_forward(std::span<const cplx> exterior_pts,
                                        std::span<const cplx> interior_pts,
                                        double offset_ext, double offset_int,
                                        cplx w_beta) {
  const int n1 = static_cast<int>(exterior_pts.size());
  const int n2 = static_cast<int>(interior_pts.size());
  if (n1 < 4 || n2 < 4) throw Error("solve_annulus_forward: too few collocation points");

  if (geometry::polygon_signed_area(exterior_pts) <= 0.0)
    throw OrientationError("solve_annulus_forward: exterior boundary must be counter-clockwise");
  if (geometry::polygon_signed_area(interior_pts) >= 0.0)
    throw OrientationError("solve_annulus_forward: interior boundary must be clockwise");

  AnnulusForwardMap map;
  map.w_beta = w_beta;
  map.colloc_ext.assign(exterior_pts.begin(), exterior_pts.end());
  map.colloc_int.assign(interior_pts.begin(), interior_pts.end());
  map.sources_ext = geometry::charge_points(exterior_pts, offset_ext);
  map.sources_int = geometry::charge_points(interior_pts, offset_int);

  const double beta_r = std::abs(w_beta);
  for (const cplx& s : map.sources_ext)
    if (std::abs(s) <= beta_r)
      throw OrientationError("solve_annulus_forward: exterior charge landed inside |w| = beta");

  // Unknowns [Q_1 (n1), Q_2 (n2), ln r_o, ln r_i]; rows are the two
  // collocation families plus the two charge-sum constraints.
  const int dim = n1 + n2 + 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd b(dim);

  auto fill_row = [&](int row, cplx w, int radius_col) {
    for (int k = 0; k < n1; ++k)
      A(row, k) = std::log(std::abs((w - map.sources_ext[static_cast<size_t>(k)]) /
                                    (w_beta - map.sources_ext[static_cast<size_t>(k)])));
    for (int k = 0; k < n2; ++k)
      A(row, n1 + k) = std::log(std::abs((w - map.sources_int[static_cast<size_t>(k)]) /
                                         (w_beta - map.sources_int[static_cast<size_t>(k)])));
    A(row, radius_col) = -1.0;
    b(row) = -std::log(std::abs(w / w_beta));
  };

  for (int i = 0; i < n1; ++i) fill_row(i, exterior_pts[static_cast<size_t>(i)], n1 + n2);
  for (int j = 0; j < n2; ++j) fill_row(n1 + j, interior_pts[static_cast<size_t>(j)], n1 + n2 + 1);
  for (int k = 0; k < n1; ++k) A(n1 + n2, k) = 1.0;
  b(n1 + n2) = -1.0;
  for (int k = 0; k < n2; ++k) A(n1 + n2 + 1, n1 + k) = 1.0;
  b(n1 + n2 + 1) = 0.0;

  map.cond = numerics::condition_number(A, "C_Nf_s");
  const Eigen::VectorXd x = numerics::solve_dense(A, b);
  map.charges_ext = x.head(n1);
  map.charges_int = x.segment(n1, n2);
  map.r_o = std::exp(x(n1 + n2));
  map.r_i = std::exp(x(n1 + n2 + 1));

  // Branch reference: geometric mean radius on the ray opposite w_beta,
  // validated to sit inside the annulus.
  double max_int_radius = 0.0;
  for (const cplx& w : map.colloc_int) max_int_radius = std::max(max_int_radius, std::abs(w));
  const double r_est = std::sqrt(beta_r * max_int_radius);
  map.w_ref = -r_est * (w_beta / beta_r);
  if (std::abs(map.w_ref) >= beta_r ||
      geometry::winding_number(map.colloc_int, map.w_ref) != 0)
    throw Error("solve_annulus_forward: branch reference point not inside the annulus");

  return map;
}

cplx AnnulusBackwardMap::eval(cplx zeta) const {
  cplx acc = 0.0;
  for (size_t k = 0; k < dipoles_ext.size(); ++k) {
    if (zeta == dipoles_ext[k]) throw EvalAtSingularity("eval_annulus_backward: zeta hits a dipole");
    acc += coeffs_ext(static_cast<Eigen::Index>(k)) / (zeta - dipoles_ext[k]);
  }
  for (size_t k = 0; k < dipoles_int.size(); ++k) {
    if (zeta == dipoles_int[k]) throw EvalAtSingularity("eval_annulus_backward: zeta hits a dipole");
    acc += coeffs_int(static_cast<Eigen::Index>(k)) / (zeta - dipoles_int[k]);
  }
  return acc;
}

cplx AnnulusBackwardMap::deriv(cplx zeta) const {
  cplx acc = 0.0;
  for (size_t k = 0; k < dipoles_ext.size(); ++k) {
    const cplx d = zeta - dipoles_ext[k];
    if (d == 0.0) throw EvalAtSingularity("annulus backward derivative at a dipole");
    acc -= coeffs_ext(static_cast<Eigen::Index>(k)) / (d * d);
  }
  for (size_t k = 0; k < dipoles_int.size(); ++k) {
    const cplx d = zeta - dipoles_int[k];
    if (d == 0.0) throw EvalAtSingularity("annulus backward derivative at a dipole");
    acc -= coeffs_int(static_cast<Eigen::Index>(k)) / (d * d);
  }
  return acc;
}

AnnulusBackwardMap solve_annulus_backward(const AnnulusForwardMap& fwd2,
                                          double offset_ext, double offset_int) {
  const int n1 = static_cast<int>(fwd2.colloc_ext.size());
  const int n2 = static_cast<int>(fwd2.colloc_int.size());

  std::vector<cplx> img_ext(static_cast<size_t>(n1)), img_int(static_cast<size_t>(n2));
  for (int i = 0; i < n1; ++i) img_ext[static_cast<size_t>(i)] = fwd2.eval(fwd2.colloc_ext[static_cast<size_t>(i)]);
  for (int j = 0; j < n2; ++j) img_int[static_cast<size_t>(j)] = fwd2.eval(fwd2.colloc_int[static_cast<size_t>(j)]);

  AnnulusBackwardMap map;
  map.dipoles_ext = geometry::charge_points(img_ext, offset_ext);
  map.dipoles_int = geometry::charge_points(img_int, offset_int);
  for (const cplx& s : map.dipoles_ext)
    if (std::abs(s) <= fwd2.r_o)
      throw Error("solve_annulus_backward: exterior dipole inside the annulus");
  for (const cplx& s : map.dipoles_int)
    if (std::abs(s) >= fwd2.r_i)
      throw Error("solve_annulus_backward: interior dipole inside the annulus");

  const int dim = n1 + n2;
  Eigen::MatrixXcd A(dim, dim);
  Eigen::VectorXcd b(dim);
  auto fill_row = [&](int row, cplx zeta, cplx target) {
    for (int k = 0; k < n1; ++k) A(row, k) = 1.0 / (zeta - map.dipoles_ext[static_cast<size_t>(k)]);
    for (int k = 0; k < n2; ++k) A(row, n1 + k) = 1.0 / (zeta - map.dipoles_int[static_cast<size_t>(k)]);
    b(row) = target;
  };
  for (int i = 0; i < n1; ++i) fill_row(i, img_ext[static_cast<size_t>(i)], fwd2.colloc_ext[static_cast<size_t>(i)]);
  for (int j = 0; j < n2; ++j) fill_row(n1 + j, img_int[static_cast<size_t>(j)], fwd2.colloc_int[static_cast<size_t>(j)]);

  map.cond = numerics::condition_number(A, "C_Nb_s");
  const Eigen::VectorXcd x = numerics::solve_dense(A, b);
  map.coeffs_ext = x.head(n1);
  map.coeffs_int = x.segment(n1, n2);
  return map;
}

cplx ShallowCompositeMap::backward_deriv(cplx zeta) const {
  const cplx w = bwd2.eval(zeta);
  return mobius.backward_deriv(w) * bwd2.deriv(zeta);
}

ShallowCompositeMap solve_shallow(const geometry::CollocationSet& cavity, cplx z_c2,
                                  const ShallowOptions& opt) {
  if (z_c2.imag() >= 0.0) throw Error("solve_shallow: z_c2 must be in the lower half-plane");
  if (geometry::winding_number(cavity.points, z_c2) == 0)
    throw NormalizationPointOutside("solve_shallow: z_c2 not enclosed by the cavity");

  ShallowCompositeMap map;
  map.mobius = MobiusMap{z_c2, opt.beta};
  map.cavity = cavity;

  std::vector<cplx> ext(static_cast<size_t>(opt.n_exterior));
  for (int i = 0; i < opt.n_exterior; ++i)
    ext[static_cast<size_t>(i)] = opt.beta * std::polar(1.0, 2.0 * pi * i / opt.n_exterior);

  std::vector<cplx> interior(cavity.points.size());
  for (size_t j = 0; j < cavity.points.size(); ++j)
    interior[j] = map.mobius.forward(cavity.points[j]);

  const cplx w_beta = cplx(opt.beta, 0.0);
  map.fwd2 = solve_annulus_forward(ext, interior, opt.offset_ext, opt.offset_int, w_beta);
  map.bwd2 = solve_annulus_backward(map.fwd2, opt.offset_bwd_ext, opt.offset_bwd_int);
  return map;
}

}  // namespace csmap::shallow
