#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "csmap/types.hpp"

namespace csmap::numerics {

/// 2-norm condition number of a solved system matrix, kept with every map
/// so runs can report the stability of each solve.
struct ConditionReport {
  double cond = 0.0;   // s_max / s_min, +inf when s_min underflows to 0
  double s_max = 0.0;  // largest singular value
  double s_min = 0.0;  // smallest singular value
  std::string label;   // which system this belongs to, e.g. "C_Nf_d"
};

struct DenseSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
};

struct DenseSystemC {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
};

/// LU solve with partial pivoting. Throws SingularMatrix when a pivot
/// falls below a machine-scaled threshold.
Eigen::VectorXd solve_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);
Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b);
inline Eigen::VectorXd solve_dense(const DenseSystem& sys) { return solve_dense(sys.matrix, sys.rhs); }
inline Eigen::VectorXcd solve_dense(const DenseSystemC& sys) { return solve_dense(sys.matrix, sys.rhs); }

ConditionReport condition_number(const Eigen::MatrixXd& A, std::string label = {});
ConditionReport condition_number(const Eigen::MatrixXcd& A, std::string label = {});

/// Fourier coefficients c_k, k in [k_min, k_max], of M uniform samples on
/// the unit circle: c_k = (1/M) sum_m samples[m] * sigma_m^{-k} with
/// sigma_m = exp(2*pi*i*m/M). Exact for trigonometric polynomials of
/// degree < M/2. Throws AliasWarning when |k| > M/2 - 1.
std::vector<cplx> fourier_coeffs(std::span<const cplx> samples, int k_min, int k_max);

/// Single Fourier coefficient, same convention as fourier_coeffs.
cplx fourier_coeff(std::span<const cplx> samples, int k);

/// Plain CSM solution of a Dirichlet problem of Laplace's equation:
/// G(z) = sum Q_k ln|z - Z_k| matching boundary data at the collocation
/// points. Reference solver used as a test anchor for the mapping solves.
struct DirichletCsm {
  std::vector<cplx> charge_points;
  Eigen::VectorXd charges;
  ConditionReport cond;

  double eval(cplx z) const;
};

DirichletCsm solve_dirichlet_csm(std::span<const cplx> boundary_points,
                                 std::span<const double> data,
                                 double offset_factor);

}  // namespace csmap::numerics
