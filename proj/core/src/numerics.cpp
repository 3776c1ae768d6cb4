#include "csmap/numerics.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

namespace csmap::numerics {

namespace {

template <typename Matrix, typename Vector>
Vector lu_solve(const Matrix& A, const Vector& b) {
  if (A.rows() != A.cols()) throw Error("solve_dense: matrix not square");
  if (A.rows() != b.size()) throw Error("solve_dense: rhs size mismatch");
  if (!A.allFinite() || !b.allFinite()) throw Error("solve_dense: non-finite entries");

  Eigen::PartialPivLU<Matrix> lu(A);
  const auto& U = lu.matrixLU();
  double u_max = 0.0, u_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    const double p = std::abs(U(i, i));
    u_max = std::max(u_max, p);
    u_min = std::min(u_min, p);
  }
  if (u_min <= u_max * A.rows() * std::numeric_limits<double>::epsilon())
    throw SingularMatrix("solve_dense: pivot below machine-scaled threshold");
  return lu.solve(b);
}

template <typename Matrix>
ConditionReport svd_condition(const Matrix& A, std::string label) {
  if (A.rows() != A.cols()) throw Error("condition_number: matrix not square");
  Eigen::JacobiSVD<Matrix> svd(A);
  const auto& s = svd.singularValues();
  ConditionReport rep;
  rep.label = std::move(label);
  rep.s_max = s(0);
  rep.s_min = s(s.size() - 1);
  rep.cond = rep.s_min > 0.0 ? rep.s_max / rep.s_min
                             : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace

Eigen::VectorXd solve_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  return lu_solve(A, b);
}

Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
  return lu_solve(A, b);
}

ConditionReport condition_number(const Eigen::MatrixXd& A, std::string label) {
  return svd_condition(A, std::move(label));
}

ConditionReport condition_number(const Eigen::MatrixXcd& A, std::string label) {
  return svd_condition(A, std::move(label));
}

std::vector<cplx> fourier_coeffs(std::span<const cplx> samples, int k_min, int k_max) {
  if (k_min > k_max) throw Error("fourier_coeffs: empty k range");
  std::vector<cplx> out(static_cast<size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k)
    out[static_cast<size_t>(k - k_min)] = fourier_coeff(samples, k);
  return out;
}

cplx fourier_coeff(std::span<const cplx> samples, int k) {
  const int m_count = static_cast<int>(samples.size());
  if (m_count < 2) throw Error("fourier_coeff: need at least 2 samples");
  if (std::abs(k) > m_count / 2 - 1)
    throw AliasWarning("fourier_coeff: |k| beyond M/2-1, coefficient aliased");
  cplx acc = 0.0;
  for (int m = 0; m < m_count; ++m) {
    const double ang = -2.0 * pi * k * m / m_count;
    acc += samples[static_cast<size_t>(m)] * std::polar(1.0, ang);
  }
  return acc / static_cast<double>(m_count);
}

double DirichletCsm::eval(cplx z) const {
  double acc = 0.0;
  for (size_t k = 0; k < charge_points.size(); ++k)
    acc += charges(static_cast<Eigen::Index>(k)) * std::log(std::abs(z - charge_points[k]));
  return acc;
}

DirichletCsm solve_dirichlet_csm(std::span<const cplx> boundary_points,
                                 std::span<const double> data,
                                 double offset_factor) {
  const int n = static_cast<int>(boundary_points.size());
  if (n < 3) throw Error("solve_dirichlet_csm: need at least 3 points");
  if (data.size() != boundary_points.size())
    throw Error("solve_dirichlet_csm: data size mismatch");

  // Amano placement along the local normal, same formula the mapping
  // solves use (geometry::charge_points duplicates it for CollocationSet).
  DirichletCsm out;
  out.charge_points.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const cplx prev = boundary_points[static_cast<size_t>((k + n - 1) % n)];
    const cplx next = boundary_points[static_cast<size_t>((k + 1) % n)];
    const cplx here = boundary_points[static_cast<size_t>(k)];
    const double h = 0.5 * (std::abs(next - here) + std::abs(here - prev));
    const double theta = std::arg(next - prev) - pi / 2.0;
    out.charge_points[static_cast<size_t>(k)] = here + offset_factor * h * std::polar(1.0, theta);
  }

  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k)
      A(i, k) = std::log(std::abs(boundary_points[static_cast<size_t>(i)] -
                                  out.charge_points[static_cast<size_t>(k)]));
    b(i) = data[static_cast<size_t>(i)];
  }
  out.cond = condition_number(A, "dirichlet_csm");
  out.charges = solve_dense(A, b);
  return out;
}

}  // namespace csmap::numerics
