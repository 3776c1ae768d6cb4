#include "csmap/diagnostics.hpp"

#include <cmath>
#include <functional>

namespace csmap::diag {

using geometry::CollocationSet;

MappingErrorReport deep_error_report(const deep::DeepForwardMap& fwd,
                                     const deep::DeepBackwardMap& bwd,
                                     const CollocationSet& set) {
  const size_t n = set.points.size();
  MappingErrorReport rep;
  rep.per_point_f.resize(n);
  rep.per_point_b.resize(n);
  for (size_t k = 0; k < n; ++k) {
    const cplx mid = set.midpoint_on_curve(k);
    const cplx zeta = fwd.eval(mid);
    rep.per_point_f[k] = std::abs(std::abs(zeta) - 1.0);
    rep.eps_f_literal = std::max(rep.eps_f_literal, std::abs(zeta - 1.0));
    rep.per_point_b[k] = std::abs(bwd.eval(zeta) - mid);
    rep.eps_f = std::max(rep.eps_f, rep.per_point_f[k]);
    rep.eps_b = std::max(rep.eps_b, rep.per_point_b[k]);
  }
  rep.conds = {fwd.cond, bwd.cond};
  return rep;
}

MappingErrorReport shallow_error_report(const shallow::ShallowCompositeMap& map) {
  MappingErrorReport rep;
  rep.shallow = true;

  // Exterior boundary lives exactly on |w| = beta, so the true-curve
  // midpoints are the angular midpoints.
  const auto& ext = map.fwd2.colloc_ext;
  const size_t n1 = ext.size();
  rep.per_point_fe.resize(n1);
  rep.per_point_be.resize(n1);
  const double beta = std::abs(map.mobius.beta);
  for (size_t k = 0; k < n1; ++k) {
    const double a0 = std::arg(ext[k]);
    double a1 = std::arg(ext[(k + 1) % n1]);
    double d = a1 - a0;
    while (d <= -pi) d += 2 * pi;
    while (d > pi) d -= 2 * pi;
    const cplx mid = beta * std::polar(1.0, a0 + 0.5 * d);
    const cplx zeta = map.fwd2.eval(mid);
    rep.per_point_fe[k] = std::abs(std::abs(zeta) - map.fwd2.r_o);
    rep.eps_fe_literal = std::max(rep.eps_fe_literal, std::abs(zeta - map.fwd2.r_o));
    rep.per_point_be[k] = std::abs(map.bwd2.eval(zeta) - mid);
    rep.eps_fe = std::max(rep.eps_fe, rep.per_point_fe[k]);
    rep.eps_be = std::max(rep.eps_be, rep.per_point_be[k]);
  }

  // Interior boundary midpoints are taken in the physical plane and run
  // through the whole composite, as the second-step collocation only
  // sees Mobius images.
  const size_t n2 = map.cavity.points.size();
  rep.per_point_fi.resize(n2);
  rep.per_point_bi.resize(n2);
  for (size_t k = 0; k < n2; ++k) {
    const cplx mid = map.cavity.midpoint_on_curve(k);
    const cplx zeta = map.forward(mid);
    rep.per_point_fi[k] = std::abs(std::abs(zeta) - map.fwd2.r_i);
    rep.eps_fi_literal = std::max(rep.eps_fi_literal, std::abs(zeta - map.fwd2.r_i));
    rep.per_point_bi[k] = std::abs(map.backward(zeta) - mid);
    rep.eps_fi = std::max(rep.eps_fi, rep.per_point_fi[k]);
    rep.eps_bi = std::max(rep.eps_bi, rep.per_point_bi[k]);
  }

  rep.conds = {map.fwd2.cond, map.bwd2.cond};
  return rep;
}

namespace {

// Sample a parametric curve densely enough that adjacent image points
// stay below max_step, bisecting up to a refinement cap.
std::vector<cplx> sample_curve(const std::function<cplx(double)>& f, double t0, double t1,
                               int initial, double max_step) {
  std::vector<double> ts;
  ts.reserve(static_cast<size_t>(initial) + 1);
  for (int i = 0; i <= initial; ++i) ts.push_back(t0 + (t1 - t0) * i / initial);

  std::vector<cplx> pts;
  pts.reserve(ts.size());
  for (double t : ts) pts.push_back(f(t));

  for (int pass = 0; pass < 8; ++pass) {
    bool refined = false;
    std::vector<double> nts;
    std::vector<cplx> npts;
    nts.push_back(ts[0]);
    npts.push_back(pts[0]);
    for (size_t i = 1; i < ts.size(); ++i) {
      if (std::abs(pts[i] - pts[i - 1]) > max_step) {
        const double tm = 0.5 * (ts[i] + ts[i - 1]);
        nts.push_back(tm);
        npts.push_back(f(tm));
        refined = true;
      }
      nts.push_back(ts[i]);
      npts.push_back(pts[i]);
    }
    ts.swap(nts);
    pts.swap(npts);
    if (!refined) break;
  }
  return pts;
}

template <typename Backward>
GridPullback pullback_impl(const Backward& back, int rho_count, int theta_count,
                           double rho_min, double rho_max, double diameter) {
  if (rho_count < 1 || theta_count < 1) throw Error("grid_pullback: counts must be >= 1");
  GridPullback grid;
  const double max_step = 0.01 * diameter;
  int id = 0;
  for (int i = 0; i < rho_count; ++i) {
    const double rho = rho_count == 1 ? rho_min
                                      : rho_min + (rho_max - rho_min) * i / (rho_count - 1);
    auto f = [&](double th) { return back(rho * std::polar(1.0, th)); };
    grid.lines.push_back({sample_curve(f, 0.0, 2.0 * pi, 128, max_step), id++, 'r'});
  }
  for (int j = 0; j < theta_count; ++j) {
    const double th = 2.0 * pi * j / theta_count;
    auto f = [&](double rho) { return back(rho * std::polar(1.0, th)); };
    grid.lines.push_back({sample_curve(f, rho_min, rho_max, 64, max_step), id++, 't'});
  }
  return grid;
}

}  // namespace

GridPullback grid_pullback(const deep::DeepBackwardMap& map, int rho_count, int theta_count,
                           double rho_min, double rho_max) {
  if (rho_min < 1.0 || rho_max < rho_min)
    throw RangeOutsideDomain("grid_pullback: deep map needs 1 <= rho_min <= rho_max");
  // Estimate the physical extent from the unit-circle image.
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < 64; ++i) {
    const cplx z = map.eval(std::polar(1.0, 2.0 * pi * i / 64));
    lo = std::min({lo, z.real(), z.imag()});
    hi = std::max({hi, z.real(), z.imag()});
  }
  const double diam = (hi - lo) * rho_max;
  return pullback_impl([&](cplx zeta) { return map.eval(zeta); }, rho_count, theta_count,
                       rho_min, rho_max, diam);
}

GridPullback grid_pullback(const shallow::ShallowCompositeMap& map, int rho_count,
                           int theta_count, double rho_min, double rho_max) {
  if (rho_min < map.fwd2.r_i * (1.0 - 1e-9) || rho_max > map.fwd2.r_o * (1.0 + 1e-9) ||
      rho_max < rho_min)
    throw RangeOutsideDomain("grid_pullback: rho range outside [r_i, r_o]");
  double diam = 0.0;
  for (const cplx& p : map.cavity.points) diam = std::max(diam, 4.0 * std::abs(p));
  return pullback_impl([&](cplx zeta) { return map.backward(zeta); }, rho_count, theta_count,
                       rho_min, rho_max, diam);
}

}  // namespace csmap::diag
