#include "csmap/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace csmap::geometry {

namespace {

constexpr double kCornerThresholdDeg = 10.0;  // same rule as the quality check

double wrap_pm_pi(double a) {
  a = std::fmod(a, 2.0 * pi);
  if (a > pi) a -= 2.0 * pi;
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

// Signed angular sweep of an arc-like segment. Zero raw sweep means a
// full turn in the traversal direction.
double signed_sweep(double start, double end, Orientation o) {
  double raw = std::fmod(end - start, 2.0 * pi);
  if (o == Orientation::ccw) {
    if (raw <= 0.0) raw += 2.0 * pi;
  } else {
    if (raw >= 0.0) raw -= 2.0 * pi;
  }
  return raw;
}

cplx ellipse_point(const EllipticArc& e, double tau) {
  return e.center + cplx(e.semi_x * std::cos(tau), e.semi_y * std::sin(tau));
}

cplx ellipse_velocity(const EllipticArc& e, double tau) {
  return {-e.semi_x * std::sin(tau), e.semi_y * std::cos(tau)};
}

// Cumulative arc length of an elliptic arc at uniform parameter steps.
struct EllipseTable {
  std::vector<double> tau;
  std::vector<double> cumlen;

  explicit EllipseTable(const EllipticArc& e, int intervals = 4096) {
    const double sweep = signed_sweep(e.start_param, e.end_param, e.orientation);
    tau.resize(static_cast<size_t>(intervals) + 1);
    cumlen.resize(tau.size());
    double acc = 0.0;
    cplx prev_v = ellipse_velocity(e, e.start_param);
    tau[0] = e.start_param;
    cumlen[0] = 0.0;
    for (int i = 1; i <= intervals; ++i) {
      const double t = e.start_param + sweep * i / intervals;
      const cplx v = ellipse_velocity(e, t);
      acc += 0.5 * (std::abs(prev_v) + std::abs(v)) * std::abs(sweep) / intervals;
      tau[static_cast<size_t>(i)] = t;
      cumlen[static_cast<size_t>(i)] = acc;
      prev_v = v;
    }
  }

  double param_at(double s) const {
    s = std::clamp(s, 0.0, cumlen.back());
    const auto it = std::lower_bound(cumlen.begin(), cumlen.end(), s);
    if (it == cumlen.begin()) return tau.front();
    const size_t i = static_cast<size_t>(it - cumlen.begin());
    const double s0 = cumlen[i - 1], s1 = cumlen[i];
    const double f = s1 > s0 ? (s - s0) / (s1 - s0) : 0.0;
    return tau[i - 1] + f * (tau[i] - tau[i - 1]);
  }
};

}  // namespace

cplx seg_start(const Segment& s) { return seg_point(s, 0.0); }
cplx seg_end(const Segment& s) { return seg_point(s, 1.0); }

cplx seg_point(const Segment& s, double t) {
  return std::visit(
      [t](const auto& seg) -> cplx {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, Arc>) {
          const double sweep = signed_sweep(seg.start_angle, seg.end_angle, seg.orientation);
          return seg.center + seg.radius * std::polar(1.0, seg.start_angle + t * sweep);
        } else if constexpr (std::is_same_v<T, Line>) {
          return seg.from + t * (seg.to - seg.from);
        } else {
          const double sweep = signed_sweep(seg.start_param, seg.end_param, seg.orientation);
          return ellipse_point(seg, seg.start_param + t * sweep);
        }
      },
      s);
}

cplx seg_tangent(const Segment& s, double t) {
  return std::visit(
      [t](const auto& seg) -> cplx {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, Arc>) {
          const double sweep = signed_sweep(seg.start_angle, seg.end_angle, seg.orientation);
          const cplx v = cplx(0, 1) * std::polar(1.0, seg.start_angle + t * sweep);
          return sweep > 0 ? v : -v;
        } else if constexpr (std::is_same_v<T, Line>) {
          const cplx d = seg.to - seg.from;
          const double len = std::abs(d);
          if (len == 0.0) throw DegenerateSegment("tangent of zero-length line");
          return d / len;
        } else {
          const double sweep = signed_sweep(seg.start_param, seg.end_param, seg.orientation);
          const cplx v = ellipse_velocity(seg, seg.start_param + t * sweep);
          const double len = std::abs(v);
          if (len == 0.0) throw DegenerateSegment("tangent of degenerate elliptic arc");
          return sweep > 0 ? v / len : -v / len;
        }
      },
      s);
}

double seg_length(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> double {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, Arc>) {
          return seg.radius * std::abs(signed_sweep(seg.start_angle, seg.end_angle, seg.orientation));
        } else if constexpr (std::is_same_v<T, Line>) {
          return std::abs(seg.to - seg.from);
        } else {
          return EllipseTable(seg).cumlen.back();
        }
      },
      s);
}

double seg_param_at_arclength(const Segment& s, double arclen) {
  return std::visit(
      [arclen, &s](const auto& seg) -> double {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, EllipticArc>) {
          const EllipseTable table(seg);
          const double sweep = signed_sweep(seg.start_param, seg.end_param, seg.orientation);
          return (table.param_at(arclen) - seg.start_param) / sweep;
        } else {
          const double len = seg_length(s);
          return len > 0 ? std::clamp(arclen / len, 0.0, 1.0) : 0.0;
        }
      },
      s);
}

cplx seg_point_at_arclength(const Segment& s, double arclen) {
  return seg_point(s, seg_param_at_arclength(s, arclen));
}

Segment seg_trim(const Segment& s, double cut_start, double cut_end) {
  const double len = seg_length(s);
  if (cut_start < 0 || cut_end < 0 || cut_start + cut_end >= len)
    throw FilletTooLarge("trim exceeds segment length");
  return std::visit(
      [&](const auto& seg) -> Segment {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, Arc>) {
          const double sweep = signed_sweep(seg.start_angle, seg.end_angle, seg.orientation);
          const double sgn = sweep > 0 ? 1.0 : -1.0;
          Arc out = seg;
          out.start_angle = seg.start_angle + sgn * cut_start / seg.radius;
          out.end_angle = seg.start_angle + sweep - sgn * cut_end / seg.radius;
          return out;
        } else if constexpr (std::is_same_v<T, Line>) {
          const cplx d = (seg.to - seg.from) / len;
          return Line{seg.from + d * cut_start, seg.to - d * cut_end};
        } else {
          const EllipseTable table(seg);
          EllipticArc out = seg;
          out.start_param = table.param_at(cut_start);
          out.end_param = table.param_at(len - cut_end);
          return out;
        }
      },
      s);
}

Segment seg_reversed(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> Segment {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, Arc>) {
          Arc out = seg;
          std::swap(out.start_angle, out.end_angle);
          out.orientation = seg.orientation == Orientation::ccw ? Orientation::cw : Orientation::ccw;
          return out;
        } else if constexpr (std::is_same_v<T, Line>) {
          return Line{seg.to, seg.from};
        } else {
          EllipticArc out = seg;
          std::swap(out.start_param, out.end_param);
          out.orientation = seg.orientation == Orientation::ccw ? Orientation::cw : Orientation::ccw;
          return out;
        }
      },
      s);
}

double BoundarySpec::perimeter() const {
  double acc = 0.0;
  for (const auto& s : segments) acc += seg_length(s);
  return acc;
}

double BoundarySpec::diameter() const {
  std::vector<cplx> samples;
  for (const auto& s : segments)
    for (int i = 0; i < 16; ++i) samples.push_back(seg_point(s, i / 16.0));
  double best = 0.0;
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j)
      best = std::max(best, std::abs(samples[i] - samples[j]));
  return best;
}

namespace {

std::vector<cplx> polygonize(const BoundarySpec& spec, int per_segment = 64) {
  std::vector<cplx> pts;
  for (const auto& s : spec.segments)
    for (int i = 0; i < per_segment; ++i)
      pts.push_back(seg_point(s, static_cast<double>(i) / per_segment));
  return pts;
}

void validate_closure(const BoundarySpec& spec) {
  const double tol = 1e-12 * std::max(spec.diameter(), 1e-300);
  const size_t n = spec.segments.size();
  for (size_t i = 0; i < n; ++i) {
    const cplx gap = seg_end(spec.segments[i]) - seg_start(spec.segments[(i + 1) % n]);
    if (std::abs(gap) > tol)
      throw GapError("boundary loop not closed at segment " + std::to_string(i) +
                     " (gap " + std::to_string(std::abs(gap)) + ")");
  }
}

}  // namespace

BoundarySpec build_boundary(std::vector<Segment> segments) {
  if (segments.empty()) throw Error("build_boundary: empty segment list");

  BoundarySpec spec;
  spec.segments = std::move(segments);
  spec.fillet.assign(spec.segments.size(), 0);

  const double diam = spec.diameter();
  for (size_t i = 0; i < spec.segments.size(); ++i)
    if (seg_length(spec.segments[i]) <= 1e-12 * diam)
      throw DegenerateSegment("zero-length segment at index " + std::to_string(i));

  validate_closure(spec);

  // Cavity convention: clockwise traversal, geomaterial on the left.
  if (polygon_signed_area(polygonize(spec)) > 0.0) {
    std::vector<Segment> rev;
    rev.reserve(spec.segments.size());
    for (auto it = spec.segments.rbegin(); it != spec.segments.rend(); ++it)
      rev.push_back(seg_reversed(*it));
    spec.segments = std::move(rev);
    spec.reversed_on_build = true;
  }
  return spec;
}

BoundarySpec round_corners(const BoundarySpec& spec, double fillet_radius) {
  if (fillet_radius <= 0.0) throw Error("round_corners: fillet_radius must be > 0");
  const size_t n = spec.segments.size();
  const double threshold = kCornerThresholdDeg * pi / 180.0;

  struct Junction {
    bool corner = false;
    double turn = 0.0;
    double cut_end = 0.0;    // trim on the incoming segment
    double cut_start = 0.0;  // trim on the outgoing segment
    Arc fillet;
  };
  std::vector<Junction> junctions(n);

  bool any = false;
  for (size_t j = 0; j < n; ++j) {
    const Segment& a = spec.segments[j];
    const Segment& b = spec.segments[(j + 1) % n];
    const double turn = wrap_pm_pi(std::arg(seg_tangent(b, 0.0)) - std::arg(seg_tangent(a, 1.0)));
    if (std::abs(turn) <= threshold) continue;

    any = true;
    const double la = seg_length(a), lb = seg_length(b);
    const double sgn = turn > 0 ? 1.0 : -1.0;

    // Tangency: fillet center seen from both curves at distance r along
    // the turn-side normal. Newton on the two trim lengths.
    auto center_from_a = [&](double s) {
      const double t = seg_param_at_arclength(a, la - s);
      return seg_point(a, t) + fillet_radius * sgn * cplx(0, 1) * seg_tangent(a, t);
    };
    auto center_from_b = [&](double s) {
      const double t = seg_param_at_arclength(b, s);
      return seg_point(b, t) + fillet_radius * sgn * cplx(0, 1) * seg_tangent(b, t);
    };

    double sa = fillet_radius * std::tan(std::abs(turn) / 2.0);
    double sb = sa;
    const double h = 1e-7 * std::max(fillet_radius, 1.0);
    bool ok = false;
    for (int iter = 0; iter < 60; ++iter) {
      const cplx f = center_from_a(sa) - center_from_b(sb);
      if (std::abs(f) < 1e-13 * fillet_radius) {
        ok = true;
        break;
      }
      const cplx dfa = (center_from_a(sa + h) - center_from_a(sa - h)) / (2 * h);
      const cplx dfb = -(center_from_b(sb + h) - center_from_b(sb - h)) / (2 * h);
      // 2x2 real Newton step
      const double det = dfa.real() * dfb.imag() - dfb.real() * dfa.imag();
      if (std::abs(det) < 1e-30) break;
      const double dsa = (f.real() * dfb.imag() - dfb.real() * f.imag()) / det;
      const double dsb = (dfa.real() * f.imag() - f.real() * dfa.imag()) / det;
      sa = std::clamp(sa - dsa, 0.0, 0.75 * la);
      sb = std::clamp(sb - dsb, 0.0, 0.75 * lb);
    }
    if (!ok) throw Error("round_corners: fillet construction failed to converge");
    if (sa > 0.5 * la || sb > 0.5 * lb)
      throw FilletTooLarge("fillet radius exceeds adjacent segment capacity");

    Junction& jn = junctions[j];
    jn.corner = true;
    jn.turn = turn;
    jn.cut_end = sa;
    jn.cut_start = sb;
    const cplx c = center_from_a(sa);
    const cplx pa = seg_point_at_arclength(a, la - sa);
    const cplx pb = seg_point_at_arclength(b, sb);
    jn.fillet = Arc{c, fillet_radius, std::arg(pa - c), std::arg(pb - c),
                    turn > 0 ? Orientation::ccw : Orientation::cw};
  }

  if (!any) return spec;

  BoundarySpec out;
  for (size_t j = 0; j < n; ++j) {
    const double cut_start = junctions[(j + n - 1) % n].corner ? junctions[(j + n - 1) % n].cut_start : 0.0;
    const double cut_end = junctions[j].corner ? junctions[j].cut_end : 0.0;
    Segment s = (cut_start > 0 || cut_end > 0) ? seg_trim(spec.segments[j], cut_start, cut_end)
                                               : spec.segments[j];
    out.segments.push_back(std::move(s));
    out.fillet.push_back(j < spec.fillet.size() ? spec.fillet[j] : 0);
    if (junctions[j].corner) {
      out.segments.push_back(junctions[j].fillet);
      out.fillet.push_back(1);
    }
  }
  out.reversed_on_build = spec.reversed_on_build;
  validate_closure(out);
  return out;
}

CollocationSet discretize(const BoundarySpec& spec, std::span<const int> counts) {
  if (counts.size() != spec.segments.size())
    throw Error("discretize: counts size must match segment count");
  for (int c : counts)
    if (c < 1) throw Error("discretize: counts must be >= 1");

  CollocationSet set;
  set.source = std::make_shared<BoundarySpec>(spec);
  double base = 0.0;
  for (size_t j = 0; j < spec.segments.size(); ++j) {
    const Segment& s = spec.segments[j];
    const double len = seg_length(s);
    const int nj = counts[j];
    const bool needs_table = std::holds_alternative<EllipticArc>(s);
    std::optional<EllipseTable> table;
    if (needs_table) table.emplace(std::get<EllipticArc>(s));
    for (int i = 0; i < nj; ++i) {
      const double frac = static_cast<double>(i) / nj;
      cplx p;
      if (needs_table) {
        const auto& e = std::get<EllipticArc>(s);
        p = ellipse_point(e, table->param_at(frac * len));
      } else {
        p = seg_point(s, frac);
      }
      set.points.push_back(p);
      set.segment_index.push_back(static_cast<int>(j));
      set.arclen.push_back(base + frac * len);
    }
    base += len;
  }
  set.total_length = base;
  return set;
}

std::vector<int> default_counts(const BoundarySpec& spec, double target_spacing) {
  if (target_spacing <= 0) throw Error("default_counts: spacing must be > 0");
  const size_t n = spec.segments.size();
  std::vector<int> counts(n);
  std::vector<double> lens(n);
  for (size_t j = 0; j < n; ++j) {
    lens[j] = seg_length(spec.segments[j]);
    counts[j] = std::max(1, static_cast<int>(std::lround(lens[j] / target_spacing)));
  }
  // Densify fillets to half the smaller adjacent spacing.
  for (size_t j = 0; j < n; ++j) {
    if (j >= spec.fillet.size() || !spec.fillet[j]) continue;
    const size_t prev = (j + n - 1) % n, next = (j + 1) % n;
    const double sp_prev = lens[prev] / counts[prev];
    const double sp_next = lens[next] / counts[next];
    const double sp = 0.5 * std::min(sp_prev, sp_next);
    counts[j] = std::max(counts[j], static_cast<int>(std::ceil(lens[j] / sp)));
  }
  return counts;
}

cplx CollocationSet::midpoint_on_curve(size_t k) const {
  const size_t n = points.size();
  const size_t k1 = (k + 1) % n;
  if (!source || segment_index[k] < 0 || !closed)
    return 0.5 * (points[k] + points[k1]);

  double gap = (k1 == 0 ? total_length : arclen[k1]) - arclen[k];
  double target = arclen[k] + 0.5 * gap;
  if (target >= total_length) target -= total_length;

  double base = 0.0;
  for (const auto& s : source->segments) {
    const double len = seg_length(s);
    if (target <= base + len || &s == &source->segments.back())
      return seg_point_at_arclength(s, std::clamp(target - base, 0.0, len));
    base += len;
  }
  return 0.5 * (points[k] + points[k1]);
}

QualityReport quality_check(const CollocationSet& set) {
  const size_t n = set.points.size();
  if (n < 8) throw Error("quality_check: need at least 8 points");

  std::vector<double> chord_angle(n), chord_len(n);
  double perim = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const cplx d = set.points[(k + 1) % n] - set.points[k];
    chord_angle[k] = std::arg(d);
    chord_len[k] = std::abs(d);
    perim += chord_len[k];
  }

  QualityReport rep;
  rep.angle_variation_deg.resize(n);
  rep.relative_distance.resize(n);
  for (size_t k = 0; k < n; ++k) {
    const double dv = wrap_pm_pi(chord_angle[k] - chord_angle[(k + n - 1) % n]);
    rep.angle_variation_deg[k] = dv * 180.0 / pi;
    rep.relative_distance[k] = chord_len[k] / perim;
    rep.max_angle_variation_deg = std::max(rep.max_angle_variation_deg, std::abs(rep.angle_variation_deg[k]));
    rep.max_relative_distance = std::max(rep.max_relative_distance, rep.relative_distance[k]);
  }
  rep.angle_pass = rep.max_angle_variation_deg <= kCornerThresholdDeg;
  rep.distance_pass = rep.max_relative_distance <= 1e-2;
  rep.pass = rep.angle_pass && rep.distance_pass;
  return rep;
}

std::vector<cplx> charge_points(std::span<const cplx> points, double offset_factor) {
  if (offset_factor <= 0) throw Error("charge_points: offset_factor must be > 0");
  const size_t n = points.size();
  if (n < 3) throw Error("charge_points: need at least 3 points");
  std::vector<cplx> out(n);
  for (size_t k = 0; k < n; ++k) {
    const cplx prev = points[(k + n - 1) % n];
    const cplx next = points[(k + 1) % n];
    const double h = 0.5 * (std::abs(next - points[k]) + std::abs(points[k] - prev));
    const double theta = std::arg(next - prev) - pi / 2.0;
    out[k] = points[k] + offset_factor * h * std::polar(1.0, theta);
  }
  return out;
}

CollocationSet translate(const CollocationSet& set, cplx shift) {
  CollocationSet out = set;
  for (auto& p : out.points) p += shift;
  if (set.source) {
    auto moved = std::make_shared<BoundarySpec>(*set.source);
    for (auto& s : moved->segments) {
      std::visit(
          [shift](auto& seg) {
            using T = std::decay_t<decltype(seg)>;
            if constexpr (std::is_same_v<T, Arc>) {
              seg.center += shift;
            } else if constexpr (std::is_same_v<T, Line>) {
              seg.from += shift;
              seg.to += shift;
            } else {
              seg.center += shift;
            }
          },
          s);
    }
    out.source = std::move(moved);
  }
  return out;
}

double polygon_signed_area(std::span<const cplx> points) {
  const size_t n = points.size();
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const cplx a = points[i], b = points[(i + 1) % n];
    acc += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * acc;
}

int winding_number(std::span<const cplx> polygon, cplx z) {
  const size_t n = polygon.size();
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const cplx a = polygon[i] - z, b = polygon[(i + 1) % n] - z;
    total += wrap_pm_pi(std::arg(b) - std::arg(a));
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

}  // namespace csmap::geometry
