#include "obtk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "obtk/errors.hpp"
#include "obtk/format.hpp"
#include "obtk/quadrature.hpp"
#include "obtk/rng.hpp"

namespace obtk {

namespace {

constexpr double kPi = std::numbers::pi;

// Stream tags for derive_seed; fixed so that runs stay reproducible.
constexpr std::uint64_t kStreamMeasure = 0x6d65617375726531ULL;
constexpr std::uint64_t kStreamCenters = 0x63656e7465727331ULL;
constexpr std::uint64_t kStreamAnnulus = 0x616e6e756c757331ULL;

std::vector<double> parse_list(std::string_view body, std::size_t expected, std::string_view spec) {
  const auto parts = split_top_level(body, ',');
  if (parts.size() != expected) {
    throw ValidationError("domain spec '" + std::string(spec) + "' expects " +
                          std::to_string(expected) + " numbers");
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(parse_number(p));
  return out;
}

// Ray p + s*dir against the disc |y - c| < R: returns the (possibly empty) s-interval.
std::pair<double, double> ray_disc(Point p, Point dir, Point c, double R) {
  const Point d = p - c;
  const double b = dir.x * d.x + dir.y * d.y;
  const double cc = d.x * d.x + d.y * d.y - R * R;
  const double disc = b * b - cc;
  if (disc <= 0.0) return {1.0, 0.0};
  const double sq = std::sqrt(disc);
  return {-b - sq, -b + sq};
}

void clip_append(std::vector<std::pair<double, double>>& out, double a, double b, double s_max) {
  a = std::max(a, 0.0);
  b = std::min(b, s_max);
  if (b > a) out.emplace_back(a, b);
}

}  // namespace

Domain::Domain(Kind kind, std::vector<double> params, std::vector<Point> vertices, Box bbox,
               double diam, std::optional<double> exact_area)
    : kind_(kind),
      params_(std::move(params)),
      vertices_(std::move(vertices)),
      bbox_(bbox),
      diam_(diam),
      exact_area_(exact_area) {}

Domain Domain::ball(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("ball radius must be positive, got " + format_exact(radius));
  }
  const Box bbox{{center.x - radius, center.y - radius}, {center.x + radius, center.y + radius}};
  return Domain(Kind::ball, {center.x, center.y, radius}, {}, bbox, 2.0 * radius,
                kPi * radius * radius);
}

Domain Domain::box(Point lo, Point hi) {
  if (!(hi.x > lo.x && hi.y > lo.y)) throw ValidationError("box needs lo < hi in both axes");
  const Box bbox{lo, hi};
  return Domain(Kind::box, {lo.x, lo.y, hi.x, hi.y}, {}, bbox, bbox.diagonal(), bbox.area());
}

Domain Domain::cusp(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ValidationError("cusp exponent must exceed 1, got " + format_exact(gamma));
  }
  // Farthest pair is (1, 1), (1, -1).
  return Domain(Kind::cusp, {gamma}, {}, Box{{0.0, -1.0}, {1.0, 1.0}}, 2.0, 2.0 / (gamma + 1.0));
}

Domain Domain::polygon(std::vector<Point> vertices) {
  if (vertices.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
  Box bbox{vertices.front(), vertices.front()};
  double twice_area = 0.0;
  double diam = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point a = vertices[i];
    const Point b = vertices[(i + 1) % vertices.size()];
    bbox = bounding_box(bbox, Box{a, a});
    twice_area += a.x * b.y - b.x * a.y;
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      diam = std::max(diam, distance(a, vertices[j]));
    }
  }
  if (std::abs(twice_area) <= 0.0) throw ValidationError("degenerate polygon");
  return Domain(Kind::polygon, {}, std::move(vertices), bbox, diam, 0.5 * std::abs(twice_area));
}

Domain Domain::parse(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("malformed domain spec '" + std::string(spec) + "'");
  }
  const auto name = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (name == "ball") {
    const auto v = parse_list(body, 3, spec);
    return ball({v[0], v[1]}, v[2]);
  }
  if (name == "box") {
    const auto v = parse_list(body, 4, spec);
    return box({v[0], v[1]}, {v[2], v[3]});
  }
  if (name == "cusp") return cusp(parse_number(body));
  if (name == "poly") {
    std::vector<Point> verts;
    for (const auto& vtx : split_top_level(body, ';')) {
      const auto v = parse_list(vtx, 2, spec);
      verts.push_back({v[0], v[1]});
    }
    return polygon(std::move(verts));
  }
  throw ValidationError("unknown domain kind '" + std::string(name) + "'");
}

std::string Domain::spec() const {
  switch (kind_) {
    case Kind::ball:
      return "ball:" + format_exact(params_[0]) + "," + format_exact(params_[1]) + "," +
             format_exact(params_[2]);
    case Kind::box:
      return "box:" + format_exact(params_[0]) + "," + format_exact(params_[1]) + "," +
             format_exact(params_[2]) + "," + format_exact(params_[3]);
    case Kind::cusp:
      return "cusp:" + format_exact(params_[0]);
    case Kind::polygon: {
      std::string out = "poly:";
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i > 0) out += ";";
        out += format_exact(vertices_[i].x) + "," + format_exact(vertices_[i].y);
      }
      return out;
    }
  }
  return {};
}

bool Domain::contains(Point p) const {
  switch (kind_) {
    case Kind::ball: {
      const double dx = p.x - params_[0];
      const double dy = p.y - params_[1];
      return dx * dx + dy * dy < params_[2] * params_[2];
    }
    case Kind::box:
      return p.x > params_[0] && p.x < params_[2] && p.y > params_[1] && p.y < params_[3];
    case Kind::cusp:
      return p.x > 0.0 && p.x < 1.0 && std::abs(p.y) < std::pow(p.x, params_[0]);
    case Kind::polygon: {
      if (!bbox_.contains(p)) return false;
      bool inside = false;
      for (std::size_t i = 0, j = vertices_.size() - 1; i < vertices_.size(); j = i++) {
        const Point a = vertices_[i];
        const Point b = vertices_[j];
        if ((a.y > p.y) != (b.y > p.y) &&
            p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
          inside = !inside;
        }
      }
      return inside;
    }
  }
  return false;
}

std::vector<std::pair<double, double>> Domain::ray_segments(Point p, Point dir,
                                                            double s_max) const {
  std::vector<std::pair<double, double>> out;
  switch (kind_) {
    case Kind::ball: {
      const auto [a, b] = ray_disc(p, dir, {params_[0], params_[1]}, params_[2]);
      if (b > a) clip_append(out, a, b, s_max);
      return out;
    }
    case Kind::box: {
      double a = -std::numeric_limits<double>::infinity();
      double b = std::numeric_limits<double>::infinity();
      const double lo[2] = {params_[0], params_[1]};
      const double hi[2] = {params_[2], params_[3]};
      for (int axis = 0; axis < 2; ++axis) {
        const double o = p[axis];
        const double d = dir[axis];
        if (std::abs(d) < 1e-300) {
          if (o <= lo[axis] || o >= hi[axis]) return out;
          continue;
        }
        double s0 = (lo[axis] - o) / d;
        double s1 = (hi[axis] - o) / d;
        if (s0 > s1) std::swap(s0, s1);
        a = std::max(a, s0);
        b = std::min(b, s1);
      }
      if (b > a) clip_append(out, a, b, s_max);
      return out;
    }
    case Kind::polygon: {
      std::vector<double> hits;
      for (std::size_t i = 0, j = vertices_.size() - 1; i < vertices_.size(); j = i++) {
        const Point a = vertices_[j];
        const Point e = vertices_[i] - a;
        const double den = dir.x * e.y - dir.y * e.x;
        if (std::abs(den) < 1e-300) continue;
        const Point w = a - p;
        const double s = (w.x * e.y - w.y * e.x) / den;
        const double u = (w.x * dir.y - w.y * dir.x) / den;
        if (s > 0.0 && u >= 0.0 && u < 1.0) hits.push_back(s);
      }
      std::sort(hits.begin(), hits.end());
      bool inside = contains(p);
      double start = 0.0;
      for (double h : hits) {
        if (inside) clip_append(out, start, h, s_max);
        inside = !inside;
        start = h;
      }
      if (inside) clip_append(out, start, s_max, s_max);
      return out;
    }
    case Kind::cusp: {
      // Uniform scan merged with a geometric scan near the origin of the ray,
      // transitions refined by bisection.
      std::vector<double> grid;
      constexpr int kUniform = 2048;
      constexpr int kGeometric = 240;
      for (int i = 0; i <= kUniform; ++i) grid.push_back(s_max * i / kUniform);
      for (int i = 0; i < kGeometric; ++i) {
        grid.push_back(s_max * std::pow(10.0, -8.0 + 8.0 * i / kGeometric));
      }
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      auto inside_at = [&](double s) { return contains(p + s * dir); };
      auto refine = [&](double a, double b, bool a_inside) {
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (a + b);
          if (inside_at(m) == a_inside) {
            a = m;
          } else {
            b = m;
          }
        }
        return 0.5 * (a + b);
      };
      bool prev = inside_at(grid.front());
      double start = 0.0;
      for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool cur = inside_at(grid[i]);
        if (cur != prev) {
          const double edge = refine(grid[i - 1], grid[i], prev);
          if (prev) clip_append(out, start, edge, s_max);
          start = edge;
          prev = cur;
        }
      }
      if (prev) clip_append(out, start, s_max, s_max);
      return out;
    }
  }
  return out;
}

Point Domain::sample_point(Rng& rng) const {
  for (int attempt = 0; attempt < 10'000'000; ++attempt) {
    const Point p{rng.uniform(bbox_.lo.x, bbox_.hi.x), rng.uniform(bbox_.lo.y, bbox_.hi.y)};
    if (contains(p)) return p;
  }
  throw NumericalError("rejection sampling failed to hit domain " + spec());
}

DiscPattern::DiscPattern(std::size_t samples, std::uint64_t seed) {
  const std::size_t cells = std::max<std::size_t>(1, samples / 2);
  const std::size_t rings = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                         std::lround(std::sqrt(double(cells)))));
  const std::size_t sectors = std::max<std::size_t>(1, cells / rings);
  Rng rng(seed);
  points_.reserve(2 * rings * sectors);
  for (std::size_t i = 0; i < rings; ++i) {
    for (std::size_t j = 0; j < sectors; ++j) {
      for (int k = 0; k < 2; ++k) {
        const double u = (static_cast<double>(i) + rng.uniform()) / static_cast<double>(rings);
        const double th =
            2.0 * kPi * (static_cast<double>(j) + rng.uniform()) / static_cast<double>(sectors);
        const double rad = std::sqrt(u);
        points_.push_back({rad * std::cos(th), rad * std::sin(th)});
      }
    }
  }
}

MeasureEstimate measure_ball_intersection(const Domain& dom, Point center, double r,
                                          const DiscPattern& pattern) {
  if (!(r > 0.0)) throw ValidationError("radius must be positive, got " + format_exact(r));
  const auto& pts = pattern.points();
  std::size_t inside = 0;
  std::size_t split_cells = 0;
  for (std::size_t c = 0; c + 1 < pts.size(); c += 2) {
    const bool a = dom.contains(center + r * pts[c]);
    const bool b = dom.contains(center + r * pts[c + 1]);
    inside += static_cast<std::size_t>(a) + static_cast<std::size_t>(b);
    split_cells += static_cast<std::size_t>(a != b);
  }
  const double area = kPi * r * r;
  const double cells = static_cast<double>(pattern.cells());
  MeasureEstimate out;
  out.value = area * static_cast<double>(inside) / static_cast<double>(pts.size());
  // Per stratum the two-point variance estimate is (a - b)^2 / 4.
  out.std_err = area / cells * 0.5 * std::sqrt(static_cast<double>(split_cells));
  out.samples = pts.size();
  return out;
}

MeasureEstimate measure_ball_intersection(const Domain& dom, Point center, double r,
                                          const QuadratureSpec& spec) {
  spec.validate();
  const auto seed = derive_seed(spec.seed, kStreamMeasure);
  auto out = measure_ball_intersection(dom, center, r,
                                       DiscPattern(static_cast<std::size_t>(spec.n_measure), seed));
  out.seed = spec.seed;
  return out;
}

double local_density(const Domain& dom, Point x, double r, const QuadratureSpec& spec) {
  if (!dom.contains(x)) {
    throw DomainError("local density requested at a point outside " + dom.spec());
  }
  return measure_ball_intersection(dom, x, r, spec).value / (r * r);
}

RegularityEstimate regularity_constant(const Domain& dom, int n_centers, int n_radii,
                                       const QuadratureSpec& spec, double r_min) {
  if (n_centers < 1 || n_radii < 1) throw ValidationError("center and radius counts must be >= 1");
  spec.validate();
  if (r_min <= 0.0) r_min = dom.diam() / 512.0;
  const double r_max = 2.0 * dom.diam() * (1.0 - 1e-9);
  if (!(r_min < r_max)) throw ValidationError("r_min must be below 2 diam");

  const DiscPattern pattern(static_cast<std::size_t>(spec.n_measure),
                            derive_seed(spec.seed, kStreamMeasure));
  Rng rng(derive_seed(spec.seed, kStreamCenters));
  std::vector<double> radii(static_cast<std::size_t>(n_radii));
  for (int k = 0; k < n_radii; ++k) {
    radii[k] = n_radii == 1 ? r_max
                            : r_min * std::pow(r_max / r_min, double(k) / double(n_radii - 1));
  }
  RegularityEstimate best;
  best.theta_hat = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_centers; ++i) {
    const Point x = dom.sample_point(rng);
    for (double r : radii) {
      const double dens = measure_ball_intersection(dom, x, r, pattern).value / (r * r);
      if (dens < best.theta_hat) {
        best = {dens, x, r};
      }
    }
  }
  return best;
}

std::vector<double> dyadic_radii(const Domain& dom, Point z, double r, int levels,
                                 const QuadratureSpec& spec) {
  // Centers on the boundary (a box corner, the cusp tip) are allowed: z must lie in the closure.
  bool in_closure = dom.contains(z);
  for (int k = 0; k < 64 && !in_closure; ++k) {
    const double th = 2.0 * kPi * k / 64.0;
    in_closure = dom.contains(z + 1e-9 * dom.diam() * Point{std::cos(th), std::sin(th)});
  }
  if (!in_closure) throw DomainError("dyadic radii center lies outside " + dom.spec());
  if (!(r > 0.0 && r < 0.5 * dom.diam())) {
    throw ValidationError("dyadic radii need 0 < r < diam/2, got r = " + format_exact(r));
  }
  if (levels < 0) throw ValidationError("number of dyadic levels must be >= 0");
  spec.validate();
  std::vector<double> b{1.0};
  if (levels == 0) return b;

  // Frozen polar measure map: equally spaced rays with a seeded offset, each
  // integrated exactly over its segments inside dom. Monotone in rho by construction.
  const int directions = std::max(256, spec.n_measure / 16);
  Rng offset_rng(derive_seed(spec.seed, kStreamMeasure));
  const double offset = offset_rng.uniform() * 2.0 * kPi / directions;
  std::vector<std::pair<double, double>> segs;
  for (int d = 0; d < directions; ++d) {
    const double th = offset + 2.0 * kPi * d / directions;
    for (const auto& sg : dom.ray_segments(z, {std::cos(th), std::sin(th)}, r)) segs.push_back(sg);
  }
  const double w = 2.0 * kPi / directions;
  auto measure = [&](double rho) {
    double sum = 0.0;
    for (const auto& [s0, s1] : segs) {
      if (s0 >= rho) continue;
      const double e = std::min(s1, rho);
      sum += 0.5 * (e * e - s0 * s0);
    }
    return w * sum;
  };
  const double total = measure(r);
  if (!(total > 0.0)) throw NumericalError("no ray from z meets the domain inside B(z, r)");

  for (int j = 1; j <= levels; ++j) {
    const double target = total / std::pow(2.0, j);
    double lo = 0.0;
    double hi = b.back();
    if (measure(hi * r) < target) throw NumericalError("non-monotone measure estimate");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (measure(mid * r) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (!(hi < b.back())) throw NumericalError("non-monotone dyadic radii; increase samples");
    if (std::abs(measure(hi * r) - target) > 0.01 * target) {
      throw NumericalError("dyadic level " + std::to_string(j) +
                           " unresolved at this sample count; increase samples");
    }
    b.push_back(hi);
  }
  return b;
}

double annulus_factor(double theta) {
  if (!(theta > 0.0)) throw ValidationError("theta must be positive");
  return std::sqrt(2.0 * kUnitBallVolume / theta) + 2.0;
}

bool annulus_nonempty(const Domain& dom, double theta, Point z, double s,
                      const QuadratureSpec& spec) {
  const double kappa = annulus_factor(theta);
  if (!(s > 0.0 && s < 2.0 / kappa * dom.diam())) {
    throw ValidationError("annulus radius must satisfy 0 < s < (2/kappa) diam");
  }
  spec.validate();
  Rng rng(derive_seed(spec.seed, kStreamAnnulus));
  const double u0 = s * s;
  const double u1 = kappa * kappa * s * s;
  for (int i = 0; i < spec.n_measure; ++i) {
    const double rad = std::sqrt(rng.uniform(u0, u1));
    const double th = 2.0 * kPi * rng.uniform();
    if (dom.contains(z + rad * Point{std::cos(th), std::sin(th)})) return true;
  }
  return false;
}

}  // namespace obtk
