#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obtk/point.hpp"

namespace obtk {

struct QuadratureSpec;
class Rng;

/// Bounded planar region given by an indicator, a bounding box, its diameter
/// and, where known, its exact area.
class Domain {
 public:
  enum class Kind { ball, box, cusp, polygon };

  static Domain ball(Point center, double radius);
  static Domain box(Point lo, Point hi);
  /// {(x1, x2): 0 < x1 < 1, |x2| < x1^gamma}, gamma > 1.
  static Domain cusp(double gamma);
  /// Simple polygon, vertices in order (either orientation).
  static Domain polygon(std::vector<Point> vertices);

  /// Parses `ball:<cx>,<cy>,<R>`, `box:<x0>,<y0>,<x1>,<y1>`, `cusp:<gamma>`,
  /// `poly:<x1>,<y1>;<x2>,<y2>;...`.
  static Domain parse(std::string_view spec);

  bool contains(Point p) const;
  const Box& bbox() const { return bbox_; }
  double diam() const { return diam_; }
  std::optional<double> exact_area() const { return exact_area_; }
  Kind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  std::string spec() const;

  /// Parameter intervals [s0, s1] with p + s*dir inside the domain, for
  /// s in [0, s_max]. Exact for ball, box and polygon; located by scanning
  /// and bisection for the cusp.
  std::vector<std::pair<double, double>> ray_segments(Point p, Point dir, double s_max) const;

  /// Uniform point of the domain by rejection from the bounding box.
  Point sample_point(Rng& rng) const;

  friend bool operator==(const Domain& a, const Domain& b) { return a.spec() == b.spec(); }

 private:
  Domain(Kind kind, std::vector<double> params, std::vector<Point> vertices, Box bbox,
         double diam, std::optional<double> exact_area);

  Kind kind_;
  std::vector<double> params_;
  std::vector<Point> vertices_;
  Box bbox_;
  double diam_;
  std::optional<double> exact_area_;
};

/// Monte Carlo estimate of an area or integral.
struct MeasureEstimate {
  double value = 0.0;
  double std_err = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Frozen stratified sample of the unit disc: `strata` rings in r^2 times
/// sectors in angle, two jittered points per cell. Scaled and translated
/// copies give common random numbers across centers and radii.
class DiscPattern {
 public:
  DiscPattern(std::size_t samples, std::uint64_t seed);

  const std::vector<Point>& points() const { return points_; }
  /// Points come in consecutive pairs sharing a stratum.
  std::size_t cells() const { return points_.size() / 2; }

 private:
  std::vector<Point> points_;
};

/// |B(center, r) ∩ dom| by stratified sampling of the ball.
MeasureEstimate measure_ball_intersection(const Domain& dom, Point center, double r,
                                          const QuadratureSpec& spec);
MeasureEstimate measure_ball_intersection(const Domain& dom, Point center, double r,
                                          const DiscPattern& pattern);

/// |B(x, r) ∩ dom| / r^2; throws DomainError unless x lies in dom.
double local_density(const Domain& dom, Point x, double r, const QuadratureSpec& spec);

struct RegularityEstimate {
  double theta_hat = 0.0;
  Point witness_point;
  double witness_radius = 0.0;
};

/// Sampled minimum of local_density over rejection-sampled centers and
/// log-spaced radii in (r_min, 2 diam). An upper bound on the true constant.
/// r_min <= 0 selects the default diam / 512.
RegularityEstimate regularity_constant(const Domain& dom, int n_centers, int n_radii,
                                       const QuadratureSpec& spec, double r_min = 0.0);

/// Radii 1 = b_0 > b_1 > ... > b_J with |B(z, b_j r) ∩ dom| = 2^{-j} |B(z, r) ∩ dom|,
/// solved by bisection on a frozen, monotone polar measure map. z may lie on
/// the boundary of dom.
std::vector<double> dyadic_radii(const Domain& dom, Point z, double r, int levels,
                                 const QuadratureSpec& spec);

/// kappa = (2 omega_n / theta)^{1/n} + 2.
double annulus_factor(double theta);

/// Whether sampling finds a point of dom in B(z, kappa s) \ B(z, s).
bool annulus_nonempty(const Domain& dom, double theta, Point z, double s,
                      const QuadratureSpec& spec);

}  // namespace obtk
