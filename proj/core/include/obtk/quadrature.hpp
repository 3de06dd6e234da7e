#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "obtk/geometry.hpp"
#include "obtk/point.hpp"

namespace obtk {

/// Sampling plan for every Monte Carlo estimate. Radial cutoffs are stored as
/// fractions of the domain diameter and resolved per domain.
struct QuadratureSpec {
  std::uint64_t seed = 42;
  int n_outer = 4096;        // outer points x in the domain
  int n_radial = 64;         // offsets per outer point
  int n_measure = 16384;     // points per ball-intersection measure estimate
  double t_min_frac = 1.0 / 16384.0;
  double t_max_frac = 1.0;
  double decades_per_stratum = 0.25;
  double max_oversampling = 4096.0;  // cap on rejection-sampling blow-up

  void validate() const;
  double t_min(double diam) const { return t_min_frac * diam; }
  double t_max(double diam) const { return t_max_frac * diam; }

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

enum class HalfLine { unit, tail };  // (0, 1] and [1, inf)

struct WeightedIntegral {
  double value = 0.0;  // +inf on detected divergence
  bool divergent = false;
  int decades = 0;
  double tail = 0.0;   // geometric tail extrapolated past the last decade
};

/// int g(t) dt / t^{n+1} over (0, 1] or [1, inf) by per-decade Gauss-Legendre
/// in log t. Divergence is declared when, past 12 decades, three consecutive
/// decades each add more than 1e-3 of the running total without decaying.
WeightedIntegral integrate_weighted_1d(const std::function<double(double)>& g, HalfLine interval,
                                       int n);

/// Stratified Monte Carlo estimate of the integral of f over dom.
MeasureEstimate integrate_domain(const std::function<double(Point)>& f, const Domain& dom,
                                 const QuadratureSpec& spec);

/// Frozen weighted points of region ∩ dom; the weight of each point is
/// |region| / (number of grid draws). Fields are evaluated on the same points
/// across all functionals built from one sample.
struct PointSample {
  std::vector<Point> points;
  double weight = 0.0;
  Box region;
  double measure() const { return weight * static_cast<double>(points.size()); }
};

PointSample sample_points(const Domain& dom, const Box& region, const QuadratureSpec& spec,
                          std::uint64_t stream);

/// One drawn pair (x, y = x + t w) with its full quadrature weight for
/// int int F(x, y) |x - y|^{-2n} dx dy, i.e. weight * F(x, y) summed over pairs.
struct PairSample {
  Point x;
  Point y;
  double t = 0.0;
  double weight = 0.0;
  int decade = 0;  // floor(log10(t_max / t))
  std::uint32_t outer = 0;  // index of the outer point x
};

/// Frozen pair geometry. With a support box S (integrand vanishing when both
/// points lie outside S), outer points are drawn from S ∩ dom and pairs that
/// leave S carry a symmetry factor 2.
struct PairSampleSet {
  std::vector<PairSample> pairs;
  double t_min = 0.0;
  double t_max = 0.0;
  int n_decades = 0;
  std::size_t outer_points = 0;
  std::optional<Box> support;
};

PairSampleSet sample_pairs(const Domain& dom, const QuadratureSpec& spec,
                           std::optional<Box> support = std::nullopt);

struct PairIntegral {
  double value = 0.0;
  double std_err = 0.0;
  std::vector<double> decade_contributions;  // index 0 is the outermost decade
  bool near_diagonal_divergent = false;
};

/// Flags integrands whose innermost decades fail to decay (slower than a
/// factor 2 per decade while still carrying > 1e-3 of the total).
bool diagnose_near_diagonal(const std::vector<double>& decade_contributions,
                            double t_min, double t_max);

/// Sum over the frozen pairs of weight * F(x, y).
PairIntegral integrate_pairs(const PairSampleSet& pairs,
                             const std::function<double(const PairSample&)>& term);

/// int int F(x, y) |x - y|^{-2n} dx dy over dom x dom by the substitution
/// y = x + t w with log-stratified t in [t_min, t_max].
PairIntegral integrate_pair_singular(const std::function<double(Point, Point)>& F,
                                     const Domain& dom, const QuadratureSpec& spec);

/// Deterministic polar quadrature of int_{dom \ B(c, rho)} G(|x - y|) |x - y|^{-2n} dy
/// for a point x: `directions` equally spaced rays, exact ray/domain segments,
/// Gauss-Legendre in log s on each segment. rho <= 0 excludes nothing.
double integrate_radial_excluding(const std::function<double(double)>& G, const Domain& dom,
                                  Point x, Point exclude_center, double exclude_radius,
                                  int directions, std::uint64_t seed);

}  // namespace obtk
