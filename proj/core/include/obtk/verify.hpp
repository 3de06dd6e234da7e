#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obtk/field.hpp"
#include "obtk/geometry.hpp"
#include "obtk/quadrature.hpp"
#include "obtk/young.hpp"

namespace obtk {

struct Trial {
  std::string label;
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = true;
  std::string split = "all";  // train, holdout or all
};

/// Plot-ready (x, y) series with its least-squares log-log slope.
struct Series {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
  double slope = 0.0;
};

struct VerificationReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<Trial> trials;
  std::vector<Series> series;
  std::vector<std::string> notes;
  double runtime_seconds = 0.0;

  std::size_t violations() const;
  std::vector<std::size_t> witnesses() const;
  bool pass() const { return violations() == 0; }
  double min_ratio() const;
  double max_ratio() const;
  std::optional<double> constant(const std::string& name) const;
  const Series* find_series(const std::string& name) const;

  /// One header row, then one row per trial. sep is ',' or '\t'.
  std::string table(char sep = ',') const;
  /// Human-readable summary lines, runtime included.
  std::string summary() const;
  /// Two-column data file for a series.
  std::string series_data(const Series& s, char sep = ',') const;
};

/// Least-squares slope of log y against log x over positive entries.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Seeded train/holdout split: true marks a training index.
std::vector<bool> train_split(std::size_t count, std::uint64_t seed);

/// int_{dom \ B(c, rho)} phi(t |x - y|^{-alpha}) |x - y|^{-2n} dy by polar quadrature.
double geometric_lhs(const Domain& dom, const YoungFunction& f, double alpha, double t, Point x,
                     Point c, double rho, int directions = 256);

/// Kernel inequality lower bound: trials (t, x, E = B(c, rho) ∩ dom) with t
/// log-uniform in [1e-2, 1e2], rho log-uniform in [diam/128, diam/2], x in E.
/// (C1, C2) are fitted on the training half: C2 minimizes the spread of
/// LHS / shape(C2) over a dyadic grid, C1 is half the smallest training ratio.
VerificationReport check_geometric_inequality(const Domain& dom, const YoungFunction& f,
                                              double alpha, int trials,
                                              const QuadratureSpec& spec);

struct CutoffParams {
  Point x;
  double r = 0.0;
  double t = 0.0;
};

/// Default 20-point sweep of (x, r, t) for a domain.
std::vector<CutoffParams> default_cutoff_sweep(const Domain& dom);

/// Cut-off seminorm against C (t - r)^{-alpha} / phi^{-1}((t - r)^n / |B(x, t) ∩ dom|),
/// with C twice the largest training ratio; the Orlicz norm is checked
/// against 1 / phi^{-1}(1 / |B(x, t) ∩ dom|) with constant 1. Adds the slope
/// series for r -> t at fixed t and for r = t/2 with shrinking t.
VerificationReport check_cutoff_bound(const Domain& dom, const YoungFunction& f, double alpha,
                                      const std::vector<CutoffParams>& sweep,
                                      const QuadratureSpec& spec);

/// Both level-set chain inequalities with q = n / |alpha| on one frozen sample.
VerificationReport check_levelset_chain(const ScalarField& u, const Domain& dom,
                                        const YoungFunction& f, double alpha,
                                        const QuadratureSpec& spec);

/// 12 fields: gaussians at 4 scales, both coordinates, cut-offs at 6 (x, r, t).
/// `variant` > 0 shifts centers and scales to give a disjoint family of the
/// same composition.
std::vector<ScalarField> default_family(const Domain& dom, int variant = 0);

/// Cut-offs at (eps, 0) with r = eps / 2, t = eps.
std::vector<ScalarField> cusp_tip_family(const std::vector<double>& eps);

/// max over the family of ||u - u_dom||_{L^q} / ||u||_seminorm, q = n / |alpha|.
/// When the family splits into equal halves the max over the first half is
/// recorded as `max_ratio_half` and the relative increase as `enrichment_drift`.
/// With one scale per field, adds the series ratio_vs_scale and `growth_slope`,
/// the slope of log ratio against log(1 / scale).
VerificationReport imbedding_ratio(const Domain& dom, const YoungFunction& f, double alpha,
                                   const std::vector<ScalarField>& family,
                                   const QuadratureSpec& spec,
                                   const std::vector<double>& scales = {});

/// ||u||_{L^q} / (||u||_{L^phi} + ||u||_seminorm).
VerificationReport imbedding_ratio_inhomog(const Domain& dom, const YoungFunction& f,
                                           double alpha, const std::vector<ScalarField>& family,
                                           const QuadratureSpec& spec,
                                           const std::vector<double>& scales = {});

/// ||u - u_B||_{L^q(dom)} <= |B|^{alpha/n} diam^{-alpha} ||u||_seminorm for
/// phi = t^q, q = n / |alpha|. Requires 2B inside dom.
VerificationReport check_critical_case(const Domain& dom, Point ball_center, double ball_radius,
                                       double alpha, const std::vector<ScalarField>& family,
                                       const QuadratureSpec& spec);

/// Ratios ||u|| / ||u(r .)|| for the seminorm and the L^q norm on B(0, R),
/// R = 16 times the support extent, against r^{-alpha}; 5% tolerance.
VerificationReport check_scaling_homogeneity(const YoungFunction& f, double alpha,
                                             const ScalarField& u,
                                             const std::vector<double>& r_factors,
                                             const QuadratureSpec& spec);

/// Ball-Poincare ratios on B(0, R) and the mean drift |u_{B(0,2R)} - u_{B(0,R)}|.
/// Checks drift R^{|alpha|} stays within a factor 3 of its first value and
/// the ratios stay within a factor 3 of each other.
VerificationReport rn_imbedding_via_growing_balls(const YoungFunction& f, double alpha,
                                                  const ScalarField& u,
                                                  const std::vector<double>& radii,
                                                  const QuadratureSpec& spec);

}  // namespace obtk
