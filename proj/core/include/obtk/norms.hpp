#pragma once

#include <vector>

#include "obtk/field.hpp"
#include "obtk/geometry.hpp"
#include "obtk/quadrature.hpp"
#include "obtk/young.hpp"

namespace obtk {

/// Frozen evaluation of a field on weighted points of the domain. When the
/// field is constant outside a small support box and the domain area is
/// known, only the box is sampled and the remainder of the domain enters as
/// one atom of measure rest_measure carrying rest_value.
struct FieldSample {
  std::vector<Point> points;
  std::vector<double> values;
  double weight = 0.0;
  double rest_measure = 0.0;
  double rest_value = 0.0;

  double measure() const { return weight * static_cast<double>(values.size()) + rest_measure; }
};

/// Uses spec.n_measure grid points.
FieldSample sample_field(const ScalarField& u, const Domain& dom, const QuadratureSpec& spec);

double mean(const FieldSample& s);
/// inf{c : |{u > c}| <= |dom| / 2} over the weighted sample.
double median(const FieldSample& s);
double mean(const ScalarField& u, const Domain& dom, const QuadratureSpec& spec);
double median(const ScalarField& u, const Domain& dom, const QuadratureSpec& spec);

/// (int |u - shift|^q)^{1/q}.
double lebesgue_norm(const FieldSample& s, double q, double shift = 0.0);
double lebesgue_norm(const ScalarField& u, const Domain& dom, double q,
                     const QuadratureSpec& spec);

/// int phi(|u| / lambda) over the sample.
double orlicz_modular(const FieldSample& s, const YoungFunction& f, double lambda);
double orlicz_norm(const FieldSample& s, const YoungFunction& f, double rel_tol = 1e-4);
double orlicz_norm(const ScalarField& u, const Domain& dom, const YoungFunction& f,
                   const QuadratureSpec& spec, double rel_tol = 1e-4);

/// Cut-off field for 0 < r < t < diam / 2.
ScalarField cutoff(Point x, double r, double t, const Domain& dom);

struct LevelSetProfile {
  int k_lo = 0;
  int k_hi = 0;
  std::vector<double> a;  // a[k - k_lo] = |{u > 2^k}|, k in [k_lo, k_hi + 1]
  std::vector<double> d;  // d[k - k_lo] = a_k - a_{k+1}, k in [k_lo, k_hi]
};

LevelSetProfile level_sets(const FieldSample& s, int k_lo, int k_hi);
LevelSetProfile level_sets(const ScalarField& u, const Domain& dom, int k_lo, int k_hi,
                           const QuadratureSpec& spec);

/// |u(x) - u(y)| on a frozen pair sample; every modular built from one
/// instance uses the same pairs, so it is exactly monotone in lambda.
class PairDifferences {
 public:
  PairDifferences(const ScalarField& u, const Domain& dom, const QuadratureSpec& spec);
  PairDifferences(const ScalarField& u, const PairSampleSet& set);

  /// Pair integral of phi(|u(x) - u(y)| / (lambda |x - y|^alpha)).
  PairIntegral besov_modular(const YoungFunction& f, double alpha, double lambda) const;
  /// Pair integral of |u(x) - u(y)|^p |x - y|^{n - s p}.
  PairIntegral gagliardo_integral(double s, double p) const;

  double range() const { return range_; }
  double diam() const { return diam_; }
  const PairSampleSet& pairs() const { return set_; }
  const std::vector<double>& differences() const { return diff_; }

 private:
  void evaluate(const ScalarField& u);

  PairSampleSet set_;
  std::vector<double> diff_;
  double range_ = 0.0;
  double diam_ = 0.0;
};

struct SeminormResult {
  double value = 0.0;
  double modular = 0.0;  // modular at value (0 when value is 0)
  bool near_diagonal_divergent = false;
};

/// Luxemburg infimum of lambda with modular(lambda) <= 1, by bisection in
/// log lambda on the frozen pairs; 0 below the floor 1e-9 range diam^alpha.
SeminormResult besov_seminorm(const PairDifferences& pd, const YoungFunction& f, double alpha,
                              double rel_tol = 1e-4);
/// As above; throws NotInSpaceError when the near-diagonal decades diverge.
SeminormResult besov_seminorm(const ScalarField& u, const Domain& dom, const YoungFunction& f,
                              double alpha, const QuadratureSpec& spec, double rel_tol = 1e-4);

SeminormResult gagliardo_seminorm(const PairDifferences& pd, double s, double p);
SeminormResult gagliardo_seminorm(const ScalarField& u, const Domain& dom, double s, double p,
                                  const QuadratureSpec& spec);

double besov_modular(const ScalarField& u, const Domain& dom, const YoungFunction& f,
                     double alpha, double lambda, const QuadratureSpec& spec);

}  // namespace obtk
