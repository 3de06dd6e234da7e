#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace obtk {

/// Convex gauge phi on [0, inf) from the parametric families
///   power(p):        t^p
///   powerlog(p, g):  t^p [ln(1 + t)]^g
/// and finite convex combinations of them. A mixture is stored flat as a
/// list of weighted (p, g) terms; nesting mixtures multiplies weights through.
class YoungFunction {
 public:
  enum class Family { power, powerlog, mix };

  struct Term {
    double weight = 1.0;
    double p = 1.0;
    double gamma = 0.0;
    friend bool operator==(const Term&, const Term&) = default;
  };

  /// Exponents p < 1 are accepted so admissibility windows can be probed
  /// below the convex range; is_convex() reports false for them.
  static YoungFunction power(double p);
  static YoungFunction power_log(double p, double gamma);
  static YoungFunction convex_mix(const std::vector<std::pair<double, YoungFunction>>& parts);

  /// Parses `pow:<p>`, `powlog:<p>,<gamma>` or `mix:<w1>*<spec1>+<w2>*<spec2>...`.
  static YoungFunction parse(std::string_view spec);

  /// phi(t); throws DomainError for t < 0.
  double operator()(double t) const;
  double eval(double t) const { return (*this)(t); }

  /// Smallest t with |phi(t) - y| <= rel_tol * max(1, y): bracket doubling,
  /// then bisection on the strictly increasing phi.
  double inverse(double y, double rel_tol = 1e-6) const;

  /// True when every term has p >= 1, which makes phi convex.
  bool is_convex() const;

  Family family() const { return family_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Canonical spec string; parse(spec()) == *this.
  std::string spec() const;

  friend bool operator==(const YoungFunction&, const YoungFunction&) = default;

 private:
  YoungFunction(Family family, std::vector<Term> terms)
      : family_(family), terms_(std::move(terms)) {}

  Family family_;
  std::vector<Term> terms_;
};

/// Number of points and range of the logarithmic grid on which the suprema
/// over x > 0 are approximated.
inline constexpr int kAdmissibilityGridPoints = 121;
inline constexpr double kAdmissibilityGridMin = 1e-6;
inline constexpr double kAdmissibilityGridMax = 1e6;

std::vector<double> admissibility_grid();

struct LambdaValue {
  double value = 0.0;        // +inf when divergence was detected
  double witness_x = 0.0;    // grid point attaining the supremum
  bool on_boundary = false;  // witness is the first or last grid point
  double grid_max = 0.0;     // max over the grid of the inner integral
  double grid_min = 0.0;     // min over the grid (equals grid_max for powers)
};

/// sup_x int_0^1 phi(t^{1-alpha} x) / phi(x) dt / t^{n+1}, alpha in (-n, 0).
LambdaValue lambda_under(const YoungFunction& f, double alpha, int n);

/// sup_x int_1^inf phi(t^{-alpha} x) / phi(x) dt / t^{n+1}, alpha in (-n, 0).
LambdaValue lambda_over(const YoungFunction& f, double alpha, int n);

struct AdmissibilityResult {
  double lambda_under = 0.0;
  double lambda_over = 0.0;
  bool admissible = false;
  double witness_under = 0.0;
  double witness_over = 0.0;
  bool boundary_warning = false;
  bool convex = true;
};

AdmissibilityResult admissible(const YoungFunction& f, double alpha, int n);

struct GrowthBoundCheck {
  std::size_t samples = 0;
  std::size_t violations_small = 0;  // phi(xs) <= 2^{2n} Lu phi(2^{1-alpha} x) s^{n/(1-alpha)}, s <= 1
  std::size_t violations_large = 0;  // phi(xs) <= 2^{3n} Lo phi(x) s^{-n/alpha}, s >= 1
  double worst_small = 0.0;          // max of lhs / rhs
  double worst_large = 0.0;
  bool tail_decays = true;           // phi(x s^{-alpha}) s^{-n} eventually decreasing in s
};

/// Tests both growth bounds at `samples` random (x, s) pairs with x log-uniform
/// in [1e-3, 1e3] and s log-uniform in [1e-6, 1] resp. [1, 1e6].
GrowthBoundCheck check_growth_bounds(const YoungFunction& f, double alpha, int n,
                                     std::size_t samples, std::uint64_t seed);

}  // namespace obtk
