#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obtk/point.hpp"

namespace obtk {

/// Real-valued field on the plane built from a small expression tree.
class ScalarField {
 public:
  enum class Kind { constant, coordinate, gaussian, cutoff, sum, scale, dilate, truncate };

  /// Box outside of which the field equals `outside`. Gaussians are cut at
  /// 8 sigma, where the bump is below 1.3e-14.
  struct Support {
    Box box;
    double outside = 0.0;
    bool everywhere = false;  // the field is the constant `outside`
  };

  static ScalarField constant(double c);
  /// x_i, i in {1, 2}.
  static ScalarField coordinate(int i);
  static ScalarField gaussian(Point center, double sigma);
  /// 1 on B(x, r), (t - |z - x|) / (t - r) on the annulus, 0 beyond t.
  static ScalarField cutoff(Point x, double r, double t);
  static ScalarField sum(std::vector<ScalarField> parts);
  static ScalarField scale(double c, ScalarField u);
  /// z -> u(r z).
  static ScalarField dilate(double r, ScalarField u);
  /// z -> min(u(z), cap).
  static ScalarField truncate(double cap, ScalarField u);

  /// `const:<c>`, `coord:<i>`, `gauss:<cx>,<cy>,<sigma>`, `cutoff:<cx>,<cy>,<r>,<t>`,
  /// `sum:<spec>+<spec>`, `scale:<c>*<spec>`, `dil:<r>*<spec>`, `min:<cap>*<spec>`.
  /// Parentheses group nested sums.
  static ScalarField parse(std::string_view spec);
  std::string spec() const;

  double operator()(Point z) const;

  Kind kind() const;
  std::optional<Support> support() const;

  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.spec() == b.spec();
  }

 private:
  struct Node;
  explicit ScalarField(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace obtk
