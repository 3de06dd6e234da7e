#include "obtk/young.hpp"

#include <cmath>
#include <limits>

#include "obtk/errors.hpp"
#include "obtk/format.hpp"
#include "obtk/quadrature.hpp"
#include "obtk/rng.hpp"

namespace obtk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eval_term(const YoungFunction::Term& term, double t) {
  if (t == 0.0) return 0.0;
  const double base = std::pow(t, term.p);
  if (term.gamma == 0.0) return base;
  return base * std::pow(std::log1p(t), term.gamma);
}

void check_exponents(double p, double gamma) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ValidationError("Young exponent p must be positive, got " + format_exact(p));
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("log power gamma must be >= 0, got " + format_exact(gamma));
  }
}

std::string term_spec(const YoungFunction::Term& term) {
  if (term.gamma == 0.0) return "pow:" + format_exact(term.p);
  return "powlog:" + format_exact(term.p) + "," + format_exact(term.gamma);
}

}  // namespace

YoungFunction YoungFunction::power(double p) {
  check_exponents(p, 0.0);
  return YoungFunction(Family::power, {{1.0, p, 0.0}});
}

YoungFunction YoungFunction::power_log(double p, double gamma) {
  check_exponents(p, gamma);
  return YoungFunction(Family::powerlog, {{1.0, p, gamma}});
}

YoungFunction YoungFunction::convex_mix(
    const std::vector<std::pair<double, YoungFunction>>& parts) {
  if (parts.empty()) throw ValidationError("convex combination needs at least one part");
  double total = 0.0;
  for (const auto& [w, f] : parts) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("mixture weights must be positive, got " + format_exact(w));
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("mixture weights must sum to 1, got " + format_exact(total));
  }
  std::vector<Term> terms;
  for (const auto& [w, f] : parts) {
    for (const auto& term : f.terms_) terms.push_back({w * term.weight, term.p, term.gamma});
  }
  return YoungFunction(Family::mix, std::move(terms));
}

YoungFunction YoungFunction::parse(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("malformed Young function spec '" + std::string(spec) + "'");
  }
  const auto name = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (name == "pow") return power(parse_number(body));
  if (name == "powlog") {
    const auto args = split_top_level(body, ',');
    if (args.size() != 2) {
      throw ValidationError("powlog expects <p>,<gamma>, got '" + std::string(spec) + "'");
    }
    return power_log(parse_number(args[0]), parse_number(args[1]));
  }
  if (name == "mix") {
    std::vector<std::pair<double, YoungFunction>> parts;
    for (const auto& piece : split_top_level(body, '+')) {
      const auto star = piece.find('*');
      if (star == std::string::npos) {
        throw ValidationError("mix term '" + piece + "' must read <weight>*<spec>");
      }
      parts.emplace_back(parse_number(std::string_view(piece).substr(0, star)),
                         parse(std::string_view(piece).substr(star + 1)));
    }
    return convex_mix(parts);
  }
  throw ValidationError("unknown Young function family '" + std::string(name) + "'");
}

double YoungFunction::operator()(double t) const {
  if (t < 0.0 || std::isnan(t)) {
    throw DomainError("Young function evaluated at negative argument " + format_exact(t));
  }
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.weight * eval_term(term, t);
  return sum;
}

double YoungFunction::inverse(double y, double rel_tol) const {
  if (y < 0.0 || std::isnan(y)) {
    throw DomainError("Young inverse of negative value " + format_exact(y));
  }
  if (y == 0.0) return 0.0;
  const double tol = rel_tol * std::max(1.0, y);
  double lo = 0.0;
  double hi = 1.0;
  while ((*this)(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericalError("Young inverse bracket overflow");
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double v = (*this)(mid);
    if (std::abs(v - y) <= tol) return mid;
    if (v < y) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::numeric_limits<double>::min()) break;
  }
  return 0.5 * (lo + hi);
}

bool YoungFunction::is_convex() const {
  for (const auto& term : terms_) {
    if (term.p < 1.0) return false;
  }
  return true;
}

std::string YoungFunction::spec() const {
  if (family_ != Family::mix) return term_spec(terms_.front());
  std::string out = "mix:";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += "+";
    out += format_exact(terms_[i].weight) + "*" + term_spec(terms_[i]);
  }
  return out;
}

std::vector<double> admissibility_grid() {
  std::vector<double> grid(kAdmissibilityGridPoints);
  const double lmin = std::log10(kAdmissibilityGridMin);
  const double lmax = std::log10(kAdmissibilityGridMax);
  for (int i = 0; i < kAdmissibilityGridPoints; ++i) {
    grid[i] = std::pow(10.0, lmin + (lmax - lmin) * i / (kAdmissibilityGridPoints - 1));
  }
  return grid;
}

namespace {

void check_alpha(double alpha, int n) {
  if (n < 2) throw ValidationError("dimension n must be >= 2");
  if (!(alpha > -n && alpha < 0.0)) {
    throw ValidationError("alpha must lie in (-n, 0), got " + format_exact(alpha));
  }
}

LambdaValue sup_over_grid(const YoungFunction& f, double exponent, HalfLine interval, int n) {
  const auto grid = admissibility_grid();
  LambdaValue out;
  out.grid_max = -kInf;
  out.grid_min = kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double fx = f(x);
    const auto integral = integrate_weighted_1d(
        [&](double t) { return f(std::pow(t, exponent) * x) / fx; }, interval, n);
    const double v = integral.value;
    out.grid_min = std::min(out.grid_min, v);
    if (v > out.grid_max) {
      out.grid_max = v;
      out.witness_x = x;
      out.on_boundary = (i == 0 || i + 1 == grid.size());
    }
    if (!std::isfinite(v)) break;
  }
  out.value = out.grid_max;
  return out;
}

}  // namespace

LambdaValue lambda_under(const YoungFunction& f, double alpha, int n) {
  check_alpha(alpha, n);
  return sup_over_grid(f, 1.0 - alpha, HalfLine::unit, n);
}

LambdaValue lambda_over(const YoungFunction& f, double alpha, int n) {
  check_alpha(alpha, n);
  return sup_over_grid(f, -alpha, HalfLine::tail, n);
}

AdmissibilityResult admissible(const YoungFunction& f, double alpha, int n) {
  const auto under = lambda_under(f, alpha, n);
  const auto over = lambda_over(f, alpha, n);
  AdmissibilityResult out;
  out.lambda_under = under.value;
  out.lambda_over = over.value;
  out.witness_under = under.witness_x;
  out.witness_over = over.witness_x;
  out.admissible = std::isfinite(under.value) && std::isfinite(over.value);
  out.boundary_warning = (std::isfinite(under.value) && under.on_boundary &&
                          under.grid_max > under.grid_min * (1.0 + 1e-6)) ||
                         (std::isfinite(over.value) && over.on_boundary &&
                          over.grid_max > over.grid_min * (1.0 + 1e-6));
  out.convex = f.is_convex();
  return out;
}

GrowthBoundCheck check_growth_bounds(const YoungFunction& f, double alpha, int n,
                                     std::size_t samples, std::uint64_t seed) {
  const auto adm = admissible(f, alpha, n);
  if (!adm.admissible) throw ValidationError("growth bounds need an admissible Young function");
  GrowthBoundCheck out;
  out.samples = samples;
  const double c_small = std::pow(2.0, 2 * n) * adm.lambda_under;
  const double c_large = std::pow(2.0, 3 * n) * adm.lambda_over;
  Rng rng(seed);
  auto log_uniform = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, rng.uniform());
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = log_uniform(1e-3, 1e3);
    const double s1 = log_uniform(1e-6, 1.0);
    const double small =
        f(x * s1) / (c_small * f(std::pow(2.0, 1.0 - alpha) * x) * std::pow(s1, n / (1.0 - alpha)));
    out.worst_small = std::max(out.worst_small, small);
    if (small > 1.0 + 1e-12) ++out.violations_small;

    const double s2 = log_uniform(1.0, 1e6);
    const double large = f(x * s2) / (c_large * f(x) * std::pow(s2, -n / alpha));
    out.worst_large = std::max(out.worst_large, large);
    if (large > 1.0 + 1e-12) ++out.violations_large;
  }
  // phi(x s^{-alpha}) s^{-n} on s = 2^k: decreasing over the last half of the grid.
  for (double x : {1e-3, 1.0, 1e3}) {
    double prev = kInf;
    for (int k = 20; k <= 60; ++k) {
      const double s = std::ldexp(1.0, k);
      const double v = f(x * std::pow(s, -alpha)) * std::pow(s, -n);
      if (k > 40 && !(v < prev)) out.tail_decays = false;
      prev = v;
    }
  }
  return out;
}

}  // namespace obtk
