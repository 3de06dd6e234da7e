#include "obtk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "obtk/errors.hpp"
#include "obtk/format.hpp"

namespace obtk {

namespace {

constexpr std::uint64_t kStreamField = 0x6669656c64707473ULL;

// Smallest lambda with modular(lambda) <= 1 for a non-increasing modular;
// returns 0 when modular(floor) <= 1.
double luxemburg(const std::function<double(double)>& modular, double start, double floor,
                 double rel_tol) {
  if (modular(floor) <= 1.0) return 0.0;
  double lo = start;
  double hi = start;
  if (modular(start) > 1.0) {
    for (int i = 0; modular(hi) > 1.0; ++i) {
      lo = hi;
      hi *= 2.0;
      if (i > 2000 || !std::isfinite(hi)) throw NumericalError("modular never drops below 1");
    }
  } else {
    while (modular(lo) <= 1.0) {
      hi = lo;
      lo *= 0.5;
      if (lo < floor) {
        lo = floor;
        break;
      }
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double m = modular(mid);
    if (m > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::abs(m - 1.0) <= 1e-2 * rel_tol || hi / lo - 1.0 < 1e-13) break;
  }
  return hi;
}

}  // namespace

FieldSample sample_field(const ScalarField& u, const Domain& dom, const QuadratureSpec& spec) {
  QuadratureSpec local = spec;
  local.n_outer = spec.n_measure;
  Box region = dom.bbox();
  bool use_rest = false;
  double rest_value = 0.0;
  if (const auto s = u.support(); s && !s->everywhere && dom.exact_area()) {
    const Box clipped = intersect(s->box, dom.bbox());
    if (is_empty(clipped)) {
      // The field is constant on the whole domain.
      FieldSample out;
      out.rest_measure = *dom.exact_area();
      out.rest_value = s->outside;
      return out;
    }
    if (clipped.area() < 0.5 * dom.bbox().area()) {
      region = clipped;
      use_rest = true;
      rest_value = s->outside;
    }
  }
  PointSample pts;
  try {
    pts = sample_points(dom, region, local, kStreamField);
  } catch (const NumericalError&) {
    if (!use_rest) throw;
    // The support box only grazes the domain; sample the whole box instead.
    region = dom.bbox();
    use_rest = false;
    pts = sample_points(dom, region, local, kStreamField);
  }
  FieldSample out;
  out.points = pts.points;
  out.weight = pts.weight;
  out.values.reserve(pts.points.size());
  for (const Point& p : pts.points) out.values.push_back(u(p));
  if (use_rest) {
    out.rest_measure = std::max(0.0, *dom.exact_area() - pts.measure());
    out.rest_value = rest_value;
  }
  return out;
}

double mean(const FieldSample& s) {
  const double total = std::accumulate(s.values.begin(), s.values.end(), 0.0);
  return (s.weight * total + s.rest_measure * s.rest_value) / s.measure();
}

double median(const FieldSample& s) {
  std::vector<std::pair<double, double>> vw;
  vw.reserve(s.values.size() + 1);
  for (double v : s.values) vw.emplace_back(v, s.weight);
  if (s.rest_measure > 0.0) vw.emplace_back(s.rest_value, s.rest_measure);
  std::sort(vw.begin(), vw.end());
  const double half = 0.5 * s.measure();
  // Measure strictly above vw[i].first is the suffix sum past the last tie.
  double above = s.measure();
  for (std::size_t i = 0; i < vw.size();) {
    std::size_t j = i;
    while (j < vw.size() && vw[j].first == vw[i].first) above -= vw[j++].second;
    if (above <= half * (1.0 + 1e-12)) return vw[i].first;
    i = j;
  }
  return vw.back().first;
}

double mean(const ScalarField& u, const Domain& dom, const QuadratureSpec& spec) {
  return mean(sample_field(u, dom, spec));
}

double median(const ScalarField& u, const Domain& dom, const QuadratureSpec& spec) {
  return median(sample_field(u, dom, spec));
}

double lebesgue_norm(const FieldSample& s, double q, double shift) {
  if (!(q >= 1.0)) throw ValidationError("Lebesgue exponent must be >= 1, got " + format_exact(q));
  double sum = 0.0;
  for (double v : s.values) sum += std::pow(std::abs(v - shift), q);
  sum = s.weight * sum + s.rest_measure * std::pow(std::abs(s.rest_value - shift), q);
  return std::pow(sum, 1.0 / q);
}

double lebesgue_norm(const ScalarField& u, const Domain& dom, double q,
                     const QuadratureSpec& spec) {
  return lebesgue_norm(sample_field(u, dom, spec), q);
}

double orlicz_modular(const FieldSample& s, const YoungFunction& f, double lambda) {
  double sum = 0.0;
  for (double v : s.values) sum += f(std::abs(v) / lambda);
  return s.weight * sum + s.rest_measure * f(std::abs(s.rest_value) / lambda);
}

double orlicz_norm(const FieldSample& s, const YoungFunction& f, double rel_tol) {
  double peak = std::abs(s.rest_measure > 0.0 ? s.rest_value : 0.0);
  for (double v : s.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  return luxemburg([&](double lambda) { return orlicz_modular(s, f, lambda); }, peak,
                   1e-12 * peak, rel_tol);
}

double orlicz_norm(const ScalarField& u, const Domain& dom, const YoungFunction& f,
                   const QuadratureSpec& spec, double rel_tol) {
  return orlicz_norm(sample_field(u, dom, spec), f, rel_tol);
}

ScalarField cutoff(Point x, double r, double t, const Domain& dom) {
  if (!(r > 0.0 && r < t && t < 0.5 * dom.diam())) {
    throw ValidationError("cutoff needs 0 < r < t < diam/2, got r = " + format_exact(r) +
                          ", t = " + format_exact(t));
  }
  return ScalarField::cutoff(x, r, t);
}

LevelSetProfile level_sets(const FieldSample& s, int k_lo, int k_hi) {
  if (k_hi < k_lo) throw ValidationError("level range needs k_lo <= k_hi");
  LevelSetProfile out;
  out.k_lo = k_lo;
  out.k_hi = k_hi;
  for (int k = k_lo; k <= k_hi + 1; ++k) {
    const double level = std::ldexp(1.0, k);
    std::size_t count = 0;
    for (double v : s.values) {
      if (v < 0.0) throw DomainError("level sets need a nonnegative field");
      count += v > level ? 1 : 0;
    }
    double a = s.weight * static_cast<double>(count);
    if (s.rest_value > level) a += s.rest_measure;
    out.a.push_back(a);
  }
  for (std::size_t i = 0; i + 1 < out.a.size(); ++i) out.d.push_back(out.a[i] - out.a[i + 1]);
  return out;
}

LevelSetProfile level_sets(const ScalarField& u, const Domain& dom, int k_lo, int k_hi,
                           const QuadratureSpec& spec) {
  return level_sets(sample_field(u, dom, spec), k_lo, k_hi);
}

PairDifferences::PairDifferences(const ScalarField& u, const Domain& dom,
                                 const QuadratureSpec& spec)
    : diam_(dom.diam()) {
  std::optional<Box> support;
  if (const auto s = u.support(); s && !s->everywhere && !is_empty(intersect(s->box, dom.bbox()))) {
    support = s->box;
  }
  try {
    set_ = sample_pairs(dom, spec, support);
  } catch (const NumericalError&) {
    if (!support) throw;
    set_ = sample_pairs(dom, spec);
  }
  evaluate(u);
}

PairDifferences::PairDifferences(const ScalarField& u, const PairSampleSet& set)
    : set_(set), diam_(set.t_max) {
  evaluate(u);
}

void PairDifferences::evaluate(const ScalarField& u) {
  diff_.resize(set_.pairs.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < set_.pairs.size(); ++i) {
    const double ux = u(set_.pairs[i].x);
    const double uy = u(set_.pairs[i].y);
    diff_[i] = std::abs(ux - uy);
    lo = std::min({lo, ux, uy});
    hi = std::max({hi, ux, uy});
  }
  range_ = set_.pairs.empty() ? 0.0 : hi - lo;
}

PairIntegral PairDifferences::besov_modular(const YoungFunction& f, double alpha,
                                            double lambda) const {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  return integrate_pairs(set_, [&](const PairSample& ps) {
    const double d = diff_[static_cast<std::size_t>(&ps - set_.pairs.data())];
    if (d == 0.0) return 0.0;
    return f(d * std::pow(ps.t, -alpha) / lambda);
  });
}

PairIntegral PairDifferences::gagliardo_integral(double s, double p) const {
  if (!(s > 0.0 && s < 1.0)) throw ValidationError("smoothness s must lie in (0, 1)");
  if (!(p >= 1.0)) throw ValidationError("integrability p must be >= 1");
  const double expo = kDim - s * p;
  return integrate_pairs(set_, [&](const PairSample& ps) {
    const double d = diff_[static_cast<std::size_t>(&ps - set_.pairs.data())];
    if (d == 0.0) return 0.0;
    return std::pow(d, p) * std::pow(ps.t, expo);
  });
}

SeminormResult besov_seminorm(const PairDifferences& pd, const YoungFunction& f, double alpha,
                              double rel_tol) {
  SeminormResult out;
  if (pd.range() == 0.0) return out;
  const double floor = 1e-9 * pd.range() * std::pow(pd.diam(), alpha);
  const double start = pd.range() * std::pow(pd.diam(), alpha);
  out.value = luxemburg(
      [&](double lambda) { return pd.besov_modular(f, alpha, lambda).value; }, start, floor,
      rel_tol);
  if (out.value > 0.0) {
    const auto m = pd.besov_modular(f, alpha, out.value);
    out.modular = m.value;
    out.near_diagonal_divergent = m.near_diagonal_divergent;
  }
  return out;
}

SeminormResult besov_seminorm(const ScalarField& u, const Domain& dom, const YoungFunction& f,
                              double alpha, const QuadratureSpec& spec, double rel_tol) {
  const PairDifferences pd(u, dom, spec);
  const auto out = besov_seminorm(pd, f, alpha, rel_tol);
  if (out.near_diagonal_divergent) {
    throw NotInSpaceError("near-diagonal decades of the modular do not decay for " + u.spec() +
                          " with " + f.spec() + "; the field is not in the space");
  }
  return out;
}

SeminormResult gagliardo_seminorm(const PairDifferences& pd, double s, double p) {
  const auto integral = pd.gagliardo_integral(s, p);
  SeminormResult out;
  out.modular = integral.value;
  out.value = std::pow(integral.value, 1.0 / p);
  out.near_diagonal_divergent = integral.near_diagonal_divergent;
  return out;
}

SeminormResult gagliardo_seminorm(const ScalarField& u, const Domain& dom, double s, double p,
                                  const QuadratureSpec& spec) {
  const PairDifferences pd(u, dom, spec);
  const auto out = gagliardo_seminorm(pd, s, p);
  if (out.near_diagonal_divergent) {
    throw NotInSpaceError("near-diagonal decades of the Gagliardo integral do not decay for " +
                          u.spec());
  }
  return out;
}

double besov_modular(const ScalarField& u, const Domain& dom, const YoungFunction& f,
                     double alpha, double lambda, const QuadratureSpec& spec) {
  const PairDifferences pd(u, dom, spec);
  const auto m = pd.besov_modular(f, alpha, lambda);
  if (m.near_diagonal_divergent) {
    throw NotInSpaceError("near-diagonal decades of the modular do not decay for " + u.spec());
  }
  return m.value;
}

}  // namespace obtk
