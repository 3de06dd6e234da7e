#include "obtk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "obtk/errors.hpp"
#include "obtk/format.hpp"
#include "obtk/rng.hpp"

namespace obtk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::uint64_t kStreamOuter = 0x6f75746572707473ULL;
constexpr std::uint64_t kStreamRadial = 0x72616469616c3031ULL;
constexpr std::uint64_t kStreamDomain = 0x646f6d61696e3031ULL;
constexpr std::uint64_t kStreamPilot = 0x70696c6f74303031ULL;

constexpr int kNodesPerDecade = 24;
constexpr int kDivergenceFloorDecades = 12;
constexpr int kMaxDecades = 300;

GaussRule compute_gauss_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double gauss_interval(const std::function<double(double)>& f, double a, double b,
                      const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

// Geometric tail c q / (1 - q) when the last three decade ratios agree to `spread`.
std::optional<double> geometric_tail(const std::vector<double>& c, double spread) {
  const std::size_t k = c.size();
  if (k < 4) return std::nullopt;
  double qs[3];
  for (int j = 0; j < 3; ++j) {
    const double prev = c[k - 2 - j];
    if (!(prev > 0.0)) return std::nullopt;
    qs[j] = c[k - 1 - j] / prev;
  }
  const double qmax = std::max({qs[0], qs[1], qs[2]});
  const double qmin = std::min({qs[0], qs[1], qs[2]});
  if (!(qmax < 1.0 - 1e-3) || qmin < 0.0 || qmax - qmin > spread * qmax) return std::nullopt;
  return c.back() * qs[0] / (1.0 - qs[0]);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (n_outer < 1) throw ValidationError("n_outer must be >= 1");
  if (n_radial < 1) throw ValidationError("n_radial must be >= 1");
  if (n_measure < 2) throw ValidationError("n_measure must be >= 2");
  if (!(t_min_frac > 0.0 && t_min_frac < t_max_frac)) {
    throw ValidationError("need 0 < t_min_frac < t_max_frac");
  }
  if (!(t_max_frac <= 2.0)) throw ValidationError("t_max_frac must be <= 2");
  if (!(decades_per_stratum >= 0.0)) throw ValidationError("decades_per_stratum must be >= 0");
  if (!(max_oversampling >= 1.0)) throw ValidationError("max_oversampling must be >= 1");
}

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 256) throw ValidationError("Gauss-Legendre order must be in [1, 256]");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

WeightedIntegral integrate_weighted_1d(const std::function<double(double)>& g, HalfLine interval,
                                       int n) {
  const auto& rule = gauss_legendre(kNodesPerDecade);
  const double ln10 = std::log(10.0);
  // In u = ln t the measure dt / t^{n+1} becomes e^{-n u} du.
  const auto integrand = [&](double u) {
    const double v = g(std::exp(u));
    if (v == 0.0) return 0.0;
    return v * std::exp(-n * u);
  };

  WeightedIntegral out;
  std::vector<double> c;
  double total = 0.0;
  int rising = 0;
  for (int k = 0; k < kMaxDecades; ++k) {
    const double a = interval == HalfLine::unit ? -(k + 1) * ln10 : k * ln10;
    const double b = interval == HalfLine::unit ? -k * ln10 : (k + 1) * ln10;
    const double ck = gauss_interval(integrand, a, b, rule);
    out.decades = k + 1;
    if (!std::isfinite(ck)) {
      // Overflow of the integrand: only a stable geometric decay rescues the value.
      if (const auto tail = geometric_tail(c, 1e-2)) {
        out.tail = *tail;
        out.value = total + *tail;
        return out;
      }
      out.divergent = true;
      out.value = kInf;
      return out;
    }
    c.push_back(ck);
    total += ck;
    if (total == 0.0) {
      if (k >= 40) return out;
      continue;
    }
    const double q = c.size() >= 2 && c[c.size() - 2] > 0.0 ? ck / c[c.size() - 2] : 0.0;
    rising = (k >= kDivergenceFloorDecades && ck > 1e-3 * total && q >= 1.0 - 1e-3) ? rising + 1
                                                                                    : 0;
    if (rising >= 3) {
      out.divergent = true;
      out.value = kInf;
      return out;
    }
    if (k >= 2 && ck <= 1e-13 * total) {
      out.value = total;
      return out;
    }
    const double spread = k >= 24 ? 1e-3 : 1e-9;
    if (const auto tail = geometric_tail(c, spread)) {
      out.tail = *tail;
      out.value = total + *tail;
      return out;
    }
  }
  if (const auto tail = geometric_tail(c, 1e-2)) {
    out.tail = *tail;
    out.value = total + *tail;
    return out;
  }
  if (c.back() > 1e-6 * total) {
    out.divergent = true;
    out.value = kInf;
    return out;
  }
  out.value = total;
  return out;
}

MeasureEstimate integrate_domain(const std::function<double(Point)>& f, const Domain& dom,
                                 const QuadratureSpec& spec) {
  spec.validate();
  const Box& bb = dom.bbox();
  const std::size_t cells = static_cast<std::size_t>(spec.n_measure) / 2;
  const auto cols = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(std::sqrt(cells * bb.width() / bb.height()))));
  const auto rows = std::max<std::size_t>(1, cells / cols);
  const double cw = bb.width() / static_cast<double>(cols);
  const double ch = bb.height() / static_cast<double>(rows);
  const double cell_area = cw * ch;
  Rng rng(derive_seed(spec.seed, kStreamDomain));
  double sum = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      double v[2];
      for (double& vk : v) {
        const Point p{bb.lo.x + (i + rng.uniform()) * cw, bb.lo.y + (j + rng.uniform()) * ch};
        vk = dom.contains(p) ? f(p) : 0.0;
      }
      sum += 0.5 * cell_area * (v[0] + v[1]);
      var += 0.25 * cell_area * cell_area * (v[0] - v[1]) * (v[0] - v[1]);
    }
  }
  return {sum, std::sqrt(var), 2 * cols * rows, spec.seed};
}

PointSample sample_points(const Domain& dom, const Box& region, const QuadratureSpec& spec,
                          std::uint64_t stream) {
  spec.validate();
  const Box reg = intersect(region, dom.bbox());
  if (is_empty(reg)) throw NumericalError("sampling region misses the domain bounding box");

  // Pilot estimate of the hit fraction to size the stratified grid.
  Rng pilot(derive_seed(spec.seed, kStreamPilot ^ stream));
  std::size_t hits = 0;
  std::size_t draws = 0;
  for (const std::size_t budget : {std::size_t{4096}, std::size_t{262144}}) {
    while (draws < budget) {
      ++draws;
      const Point p{pilot.uniform(reg.lo.x, reg.hi.x), pilot.uniform(reg.lo.y, reg.hi.y)};
      hits += dom.contains(p) ? 1 : 0;
    }
    if (hits >= 64) break;
  }
  if (hits == 0) throw NumericalError("sampling region contains no domain points");
  const double frac = static_cast<double>(hits) / static_cast<double>(draws);
  const double oversample = std::min(1.0 / frac, spec.max_oversampling);
  const double target = spec.n_outer * oversample;

  const auto cols = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::sqrt(target * reg.width() / reg.height()))));
  const auto rows = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(target / static_cast<double>(cols))));
  const double cw = reg.width() / static_cast<double>(cols);
  const double ch = reg.height() / static_cast<double>(rows);

  PointSample out;
  out.region = reg;
  out.weight = cw * ch;
  Rng rng(derive_seed(spec.seed, kStreamOuter ^ stream));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      const Point p{reg.lo.x + (i + rng.uniform()) * cw, reg.lo.y + (j + rng.uniform()) * ch};
      if (dom.contains(p)) out.points.push_back(p);
    }
  }
  if (out.points.empty()) throw NumericalError("no sample points landed in the domain");
  return out;
}

PairSampleSet sample_pairs(const Domain& dom, const QuadratureSpec& spec,
                           std::optional<Box> support) {
  spec.validate();
  if (support && support->contains(dom.bbox())) support.reset();
  const Box region = support ? *support : dom.bbox();
  const PointSample outer = sample_points(dom, region, spec, 0);

  PairSampleSet set;
  set.support = support;
  set.t_min = spec.t_min(dom.diam());
  set.t_max = spec.t_max(dom.diam());
  set.outer_points = outer.points.size();
  const double span = std::log(set.t_max / set.t_min);
  const double decades = span / std::log(10.0);
  set.n_decades = static_cast<int>(std::ceil(decades - 1e-12));

  int strata = spec.decades_per_stratum > 0.0
                   ? std::max(1, static_cast<int>(std::lround(decades / spec.decades_per_stratum)))
                   : spec.n_radial;
  strata = std::min(strata, spec.n_radial);
  std::vector<int> per_stratum(strata, spec.n_radial / strata);
  for (int k = 0; k < spec.n_radial % strata; ++k) ++per_stratum[k];

  Rng rng(derive_seed(spec.seed, kStreamRadial));
  set.pairs.reserve(outer.points.size() * static_cast<std::size_t>(spec.n_radial) / 2);
  for (std::size_t i = 0; i < outer.points.size(); ++i) {
    const Point x = outer.points[i];
    for (int k = 0; k < strata; ++k) {
      const double base =
          outer.weight * 2.0 * kPi * span / (static_cast<double>(strata) * per_stratum[k]);
      for (int j = 0; j < per_stratum[k]; ++j) {
        const double v = (k + rng.uniform()) / strata;
        const double t = set.t_min * std::exp(v * span);
        const Point y = x + t * rng.direction();
        if (!dom.contains(y)) continue;
        const double sym = support && !support->contains(y) ? 2.0 : 1.0;
        PairSample ps;
        ps.x = x;
        ps.y = y;
        ps.t = t;
        ps.weight = base * sym / (t * t);
        ps.decade = std::min(set.n_decades - 1,
                             std::max(0, static_cast<int>(std::floor(std::log10(set.t_max / t)))));
        ps.outer = static_cast<std::uint32_t>(i);
        set.pairs.push_back(ps);
      }
    }
  }
  return set;
}

bool diagnose_near_diagonal(const std::vector<double>& contributions, double t_min,
                            double t_max) {
  const int d = static_cast<int>(contributions.size());
  if (d < 3) return false;
  double total = 0.0;
  for (double c : contributions) total += std::abs(c);
  if (!(total > 0.0)) return false;
  const double decades = std::log10(t_max / t_min);
  // Per unit log-decade density; the innermost decade may be partial.
  auto density = [&](int k) {
    const double width = std::min(1.0, decades - k);
    return width > 0.0 ? std::abs(contributions[k]) / width : 0.0;
  };
  const double inner = density(d - 1);
  const double mid = density(d - 2);
  const double outer = density(d - 3);
  if (inner / total <= 1e-3) return false;
  return inner >= 0.5 * mid && mid >= 0.5 * outer;
}

PairIntegral integrate_pairs(const PairSampleSet& set,
                             const std::function<double(const PairSample&)>& term) {
  PairIntegral out;
  out.decade_contributions.assign(static_cast<std::size_t>(std::max(set.n_decades, 0)), 0.0);
  std::vector<double> per_outer(set.outer_points, 0.0);
  for (const auto& ps : set.pairs) {
    const double v = ps.weight * term(ps);
    out.value += v;
    out.decade_contributions[ps.decade] += v;
    per_outer[ps.outer] += v;
  }
  const double m = static_cast<double>(per_outer.size());
  if (m > 1.0) {
    const double mean = out.value / m;
    double ss = 0.0;
    for (double s : per_outer) ss += (s - mean) * (s - mean);
    out.std_err = std::sqrt(m / (m - 1.0) * ss);
  }
  out.near_diagonal_divergent =
      diagnose_near_diagonal(out.decade_contributions, set.t_min, set.t_max);
  return out;
}

PairIntegral integrate_pair_singular(const std::function<double(Point, Point)>& F,
                                     const Domain& dom, const QuadratureSpec& spec) {
  const auto set = sample_pairs(dom, spec);
  return integrate_pairs(set, [&](const PairSample& ps) { return F(ps.x, ps.y); });
}

double integrate_radial_excluding(const std::function<double(double)>& G, const Domain& dom,
                                  Point x, Point exclude_center, double exclude_radius,
                                  int directions, std::uint64_t seed) {
  if (directions < 1) throw ValidationError("need at least one direction");
  const auto& rule = gauss_legendre(16);
  constexpr double kMaxLogStep = 0.5;
  const double s_max = dom.diam() * (1.0 + 1e-9);
  const double s_floor = 1e-12 * dom.diam();
  Rng rng(seed);
  const double offset = rng.uniform() * 2.0 * kPi / directions;
  // In u = ln s the radial measure s^{1-2n} ds becomes e^{(2-2n) u} du = e^{-2u} du for n = 2.
  const auto integrand = [&](double u) {
    const double s = std::exp(u);
    return G(s) / (s * s);
  };
  double total = 0.0;
  for (int d = 0; d < directions; ++d) {
    const double th = offset + 2.0 * kPi * d / directions;
    const Point dir{std::cos(th), std::sin(th)};
    auto segments = dom.ray_segments(x, dir, s_max);
    if (exclude_radius > 0.0) {
      const Point off = x - exclude_center;
      const double b = dir.x * off.x + dir.y * off.y;
      const double disc = b * b - (off.x * off.x + off.y * off.y - exclude_radius * exclude_radius);
      if (disc > 0.0) {
        const double e0 = -b - std::sqrt(disc);
        const double e1 = -b + std::sqrt(disc);
        std::vector<std::pair<double, double>> kept;
        for (const auto& [a, c] : segments) {
          if (e0 > a) kept.emplace_back(a, std::min(c, e0));
          if (e1 < c) kept.emplace_back(std::max(a, e1), c);
        }
        segments.clear();
        for (const auto& seg : kept) {
          if (seg.second > seg.first) segments.push_back(seg);
        }
      }
    }
    for (auto [a, c] : segments) {
      a = std::max(a, s_floor);
      if (!(c > a)) continue;
      const double ua = std::log(a);
      const double uc = std::log(c);
      const int pieces = std::max(1, static_cast<int>(std::ceil((uc - ua) / kMaxLogStep)));
      const double h = (uc - ua) / pieces;
      for (int k = 0; k < pieces; ++k) {
        total += gauss_interval(integrand, ua + k * h, ua + (k + 1) * h, rule);
      }
    }
  }
  return total * 2.0 * kPi / directions;
}

}  // namespace obtk
