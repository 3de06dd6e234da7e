// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for all criteria, or with criterion numbers to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "obtk/errors.hpp"
#include "obtk/format.hpp"
#include "obtk/geometry.hpp"
#include "obtk/norms.hpp"
#include "obtk/verify.hpp"
#include "obtk/young.hpp"

using namespace obtk;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kLambdaTol = 0.02;
constexpr std::size_t kGrowthSamples = 10000;
constexpr double kIdentityTol = 0.05;
constexpr double kLuxTol = 1e-4;  // rel_tol passed to the bisection
constexpr double kScalingTol = 0.05;
constexpr double kThetaBallTol = 0.10;
constexpr double kThetaBoxTol = 0.15;
constexpr double kCuspSlopeTol = 0.15;
constexpr double kDyadicTol = 0.01;
constexpr double kAnnulusTol = 0.05;
constexpr int kKernelTrials = 200;
constexpr double kCutoffSlopeTol = 0.20;
constexpr double kEnrichmentTol = 0.20;
constexpr double kCuspGrowthMin = 0.3;
constexpr double kHalvingFactor = 1.5;
constexpr double kPoincareSpread = 3.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double v) { return format_csv(v); }

bool within(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

Outcome admissibility_closed_forms() {
  Outcome o;
  const auto lu15 = lambda_under(YoungFunction::power(1.5), -1.0, 2).value;
  const auto lo15 = lambda_over(YoungFunction::power(1.5), -1.0, 2).value;
  const auto lu2 = lambda_under(YoungFunction::power(2.0), -1.0, 2).value;
  const auto lo2 = lambda_over(YoungFunction::power(2.0), -1.0, 2).value;
  const auto lu1 = lambda_under(YoungFunction::power(1.0), -1.0, 2).value;
  o.pass = within(lu15, 1.0, kLambdaTol) && within(lo15, 2.0, kLambdaTol) &&
           within(lu2, 0.5, kLambdaTol) && std::isinf(lo2) && std::isinf(lu1);
  o.detail = "under(1.5)=" + num(lu15) + " over(1.5)=" + num(lo15) + " under(2)=" + num(lu2) +
             " over(2)=" + num(lo2) + " under(1)=" + num(lu1);
  return o;
}

Outcome admissibility_windows() {
  Outcome o;
  // Window n / (1 - alpha) < p < n / |alpha| is (1, 2) for n = 2, alpha = -1.
  for (double p : {0.8, 1.0, 1.2, 1.5, 1.8, 2.0, 2.5}) {
    const bool expected = p > 1.0 && p < 2.0;
    const bool got = admissible(YoungFunction::power(p), -1.0, 2).admissible;
    o.pass = o.pass && got == expected;
    o.detail += "p=" + num(p) + ":" + (got ? "in" : "out") + (got == expected ? "" : "(!)") + " ";
  }
  return o;
}

Outcome growth_bounds() {
  Outcome o;
  for (const char* spec : {"pow:1.5", "powlog:1.2,0.5", "mix:0.5*pow:1.3+0.5*pow:1.7"}) {
    const auto f = YoungFunction::parse(spec);
    const auto g = check_growth_bounds(f, -1.0, 2, kGrowthSamples, 42);
    const std::size_t v = g.violations_small + g.violations_large;
    o.pass = o.pass && v == 0 && g.samples == kGrowthSamples;
    o.detail += std::string(spec) + ":violations=" + std::to_string(v) +
                " worst=" + num(std::max(g.worst_small, g.worst_large)) + " ";
  }
  return o;
}

Outcome besov_gagliardo_identity() {
  Outcome o;
  const auto phi = YoungFunction::power(1.5);
  QuadratureSpec besov_spec;
  QuadratureSpec gag_spec;
  gag_spec.seed = besov_spec.seed + 1;  // independent pair sample
  double worst = 0.0;
  for (const char* d : {"ball:0,0,1", "box:0,0,1,1"}) {
    const auto dom = Domain::parse(d);
    const Point c = dom.kind() == Domain::Kind::ball ? Point{0.0, 0.0} : Point{0.5, 0.5};
    const std::vector<ScalarField> fields = {
        ScalarField::coordinate(1), ScalarField::gaussian(c, 0.25 * dom.diam() / 2.0),
        cutoff(c, 0.1, 0.3, dom)};
    for (const auto& u : fields) {
      const double b = besov_seminorm(u, dom, phi, -1.0, besov_spec).value;
      const double g = gagliardo_seminorm(u, dom, 1.0 / 3.0, 1.5, gag_spec).value;
      const double rel = std::abs(b - g) / g;
      worst = std::max(worst, rel);
      o.pass = o.pass && rel <= kIdentityTol;
    }
  }
  o.detail = "6 cases, worst relative gap=" + num(worst);
  return o;
}

Outcome luxemburg_properties() {
  Outcome o;
  const auto phi = YoungFunction::power_log(1.5, 0.5);
  const QuadratureSpec spec;
  double worst_hom = 0.0;
  bool constants_zero = true;
  bool monotone = true;
  for (const char* d : {"ball:0,0,1", "box:0,0,1,1"}) {
    const auto dom = Domain::parse(d);
    const auto u = ScalarField::gaussian({0.3, 0.4}, 0.3);
    const PairDifferences pd(u, dom, spec);
    const PairDifferences pd2(ScalarField::scale(2.0, u), pd.pairs());
    const double a = besov_seminorm(pd, phi, -1.0, kLuxTol).value;
    const double b = besov_seminorm(pd2, phi, -1.0, kLuxTol).value;
    worst_hom = std::max(worst_hom, std::abs(b / (2.0 * a) - 1.0));
    const auto fs = sample_field(u, dom, spec);
    const auto fs2 = sample_field(ScalarField::scale(2.0, u), dom, spec);
    worst_hom = std::max(worst_hom, std::abs(orlicz_norm(fs2, phi, kLuxTol) /
                                                 (2.0 * orlicz_norm(fs, phi, kLuxTol)) -
                                             1.0));
    for (double c : {0.0, 3.0, -1.5}) {
      constants_zero = constants_zero &&
                       besov_seminorm(ScalarField::constant(c), dom, phi, -1.0, spec).value == 0.0;
    }
    double prev = std::numeric_limits<double>::infinity();
    for (int k = -20; k <= 20; ++k) {
      const double m = pd.besov_modular(phi, -1.0, a * std::pow(1.25, k)).value;
      monotone = monotone && m <= prev;
      prev = m;
    }
  }
  o.pass = worst_hom <= 2.0 * kLuxTol && constants_zero && monotone;
  o.detail = "homogeneity gap=" + num(worst_hom) + " constants_zero=" +
             (constants_zero ? "true" : "false") + " monotone=" + (monotone ? "true" : "false");
  return o;
}

Outcome scaling_homogeneity() {
  Outcome o;
  const auto rep = check_scaling_homogeneity(YoungFunction::power(1.5), -1.0,
                                             ScalarField::gaussian({0.0, 0.0}, 0.25), {2.0},
                                             QuadratureSpec{});
  for (const auto& t : rep.trials) {
    if (t.label != "seminorm") continue;
    o.pass = within(t.ratio, 2.0, kScalingTol);
    o.detail = "seminorm ratio at r=2: " + num(t.ratio) + " (expected 2)";
  }
  return o;
}

Outcome geometry_oracles() {
  Outcome o;
  const QuadratureSpec spec;
  const double ball = regularity_constant(Domain::ball({0, 0}, 1.0), 64, 24, spec).theta_hat;
  const double box = regularity_constant(Domain::box({0, 0}, {1, 1}), 64, 24, spec).theta_hat;
  const auto cusp = Domain::cusp(2.0);
  std::vector<double> eps;
  std::vector<double> dens;
  QuadratureSpec fine = spec;
  fine.n_measure = 65536;
  for (int k = 4; k <= 9; ++k) {
    const double e = std::ldexp(1.0, -k);
    eps.push_back(e);
    dens.push_back(local_density(cusp, {e, 0.0}, e, fine));
  }
  const double slope = loglog_slope(eps, dens);
  const auto b = dyadic_radii(Domain::ball({0, 0}, 1.0), {0.0, 0.0}, 0.5, 6, spec);
  double dyadic_gap = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    dyadic_gap = std::max(dyadic_gap, std::abs(b[j] / std::pow(2.0, -0.5 * j) - 1.0));
  }
  o.pass = within(ball, kPi / 16.0, kThetaBallTol) && within(box, 0.125, kThetaBoxTol) &&
           within(slope, 1.0, kCuspSlopeTol) && dyadic_gap <= kDyadicTol;
  o.detail = "theta(ball)=" + num(ball) + " theta(box)=" + num(box) + " cusp slope=" +
             num(slope) + " dyadic gap=" + num(dyadic_gap);
  return o;
}

std::size_t holdout_violations(const VerificationReport& rep, const std::string& label = "") {
  std::size_t v = 0;
  for (const auto& t : rep.trials) {
    if (t.split == "holdout" && (label.empty() || t.label == label) && !t.pass) ++v;
  }
  return v;
}

Outcome kernel_lower_bound() {
  Outcome o;
  const auto ball = Domain::ball({0.0, 0.0}, 1.0);
  const auto phi = YoungFunction::power(1.5);
  double worst = 0.0;
  for (int k = 2; k <= 6; ++k) {
    const double rho = std::ldexp(1.0, -k);
    const double lhs = geometric_lhs(ball, phi, -1.0, 1.0, {0.0, 0.0}, {0.0, 0.0}, rho);
    worst = std::max(worst, std::abs(lhs / (4.0 * kPi * (1.0 / std::sqrt(rho) - 1.0)) - 1.0));
  }
  o.pass = worst <= kAnnulusTol;
  o.detail = "annulus gap=" + num(worst);
  for (const char* d : {"ball:0,0,1", "box:0,0,1,1"}) {
    const auto rep =
        check_geometric_inequality(Domain::parse(d), phi, -1.0, kKernelTrials, QuadratureSpec{});
    const auto v = holdout_violations(rep);
    o.pass = o.pass && v == 0 && rep.trials.size() >= static_cast<std::size_t>(kKernelTrials);
    o.detail += std::string(" ") + d + ": trials=" + std::to_string(rep.trials.size()) +
                " holdout_violations=" + std::to_string(v) + " C1=" + num(*rep.constant("C1")) +
                " C2=" + num(*rep.constant("C2"));
  }
  return o;
}

Outcome cutoff_bound() {
  Outcome o;
  const auto ball = Domain::ball({0.0, 0.0}, 1.0);
  const auto sweep = default_cutoff_sweep(ball);
  const auto rep = check_cutoff_bound(ball, YoungFunction::power(1.5), -1.0, sweep,
                                      QuadratureSpec{});
  const auto v = holdout_violations(rep, "seminorm");
  const double sem = rep.find_series("degenerate_seminorm")->slope;
  const double bnd = rep.find_series("degenerate_bound")->slope;
  const bool slope_ok = std::abs(sem - bnd) <= kCutoffSlopeTol * std::abs(bnd);
  o.pass = sweep.size() == 20 && v == 0 && slope_ok;
  o.detail = "sweep=" + std::to_string(sweep.size()) + " holdout_violations=" + std::to_string(v) +
             " C=" + num(*rep.constant("C")) + " (t-r) slopes: seminorm=" + num(sem) +
             " bound=" + num(bnd) + " selfsimilar seminorm=" +
             num(rep.find_series("selfsimilar_seminorm")->slope) +
             " bound=" + num(rep.find_series("selfsimilar_bound")->slope);
  return o;
}

Outcome level_set_chain() {
  Outcome o;
  const auto box = Domain::box({0.0, 0.0}, {1.0, 1.0});
  const auto phi = YoungFunction::power(1.5);
  const QuadratureSpec spec;
  int passed = 0;
  for (const char* f : {"gauss:0.5,0.5,0.2", "cutoff:0.4,0.6,0.1,0.3", "const:2",
                        "sum:gauss:0.2,0.2,0.1+gauss:0.8,0.7,0.3", "scale:1000*gauss:0.5,0.5,0.05"}) {
    passed += check_levelset_chain(ScalarField::parse(f), box, phi, -1.0, spec).pass() ? 1 : 0;
  }
  // u = 1: the level sum is |dom| / 3 = ||u||_2^2 / 3, inside [m / 4, 4 m / 3].
  const auto one = check_levelset_chain(ScalarField::constant(1.0), box, phi, -1.0, spec);
  const double sum = *one.constant("level_sum");
  const double m = *one.constant("norm_q_power");
  const bool analytic = std::abs(sum - m / 3.0) <= 1e-12 * m && one.pass();
  o.pass = passed == 5 && analytic;
  o.detail = "fields passing=" + std::to_string(passed) + "/5 constant case sum=" + num(sum) +
             " m/3=" + num(m / 3.0);
  return o;
}

Outcome imbedding_ratios() {
  Outcome o;
  const auto phi = YoungFunction::power(1.5);
  const QuadratureSpec spec;
  for (const char* d : {"ball:0,0,1", "box:0,0,1,1"}) {
    const auto dom = Domain::parse(d);
    auto family = default_family(dom, 0);
    const auto more = default_family(dom, 1);
    family.insert(family.end(), more.begin(), more.end());
    const auto rep = imbedding_ratio(dom, phi, -1.0, family, spec);
    const double drift = *rep.constant("enrichment_drift");
    const double mx = *rep.constant("max_ratio");
    o.pass = o.pass && std::isfinite(mx) && drift <= kEnrichmentTol;
    o.detail += std::string(d) + ": max=" + num(mx) + " drift=" + num(drift) + " ";
  }
  std::vector<double> eps;
  for (int k = 3; k <= 7; ++k) eps.push_back(std::ldexp(1.0, -k));
  const auto rep =
      imbedding_ratio(Domain::cusp(2.0), phi, -1.0, cusp_tip_family(eps), spec, eps);
  const double slope = *rep.constant("growth_slope");
  o.pass = o.pass && slope > kCuspGrowthMin;
  o.detail += "cusp(2) growth slope=" + num(slope);
  return o;
}

Outcome explicit_constant_inequality() {
  Outcome o;
  const auto box = Domain::box({0.0, 0.0}, {1.0, 1.0});
  const auto rep = check_critical_case(box, {0.5, 0.5}, 0.2, -1.0, default_family(box),
                                       QuadratureSpec{});
  o.pass = rep.pass() && !rep.trials.empty();
  o.detail = "fields=" + std::to_string(rep.trials.size()) +
             " violations=" + std::to_string(rep.violations()) +
             " max lhs/rhs=" + num(rep.max_ratio()) +
             " constant=" + num(*rep.constant("explicit_constant"));
  return o;
}

Outcome growing_balls() {
  Outcome o;
  const auto rep = rn_imbedding_via_growing_balls(
      YoungFunction::power(1.5), -1.0, ScalarField::gaussian({0.0, 0.0}, 0.15), {2.0, 4.0, 8.0},
      QuadratureSpec{});
  const auto* drift = rep.find_series("drift");
  const auto* ratio = rep.find_series("poincare_ratio");
  // Halving: drift(R) / drift(2R) within a factor 1.5 of 2.
  bool halving = drift->y.size() >= 2;
  std::string factors;
  for (std::size_t i = 0; i + 1 < drift->y.size(); ++i) {
    const double f = drift->y[i] / drift->y[i + 1];
    halving = halving && f >= 2.0 / kHalvingFactor && f <= 2.0 * kHalvingFactor;
    factors += num(f) + " ";
  }
  const double lo = *std::min_element(ratio->y.begin(), ratio->y.end());
  const double hi = *std::max_element(ratio->y.begin(), ratio->y.end());
  const bool uniform = ratio->y.size() == 3 && hi < kPoincareSpread * lo;
  o.pass = halving && uniform;
  o.detail = "drift factors per doubling: " + factors + "(halving needs 2 within x1.5)" +
             " poincare spread=" + num(hi / lo);
  return o;
}

Outcome reproducibility() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs = {
      {"young", "check", "--phi", "powlog:1.5,0.5", "--alpha", "-1", "--growth-samples", "500"},
      {"norm", "besov", "--domain", "box:0,0,1,1", "--field", "gauss:0.5,0.5,0.2", "--phi",
       "pow:1.5", "--alpha", "-1", "--seed", "7"},
      {"domain", "regularity", "--domain", "cusp:2", "--centers", "16", "--radii-count", "8"},
      {"verify", "geom-ineq", "--domain", "ball:0,0,1", "--phi", "pow:1.5", "--alpha", "-1",
       "--trials", "50", "--seed", "3"},
      {"verify", "levelset", "--domain", "box:0,0,1,1", "--field", "gauss:0.5,0.5,0.2", "--phi",
       "pow:1.5", "--alpha", "-1"},
  };
  int identical = 0;
  for (auto args : runs) {
    args.insert(args.begin(), "obtk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::string outs[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      std::ostringstream out;
      std::ostringstream err;
      codes[k] = cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
      outs[k] = out.str();
    }
    const bool same = outs[0] == outs[1] && codes[0] == codes[1] && !outs[0].empty();
    identical += same ? 1 : 0;
    if (!same) o.detail += "differs: " + args[1] + " " + args[2] + "; ";
  }
  o.pass = identical == static_cast<int>(runs.size());
  o.detail += "identical=" + std::to_string(identical) + "/" + std::to_string(runs.size());
  return o;
}

struct Criterion {
  int index;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "admissibility closed forms", admissibility_closed_forms},
      {2, "admissibility windows", admissibility_windows},
      {3, "growth bounds", growth_bounds},
      {4, "besov-gagliardo identity", besov_gagliardo_identity},
      {5, "luxemburg properties", luxemburg_properties},
      {6, "scaling homogeneity", scaling_homogeneity},
      {7, "geometry oracles", geometry_oracles},
      {8, "kernel lower bound", kernel_lower_bound},
      {9, "cutoff bound", cutoff_bound},
      {10, "level-set chain", level_set_chain},
      {11, "imbedding ratios", imbedding_ratios},
      {12, "explicit-constant inequality", explicit_constant_inequality},
      {13, "growing balls", growing_balls},
      {14, "reproducibility", reproducibility},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.index) == selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %02d %-30s %s  %s  [%.1fs]\n", c.index, c.name,
                o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
