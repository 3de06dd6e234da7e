#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "obtk/errors.hpp"
#include "obtk/field.hpp"
#include "obtk/format.hpp"
#include "obtk/geometry.hpp"
#include "obtk/norms.hpp"
#include "obtk/quadrature.hpp"
#include "obtk/verify.hpp"
#include "obtk/young.hpp"

namespace obtk::cli {

namespace {

// Raw flag values as they come off the command line or the config file.
struct Flags {
  std::string phi;
  std::optional<double> alpha;
  int n = 2;
  std::string domain;
  std::string field;
  std::uint64_t seed = 42;
  int outer = QuadratureSpec{}.n_outer;
  int radial = QuadratureSpec{}.n_radial;
  int measure = QuadratureSpec{}.n_measure;
  double tmin_frac = QuadratureSpec{}.t_min_frac;
  double tmax_frac = QuadratureSpec{}.t_max_frac;
  int trials = 200;
  std::string out;
  std::string format = "csv";
  std::string plot_dir;

  // Subcommand-specific.
  double s = 1.0 / 3.0;
  double p = 1.5;
  std::optional<double> q;
  std::string point;
  double radius = 0.0;  // 0 = diam / 4
  int levels = 6;
  int centers = 64;
  int radii_count = 24;
  double rmin = 0.0;
  std::size_t growth_samples = 0;
  std::string family = "default";
  std::vector<double> eps = {0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  std::string ball;
  std::vector<double> r_factors = {1.0, 2.0, 4.0};
  std::vector<double> radii = {2.0, 4.0, 8.0};
};

// Spec strings parsed up front, before any computation.
struct Resolved {
  std::optional<YoungFunction> phi;
  std::optional<Domain> domain;
  std::optional<ScalarField> field;
  QuadratureSpec spec;
  char sep = ',';
};

struct Output {
  std::string table;
  std::string summary;
  int code = 0;
  const VerificationReport* report = nullptr;
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

Point parse_point(const std::string& s, const char* flag) {
  const auto parts = split_top_level(s, ',');
  if (parts.size() != 2) {
    throw ValidationError(std::string(flag) + " expects x,y, got '" + s + "'");
  }
  return {parse_number(parts[0]), parse_number(parts[1])};
}

YoungFunction need_phi(const Resolved& r) {
  if (!r.phi) throw ValidationError("--phi is required");
  return *r.phi;
}

const Domain& need_domain(const Resolved& r) {
  if (!r.domain) throw ValidationError("--domain is required");
  return *r.domain;
}

const ScalarField& need_field(const Resolved& r) {
  if (!r.field) throw ValidationError("--field is required");
  return *r.field;
}

double need_alpha(const Flags& f) {
  if (!f.alpha) throw ValidationError("--alpha is required");
  return *f.alpha;
}

void need_planar(const Flags& f) {
  if (f.n != 2) {
    throw ValidationError("--n " + std::to_string(f.n) + ": only n = 2 is supported here");
  }
}

Output young_check(const Flags& f, const Resolved& r) {
  const YoungFunction phi = need_phi(r);
  const double alpha = need_alpha(f);
  const auto res = admissible(phi, alpha, f.n);
  const char sep = r.sep;
  std::ostringstream t;
  t << "phi" << sep << "alpha" << sep << "n" << sep << "lambda_under" << sep << "lambda_over"
    << sep << "admissible" << sep << "witness_under" << sep << "witness_over" << sep
    << "boundary_warning" << sep << "convex";
  std::optional<GrowthBoundCheck> growth;
  if (f.growth_samples > 0 && res.admissible) {
    growth = check_growth_bounds(phi, alpha, f.n, f.growth_samples, f.seed);
    t << sep << "growth_samples" << sep << "violations_small" << sep << "violations_large" << sep
      << "worst_small" << sep << "worst_large" << sep << "tail_decays";
  }
  t << "\n"
    << quote_cell(phi.spec(), sep) << sep << format_csv(alpha) << sep << f.n << sep
    << format_csv(res.lambda_under) << sep << format_csv(res.lambda_over) << sep
    << bool_str(res.admissible) << sep << format_csv(res.witness_under) << sep
    << format_csv(res.witness_over) << sep << bool_str(res.boundary_warning) << sep
    << bool_str(res.convex);
  if (growth) {
    t << sep << growth->samples << sep << growth->violations_small << sep
      << growth->violations_large << sep << format_csv(growth->worst_small) << sep
      << format_csv(growth->worst_large) << sep << bool_str(growth->tail_decays);
  }
  t << "\n";

  std::ostringstream s;
  s << "lambda_under=" << format_csv(res.lambda_under)
    << " lambda_over=" << format_csv(res.lambda_over)
    << " admissible=" << bool_str(res.admissible) << "\n";
  if (res.boundary_warning) s << "  note supremum attained at the edge of the grid\n";
  if (!res.convex) s << "  note phi is not convex\n";
  int code = 0;
  if (growth) {
    s << "  growth violations_small=" << growth->violations_small
      << " violations_large=" << growth->violations_large << "\n";
    if (growth->violations_small + growth->violations_large > 0 || !growth->tail_decays) code = 2;
  }
  return {t.str(), s.str(), code};
}

Output domain_regularity(const Flags& f, const Resolved& r) {
  need_planar(f);
  const Domain& dom = need_domain(r);
  const auto est = regularity_constant(dom, f.centers, f.radii_count, r.spec, f.rmin);
  const char sep = r.sep;
  std::ostringstream t;
  t << "domain" << sep << "theta_hat" << sep << "witness_x" << sep << "witness_y" << sep
    << "witness_radius\n";
  t << quote_cell(dom.spec(), sep) << sep << format_csv(est.theta_hat) << sep
    << format_csv(est.witness_point.x)
    << sep << format_csv(est.witness_point.y) << sep << format_csv(est.witness_radius) << "\n";
  return {t.str(), "theta_hat=" + format_csv(est.theta_hat) + "\n", 0};
}

Output domain_dyadic(const Flags& f, const Resolved& r) {
  need_planar(f);
  const Domain& dom = need_domain(r);
  const Point z = f.point.empty() ? Point{0.0, 0.0} : parse_point(f.point, "--point");
  const double radius = f.radius > 0.0 ? f.radius : 0.25 * dom.diam();
  const auto b = dyadic_radii(dom, z, radius, f.levels, r.spec);
  const char sep = r.sep;
  std::ostringstream t;
  t << "j" << sep << "radius_factor\n";
  for (std::size_t j = 0; j < b.size(); ++j) t << j << sep << format_csv(b[j]) << "\n";
  return {t.str(), "levels=" + std::to_string(b.size() - 1) + "\n", 0};
}

Output norm_row(const std::string& kind, const Resolved& r, double value,
                const std::string& status, double modular) {
  const char sep = r.sep;
  std::ostringstream t;
  t << "norm" << sep << "domain" << sep << "field" << sep << "value" << sep << "modular" << sep
    << "status\n";
  t << kind << sep << quote_cell(r.domain->spec(), sep) << sep
    << quote_cell(r.field->spec(), sep) << sep << format_csv(value)
    << sep << format_csv(modular) << sep << status << "\n";
  return {t.str(), kind + "=" + format_csv(value) + " status=" + status + "\n", 0};
}

Output norm_besov(const Flags& f, const Resolved& r) {
  need_planar(f);
  const YoungFunction phi = need_phi(r);
  const double alpha = need_alpha(f);
  const PairDifferences pd(need_field(r), need_domain(r), r.spec);
  const auto res = besov_seminorm(pd, phi, alpha);
  // Divergence is a finding: the field is reported as outside the space.
  if (res.near_diagonal_divergent) {
    return norm_row("besov", r, std::numeric_limits<double>::infinity(), "not_in_space",
                    res.modular);
  }
  return norm_row("besov", r, res.value, "ok", res.modular);
}

Output norm_gagliardo(const Flags& f, const Resolved& r) {
  need_planar(f);
  const PairDifferences pd(need_field(r), need_domain(r), r.spec);
  const auto res = gagliardo_seminorm(pd, f.s, f.p);
  if (res.near_diagonal_divergent) {
    return norm_row("gagliardo", r, std::numeric_limits<double>::infinity(), "not_in_space",
                    res.modular);
  }
  return norm_row("gagliardo", r, res.value, "ok", res.modular);
}

Output norm_orlicz(const Flags& f, const Resolved& r) {
  need_planar(f);
  const YoungFunction phi = need_phi(r);
  const auto fs = sample_field(need_field(r), need_domain(r), r.spec);
  const double v = orlicz_norm(fs, phi);
  return norm_row("orlicz", r, v, "ok", v > 0.0 ? orlicz_modular(fs, phi, v) : 0.0);
}

Output norm_lebesgue(const Flags& f, const Resolved& r) {
  need_planar(f);
  double q = 0.0;
  if (f.q) {
    q = *f.q;
  } else if (f.alpha) {
    q = f.n / std::abs(*f.alpha);
  } else {
    throw ValidationError("--q or --alpha is required");
  }
  const auto fs = sample_field(need_field(r), need_domain(r), r.spec);
  const double v = lebesgue_norm(fs, q);
  return norm_row("lebesgue", r, v, "ok", std::pow(v, q));
}

std::vector<ScalarField> resolve_family(const Flags& f, const Domain& dom,
                                        std::vector<double>* scales) {
  if (f.family == "default") return default_family(dom, 0);
  if (f.family == "default2") {
    auto out = default_family(dom, 0);
    const auto more = default_family(dom, 1);
    out.insert(out.end(), more.begin(), more.end());
    return out;
  }
  if (f.family == "cusp-tip") {
    *scales = f.eps;
    return cusp_tip_family(f.eps);
  }
  std::vector<ScalarField> out;
  for (const auto& tok : split_top_level(f.family, ';')) {
    out.push_back(ScalarField::parse(trim(tok)));
  }
  if (out.empty()) throw ValidationError("--family '" + f.family + "' names no fields");
  return out;
}

Output report_output(VerificationReport&& rep, const Resolved& r,
                     std::optional<VerificationReport>& keep) {
  keep = std::move(rep);
  Output o;
  o.table = keep->table(r.sep);
  o.summary = keep->summary();
  o.code = keep->pass() ? 0 : 2;
  o.report = &*keep;
  return o;
}

Output run_verify(const std::string& which, const Flags& f, const Resolved& r,
                  std::optional<VerificationReport>& keep) {
  need_planar(f);
  const double alpha = need_alpha(f);
  if (which == "geom-ineq") {
    return report_output(
        check_geometric_inequality(need_domain(r), need_phi(r), alpha, f.trials, r.spec), r,
        keep);
  }
  if (which == "cutoff") {
    const Domain& dom = need_domain(r);
    return report_output(
        check_cutoff_bound(dom, need_phi(r), alpha, default_cutoff_sweep(dom), r.spec), r, keep);
  }
  if (which == "levelset") {
    return report_output(
        check_levelset_chain(need_field(r), need_domain(r), need_phi(r), alpha, r.spec), r,
        keep);
  }
  if (which == "imbedding" || which == "imbedding-inhomog") {
    const Domain& dom = need_domain(r);
    std::vector<double> scales;
    const auto family = resolve_family(f, dom, &scales);
    if (which == "imbedding") {
      return report_output(imbedding_ratio(dom, need_phi(r), alpha, family, r.spec, scales), r,
                           keep);
    }
    return report_output(
        imbedding_ratio_inhomog(dom, need_phi(r), alpha, family, r.spec, scales), r, keep);
  }
  if (which == "critical") {
    const Domain& dom = need_domain(r);
    if (f.ball.empty()) throw ValidationError("--ball cx,cy,R is required");
    const auto parts = split_top_level(f.ball, ',');
    if (parts.size() != 3) throw ValidationError("--ball expects cx,cy,R, got '" + f.ball + "'");
    std::vector<double> scales;
    const auto family = resolve_family(f, dom, &scales);
    return report_output(
        check_critical_case(dom, {parse_number(parts[0]), parse_number(parts[1])},
                            parse_number(parts[2]), alpha, family, r.spec),
        r, keep);
  }
  if (which == "scaling") {
    return report_output(
        check_scaling_homogeneity(need_phi(r), alpha, need_field(r), f.r_factors, r.spec), r,
        keep);
  }
  if (which == "rn-balls") {
    return report_output(
        rn_imbedding_via_growing_balls(need_phi(r), alpha, need_field(r), f.radii, r.spec), r,
        keep);
  }
  throw ValidationError("unknown experiment '" + which + "'");
}

void write_plot_data(const VerificationReport& rep, const std::string& dir, char sep) {
  std::filesystem::create_directories(dir);
  const std::string ext = sep == '\t' ? ".tsv" : ".csv";
  for (const auto& s : rep.series) {
    std::ofstream os(std::filesystem::path(dir) / (rep.experiment + "_" + s.name + ext),
                     std::ios::binary);
    os << rep.series_data(s, sep);
  }
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orlicz-Besov toolkit: seminorms, Orlicz norms, measure density and inequality checks",
               "obtk"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML key = value file mirroring the flags; flags win");

  Flags f;
  double alpha_raw = 0.0;
  double q_raw = 0.0;
  auto* alpha_opt = app.add_option("--alpha", alpha_raw, "Smoothness exponent, -n < alpha < 0");
  app.add_option("--phi", f.phi, "Young function: pow:<p>, powlog:<p>,<g>, mix:<w>*<spec>+...");
  app.add_option("--n", f.n, "Dimension")->capture_default_str();
  app.add_option("--domain", f.domain, "ball:cx,cy,R | box:x0,y0,x1,y1 | cusp:g | poly:x,y;...");
  app.add_option("--field", f.field, "Field spec, e.g. gauss:0,0,0.2");
  app.add_option("--seed", f.seed, "Random seed")->capture_default_str();
  app.add_option("--outer", f.outer, "Outer points per pair sample")->capture_default_str();
  app.add_option("--radial", f.radial, "Offsets per outer point")->capture_default_str();
  app.add_option("--measure", f.measure, "Points per measure estimate")->capture_default_str();
  app.add_option("--tmin-frac", f.tmin_frac, "Smallest pair distance / diam")
      ->capture_default_str();
  app.add_option("--tmax-frac", f.tmax_frac, "Largest pair distance / diam")
      ->capture_default_str();
  app.add_option("--trials", f.trials, "Trials for sampled experiments")->capture_default_str();
  app.add_option("--out", f.out, "Write the table here instead of stdout");
  app.add_option("--format", f.format, "csv or tsv")
      ->check(CLI::IsMember({"csv", "tsv"}))
      ->capture_default_str();
  app.add_option("--plot-dir", f.plot_dir, "Directory for series data files");
  app.add_option("--s", f.s, "Gagliardo smoothness")->capture_default_str();
  app.add_option("--p", f.p, "Gagliardo integrability")->capture_default_str();
  auto* q_opt = app.add_option("--q", q_raw, "Lebesgue exponent (default n / |alpha|)");
  app.add_option("--point", f.point, "Center x,y");
  app.add_option("--radius", f.radius, "Base radius (default diam / 4)");
  app.add_option("--levels", f.levels, "Dyadic levels")->capture_default_str();
  app.add_option("--centers", f.centers, "Sampled centers")->capture_default_str();
  app.add_option("--radii-count", f.radii_count, "Radii per center")->capture_default_str();
  app.add_option("--rmin", f.rmin, "Smallest radius (0 = diam / 512)")->capture_default_str();
  app.add_option("--growth-samples", f.growth_samples, "Also test the growth bounds")
      ->capture_default_str();
  app.add_option("--family", f.family, "default | default2 | cusp-tip | spec;spec;...")
      ->capture_default_str();
  app.add_option("--eps", f.eps, "Cusp-tip scales")->delimiter(',');
  app.add_option("--ball", f.ball, "Interior ball cx,cy,R");
  app.add_option("--r-factors", f.r_factors, "Dilation factors")->delimiter(',');
  app.add_option("--radii", f.radii, "Ball radii")->delimiter(',');

  auto* young = app.add_subcommand("young", "Young function checks")->require_subcommand(1);
  auto* young_check_cmd = young->add_subcommand("check", "Admissibility integrals");
  auto* domain = app.add_subcommand("domain", "Domain geometry")->require_subcommand(1);
  auto* dom_reg = domain->add_subcommand("regularity", "Sampled measure density constant");
  auto* dom_dyadic = domain->add_subcommand("dyadic", "Dyadic measure radii");
  auto* norm = app.add_subcommand("norm", "Norms of a field")->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> norm_cmds;
  for (const char* k : {"besov", "gagliardo", "orlicz", "lebesgue"}) {
    norm_cmds.emplace_back(k, norm->add_subcommand(k));
  }
  auto* verify = app.add_subcommand("verify", "Inequality experiments")->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> verify_cmds;
  for (const char* k : {"geom-ineq", "cutoff", "levelset", "imbedding", "imbedding-inhomog",
                        "critical", "scaling", "rn-balls"}) {
    verify_cmds.emplace_back(k, verify->add_subcommand(k));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (*alpha_opt) f.alpha = alpha_raw;
  if (*q_opt) f.q = q_raw;

  const auto start = std::chrono::steady_clock::now();
  std::optional<VerificationReport> keep;
  Output result;
  try {
    Resolved r;
    r.sep = f.format == "tsv" ? '\t' : ',';
    // Every spec string is parsed before any computation starts.
    if (!f.phi.empty()) r.phi = YoungFunction::parse(f.phi);
    if (!f.domain.empty()) r.domain = Domain::parse(f.domain);
    if (!f.field.empty()) r.field = ScalarField::parse(f.field);
    r.spec.seed = f.seed;
    r.spec.n_outer = f.outer;
    r.spec.n_radial = f.radial;
    r.spec.n_measure = f.measure;
    r.spec.t_min_frac = f.tmin_frac;
    r.spec.t_max_frac = f.tmax_frac;
    r.spec.validate();

    if (*young_check_cmd) {
      result = young_check(f, r);
    } else if (*dom_reg) {
      result = domain_regularity(f, r);
    } else if (*dom_dyadic) {
      result = domain_dyadic(f, r);
    } else {
      bool done = false;
      for (const auto& [name, cmd] : norm_cmds) {
        if (!*cmd) continue;
        if (name == "besov") result = norm_besov(f, r);
        if (name == "gagliardo") result = norm_gagliardo(f, r);
        if (name == "orlicz") result = norm_orlicz(f, r);
        if (name == "lebesgue") result = norm_lebesgue(f, r);
        done = true;
      }
      for (const auto& [name, cmd] : verify_cmds) {
        if (!*cmd) continue;
        result = run_verify(name, f, r, keep);
        done = true;
      }
      if (!done) throw ValidationError("no command selected");
    }
    if (result.report && !f.plot_dir.empty()) write_plot_data(*result.report, f.plot_dir, r.sep);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotInSpaceError& e) {
    // A finding about the input, not a failure to run.
    err << "finding: " << e.what() << "\n";
    return 0;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (f.out.empty()) {
    out << result.table;
  } else {
    std::ofstream os(f.out, std::ios::binary);
    if (!os) {
      err << "error: cannot write --out " << f.out << "\n";
      return 1;
    }
    os << result.table;
  }
  err << result.summary;
  if (!result.report) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "  runtime_seconds=" << format_csv(secs) << "\n";
  }
  return result.code;
}

}  // namespace obtk::cli
