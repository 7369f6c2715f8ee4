#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "config.hpp"

namespace trefftz::cli {

namespace fs = std::filesystem;

void write_basis(std::ostream& os, const ElasticBasis& basis) {
  for (const auto& e : basis) {
    os << fmt::format("# degree={} s={} row={}\n", e.degree, e.harmonic + 1, e.row + 1);
    for (int j = 0; j < 3; ++j) {
      os << fmt::format("# component={}\n", j + 1);
      write_text(os, e.field[j]);
    }
  }
}

namespace {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vec3 random_vec(std::mt19937_64& rng, double lo, double hi) {
  return {lo + (hi - lo) * uniform(rng), lo + (hi - lo) * uniform(rng), lo + (hi - lo) * uniform(rng)};
}

Vec3 random_unit(std::mt19937_64& rng) {
  const double cz = 2.0 * uniform(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform(rng);
  const double s = std::sqrt(1.0 - cz * cz);
  return {s * std::cos(phi), s * std::sin(phi), cz};
}

double trace_norm(const ElasticField& u, const SurfaceQuadrature& quad) {
  double acc = 0.0;
  for (const auto& s : quad) acc += s.weight * u.value(s.point).squaredNorm();
  return std::sqrt(acc);
}

double traction_norm(const Material& m, const ElasticField& u, const SurfaceQuadrature& quad) {
  double acc = 0.0;
  for (const auto& s : quad) acc += s.weight * u.traction(m, s.point, s.normal).squaredNorm();
  return std::sqrt(acc);
}

}  // namespace

std::vector<CheckOutcome> run_checks(const CheckOptions& o) {
  std::vector<CheckOutcome> out;
  const Material& m = o.material;
  const ElasticBasis basis(m, o.degree);

  {
    double worst = 0.0;
    bool homogeneous = true;
    for (const auto& e : basis) {
      const double scale = e.field.max_abs_coefficient();
      worst = std::max(worst, lame_apply(m, e.field).max_abs_coefficient() / scale);
      homogeneous = homogeneous && e.field.is_homogeneous(e.degree);
    }
    const bool count_ok = basis.size() == ElasticBasis::count(o.degree);
    out.push_back({"lame-identity", worst < 1e-12 && homogeneous && count_ok, worst, 1e-12});
  }

  std::mt19937_64 rng(o.seed);
  {
    double worst = 0.0;
    for (int n = 0; n < o.rigid_samples; ++n) {
      const RigidDisplacement rd{random_vec(rng, -1, 1), random_vec(rng, -1, 1), random_vec(rng, -2, 2)};
      const JacobianPoly jac(rd.as_poly());
      const Vec3 t = traction(m, jac, random_vec(rng, -3, 3), random_unit(rng));
      worst = std::max(worst, t.norm() / (rd.a.norm() + rd.b.norm()));
    }
    out.push_back({"rigid-traction", worst <= 1e-13, worst, 1e-13});
  }

  const SurfaceQuadrature quad = make_quadrature(o.surface, o.n_theta, o.n_phi);
  {
    double worst = 0.0;
    for (int n = 0; n < o.betti_pairs; ++n) {
      const PolynomialField u(basis[rng() % basis.size()].field);
      const PolynomialField v(basis[rng() % basis.size()].field);
      const double scale =
          trace_norm(u, quad) * traction_norm(m, v, quad) + trace_norm(v, quad) * traction_norm(m, u, quad);
      worst = std::max(worst, betti_check(m, u, v, quad) / std::max(scale, 1e-300));
    }
    out.push_back({"betti", worst <= 1e-8, worst, 1e-8});
  }

  {
    const SurfaceQuadrature fine = make_quadrature(o.surface, o.somigliana_n_theta, 2 * o.somigliana_n_theta);
    const Vec3 c = surface_center(o.surface);
    const Vec3 offset(0.3, 0.1, -0.2);
    const Vec3 dir = offset.normalized();
    const Vec3 inside = c + offset.norm() * surface_radius(o.surface, dir) * dir;
    const Vec3 outside = c + 5.0 * circumscribed_radius(o.surface) * Vec3::UnitZ();
    double worst_in = 0.0;
    double worst_out = 0.0;
    const std::size_t picks = std::min<std::size_t>(10, basis.size());
    for (std::size_t n = 0; n < picks; ++n) {
      const PolynomialField w(basis[n * basis.size() / picks].field);
      worst_in = std::max(worst_in, somigliana_check(m, w, fine, inside, PointLocation::Interior).norm());
      worst_out = std::max(worst_out, somigliana_check(m, w, fine, outside, PointLocation::Exterior).norm());
    }
    out.push_back({"somigliana-interior", worst_in <= 1e-6, worst_in, 1e-6});
    out.push_back({"somigliana-exterior", worst_out <= 1e-8, worst_out, 1e-8});
  }
  return out;
}

namespace {

struct Common {
  std::string config_path;
  std::string out_dir;
  bool force = false;
  std::vector<std::string> overrides;
};

ConfigFile load_config(const Common& c) {
  ConfigFile cfg = c.config_path.empty() ? ConfigFile{} : ConfigFile::load(c.config_path);
  for (const auto& o : c.overrides) cfg.apply_override(o);
  return cfg;
}

fs::path output_dir(const Common& c, const ConfigFile& cfg) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const auto* e = cfg.find("output.dir")) return e->value;
  return "out";
}

// Creates dir if needed and refuses to clobber existing outputs without --force.
void prepare_outputs(const fs::path& dir, const std::vector<std::string>& names, bool force) {
  fs::create_directories(dir);
  if (force) return;
  for (const auto& n : names) {
    if (fs::exists(dir / n)) {
      throw std::invalid_argument(fmt::format("{} already exists; pass --force to overwrite", (dir / n).string()));
    }
  }
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw std::invalid_argument("cannot write " + p.string());
  return os;
}

int cmd_basis(const Common& c, int degree, double lambda, double mu, std::ostream& out) {
  const ElasticBasis basis(Material(lambda, mu), degree);
  if (c.out_dir.empty()) {
    write_basis(out, basis);
    return kOk;
  }
  const fs::path dir = c.out_dir;
  prepare_outputs(dir, {"basis.txt"}, c.force);
  auto os = open_out(dir / "basis.txt");
  write_basis(os, basis);
  out << fmt::format("exported {} elements (K={}) to {}\n", basis.size(), degree, (dir / "basis.txt").string());
  return kOk;
}

int cmd_check(const Common& c, CheckOptions opts, std::optional<double> lambda, std::optional<double> mu,
              std::optional<int> degree, std::ostream& out) {
  if (!c.config_path.empty() || !c.overrides.empty()) {
    const ConfigFile cfg = load_config(c);
    const StudyConfig sc = to_study_config(cfg);
    opts.material = sc.material;
    opts.surface = sc.surface;
    opts.n_theta = sc.n_theta;
    opts.n_phi = sc.n_phi;
    if (cfg.has("problem.degree") || cfg.has("problem.degrees")) opts.degree = solve_degree(cfg, sc);
  }
  if (lambda || mu) opts.material = Material(lambda.value_or(opts.material.lambda()), mu.value_or(opts.material.mu()));
  if (degree) opts.degree = *degree;

  bool all = true;
  for (const auto& r : run_checks(opts)) {
    out << fmt::format("{} {} worst={:.3e} tol={:.1e}\n", r.passed ? "PASS" : "FAIL", r.name, r.value, r.tolerance);
    all = all && r.passed;
  }
  return all ? kOk : kCheckFailed;
}

int cmd_solve(const Common& c, const std::string& data_path, std::ostream& out) {
  const ConfigFile cfg = load_config(c);
  StudyConfig sc = to_study_config(cfg);
  const int degree = solve_degree(cfg, sc);
  if (!data_path.empty()) sc.source = UserCsvSource{data_path};

  const fs::path dir = output_dir(c, cfg);
  const std::vector<std::string> names{"fit.json", "misfit.csv", "quadrature.csv"};
  prepare_outputs(dir, names, c.force);

  const SurfaceQuadrature quad = make_quadrature(sc.surface, sc.n_theta, sc.n_phi);
  const auto gammas = tangential_rotation_fields(classify_symmetry(sc.surface), quad);
  sc.degrees = {degree};
  const ManufacturedData md = study_data(sc, quad, gammas);
  const ElasticBasis basis(sc.material, degree);
  FitResult fr = fit(sc.problem, md.data, basis, quad, sc.fit);
  if (sc.problem == Problem::III) fr.rotation_content = rotation_content(fr, basis, gammas, quad);

  {
    auto os = open_out(dir / "fit.json");
    write_fit_json(os, fr);
  }
  {
    auto os = open_out(dir / "misfit.csv");
    write_misfit_csv(os, fr, quad);
  }
  {
    auto os = open_out(dir / "quadrature.csv");
    write_quadrature_csv(os, quad);
  }
  out << fmt::format("problem {} K={} residual={:.6e} data_norm={:.6e} kept_rank={}/{}\n", to_string(sc.problem),
                     degree, fr.residual_norm, fr.data_norm, fr.kept_rank, basis.size());
  if (sc.problem == Problem::III) {
    const auto defects = compatibility_defect(BoundaryDataIII{md.data.scalar, md.data.vector}, gammas, quad);
    for (std::size_t j = 0; j < defects.size(); ++j) {
      out << fmt::format("defect_{} = {:.6e}  rotation_content_{} = {:.6e}\n", j + 1, defects[j], j + 1,
                         fr.rotation_content[j]);
    }
  }
  return kOk;
}

int cmd_study(const Common& c, std::ostream& out) {
  const ConfigFile cfg = load_config(c);
  const StudyConfig sc = to_study_config(cfg);
  const fs::path dir = output_dir(c, cfg);
  prepare_outputs(dir, {"study.csv", "study.json"}, c.force);
  const StudyReport report = run_study(sc);
  {
    auto os = open_out(dir / "study.csv");
    write_study_csv(os, report);
  }
  {
    auto os = open_out(dir / "study.json");
    write_study_json(os, report);
  }
  out << fmt::format("study: {} degrees written to {}\n", report.rows.size(), (dir / "study.csv").string());
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elastic complete-system boundary fitting toolkit"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_overrides) {
    sub->add_option("-c,--config", common.config_path, "Config file (key = value with [sections])");
    sub->add_option("-o,--out", common.out_dir, "Output directory");
    sub->add_flag("--force", common.force, "Overwrite existing outputs");
    if (with_overrides) sub->add_option("overrides", common.overrides, "section.key=value overrides");
  };

  int degree = 2;
  double lambda = 1.0;
  double mu = 1.0;
  auto* basis = app.add_subcommand("basis", "Export the elastic polynomial basis");
  add_common(basis, false);
  basis->add_option("-k,--degree", degree, "Maximum degree K")->check(CLI::NonNegativeNumber);
  basis->add_option("--lambda", lambda, "Lame lambda");
  basis->add_option("--mu", mu, "Lame mu");

  std::optional<double> check_lambda;
  std::optional<double> check_mu;
  std::optional<int> check_degree;
  auto* check = app.add_subcommand("check", "Run the identity suites");
  add_common(check, true);
  check->add_option("--lambda", check_lambda, "Lame lambda");
  check->add_option("--mu", check_mu, "Lame mu");
  check->add_option("-k,--degree", check_degree, "Maximum degree K")->check(CLI::NonNegativeNumber);

  std::string data_path;
  auto* solve = app.add_subcommand("solve", "Fit one boundary value problem");
  add_common(solve, true);
  solve->add_option("-d,--data", data_path, "Boundary data CSV `scalar vx vy vz` in quadrature order");

  auto* study = app.add_subcommand("study", "Run a degree sweep and write a report");
  add_common(study, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidationError;
  }

  try {
    if (*basis) return cmd_basis(common, degree, lambda, mu, out);
    if (*check) return cmd_check(common, CheckOptions{}, check_lambda, check_mu, check_degree, out);
    if (*solve) return cmd_solve(common, data_path, out);
    if (*study) return cmd_study(common, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kValidationError;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return kValidationError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("trefftz");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace trefftz::cli
