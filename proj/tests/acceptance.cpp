// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "cli.hpp"
#include "trefftz/harness.hpp"

using namespace trefftz;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool passed = false;
  std::string detail;
};

Outcome basis_identity() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  bool counts = true;
  for (const Material& m : {Material(1, 1), Material(2.5, 0.7), Material(-0.5, 1)}) {
    const ElasticBasis basis(m, 8);
    for (const auto& e : basis) {
      worst = std::max(worst, lame_apply(m, e.field).max_abs_coefficient() / e.field.max_abs_coefficient());
    }
    for (int k = 0; k <= 8; ++k) counts = counts && ElasticBasis(m, k).size() == std::size_t(3 * (k + 1) * (k + 1));
  }
  const double t = seconds_since(t0);
  return {worst < 1e-12 && counts && t < 10.0,
          fmt::format("max residual {:.2e} (< 1e-12), counts {}, {:.2f} s (< 10 s)", worst, counts ? "ok" : "wrong", t)};
}

cli::CheckOutcome find(const std::vector<cli::CheckOutcome>& v, const std::string& name) {
  for (const auto& c : v) {
    if (c.name == name) return c;
  }
  throw std::logic_error("missing check " + name);
}

Outcome rigid_traction() {
  cli::CheckOptions o;
  o.betti_pairs = 0;
  o.degree = 1;
  const auto c = find(cli::run_checks(o), "rigid-traction");
  return {c.passed, fmt::format("10000 samples, max |T|/(|a|+|b|) {:.2e} (<= 1e-13)", c.value)};
}

Outcome betti() {
  double worst = 0.0;
  for (const SurfaceSpec& s : {SurfaceSpec{Sphere{}}, SurfaceSpec{Ellipsoid{Vec3::Zero(), Vec3(1, 1.3, 1.7)}}}) {
    cli::CheckOptions o;
    o.surface = s;
    o.betti_pairs = 100;
    worst = std::max(worst, find(cli::run_checks(o), "betti").value);
  }
  return {worst <= 1e-8, fmt::format("100 pairs x 2 surfaces, max relative {:.2e} (<= 1e-8)", worst)};
}

bool suite_abort = false;

Outcome somigliana() {
  cli::CheckOptions o;
  o.betti_pairs = 0;
  const auto checks = cli::run_checks(o);
  const auto in = find(checks, "somigliana-interior");
  const auto out = find(checks, "somigliana-exterior");
  if (in.value > 10 * in.tolerance || out.value > 10 * out.tolerance) suite_abort = true;
  return {in.passed && out.passed,
          fmt::format("interior {:.2e} (<= 1e-6), exterior {:.2e} (<= 1e-8)", in.value, out.value)};
}

StudyReport kelvin_study(const SurfaceSpec& s, Problem p) {
  StudyConfig cfg;
  cfg.surface = s;
  cfg.problem = p;
  cfg.degrees = {2, 3, 4, 5, 6, 7, 8};
  cfg.source = KelvinSource{surface_center(s) + Vec3(0, 0, 3.0 * circumscribed_radius(s)), 0};
  return run_study(cfg);
}

StudyReport sphere_iv;  // reused by the interior-accuracy criterion

Outcome completeness() {
  const auto t0 = Clock::now();
  const StudyReport a = kelvin_study(Ellipsoid{Vec3::Zero(), Vec3(1, 1.3, 1.7)}, Problem::III);
  sphere_iv = kelvin_study(Sphere{}, Problem::IV);
  const double t = seconds_since(t0);
  bool ok = t < 120.0;
  std::string detail;
  for (const StudyReport* r : {&a, static_cast<const StudyReport*>(&sphere_iv)}) {
    const double rel = r->rows.back().residual_l2 / r->rows.back().data_norm;
    const double ratio = r->rows.back().residual_l2 / r->rows.front().residual_l2;
    ok = ok && r->residual_monotone() && rel <= 1e-3 && ratio <= 0.1;
    detail += fmt::format("{}: monotone {}, r8/|d| {:.2e}, r8/r2 {:.2e}; ", to_string(r->config.problem),
                          r->residual_monotone() ? "yes" : "no", rel, ratio);
  }
  return {ok, detail + fmt::format("{:.1f} s (< 120 s)", t)};
}

Outcome rotation_floor() {
  double worst = 0.0;
  for (const SurfaceSpec& s : {SurfaceSpec{Sphere{}}, SurfaceSpec{Ellipsoid{Vec3::Zero(), Vec3(1, 1, 1.5)}}}) {
    StudyConfig cfg;
    cfg.surface = s;
    cfg.degrees = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    cfg.source = RotationFieldSource{0};
    for (const auto& row : run_study(cfg).rows) worst = std::max(worst, std::abs(row.residual_l2 / row.data_norm - 1.0));
  }
  return {worst <= 1e-6, fmt::format("max |residual - 1| {:.2e} over K = 0..8 (<= 1e-6)", worst)};
}

Outcome compatibility() {
  double worst = 0.0;
  for (const SurfaceSpec& s : {SurfaceSpec{Sphere{}}, SurfaceSpec{Ellipsoid{Vec3::Zero(), Vec3(1, 1, 1.5)}}}) {
    const auto q = make_quadrature(s, 32, 64);
    const auto gammas = tangential_rotation_fields(classify_symmetry(s), q);
    const Material m(1, 1);
    auto measure = [&](const BoundaryDataIII& d) {
      const double norm = std::sqrt(q.inner(d.phi, d.phi) + q.inner(d.Phi, d.Phi));
      for (double v : compatibility_defect(d, gammas, q)) worst = std::max(worst, std::abs(v) / norm);
    };
    for (int row = 0; row < 3; ++row) {
      const auto md = kelvin_data(m, s, q, Vec3(0.3, -0.2, 3.5), row, Problem::III);
      measure(BoundaryDataIII{md.data.scalar, md.data.vector});
    }
    for (const auto& e : ElasticBasis(m, 6)) measure(trace_III(m, e.field, q));
  }
  return {worst <= 1e-8, fmt::format("max defect / data_norm {:.2e} (<= 1e-8)", worst)};
}

Outcome interior_accuracy() {
  const auto& row = sphere_iv.rows.back();
  const double bound = 10.0 * row.residual_l2 / row.data_norm;
  return {row.probe_err_max <= bound, fmt::format("K=8 probe error {:.2e} (<= {:.2e})", row.probe_err_max, bound)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "trefftz_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream cfg(root / "study.cfg");
    cfg << "[surface]\nkind = ellipsoid\nsemi_axes = 1 1 1.5\n[problem]\ntype = III\ndegrees = 2..6\n"
           "[source]\nkind = kelvin\ny0 = 0 0 4.5\n";
  }
  std::ostringstream out, err;
  bool ok = true;
  for (const char* d : {"a", "b"}) {
    ok = ok && cli::run({"study", "-c", (root / "study.cfg").string(), "-o", (root / d).string()}, out, err) == 0;
  }
  const bool same = ok && slurp(root / "a/study.csv") == slurp(root / "b/study.csv") &&
                    slurp(root / "a/study.json") == slurp(root / "b/study.json") &&
                    !slurp(root / "a/study.csv").empty();
  fs::remove_all(root);
  return {same, ok ? (same ? "study.csv and study.json byte-identical" : "reports differ") : "study failed: " + err.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"basis identity", basis_identity},      {"rigid-field traction", rigid_traction},
      {"Betti identity", betti},               {"Somigliana dichotomy", somigliana},
      {"completeness decay", completeness},    {"incompleteness floor", rotation_floor},
      {"compatibility necessity", compatibility}, {"interior accuracy", interior_accuracy},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.passed ? 0 : 1;
    std::cout << fmt::format("[{}] {} {}: {}\n", n + 1, o.passed ? "PASS" : "FAIL", criteria[n].first, o.detail);
  }
  if (suite_abort) std::cout << "Somigliana deviation exceeded 10x tolerance: suite failed\n";
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 && !suite_abort ? 0 : 1;
}
