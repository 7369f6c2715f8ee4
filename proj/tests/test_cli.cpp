#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "config.hpp"

using namespace trefftz;
using namespace trefftz::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
  explicit TempDir(const std::string& tag) : path_(fs::temp_directory_path() / ("trefftz_test_" + tag)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
}

ConfigFile parse(const std::string& text) {
  std::istringstream in(text);
  return ConfigFile::parse(in, "test.cfg");
}

}  // namespace

TEST(Config, ParsesSectionsAndValues) {
  const auto cfg = parse(
      "# comment\n"
      "[material]\nlambda = 2.5\nmu = 0.7\n"
      "[surface]\nkind = ellipsoid\nsemi_axes = 1, 1.3, 1.7\n"
      "[problem]\ntype = IV\ndegrees = 0,2..4\n"
      "[source]\nkind = kelvin\ny0 = 0 0 6\nrow = 2\n");
  const StudyConfig sc = to_study_config(cfg);
  EXPECT_EQ(sc.material.lambda(), 2.5);
  EXPECT_EQ(sc.problem, Problem::IV);
  EXPECT_EQ(sc.degrees, (std::vector<int>{0, 2, 3, 4}));
  ASSERT_TRUE(std::holds_alternative<Ellipsoid>(sc.surface));
  EXPECT_EQ(std::get<Ellipsoid>(sc.surface).semi_axes, Vec3(1, 1.3, 1.7));
  ASSERT_TRUE(std::holds_alternative<KelvinSource>(sc.source));
  EXPECT_EQ(std::get<KelvinSource>(sc.source).row, 1);
  EXPECT_EQ(solve_degree(cfg, sc), 4);
}

TEST(Config, ErrorsCiteTheLine) {
  try {
    parse("[material]\nlambda = 1\nnu = 0.3\n");
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("test.cfg:3"), std::string::npos);
  }
  try {
    to_study_config(parse("[material]\nlambda = abc\n"));
    FAIL() << "malformed value accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse("lambda = 1\n"), ConfigError);
  EXPECT_THROW(parse("[material]\nmu = 1\nmu = 2\n"), ConfigError);
  EXPECT_THROW(to_study_config(parse("[material]\nlambda = 1\nmu = -1\n")), ConfigError);
}

TEST(Config, OverridesWin) {
  auto cfg = parse("[problem]\ntype = III\n");
  cfg.apply_override("problem.type=IV");
  EXPECT_EQ(to_study_config(cfg).problem, Problem::IV);
  EXPECT_THROW(cfg.apply_override("problem.nonsense=1"), ConfigError);
  EXPECT_THROW(cfg.apply_override("novalue"), ConfigError);
}

TEST(DegreeList, Forms) {
  EXPECT_EQ(parse_degree_list("2..5"), (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(parse_degree_list("1, 3"), (std::vector<int>{1, 3}));
  EXPECT_THROW(parse_degree_list("5..2"), std::invalid_argument);
  EXPECT_THROW(parse_degree_list("x"), std::invalid_argument);
}

TEST(Cli, BasisExport) {
  std::ostringstream out, err;
  ASSERT_EQ(run({"basis", "--degree", "2"}, out, err), kOk) << err.str();
  const std::string text = out.str();
  std::size_t headers = 0;
  for (std::size_t p = text.find("# degree="); p != std::string::npos; p = text.find("# degree=", p + 1)) ++headers;
  EXPECT_EQ(headers, 27u);
  EXPECT_NE(text.find("# degree=0 s=1 row=1"), std::string::npos);
  EXPECT_NE(text.find("# degree=2 s=5 row=3"), std::string::npos);
}

TEST(Cli, CheckPasses) {
  std::ostringstream out, err;
  EXPECT_EQ(run({"check", "--degree", "4"}, out, err), kOk) << out.str() << err.str();
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
  EXPECT_NE(out.str().find("PASS betti"), std::string::npos);
}

TEST(Cli, InvalidMaterialIsAValidationError) {
  std::ostringstream out, err;
  EXPECT_EQ(run({"basis", "--lambda", "-5", "--mu", "1"}, out, err), kValidationError);
  EXPECT_FALSE(err.str().empty());
}

TEST(Cli, SolveRejectsNormalComponentInTangentialDatum) {
  TempDir dir("solve_reject");
  write_file(dir / "run.cfg", "[surface]\nkind = sphere\n[problem]\ntype = III\ndegree = 2\nn_theta = 8\nn_phi = 16\n");
  const auto q = make_quadrature(Sphere{}, 8, 16);
  std::ostringstream csv;
  csv << "scalar vx vy vz\n";
  for (std::size_t n = 0; n < q.size(); ++n) {
    const Vec3 v = n == 0 ? Vec3(1e-3 * q[n].normal) : Vec3::Zero();
    csv << "0 " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  write_file(dir / "data.csv", csv.str());
  std::ostringstream out, err;
  EXPECT_EQ(run({"solve", "-c", dir / "run.cfg", "-d", dir / "data.csv", "-o", dir / "out"}, out, err),
            kValidationError);
  EXPECT_NE(err.str().find("necessary"), std::string::npos) << err.str();

  std::ostringstream out2, err2;
  EXPECT_EQ(run({"solve", "-c", dir / "run.cfg", "-d", dir / "data.csv", "-o", dir / "out2",
                 "problem.reproject_tangential=true"},
                out2, err2),
            kOk)
      << err2.str();
  EXPECT_TRUE(fs::exists(dir.path() / "out2" / "fit.json"));
  EXPECT_TRUE(fs::exists(dir.path() / "out2" / "misfit.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "out2" / "quadrature.csv"));
}

TEST(Cli, StudyIsDeterministicAndRefusesOverwrite) {
  TempDir dir("study");
  write_file(dir / "run.cfg",
             "[surface]\nkind = ellipsoid\nsemi_axes = 1 1 1.5\n[problem]\ndegrees = 1..3\nn_theta = 12\n"
             "n_phi = 24\n[source]\nkind = kelvin\ny0 = 0 0 4.5\n");
  std::ostringstream out, err;
  ASSERT_EQ(run({"study", "-c", dir / "run.cfg", "-o", dir / "a"}, out, err), kOk) << err.str();
  ASSERT_EQ(run({"study", "-c", dir / "run.cfg", "-o", dir / "b"}, out, err), kOk) << err.str();
  EXPECT_EQ(slurp(dir / "a/study.csv"), slurp(dir / "b/study.csv"));
  EXPECT_EQ(slurp(dir / "a/study.json"), slurp(dir / "b/study.json"));

  std::ostringstream out2, err2;
  EXPECT_EQ(run({"study", "-c", dir / "run.cfg", "-o", dir / "a"}, out2, err2), kValidationError);
  EXPECT_NE(err2.str().find("--force"), std::string::npos);
  EXPECT_EQ(run({"study", "-c", dir / "run.cfg", "-o", dir / "a", "--force"}, out2, err2), kOk);
}

TEST(Cli, UnknownSubcommandFails) {
  std::ostringstream out, err;
  EXPECT_NE(run({"frobnicate"}, out, err), kOk);
}
