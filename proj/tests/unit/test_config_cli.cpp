#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "vanatta/cli.hpp"
#include "vanatta/config.hpp"
#include "vanatta/errors.hpp"
#include "vanatta/layout_io.hpp"

using namespace vanatta;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("vanatta_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string summary_value(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + ": ");
  REQUIRE(pos != std::string::npos);
  const auto start = pos + key.size() + 2;
  return text.substr(start, text.find('\n', start) - start);
}

}  // namespace

TEST_SUITE("config_cli") {

TEST_CASE("config round trip") {
  config::ScenarioConfig c;
  CHECK(config::parse(config::render(c)) == c);
  c.frequency_hz = 24.125e9;
  c.incidence_angle_deg = -12.345678901234567;
  c.layout_builder = "concentric";
  c.noise_power = 1.0 / 3.0;
  c.scale_n_elements = {2, 6};
  c.sweep_snr_db = {-1.5, 0.1};
  c.seed = 18446744073709551615ull;
  CHECK(config::parse(config::render(c)) == c);
}

TEST_CASE("config parsing errors") {
  CHECK_THROWS_AS(config::parse("nonsense.key = 1"), IoError);
  CHECK_THROWS_AS(config::parse("frequency_hz = twelve"), IoError);
  CHECK_THROWS_AS(config::parse("frequency_hz"), IoError);
  CHECK_THROWS_AS(config::load("/nonexistent.conf"), IoError);
  const auto c = config::parse("# comment\n\n  seed = 9   # trailing\nlayout.n_pairs=4\n");
  CHECK(c.seed == 9);
  CHECK(c.layout_pairs == 4);
}

TEST_CASE("shipped default config equals the built-in defaults") {
  const auto shipped = config::load(fs::path(VANATTA_SOURCE_DIR) / "configs" / "default.conf");
  CHECK(shipped == config::ScenarioConfig{});
}

TEST_CASE("validate exit codes") {
  TempDir dir("validate");
  CHECK(run_cli({"validate", "--out", dir.path.string()}).code == cli::kExitOk);

  auto layout = geometry::build_linear_array(2, 0.5 * geometry::wavelength_of(24e9), geometry::wavelength_of(24e9));
  layout.lines[0].base_length += layout.wavelength / 4;
  geometry::save_layout(layout, dir.path / "bad.json");
  std::ofstream(dir.path / "bad.conf") << "layout.builder = file\nlayout.file = " << (dir.path / "bad.json").string() << "\n";
  const auto bad = run_cli({"validate", "--config", (dir.path / "bad.conf").string(), "--out", dir.path.string()});
  CHECK(bad.code == cli::kExitConstraint);
  std::size_t lines = 0;
  for (std::size_t p = 0; (p = bad.out.find("violation:", p)) != std::string::npos; ++p) ++lines;
  CHECK(lines == 1);
  CHECK(bad.out.find("line_congruence") != std::string::npos);
  // simulations refuse the invalid layout too
  CHECK(run_cli({"pattern", "--config", (dir.path / "bad.conf").string(), "--out", dir.path.string()}).code ==
        cli::kExitConstraint);

  std::ofstream(dir.path / "missing.conf") << "layout.builder = file\nlayout.file = /nonexistent/x.json\n";
  CHECK(run_cli({"validate", "--config", (dir.path / "missing.conf").string()}).code == cli::kExitIo);
  CHECK(run_cli({"validate", "--bogus"}).code == cli::kExitIo);
  CHECK(run_cli({}).code == cli::kExitIo);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("pattern summary") {
  TempDir dir("pattern");
  const auto r = run_cli({"pattern", "--out", dir.path.string(), "--grid-step-deg", "0.5"});
  REQUIRE(r.code == 0);
  const auto s = slurp(dir.path / "pattern_summary.txt");
  CHECK(std::stod(summary_value(s, "retro_peak_deg")) == 30.0);
  CHECK(std::stod(summary_value(s, "destructive_retro_v_per_m")) < 1e-10);
  CHECK(std::stod(summary_value(s, "monostatic_gain_db")) > 0.0);
  CHECK(slurp(dir.path / "pattern_constructive.csv").rfind("angle_deg,re_v_per_m,im_v_per_m,mag_v_per_m,mag_db\n", 0) == 0);

  std::ofstream(dir.path / "normal.conf") << "incidence_angle_deg = 0\n";
  REQUIRE(run_cli({"pattern", "--config", (dir.path / "normal.conf").string(), "--out", dir.path.string()}).code == 0);
  const auto n = slurp(dir.path / "pattern_summary.txt");
  CHECK(summary_value(n, "retro_peak_deg") == summary_value(n, "plate_peak_deg"));
  CHECK(std::stod(summary_value(n, "monostatic_gain_db")) == doctest::Approx(11.18).epsilon(1e-3));
}

TEST_CASE("range command") {
  TempDir dir("range");
  const auto r = run_cli({"range", "--out", dir.path.string(), "--gain-db", "11.2"});
  REQUIRE(r.code == 0);
  const auto s = slurp(dir.path / "range_summary.txt");
  CHECK(std::stod(summary_value(s, "range_extension_factor")) == doctest::Approx(3.63).epsilon(0.005 / 3.63));
  CHECK(std::stod(summary_value(s, "max_range_ratio")) == doctest::Approx(3.6308).epsilon(0.01));

  std::ofstream(dir.path / "r.conf") << "range.min_m = 1\nrange.max_m = 8\nrange.points = 8\n";
  REQUIRE(run_cli({"range", "--config", (dir.path / "r.conf").string(), "--out", dir.path.string()}).code == 0);
  std::istringstream csv(slurp(dir.path / "range_amplitude.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "distance_m,constructive_v_per_m,destructive_v_per_m,plate_v_per_m");
  std::map<double, std::pair<double, double>> rows;
  while (std::getline(csv, line)) {
    double d, on, off, plate;
    char c;
    std::istringstream(line) >> d >> c >> on >> c >> off >> c >> plate;
    rows[d] = {on, plate};
  }
  for (double d : {1.0, 2.0, 4.0}) {
    CHECK(rows[2 * d].first == doctest::Approx(rows[d].first / 2).epsilon(1e-10));
    CHECK(rows[d].first / rows[d].second == doctest::Approx(rows[1.0].first / rows[1.0].second).epsilon(1e-10));
    CHECK(rows[d].second < rows[d].first);
  }
}

TEST_CASE("scale command") {
  TempDir dir("scale");
  REQUIRE(run_cli({"scale", "--out", dir.path.string(), "--n", "2,4,8,16"}).code == 0);
  std::istringstream csv(slurp(dir.path / "scale.csv"));
  std::string line;
  std::getline(csv, line);
  std::set<double> plates;
  for (int expect : {2, 4, 8, 16}) {
    REQUIRE(std::getline(csv, line));
    int n;
    double retro, gain, plate;
    char c;
    std::istringstream(line) >> n >> c >> retro >> c >> gain >> c >> plate;
    CHECK(n == expect);
    CHECK(gain == doctest::Approx(expect).epsilon(1e-9));
    plates.insert(plate);
  }
  CHECK(plates.size() == 1);
  CHECK(run_cli({"scale", "--out", dir.path.string(), "--n", "3"}).code == cli::kExitConstraint);
}

TEST_CASE("link command") {
  TempDir dir("link");
  std::ofstream(dir.path / "l.conf") << "link.n_bits = 256\n";
  const auto conf = (dir.path / "l.conf").string();
  REQUIRE(run_cli({"link", "--config", conf, "--out", dir.path.string()}).code == 0);
  CHECK(slurp(dir.path / "link_report.json").find("\"bit_errors\": 0,") != std::string::npos);
  for (const char* f : {"link_chirps.csv", "link_range_profile.csv", "link_range_doppler.csv", "link_schedule.json"}) {
    CHECK(fs::exists(dir.path / f));
  }
  CHECK(run_cli({"link", "--config", conf, "--out", dir.path.string(), "--snr-db", "-50"}).code == 0);
  std::ofstream(dir.path / "sched.conf") << "link.switch_interval_s = 0.0001\n";
  CHECK(run_cli({"link", "--config", (dir.path / "sched.conf").string(), "--out", dir.path.string()}).code ==
        cli::kExitConstraint);
}

TEST_CASE("sweep command") {
  TempDir dir("sweep");
  std::ofstream(dir.path / "s.conf") << "link.n_bits = 64\nsweep.seeds = 2\nsweep.snr_db = -40, 0\n";
  const auto conf = (dir.path / "s.conf").string();
  REQUIRE(run_cli({"sweep", "--config", conf, "--out", dir.path.string()}).code == 0);
  CHECK(slurp(dir.path / "sweep_ber.csv").rfind("snr_db,mean_ber,std_error,seeds,min_ber,max_ber\n", 0) == 0);
  REQUIRE(run_cli({"sweep", "--config", conf, "--out", dir.path.string(), "--kind", "angle"}).code == 0);
  CHECK(fs::exists(dir.path / "sweep_angle.csv"));
  CHECK(run_cli({"sweep", "--kind", "nope"}).code == cli::kExitIo);
}

}  // TEST_SUITE
