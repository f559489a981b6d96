#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bioopt/cli.hpp"
#include "bioopt/config_file.hpp"

using namespace bioopt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("bioopt_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter;
};
int TempDir::counter = 0;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_CASE("config file parsing") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# comment line\n"
      << "pop = 50\n"
      << "seed=3   # trailing comment\n"
      << "\n"
      << "field.0.kind=continuous\n"
      << "field.0.bits=8\n"
      << "field.0.lower=-1\n"
      << "field.0.upper=1\n"
      << "field.1.kind=discrete-multiple\n"
      << "field.1.bits=4\n"
      << "field.1.step=0.0625\n"
      << "field.1.offset=16\n";
  }
  const ConfigFile parsed = load_config_file(cfg);
  REQUIRE(parsed.entries.size() == 2);
  CHECK(parsed.entries[0] == std::pair<std::string, std::string>{"pop", "50"});
  CHECK(parsed.entries[1] == std::pair<std::string, std::string>{"seed", "3"});
  REQUIRE(parsed.layout.has_value());
  REQUIRE(parsed.layout->fields.size() == 2);
  CHECK(parsed.layout->fields[0].kind == FieldKind::continuous);
  CHECK(parsed.layout->fields[1].kind == FieldKind::discrete_multiple);
  CHECK(parsed.layout->total_bits() == 12);
}

TEST_CASE("config file rejects malformed layouts") {
  TempDir dir;
  const fs::path cfg = dir.path / "bad.cfg";
  {
    std::ofstream f(cfg);
    f << "field.1.kind=continuous\nfield.1.bits=8\n"
      << "field.1.lower=0\nfield.1.upper=1\n";  // index 0 missing
  }
  CHECK_THROWS_AS(load_config_file(cfg), ConfigError);
}

TEST_CASE("missing subcommand is a usage error") {
  std::string err;
  CHECK(cli({}, nullptr, &err) == 1);
  CHECK(cli({"--seed", "3"}, nullptr, &err) == 1);
}

TEST_CASE("unknown flags are usage errors that name the flag") {
  std::string err;
  CHECK(cli({"dejong", "--no-such-flag", "1"}, nullptr, &err) == 1);
  CHECK(err.find("no-such-flag") != std::string::npos);
}

TEST_CASE("the documented command line runs") {
  TempDir dir;
  std::string out;
  const int rc = cli({"dejong", "--seed", "7", "--alpha", "3", "--dim", "40",
                      "--half-length", "256", "--generations", "5", "--pop",
                      "20", "--out", dir.path.string()},
                     &out);
  CHECK(rc == 0);
  CHECK(fs::exists(dir.path / "trace.csv"));
  CHECK(fs::exists(dir.path / "summary.txt"));
  const std::string trace = slurp(dir.path / "trace.csv");
  CHECK(trace.find("# seed=7") != std::string::npos);
  CHECK(trace.find("alpha=3 dim=40 half-length=256") != std::string::npos);
}

TEST_CASE("flags override config file entries") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "pop=50\ngenerations=4\n";
  }
  const int rc = cli({"dejong", "--config", cfg.string(), "--pop", "100",
                      "--dim", "2", "--out", dir.path.string()});
  CHECK(rc == 0);
  const std::string trace = slurp(dir.path / "trace.csv");
  CHECK(trace.find("pop=100") != std::string::npos);   // flag wins
  CHECK(trace.find("generations=4") != std::string::npos);  // file applies
}

TEST_CASE("unknown config keys are rejected by name") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "not-a-key=1\n";
  }
  std::string err;
  const int rc =
      cli({"dejong", "--config", cfg.string(), "--out", dir.path.string()},
          nullptr, &err);
  CHECK(rc == 1);
  CHECK(err.find("not-a-key") != std::string::npos);
}

TEST_CASE("vessel summary reports objective, constraints and feasibility") {
  TempDir dir;
  const int rc = cli({"vessel", "--seed", "2", "--generations", "40", "--out",
                      dir.path.string()});
  CHECK(rc == 0);
  const std::string summary = slurp(dir.path / "summary.txt");
  CHECK(summary.find("best_objective=") != std::string::npos);
  CHECK(summary.find("constraints=") != std::string::npos);
  CHECK(summary.find("feasible=") != std::string::npos);
}

TEST_CASE("reruns with one seed are byte-identical") {
  TempDir a;
  TempDir b;
  for (const auto* dir : {&a, &b}) {
    CHECK(cli({"bump", "--seed", "11", "--generations", "30", "--pop", "30",
               "--out", dir->path.string()}) == 0);
  }
  CHECK(slurp(a.path / "trace.csv") == slurp(b.path / "trace.csv"));
}

TEST_CASE("unwritable output directory fails without partial files") {
  std::string err;
  const int rc = cli({"dejong", "--dim", "2", "--generations", "2", "--pop",
                      "10", "--out", "/proc/definitely/not/writable"},
                     nullptr, &err);
  CHECK(rc == 2);
}

TEST_CASE("repeat runs write per-seed files") {
  TempDir dir;
  const int rc = cli({"dejong", "--dim", "2", "--generations", "3", "--pop",
                      "10", "--seed", "5", "--repeat", "2", "--out",
                      dir.path.string()});
  CHECK(rc == 0);
  CHECK(fs::exists(dir.path / "trace_seed5.csv"));
  CHECK(fs::exists(dir.path / "trace_seed6.csv"));
  CHECK(fs::exists(dir.path / "summary_seed5.txt"));
  CHECK(fs::exists(dir.path / "summary_seed6.txt"));
}

TEST_CASE("layout override from the config file reaches the engine") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.cfg";
  {
    std::ofstream f(cfg);
    // a deliberately coarse 2-bit-per-variable layout
    f << "field.0.kind=continuous\nfield.0.bits=2\n"
      << "field.0.lower=-256\nfield.0.upper=256\n"
      << "field.1.kind=continuous\nfield.1.bits=2\n"
      << "field.1.lower=-256\nfield.1.upper=256\n";
  }
  const int rc = cli({"dejong", "--dim", "2", "--generations", "3", "--pop",
                      "8", "--config", cfg.string(), "--out",
                      dir.path.string()});
  CHECK(rc == 0);
  // 4 bits total -> 1 hex digit in the genome column
  const std::string trace = slurp(dir.path / "trace.csv");
  const auto header_end = trace.find("best_genome_hex\n");
  REQUIRE(header_end != std::string::npos);
  const auto line_start = header_end + std::string("best_genome_hex\n").size();
  const auto line = trace.substr(line_start, trace.find('\n', line_start) -
                                                 line_start);
  const auto last_comma = line.rfind(',');
  CHECK(line.size() - last_comma - 1 == 1);
}

TEST_CASE("ivbv handles a target field stiffer than the gene box") {
  TempDir dir;
  const fs::path target = dir.path / "target.csv";
  {
    std::ofstream f(target);
    for (int i = 0; i < 4; ++i) f << "2.0,2.0,2.0,2.0\n";
  }
  const int rc = cli({"ivbv", "--grid", "4", "--budget", "60", "--pop", "10",
                      "--kappa-hi", "0.5", "--target-kappa", target.string(),
                      "--out", dir.path.string()});
  CHECK(rc == 0);  // step chosen for the stiffer of box and target
}

TEST_CASE("layout override with the wrong arity is rejected") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "field.0.kind=continuous\nfield.0.bits=8\n"
      << "field.0.lower=-1\nfield.0.upper=1\n";
  }
  std::string err;
  const int rc = cli({"dejong", "--dim", "2", "--config", cfg.string(),
                      "--out", dir.path.string()},
                     nullptr, &err);
  CHECK(rc == 1);
}
