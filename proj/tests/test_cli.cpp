#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "csv.hpp"

namespace fs = std::filesystem;
using namespace stein::cli;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("ssk-cli-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "stein-shrink");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

ParsedCsv load(const std::string& path) { return parse_csv(read_file(path)); }

std::vector<std::string> header_of(const std::string& path) { return load(path).header; }

} // namespace

TEST_CASE("help and usage errors") {
  const Result help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("risk-curve") != std::string::npos);

  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);

  TempDir dir;
  const std::string out = dir.file("x.csv");
  const Result unknown = invoke({"special", "--p", "5", "--out", out, "--bogus"});
  CHECK(unknown.code == kExitUsage);
  CHECK_FALSE(unknown.err.empty());
  CHECK(unknown.out.empty());

  CHECK(invoke({"special", "--p", "5"}).code == kExitUsage);
  CHECK(invoke({"special", "--p", "five", "--out", out}).code == kExitUsage);
  CHECK(invoke({"risk-curve", "--p", "3", "--theta", "0:1:1", "--c", "1", "--out", out}).code ==
        kExitUsage);
  CHECK(invoke({"risk-curve", "--p", "3", "--theta", "0:1", "--c", "1", "--out", out}).code ==
        kExitUsage);
  CHECK(invoke({"cloud", "--p", "3", "--theta", "1", "--n", "-4", "--out", out}).code ==
        kExitUsage);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("domain errors exit with 1") {
  TempDir dir;
  const std::string out = dir.file("x.csv");
  const Result r = invoke({"risk-curve", "--p", "2", "--theta", "1", "--c", "1", "--out", out});
  CHECK(r.code == kExitComputation);
  CHECK(r.err.find("p >= 3") != std::string::npos);
  CHECK(r.err.find('\n') == r.err.size() - 1);

  CHECK(invoke({"geometry", "--p", "5", "--theta", "0", "--out", out}).code == kExitComputation);
  CHECK(invoke({"special", "--p", "1", "--out", out}).code == kExitComputation);
  CHECK(invoke({"conditional", "--p", "1.5", "--theta", "1", "--c", "1", "--out", out}).code ==
        kExitComputation);
  CHECK(invoke({"cloud", "--p", "1", "--theta", "1", "--n", "5", "--out", out}).code ==
        kExitComputation);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("value lists") {
  CHECK(parse_value_list("1,2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
  const auto r = parse_value_list("0:50:51");
  REQUIRE(r.size() == 51);
  CHECK(r.front() == 0.0);
  CHECK(r[17] == 17.0);
  CHECK(r.back() == 50.0);
  CHECK(parse_value_list("1,0:1:3") == std::vector<double>{1.0, 0.0, 0.5, 1.0});
  CHECK_THROWS_AS(parse_value_list(""), UsageError);
  CHECK_THROWS_AS(parse_value_list("1,,2"), UsageError);
  CHECK_THROWS_AS(parse_value_list("0:1:1"), UsageError);
  CHECK_THROWS_AS(parse_value_list("nan"), UsageError);
  CHECK(parse_int_list("3,5,10") == std::vector<long long>{3, 5, 10});
  CHECK_THROWS_AS(parse_int_list("3.5"), UsageError);
}

TEST_CASE("risk-curve schema and values") {
  TempDir dir;
  const std::string out = dir.file("curve.csv");
  const std::string svg = dir.file("curve.svg");
  const Result r = invoke({"risk-curve", "--p", "3", "--theta", "0:50:51", "--c", "1", "--out",
                           out, "--svg", svg});
  REQUIRE(r.code == 0);
  const ParsedCsv csv = load(out);
  CHECK(csv.header == std::vector<std::string>{"p", "theta", "c", "delta_exact", "delta_approx",
                                               "delta_mc_mean", "delta_mc_stderr"});
  REQUIRE(csv.rows.size() == 51);
  CHECK(*csv.number(0, csv.column("delta_exact")) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*csv.number(0, csv.column("delta_approx")) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_FALSE(csv.number(0, csv.column("delta_mc_mean")).has_value());
  CHECK(fs::exists(svg));
  CHECK(read_file(svg).find("<svg") != std::string::npos);

  const Result mc = invoke({"risk-curve", "--p", "5", "--theta", "0,2", "--c", "1,3", "--mc-n",
                            "20000", "--seed", "3", "--out", out});
  REQUIRE(mc.code == 0);
  const ParsedCsv m = load(out);
  REQUIRE(m.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const double exact = *m.number(i, m.column("delta_exact"));
    const double mean = *m.number(i, m.column("delta_mc_mean"));
    const double se = *m.number(i, m.column("delta_mc_stderr"));
    CHECK(se > 0.0);
    CHECK(std::abs(mean - exact) <= 6.0 * se);
  }
}

TEST_CASE("other subcommand schemas") {
  TempDir dir;
  const std::string out = dir.file("o.csv");

  REQUIRE(invoke({"cloud", "--p", "20", "--theta", "25", "--n", "2000", "--seed", "1", "--out",
                  out}).code == 0);
  CHECK(header_of(out) == std::vector<std::string>{"idx", "x1", "r"});
  CHECK(load(out).rows.size() == 2000);

  REQUIRE(invoke({"conditional", "--p", "3", "--theta", "2", "--c", "1", "--out", out}).code == 0);
  const ParsedCsv cond = load(out);
  CHECK(cond.header == std::vector<std::string>{"p", "theta", "c", "l_plus_1", "l_plus_2",
                                                "l_minus_1", "l_minus_2", "delta_direct",
                                                "delta_closed"});
  CHECK(*cond.number(0, cond.column("delta_closed")) == doctest::Approx(19.0 / 33.0));
  CHECK(*cond.number(0, cond.column("delta_direct")) == doctest::Approx(19.0 / 33.0));

  REQUIRE(invoke({"conditional", "--p", "2:10:5", "--theta", "0,1", "--c", "1,2,3", "--out",
                  out}).code == 0);
  CHECK(load(out).rows.size() == 30);

  REQUIRE(invoke({"geometry", "--p", "5", "--theta", "3", "--out", out}).code == 0);
  const ParsedCsv geo = load(out);
  CHECK(geo.header == std::vector<std::string>{"ax", "ay", "bx", "by", "cx", "cy", "len_ab",
                                               "len_ob", "len_bc", "shrink_factor"});
  CHECK(*geo.number(0, geo.column("cx")) == doctest::Approx(27.0 / 13.0));
  CHECK(*geo.number(0, geo.column("shrink_factor")) == doctest::Approx(9.0 / 13.0));

  REQUIRE(invoke({"special", "--p", "2,5,26", "--out", out}).code == 0);
  const ParsedCsv sp = load(out);
  CHECK(sp.header == std::vector<std::string>{"p", "e_r_exact", "e_r_asymptotic"});
  CHECK(sp.rows[1][0] == "5");
  CHECK(*sp.number(1, 2) == 1.875);

  REQUIRE(invoke({"exceedance", "--p", "20", "--theta", "0", "--n", "1000", "--out", out}).code ==
          0);
  const ParsedCsv ex = load(out);
  CHECK(ex.header == std::vector<std::string>{"p", "theta", "prob", "stderr"});
  CHECK(*ex.number(0, 2) == 1.0);

  for (const auto& entry : fs::directory_iterator(dir.path))
    CHECK(entry.path().filename().string().find("tmp") == std::string::npos);
}

TEST_CASE("output is reproducible across thread counts") {
  TempDir dir;
  std::string first;
  for (const char* threads : {"1", "2", "5", "0"}) {
    const std::string out = dir.file(std::string("c") + threads + ".csv");
    REQUIRE(invoke({"cloud", "--p", "7", "--theta", "2", "--n", "70000", "--seed", "9",
                    "--threads", threads, "--out", out}).code == 0);
    const std::string text = read_file(out);
    if (first.empty())
      first = text;
    CHECK(text == first);
  }
}

TEST_CASE("CSV numbers round-trip exactly") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  CsvTable table({"v"});
  std::vector<double> values = {0.0, -0.0, 1.0, 0.1, 1e-310, 1.7976931348623157e308};
  for (int i = 0; i < 2000; ++i)
    values.push_back(std::ldexp(mant(rng), expo(rng)));
  for (double v : values)
    table.row().add(v);
  const std::string text = table.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');
  const ParsedCsv back = parse_csv(text);
  REQUIRE(back.rows.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    REQUIRE(*back.number(i, 0) == values[i]);
  CHECK(format_real(0.5) == "0.5");

  const ParsedCsv empty = parse_csv(CsvTable({"a", "b"}).str());
  CHECK(empty.header == std::vector<std::string>{"a", "b"});
  CHECK(empty.rows.empty());
}
