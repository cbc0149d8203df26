#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hdosc/cli.hpp"

using namespace hdosc;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Data rows as vectors of cells; the first row is the header.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string column(const std::vector<std::vector<std::string>>& rows, std::size_t row, const std::string& name) {
  const auto& header = rows.at(0);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return rows.at(row).at(i);
  }
  FAIL("no column " << name);
  return {};
}

double num(const std::vector<std::vector<std::string>>& rows, std::size_t row, const std::string& name) {
  return std::stod(column(rows, row, name));
}

}  // namespace

TEST_CASE("moments of the ground state") {
  const Run r = run({"moments", "--state", "D=100;lambda=1;n=0;mu=0^99", "--k", "2", "--space", "position"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("# hdosc moments", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(num(rows, 1, "exact") == doctest::Approx(50.0).epsilon(1e-10));
  CHECK(num(rows, 1, "asym") == 50.0);
  CHECK(num(rows, 1, "rel_err") < 1e-10);
}

TEST_CASE("moments over a dimension grid") {
  const Run r = run({"moments", "--grid-D", "10,100,1000", "--k", "2", "--n", "1", "--l", "2"});
  REQUIRE(r.code == kExitOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  const double grid[] = {10, 100, 1000};
  for (int i = 0; i < 3; ++i) CHECK(num(rows, i + 1, "rel_err") == doctest::Approx(8.0 / grid[i]).epsilon(1e-8));
}

TEST_CASE("uncertainty sums of the ground state") {
  const Run r = run({"sums", "--state", "D=3;lambda=1;n=0;mu=0^2", "--q", "2"});
  REQUIRE(r.code == kExitOk);
  const auto rows = csv_rows(r.out);
  CHECK(std::fabs(num(rows, 1, "slack")) < 1e-9);
  CHECK(std::fabs(num(rows, 1, "shannon_slack")) < 1e-9);
}

TEST_CASE("expansion order of the Laguerre functional") {
  const Run r = run({"asym", "--sigma", "2", "--rate", "2", "--kappa", "2", "--m", "1", "--alpha-grid",
                     "100,200,400,800", "--order", "0"});
  REQUIRE(r.code == kExitOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(num(rows, 1, "fitted_slope") == doctest::Approx(-1.0).epsilon(0.05));
  const Run laplace = run({"asym", "--sigma", "2", "--rate", "2", "--m", "1", "--alpha-grid", "100,200,400,800",
                           "--order", "1", "--d1", "laplace"});
  REQUIRE(laplace.code == kExitOk);
  CHECK(num(csv_rows(laplace.out), 1, "fitted_slope") == doctest::Approx(-2.0).epsilon(0.05));
}

TEST_CASE("convergence of the total Renyi entropy") {
  const Run r = run({"converge", "--quantity", "renyi_total", "--q", "2", "--D-grid", "100,1000,10000"});
  REQUIRE(r.code == kExitOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(num(rows, 2, "rel_err") < num(rows, 1, "rel_err"));
  CHECK(num(rows, 3, "rel_err") < num(rows, 2, "rel_err"));
}

TEST_CASE("a single grid point leaves the slope empty") {
  const Run r = run({"asym", "--sigma", "1", "--rate", "2", "--alpha-grid", "50"});
  REQUIRE(r.code == kExitOk);
  CHECK(column(csv_rows(r.out), 1, "fitted_slope").empty());
}

TEST_CASE("other subcommands run") {
  CHECK(run({"renyi", "--grid-D", "5,50", "--n", "1", "--l", "1", "--q", "0.5,2", "--part", "angular"}).code == kExitOk);
  CHECK(run({"shannon", "--state", "D=4;lambda=2;n=1;mu=1,0^2", "--space", "momentum"}).code == kExitOk);
  for (const char* q : {"moment", "renyi_radial", "renyi_angular", "shannon"}) {
    CHECK(run({"converge", "--quantity", q, "--D-grid", "50,100", "--n", "1"}).code == kExitOk);
  }
}

TEST_CASE("usage errors exit with 2") {
  const Run missing = run({"moments", "--k", "2"});
  CHECK(missing.code == kExitUsage);
  CHECK_FALSE(missing.err.empty());
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"moments", "--state", "D=4;mu=1,2^2"}).code == kExitUsage);
  CHECK(run({"moments", "--grid-D", "10", "--space", "sideways"}).code == kExitUsage);
  CHECK(run({"sums", "--grid-D", "10", "--q", "0.4"}).code == kExitUsage);
  CHECK(run({"asym", "--rate", "1", "--kappa", "3", "--alpha-grid", "10"}).code == kExitUsage);
  CHECK(run({"asym", "--rate", "2"}).code == kExitUsage);
  CHECK(run({"renyi", "--grid-D", "10", "--format", "xml"}).code == kExitUsage);
}

TEST_CASE("numerical failures exit with 3") {
  // <r^300> of a 4-dimensional state overflows a double
  const Run r = run({"moments", "--grid-D", "4", "--n", "25", "--k", "300"});
  CHECK(r.code == kExitNumeric);
  CHECK(r.out.empty());
  CHECK(r.err.find("non-finite") != std::string::npos);
}

TEST_CASE("output does not depend on parallelism") {
  const std::vector<std::string> base = {"renyi", "--grid-D", "3,8,20,60,150,400", "--n", "1", "--l", "2",
                                         "--q", "0.7,2,3"};
  auto serial = base;
  serial.insert(serial.end(), {"--parallelism", "1"});
  auto parallel = base;
  parallel.insert(parallel.end(), {"--parallelism", "4"});
  const Run a = run(serial);
  const Run b = run(parallel);
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  // the provenance line records the arguments; the records must match byte for byte
  CHECK(a.out.substr(a.out.find('\n')) == b.out.substr(b.out.find('\n')));
  CHECK(run(serial).out == a.out);
}

TEST_CASE("JSON mirrors the CSV records") {
  const Run csv = run({"moments", "--grid-D", "10,100", "--k", "1,2"});
  const Run js = run({"moments", "--grid-D", "10,100", "--k", "1,2", "--format", "json"});
  REQUIRE(js.code == kExitOk);
  const auto doc = nlohmann::json::parse(js.out);
  const auto rows = csv_rows(csv.out);
  REQUIRE(doc["records"].size() == rows.size() - 1);
  for (std::size_t i = 0; i < doc["records"].size(); ++i) {
    CHECK(doc["records"][i]["exact"].get<double>() == num(rows, i + 1, "exact"));
  }
  CHECK(doc["provenance"].get<std::string>().find("hdosc moments") == 0);
}

TEST_CASE("--out writes a file") {
  const std::string path = "cli_test_output.csv";
  const Run r = run({"moments", "--grid-D", "10", "--out", path});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(csv_rows(buf.str()).size() == 2);
  std::remove(path.c_str());
}
