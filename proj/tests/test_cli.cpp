#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "apfree/cli.hpp"
#include "apfree/core.hpp"
#include "apfree/residue.hpp"
#include "oracles.hpp"

using namespace apfree;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("apfree_cli_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("residue then verify") {
  TempDir tmp;
  const auto qr11 = tmp.file("qr11.txt");
  REQUIRE(run({"residue", "--p", "11", "--r", "2", "-o", qr11}).code == 0);
  CHECK(read_coloring_file(qr11) == residue_coloring(11, 2));

  const auto fast = run({"verify", qr11, "--k", "4", "--fast"});
  CHECK(fast.code == 0);
  CHECK(fast.out == "pass\n");

  const auto qr13 = tmp.file("qr13.txt");
  REQUIRE(run({"residue", "--p", "13", "--r", "2", "-o", qr13}).code == 0);
  const auto brute = run({"verify", qr13, "--k", "4", "--brute"});
  CHECK(brute.code == 1);
  CHECK(brute.out.find("a=5 d=1") != std::string::npos);

  CHECK(run({"verify", qr13, "--pattern", "0,2,3,5", "--fast"}).code == 0);
}

TEST_CASE("coeff subcommand") {
  TempDir tmp;
  const auto qr11 = tmp.file("qr11.txt");
  REQUIRE(run({"residue", "--p", "11", "--r", "2", "-o", qr11}).code == 0);
  CHECK(run({"coeff", "--mode", "unrolled", "--k", "4", qr11}).out == "1/72\n");
  CHECK(run({"coeff", "--mode", "random", "--r", "2", "--k", "3"}).out == "1/16\n");
  CHECK(run({"coeff", "--mode", "percent", "--m", "11", "--r", "2", "--k", "4"}).out == "2/3 66.67%\n");
  CHECK(run({"coeff", "--mode", "percent", "--k", "4", qr11}).out == "2/3 66.67%\n");

  const auto qr13 = tmp.file("qr13.txt");
  REQUIRE(run({"residue", "--p", "13", "--r", "2", "-o", qr13}).code == 0);
  CHECK(run({"coeff", "--mode", "unrolled", "--pattern", "0,2,3,5", qr13}).out == "1/140\n");
  const auto bad = run({"coeff", "--mode", "unrolled", "--k", "4", qr13});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("a=5 d=1") != std::string::npos);

  write(tmp.file("z4.txt"), "zm 4 2\ncells 0 0 1 1\n");
  CHECK(run({"coeff", "--mode", "periodic", "--k", "3", tmp.file("z4.txt")}).out == "1/16\n");
  CHECK(run({"coeff", "--mode", "bogus", "--k", "3"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"search", "--r", "2", "--bound", "100"}).code == 2);                       // no pattern
  CHECK(run({"search", "--r", "2", "--bound", "100", "--k", "4", "--pattern", "0,1,2"}).code == 2);
  CHECK(run({"search", "--r", "2", "--bound", "100", "--pattern", "1,2,3"}).code == 2);
  CHECK(run({"search", "--r", "2", "--bound", "100", "--k", "4", "--jobs", "0"}).code == 2);
  CHECK(run({"residue", "--p", "12", "--r", "2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("malformed coloring files report line and token") {
  TempDir tmp;
  const auto path = tmp.file("bad.txt");
  write(path, "# comment\nzm 5 2\ncells 0 1 7 1 0\n");
  const auto res = run({"verify", path, "--k", "3"});
  CHECK(res.code == 2);
  CHECK(res.err.find("line 3") != std::string::npos);
  CHECK(res.err.find("'7'") != std::string::npos);

  CHECK(run({"verify", tmp.file("missing.txt"), "--k", "3"}).code == 2);
}

TEST_CASE("limits exit 3") {
  CHECK(run({"enumerate", "--m", "40", "--r", "3", "--k", "3"}).code == 3);
  CHECK(run({"count", "--solid", "--n", "3000000000", "--k", "3"}).code == 3);
}

TEST_CASE("fast and brute verification agree on residue colorings, p <= 300") {
  TempDir tmp;
  int checked = 0;
  for (std::int64_t p = 3; p <= 300; ++p) {
    if (!oracle::trial_prime(p)) continue;
    for (int r : {2, 3}) {
      if ((p - 1) % r) continue;
      const auto path = tmp.file("c.txt");
      REQUIRE(run({"residue", "--p", std::to_string(p), "--r", std::to_string(r), "-o", path}).code == 0);
      for (const char* k : {"3", "4", "5", "6"}) {
        const auto fast = run({"verify", path, "--k", k, "--fast"});
        const auto brute = run({"verify", path, "--k", k, "--brute"});
        CHECK(fast.code == brute.code);
        CHECK(fast.out == brute.out);
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("json output carries the same values as the human output") {
  TempDir tmp;
  const auto qr13 = tmp.file("qr13.txt");
  REQUIRE(run({"residue", "--p", "13", "--r", "2", "-o", qr13}).code == 0);

  const auto verdict = nlohmann::json::parse(run({"verify", qr13, "--k", "4", "--json"}).out);
  CHECK(verdict["verdict"] == "fail");
  CHECK(verdict["witness"]["a"] == 5);
  CHECK(verdict["witness"]["d"] == 1);

  const auto human = run({"count", "--solid", "--n", "100", "--k", "3"});
  CHECK(human.out == "n=100 count=2450 total=2450 ratio=0.245000000000\n");
  const auto count = nlohmann::json::parse(run({"count", "--solid", "--n", "100", "--k", "3", "--json"}).out);
  CHECK(count["result"]["count"] == 2450);
  CHECK(count["result"]["ratio"] == "0.245000000000");
  CHECK(count["result"]["pattern"] == nlohmann::json::array({0, 1, 2}));
  CHECK_FALSE(count["result"].contains("elapsed_ms"));
  const auto timed = nlohmann::json::parse(run({"count", "--solid", "--n", "100", "--k", "3", "--json", "--timing"}).out);
  CHECK(timed["result"].contains("elapsed_ms"));

  const auto search = nlohmann::json::parse(run({"search", "--r", "2", "--k", "4", "--bound", "100", "--json"}).out);
  CHECK(search["best"] == 11);
  CHECK(search["passing"] == nlohmann::json::array({3, 5, 7, 11}));
  CHECK(run({"search", "--r", "2", "--k", "4", "--bound", "100"}).out.find("best 11 (66.67%)") != std::string::npos);

  const auto none = nlohmann::json::parse(run({"search", "--r", "3", "--k", "3", "--bound", "1000", "--json"}).out);
  CHECK(none["best"].is_null());
}

TEST_CASE("unroll, blocks and count on files") {
  TempDir tmp;
  const auto qr11 = tmp.file("qr11.txt");
  REQUIRE(run({"residue", "--p", "11", "--r", "2", "-o", qr11}).code == 0);
  CHECK(run({"unroll", qr11, "--n", "12"}).out == "line 12 2\n0 1 0 0 0 1 1 1 0 1 0 0\n");
  CHECK(run({"unroll", qr11, "--n", "12", "--periodic"}).code == 2);
  CHECK(run({"count", "--unrolled", qr11, "--n", "11", "--k", "4"}).out.find("count=0 ") != std::string::npos);

  const auto blocks = run({"blocks", "--sizes", "1,1,1", "--colors", "0,1,0", "--n", "4"});
  CHECK(blocks.out == "line 4 2\n0 1 1 0\n");
  CHECK(run({"blocks", "--n", "548"}).code == 0);

  write(tmp.file("z4.txt"), "zm 4 2\ncells 0 0 1 1\n");
  CHECK(run({"count", "--periodic", tmp.file("z4.txt"), "--n", "12", "--k", "3"}).out.find("count=4 ") !=
        std::string::npos);
  CHECK(run({"count", "--cyclic", tmp.file("z4.txt"), "--k", "3"}).out == "m=4 count=0\n");
  CHECK(run({"count", "--solid", "--n", "10,100", "--k", "3"}).out ==
        "n=10 count=20 total=20 ratio=0.200000000000\nn=100 count=2450 total=2450 ratio=0.245000000000\n");
  CHECK(run({"count", "--solid", "--periodic", tmp.file("z4.txt"), "--n", "10", "--k", "3"}).code == 2);
}

TEST_CASE("enumerate, tensor, table and average") {
  TempDir tmp;
  const auto enumerated = run({"enumerate", "--m", "4", "--r", "2", "--k", "3"});
  CHECK(enumerated.code == 0);
  CHECK(enumerated.out.find("cells 0 0 1 1") != std::string::npos);
  CHECK(run({"enumerate", "--m", "5", "--r", "2", "--k", "3"}).out.rfind("# 0 color-permutation classes", 0) == 0);

  const auto qr11 = tmp.file("qr11.txt");
  REQUIRE(run({"residue", "--p", "11", "--r", "2", "-o", qr11}).code == 0);
  const auto prod = tmp.file("prod.txt");
  REQUIRE(run({"tensor", qr11, qr11, "--k", "4", "-o", prod}).code == 0);
  CHECK(read_coloring_file(prod).modulus() == 121);
  CHECK(run({"verify", prod, "--k", "4"}).code == 0);

  const auto table = run({"table", "--limit", "1000"});
  CHECK(table.code == 0);
  CHECK(table.out.find("66.67") != std::string::npos);

  CHECK(run({"average", "--n", "8", "--r", "2", "--k", "3"}).out == "3\n");
  CHECK(run({"average", "--n", "8", "--r", "2", "--k", "3", "--exhaustive"}).out == "3\nexhaustive 3 (match)\n");
}

TEST_CASE("written colorings read back identically") {
  TempDir tmp;
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const ZmColoring c(5, oracle::random_cells(rng, 1 + static_cast<std::int64_t>(rng() % 50), 5, 0.1));
    write_coloring_file(c, tmp.file("rt.txt"));
    CHECK(read_coloring_file(tmp.file("rt.txt")) == c);
  }
}
