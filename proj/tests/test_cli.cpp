#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "heyting/cli.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = heyting::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("heyting_cli_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eval") {
    CHECK(run({"eval", "--n", "900", "neg 10"}).out == "9\n");
    CHECK(run({"eval", "neg 2"}).out == "Omega(~{2})\n");
    CHECK(run({"eval", "--n", "900", "10 => 75"}).out == "225\n");
    const auto g = run({"eval", "--as-group", "Omega"});
    CHECK(g.out == "Omega\ngroup: Q/Z = (+)_p Q_p/Z_p\ndual: Zhat = prod_p Z_p\n");
    CHECK(run({"eval", "--n", "900", "--as-group", "neg 10"}).out == "9\ngroup: Z(9)\ndual: Z(9)\n");
  }

  TEST_CASE("eval errors") {
    const auto bad = run({"eval", "2 ^"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("2 ^\n   ^") != std::string::npos);
    const auto nd = run({"eval", "--n", "900", "7"});
    CHECK(nd.code == 1);
    CHECK(nd.err.find("does not divide") != std::string::npos);
  }

  TEST_CASE("table") {
    const auto t = run({"table", "--n", "6", "--op", "implies"});
    CHECK(t.code == 0);
    CHECK(lines(t.out) == 17);
    CHECK(run({"table", "--n", "1"}).out == "a,b,meet,join,implies,equiv\n1,1,1,1,1,1\n");
    CHECK(run({"table", "--n", "6", "--op", "xor"}).code == 1);
    const auto path = temp_file("table.csv");
    CHECK(run({"table", "--n", "4", "--csv", path.string()}).code == 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "a,b,meet,join,implies,equiv");
  }

  TEST_CASE("hasse") {
    const auto h = run({"hasse", "--n", "6"});
    CHECK(std::count(h.out.begin(), h.out.end(), '>') == 4);
    const auto path = temp_file("d900.dot");
    CHECK(run({"hasse", "--n", "900", "--dot", path.string()}).code == 0);
    std::ifstream in(path);
    std::string line;
    std::size_t nodes = 0, edges = 0;
    while (std::getline(in, line)) {
      if (line.find("->") != std::string::npos) {
        ++edges;
      } else if (line.find('"') != std::string::npos) {
        ++nodes;
      }
    }
    CHECK(nodes == 27);
    CHECK(edges == 54);
    const auto fail = run({"hasse", "--n", "6", "--dot", "/nonexistent/dir/x.dot"});
    CHECK(fail.code == 1);
    CHECK(fail.err.find("/nonexistent/dir/x.dot") != std::string::npos);
  }

  TEST_CASE("bell exit codes") {
    const auto v = run({"bell", "--n", "900", "--m", "10,75,36", "--a", "0.4", "--b", "0.3"});
    CHECK(v.code == 2);
    const auto j = nlohmann::json::parse(v.out);
    CHECK(j["violated"] == true);
    CHECK(j["margin"].get<double>() == doctest::Approx(0.3));
    const auto chain = run({"bell", "--n", "900", "--m", "2,10,90", "--a", "0.4", "--b", "0.3"});
    CHECK(chain.code == 0);
    const auto path = temp_file("bad_rho.json");
    std::ofstream(path) << R"({"n": 900, "diag": [0.5]})";
    const auto bad = run({"bell", "--n", "900", "--m", "10,75", "--rho", path.string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("(dimension)") != std::string::npos);
    const auto good = temp_file("rho6.json");
    std::ofstream(good) << R"({"n": 6, "diag": [0, 1, 0, 0, 0, 0]})";
    CHECK(run({"bell", "--n", "6", "--m", "2,3", "--rho", good.string()}).code == 0);
    CHECK(run({"bell", "--n", "12", "--m", "2,3", "--a", "0.5", "--b", "0.5"}).code == 1);
    CHECK(run({"bell", "--n", "12", "--m", "4,6", "--a", "0.5", "--b", "0.5", "--support",
               "1,2,3"})
              .code == 0);
    CHECK(run({"bell", "--n", "900", "--m", "10", "--a", "0.9", "--b", "0.3"}).code == 1);
  }

  TEST_CASE("search") {
    const auto s = run({"search", "--n", "900", "--seed", "7", "--samples", "50"});
    CHECK(s.code == 2);
    const auto j = nlohmann::json::parse(s.out);
    CHECK(j["margin"].get<double>() > 0);
    CHECK(j["search"]["seed"] == 7);
    CHECK(run({"search", "--n", "30", "--seed", "7", "--samples", "50"}).code == 0);
    CHECK(run({"search", "--n", "8", "--seed", "7", "--samples", "50"}).code == 0);
    const auto noseed = run({"search", "--n", "8"});
    CHECK(noseed.code == 1);
    CHECK(noseed.err.find("--seed") != std::string::npos);
    CHECK(run({"search", "--n", "1", "--seed", "1"}).code == 1);
    const auto path = temp_file("search.csv");
    CHECK(run({"search", "--n", "12", "--seed", "3", "--samples", "10", "--csv", path.string()})
              .code == 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "tuple,margin,violated,state");
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"table"}).code == 1);
    CHECK(run({"--help"}).code == 0);
  }
}
