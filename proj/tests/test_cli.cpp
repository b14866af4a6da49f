#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gdesign/corpus.hpp"
#include "gdesign/errors.hpp"
#include "gdesign_cli/cli.hpp"

using namespace gdesign;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), {"--data-dir", GDESIGN_TEST_DATA_DIR});
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "gdesign_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("verify a corpus file") {
  const auto r = run({"verify", "--file", std::string(GDESIGN_TEST_DATA_DIR) + "/complete/k21.decomp"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "K_21 n3: PASS 21 blocks 210 pairs"));
  CHECK(contains(r.out, "total: 5 PASS, 0 FAIL"));
}

TEST_CASE("verify the whole corpus") {
  const auto r = run({"verify", "--dir", GDESIGN_TEST_DATA_DIR});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "0 FAIL"));
}

TEST_CASE("corrupted input exits 3 with a line number") {
  const auto path = scratch("bad.decomp");
  std::ofstream(path) << "decomp K_7\ntarget complete 7\norbits 1\nbase n3 0 1 2 3 x 5\nend\n";
  const auto r = run({"verify", "--file", path.string()});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "bad.decomp:4"));
}

TEST_CASE("a failing corpus exits 1") {
  const auto path = scratch("fail.decomp");
  std::ofstream(path) << "decomp K_21\ntarget complete 21\nsegment 0 21 1\norbits 21\nbase n3 0 1 3 7 14 5\nend\n";
  const auto r = run({"verify", "--file", path.string()});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "K_21 n3: FAIL"));
}

TEST_CASE("build writes a sorted design that re-verifies") {
  const auto path = scratch("n13_61.txt");
  const auto r = run({"build", "--graph", "n13", "--order", "61", "--out", path.string()});
  CHECK(r.code == 0);
  const auto text = read_text_file(path);
  CHECK(contains(text, "# design n13 order 61\n# blocks 183\n"));
  const auto d = cli::parse_design(text);
  CHECK(d.blocks.size() == 183);
  CHECK(std::is_sorted(d.blocks.begin(), d.blocks.end()));
  const auto v = run({"verify", "--file", path.string()});
  CHECK(v.code == 0);
  CHECK(contains(v.out, "K_61 n13: PASS 183 blocks 1830 pairs"));
}

TEST_CASE("build output is byte-deterministic") {
  const auto a = run({"build", "--graph", "n6", "--order", "156"});
  const auto b = run({"build", "--graph", "n6", "--order", "156"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto again = cli::write_design(cli::parse_design(a.out));
  CHECK(again.substr(again.find("\nn6:")) == a.out.substr(a.out.find("\nn6:")));
}

TEST_CASE("build refusals") {
  const auto unknown = run({"build", "--graph", "n3", "--order", "16"});
  CHECK(unknown.code == 2);
  CHECK(contains(unknown.err, "Unknown"));
  CHECK(contains(unknown.err, "open problem"));

  const auto cert = run({"build", "--graph", "n8", "--order", "16"});
  CHECK(cert.code == 2);
  CHECK(contains(cert.err, "C(8,2) = 28 pairs > capacity 12*2 = 24"));

  CHECK(run({"build", "--graph", "n9", "--order", "21"}).code == 3);
  CHECK(run({"build", "--graph", "n3", "--order", "17"}).code == 3);
  CHECK(run({"build", "--graph", "n3"}).code == 3);
  CHECK(run({"build", "--graph", "n3", "--order", "400"}).code == 2);
}

TEST_CASE("build --plan prints the recipe tree") {
  const auto r = run({"build", "--graph", "n13", "--order", "185", "--plan"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "K_{10,10,10,10,15}: stored decomposition"));
  CHECK_FALSE(contains(r.out, "MISSING"));
}

TEST_CASE("status and feasibility") {
  const auto s = run({"status", "--graph", "n13", "--order", "20"});
  CHECK(s.code == 0);
  CHECK(contains(s.out, "Nonexistent"));
  const auto f = run({"feasibility", "--graph", "n13", "--order", "20"});
  CHECK(contains(f.out, "40 != 19"));
  CHECK(contains(run({"feasibility", "--graph", "n3", "--order", "16"}).out, "Feasible"));
  CHECK(run({"feasibility", "--graph", "n3", "--order", "17"}).code == 3);
}

TEST_CASE("gdd subcommand") {
  const auto td = run({"gdd", "--kind", "td", "--k", "5", "--q", "4"});
  CHECK(td.code == 0);
  CHECK(contains(td.err, "PASS 16 blocks"));
  const auto path = scratch("td74.gdd");
  CHECK(run({"gdd", "--kind", "td", "--k", "7", "--q", "11", "--out", path.string()}).code == 0);
  const auto cut = run({"gdd", "--kind", "truncate", "--in", path.string(), "--keep", "3"});
  CHECK(cut.code == 0);
  CHECK(contains(cut.err, "type 11^6 3^1: PASS"));
  CHECK(run({"gdd", "--kind", "verify", "--in", path.string()}).code == 0);
  CHECK(contains(run({"gdd", "--kind", "projective", "--q", "4"}).err, "type 4^5: PASS"));
  CHECK(contains(run({"gdd", "--kind", "affine", "--q", "4", "--derive", "drop-class"}).err, "type 4^4: PASS"));
  CHECK(contains(run({"gdd", "--kind", "search", "--k", "4", "--type", "2^7", "--seed", "3"}).err, "PASS 14 blocks"));
  CHECK(run({"gdd", "--kind", "td", "--k", "7", "--q", "6"}).code == 3);
  CHECK(run({"gdd", "--kind", "nope"}).code == 3);
}

TEST_CASE("audit table") {
  const auto r = run({"audit", "--max", "60"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "   16       Unknown       Unknown   Nonexistent       Unknown   Nonexistent"));
  CHECK(contains(r.out, "   20      verified      verified      verified      verified   Nonexistent"));
  CHECK(contains(r.out, "failed or unsupported 0"));
  CHECK(run({"audit", "--max", "60", "--jobs", "3"}).out == r.out);
}

TEST_CASE("design parser") {
  CHECK_THROWS_AS(cli::parse_design("n3: 0 1 2 3 4 5\n"), ParseError);
  CHECK_THROWS_AS(cli::parse_design("# design n3 order 6\nn3: 0 1 2 3 4 6\n"), ParseError);
  CHECK_THROWS_AS(cli::parse_design("# design n3 order 6\nn8: 0 1 2 3 4 5\n"), ParseError);
  const auto d = cli::parse_design("# design n3 order 6\nn3: 0 1 2 3 4 5\n");
  CHECK(d.order == 6);
  CHECK(d.blocks.size() == 1);
}

TEST_CASE("help and usage") {
  std::ostringstream out, err;
  CHECK(cli::run({"--help"}, out, err) == 0);
  CHECK(contains(out.str(), "audit"));
  CHECK(cli::run({}, out, err) == 3);
}
