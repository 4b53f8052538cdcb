#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "../tools/dispatch.hpp"

using syndetic::json;
using syndetic::cli::dispatch;

namespace {

  std::string const dir = SAMPLES_DIR;

  std::string sample(char const* name) { return dir + "/" + name; }

  json report(syndetic::cli::Outcome const& o) { return json::parse(o.out); }

  std::filesystem::path scratch(char const* name) {
    auto p = std::filesystem::temp_directory_path() / "syndetic-cli-test";
    std::filesystem::create_directories(p);
    return p / name;
  }

}  // namespace

TEST_CASE("sigma of an index-3 subgroup", "[cli]") {
  auto o = dispatch({"sigma", "--group", sample("z12.toml"), "--set", sample("index3.set")});
  REQUIRE(o.exit_code == 0);
  auto r = report(o);
  CHECK(r["status"] == "ok");
  CHECK(r["result"]["value"] == "1/3");
  CHECK(r["inputs"]["set"] == "{0, 3, 6, 9}\n");
  CHECK(r["digests"].contains("group"));

  auto est = dispatch({"sigma", "--group", "cyclic(12)", "--set", sample("index3.set"), "--rounds",
                       "100"});
  CHECK(est.exit_code == 0);
  CHECK(dispatch({"sigma", "--group", "cyclic(200)", "--set", "{0}"}).exit_code == 3);
}

TEST_CASE("classify reports decisions and budgets", "[cli]") {
  auto o = dispatch({"classify", "--group", "cyclic(6)", "--set", "{0, 3}", "--query",
                     "k-meager=2"});
  REQUIRE(o.exit_code == 0);
  CHECK(report(o)["result"]["decision"] == "yes");

  auto b = dispatch({"classify", "--group", "cyclic(200)", "--set", "[0, 9]", "--query",
                     "m-large=4", "--budget", "100"});
  CHECK(b.exit_code == 2);
  CHECK(report(b)["status"] == "undecided");

  auto w = dispatch({"classify", "--group", sample("zwindow.toml"), "--set", "ap(0, 2)", "--query",
                     "m-thick=2"});
  CHECK(w.exit_code == 0);
  CHECK(report(w)["result"].contains("caveat"));

  CHECK(dispatch({"classify", "--group", "cyclic(6)", "--set", "{0}", "--query", "sizzle=2"})
            .exit_code == 1);
  CHECK(dispatch({"classify", "--group", "cyclic(6)", "--set", "{9}", "--query", "m-large=2"})
            .exit_code == 1);
}

TEST_CASE("partition reports verify", "[cli]") {
  auto path = scratch("partition.json");
  auto o    = dispatch({"partition", "--k", "1", "--stages", "3", "--horizon", "20000", "--out",
                        path.string()});
  REQUIRE(o.exit_code == 0);
  CHECK(report(o)["result"]["certificates"] == 6);
  CHECK(dispatch({"verify", "--in", path.string()}).exit_code == 0);
  CHECK(dispatch({"verify", "--in", path.string(), "--rebuild"}).exit_code == 0);

  // disturb one element of A
  std::ifstream in(path);
  json          doc = json::parse(in);
  in.close();
  auto& A = doc["result"]["A"];
  REQUIRE(A.contains("delta"));
  A["delta"][1] = A["delta"][1].get<std::int64_t>() + 1;
  auto bad      = scratch("tampered.json");
  std::ofstream(bad) << doc.dump();
  auto v = dispatch({"verify", "--in", bad.string()});
  CHECK(v.exit_code == 1);
  CHECK(v.err.find("verification failed") != std::string::npos);

  CHECK(dispatch({"partition", "--k", "2", "--stages", "8", "--horizon", "30000"}).exit_code == 3);
}

TEST_CASE("reports are deterministic apart from timing", "[cli]") {
  std::vector<std::string> args{"net", "--group", "cyclic(30)", "--E", "{0, 1, 2}", "--S", "full"};
  auto a = report(dispatch(args));
  auto b = report(dispatch(args));
  a.erase("timing");
  b.erase("timing");
  CHECK(a == b);

  auto path = scratch("net.json");
  {
    std::ofstream f(path);
    f << dispatch(args).out;
  }
  CHECK(dispatch({"verify", "--in", path.string()}).exit_code == 0);
}

TEST_CASE("usage errors and validation", "[cli]") {
  auto u = dispatch({"frobnicate"});
  CHECK(u.exit_code == 1);
  CHECK(u.err.find("usage") != std::string::npos);
  CHECK(dispatch({}).exit_code == 1);
  CHECK(dispatch({"--help"}).exit_code == 0);

  auto m = dispatch({"validate", "--group", sample("magma.toml")});
  CHECK(m.exit_code == 3);
  CHECK(report(m)["result"]["valid"] == false);

  auto g = dispatch({"validate", "--group", sample("two_orbit.toml")});
  CHECK(g.exit_code == 0);
  CHECK(report(g)["result"]["orbits"] == 2);
}
