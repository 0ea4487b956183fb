#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = ARCCOUNT_CLI_PATH;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / "arccount_cli_io";
  fs::create_directories(dir);
  fs::path of = dir / ("out" + std::to_string(counter));
  fs::path ef = dir / ("err" + std::to_string(counter));
  ++counter;
  std::string cmd = kCli + " " + args + " >" + of.string() + " 2>" + ef.string();
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(of);
  r.err = slurp(ef);
  return r;
}

fs::path fresh_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("arccount_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("info prints the surface invariants") {
  RunResult r = run("info --surface S_1_1");
  CHECK(r.code == 0);
  CHECK(r.out == "g=1 r=1 double_genus=2 exponent=2\n");
  RunResult q = run("info --surface S_0_4");
  CHECK(q.code == 0);
  CHECK(q.out == "g=0 r=4 double_genus=3 exponent=2\n");
  // Constructible surfaces are describable even when counting refuses them.
  RunResult p = run("info --surface S_0_3");
  CHECK(p.code == 0);
  CHECK(p.out.find("exponent=0") != std::string::npos);
}

TEST_CASE("argument errors exit 1") {
  CHECK(run("census-arcs --no-such-flag").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("info --surface S_9_9").code == 1);
  RunResult r = run("census-arcs --surface S_1_1 --grid 8,4");
  CHECK(r.code == 1);
  CHECK(r.err.find("error=invalid") != std::string::npos);
  CHECK(run("--help").code == 0);
}

TEST_CASE("the pair of pants is rejected by counting verbs") {
  RunResult r = run("census-curves --surface S_0_3 --seed a --grid 2,4");
  CHECK(r.code == 1);
  CHECK(r.err.find("error=invalid") != std::string::npos);
  CHECK(r.err.find("pair of pants excluded") != std::string::npos);
}

TEST_CASE("census writes deterministic result files") {
  fs::path d1 = fresh_dir("c1"), d2 = fresh_dir("c2");
  RunResult r1 = run("census-arcs --surface S_1_1 --seed 0:0:a --functional i:a+b"
                     " --grid 2,4,6,8 --slack 4 --workers 1 --outdir " + d1.string());
  CHECK(r1.code == 0);
  CHECK(r1.out.find("count=44") != std::string::npos);
  CHECK(r1.out.find("saturated=true") != std::string::npos);
  RunResult r2 = run("census-arcs --surface S_1_1 --seed 0:0:a --functional i:a+b"
                     " --grid 2,4,6,8 --slack 4 --workers 4 --outdir " + d2.string());
  CHECK(r2.code == 0);
  CHECK(slurp(d1 / "result.csv") == slurp(d2 / "result.csv"));
  CHECK(slurp(d1 / "result.json") == slurp(d2 / "result.json"));
  CHECK(slurp(d1 / "result.csv").rfind("L,count,normalized,saturated", 0) == 0);
  // Identical run through census-curves sees the same totals (torus bijection).
  fs::path d3 = fresh_dir("c3");
  RunResult r3 = run("census-curves --surface S_1_1 --seed a --functional i:a+b"
                     " --grid 2,4,6,8 --slack 4 --outdir " + d3.string());
  CHECK(r3.code == 0);
  CHECK(r3.out.find("count=44") != std::string::npos);
}

TEST_CASE("lattice ball verb") {
  fs::path d = fresh_dir("ml");
  RunResult r = run("mlz-ball --surface S_1_1 --functional i:a+b --grid 16,32,64,128"
                    " --outdir " + d.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("count=16512") != std::string::npos);
  CHECK(r.out.find("mthu=") != std::string::npos);
  CHECK(r.out.find("cauchy_gap=") != std::string::npos);
  CHECK(slurp(d / "result.csv").rfind("L,count,normalized,cauchy_gap", 0) == 0);
  // Feature-gated surface.
  CHECK(run("mlz-ball --surface S_1_2 --functional i:ab --grid 4,8,16,32").code == 1);
}

TEST_CASE("config files feed verbs and flags override them") {
  fs::path d = fresh_dir("cfg");
  fs::path cfgp = d / "run.cfg";
  {
    std::ofstream out(cfgp);
    out << "surface = S_0_4\n"
        << "seed = 0:1:\n"
        << "functional = i:ab+bc\n"
        << "grid = 2,4\n"
        << "slack = 4\n";
  }
  fs::path outd = fresh_dir("cfgout");
  RunResult r = run("census-arcs --config " + cfgp.string() +
                    " --grid 2,4,6,8 --outdir " + outd.string());
  CHECK(r.code == 0);
  std::string json = slurp(outd / "result.json");
  CHECK(json.find("\"surface\": \"S_0_4\"") != std::string::npos);
  CHECK(json.find("\"grid\": [") != std::string::npos);
  CHECK(json.find("8") != std::string::npos);  // flag grid won
  CHECK(run("census-arcs --config " + (d / "nope.cfg").string()).code == 1);
}

TEST_CASE("check verbs report PASS and key figures") {
  RunResult r = run("check-lemma31 --surface S_1_1");
  CHECK(r.code == 0);
  CHECK(r.out.find("result=PASS") != std::string::npos);
  RunResult e = run("check-equivariance --surface S_0_4");
  CHECK(e.code == 0);
  CHECK(e.out.find("result=PASS") != std::string::npos);
  RunResult f = run("check-fibers --surface S_1_1 --seed 0:0:a --grid 4,8,16 --slack 4");
  CHECK(f.code == 0);
  CHECK(f.out.find("result=PASS") != std::string::npos);
  CHECK(f.out.find("k_estimate=1") != std::string::npos);
}

TEST_CASE("inconclusive analyses exit 2") {
  // The second functional's lattice normalization is still moving on this
  // grid (its 16->32 step sits just above the 0.05 gate).
  RunResult r = run("check-mu-independence --surface S_1_1 --seed 0:0:a"
                    " --functional i:a+b --functional2 i:a+b+ab --grid 8,16,32,64 --slack 4");
  CHECK(r.code == 2);
  CHECK(r.err.find("error=inconclusive") != std::string::npos);
  // Missing the second functional is a plain usage error instead.
  CHECK(run("check-mu-independence --surface S_1_1 --functional i:a+b").code == 1);
}
