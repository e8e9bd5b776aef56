// End-to-end tests of the command-line tool: frozen output shapes, the
// documented exit-code contract, and the witness JSON round-trip through
// `embed` and `cm`.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef UDWIT_CLI_PATH
#error "UDWIT_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

std::string temp_path(const std::string& leaf) {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/udwit_cli_test_XXXXXX";
    const char* made = mkdtemp(tmpl);
    REQUIRE(made != nullptr);
    return std::string(made);
  }();
  return dir + "/" + leaf;
}

RunResult run_cli(const std::string& args, const std::string& stdin_file = "") {
  std::string cmd = std::string("\"") + UDWIT_CLI_PATH + "\" " + args;
  if (!stdin_file.empty()) cmd += " < " + stdin_file;
  cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("kofn prints the frozen line") {
  const RunResult r = run_cli("kofn --n 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "k(5)=1 rho_sq=48/125\n");
  const RunResult r100 = run_cli("kofn --n 100");
  CHECK(r100.exit_code == 0);
  CHECK(contains(r100.output, "k(100)=10 "));
}

TEST_CASE("witness --stats prints the frozen counts") {
  const RunResult r = run_cli("witness --dim 2 --k 0 --l 1 --stats");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "vertices=7 edges=11\n");
  const RunResult r2 = run_cli("witness --dim 3 --k 1 --l 0 --stats");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output == "vertices=9 edges=19\n");
}

TEST_CASE("verify-identity passes for both identities and reports per sample") {
  const RunResult planar = run_cli("verify-identity --lemma 5 --n 2 --samples 3");
  CHECK(planar.exit_code == 0);
  CHECK(contains(planar.output, "sample 0: pass"));
  CHECK(contains(planar.output, "sample 2: pass"));
  CHECK(contains(planar.output, "3/3 pass\n"));

  const RunResult spatial =
      run_cli("verify-identity --lemma 1 --n 6 --samples 4 --seed 9");
  CHECK(spatial.exit_code == 0);
  CHECK(contains(spatial.output, "4/4 pass\n"));

  // Deterministic given seed: identical bytes on a rerun.
  const RunResult again =
      run_cli("verify-identity --lemma 1 --n 6 --samples 4 --seed 9");
  CHECK(again.output == spatial.output);
  const RunResult other =
      run_cli("verify-identity --lemma 1 --n 6 --samples 4 --seed 10");
  CHECK(other.output != spatial.output);  // sampled values move with the seed
}

TEST_CASE("cm computes the exact bordered determinant from JSON") {
  const std::string spec_path = temp_path("triangle.json");
  write_file(spec_path,
             R"({"m":3,"phi":[["0","1","1"],["1","0","1"],["1","1","0"]]})");
  const RunResult r = run_cli("cm " + spec_path);
  CHECK(r.exit_code == 0);
  CHECK(r.output == "-3\n");

  // Same document over stdin.
  const RunResult piped = run_cli("cm", spec_path);
  CHECK(piped.exit_code == 0);
  CHECK(piped.output == "-3\n");
}

TEST_CASE("witness JSON round-trips through embed and cm without loss") {
  const std::string wit_path = temp_path("kite_witness.json");
  const RunResult emit =
      run_cli("witness --dim 2 --k 1 --l 0 --emit json --out " + wit_path);
  CHECK(emit.exit_code == 0);

  const nlohmann::json doc = nlohmann::json::parse(read_file(wit_path));
  CHECK(doc["format"] == "udwit-witness");
  CHECK(doc["target_sq"] == "11/25");

  // embed re-ingests the emitted document (derivation and all).
  const std::string report_path = temp_path("report.json");
  const RunResult emb = run_cli("embed --input " + wit_path +
                                " --seed 4 --report json > " + report_path);
  CHECK(emb.exit_code == 0);
  const nlohmann::json rep = nlohmann::json::parse(read_file(report_path));
  CHECK(rep["max_residual"].get<double>() <= 1e-9);
  CHECK(rep["target_residual"].get<double>() <= 1e-9);
  CHECK(rep.contains("coincidence_warnings"));

  // cm re-ingests the emitted rational bit-exactly: the two-point spec built
  // from the stored target has bordered determinant 2 * target.
  const std::string pair_path = temp_path("pair.json");
  const std::string t = doc["target_sq"].get<std::string>();
  write_file(pair_path,
             std::string(R"({"m":2,"phi":[["0",")") + t + R"("],[")" + t +
                 R"(","0"]]})");
  const RunResult det = run_cli("cm " + pair_path);
  CHECK(det.exit_code == 0);
  CHECK(det.output == "22/25\n");
}

TEST_CASE("embed renders planar witnesses to SVG deterministically") {
  const std::string wit_path = temp_path("planar.json");
  CHECK(run_cli("witness --dim 2 --k 0 --l 2 --emit json --out " + wit_path)
            .exit_code == 0);
  const std::string svg_path = temp_path("planar.svg");
  const RunResult r =
      run_cli("embed --input " + wit_path + " --seed 11 --svg " + svg_path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "embedded 62 vertices in R^2"));
  const std::string svg = read_file(svg_path);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(contains(svg, "</svg>"));

  // Same seed, same bytes.
  const std::string svg2_path = temp_path("planar2.svg");
  CHECK(run_cli("embed --input " + wit_path + " --seed 11 --svg " + svg2_path)
            .exit_code == 0);
  CHECK(read_file(svg2_path) == svg);
}

TEST_CASE("witness --emit dot emits a graph with the dashed distinguished pair") {
  const RunResult r = run_cli("witness --dim 2 --k 0 --l 1 --emit dot");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "graph witness {"));
  CHECK(contains(r.output, "style=dashed"));
}

TEST_CASE("counterexample reports the conjugation map and the sweep") {
  const std::string pts_path = temp_path("points.json");
  write_file(pts_path, R"([
    [{"a":"0","b":"0"},{"a":"0","b":"0"}],
    [{"a":"1","b":"1"},{"a":"0","b":"0"}],
    [{"a":"2","b":"0"},{"a":"0","b":"0"}]
  ])");
  const RunResult r = run_cli("counterexample --p 2 --points " + pts_path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "phi(0,1) = 3 + 2*sqrt(2) -> 3 - 2*sqrt(2)"));
  CHECK(contains(r.output, "[irrational, moved]"));
  CHECK(contains(r.output, "phi(0,2) = 4 -> 4"));
  CHECK(contains(r.output, "[rational, preserved]"));
  CHECK(contains(r.output, "sweep: all 1 rational squared distances preserved"));
}

TEST_CASE("exit codes follow the 0/1/2 contract") {
  // Usage errors -> 2, naming the offending field.
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
  CHECK(run_cli("kofn").exit_code == 2);  // missing required --n

  const RunResult bad_n = run_cli("kofn --n 2");
  CHECK(bad_n.exit_code == 2);
  CHECK(contains(bad_n.output, "--n"));

  const RunResult bad_dim = run_cli("witness --dim 1");
  CHECK(bad_dim.exit_code == 2);
  CHECK(contains(bad_dim.output, "n must be >= 2"));

  const RunResult bad_lemma = run_cli("verify-identity --lemma 2 --n 3 --samples 1");
  CHECK(bad_lemma.exit_code == 2);

  const RunResult planar_needs_2 =
      run_cli("verify-identity --lemma 5 --n 3 --samples 1");
  CHECK(planar_needs_2.exit_code == 2);
  CHECK(contains(planar_needs_2.output, "--n"));

  const std::string bad_json = temp_path("bad.json");
  write_file(bad_json, "this is not json");
  const RunResult malformed = run_cli("cm " + bad_json);
  CHECK(malformed.exit_code == 2);
  CHECK(contains(malformed.output, "malformed JSON"));

  const std::string asym = temp_path("asym.json");
  write_file(asym, R"({"m":2,"phi":[["0","1"],["2","0"]]})");
  const RunResult asym_r = run_cli("cm " + asym);
  CHECK(asym_r.exit_code == 2);
  CHECK(contains(asym_r.output, "phi"));

  CHECK(run_cli("embed --input /definitely/missing.json").exit_code == 2);

  // Check failures -> 1.
  const RunResult no_fit = run_cli("approx --dim 2 --target 9.999 --tol 1e-9 --kmax 2");
  CHECK(no_fit.exit_code == 1);

  // Success -> 0.
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("approx --dim 2 --target 1.7320508 --tol 0.001").exit_code == 0);
}

TEST_CASE("approx --json emits the machine-readable result") {
  const std::string out_path = temp_path("approx.json");
  const RunResult r =
      run_cli("approx --dim 3 --target 2.5 --tol 0.001 --json > " + out_path);
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(read_file(out_path));
  CHECK(doc["found"] == true);
  CHECK(doc["rel_error"].get<double>() <= 0.001);
  CHECK(doc["k"].is_number_integer());
  CHECK(doc["achieved_sq"].is_string());
}

TEST_CASE("approach prints strictly improving steps") {
  const RunResult r = run_cli("approach --dim 2 --target 1.999 --count 4");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  double last = 1e300;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto pos = line.find("abs_error=");
    REQUIRE(pos != std::string::npos);
    const double err = std::stod(line.substr(pos + 10));
    CHECK(err < last);
    last = err;
    ++n;
  }
  CHECK(n >= 2);
}
