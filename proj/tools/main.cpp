// udwit: exact unit-distance witness toolkit.
//
// Subcommands:
//   cm               exact bordered determinant of a squared-distance matrix
//   verify-identity  check a determinant closed form on seeded random samples
//   witness          derive a family member and materialize its witness graph
//   approx           approximate a target distance by a certified family value
//   approach         a strictly improving sequence of family approximations
//   kofn             contraction exponent and contraction factor for one n
//   embed            realize a witness graph in R^n and report residuals
//   counterexample   conjugation map on points over Q(sqrt(p)), with report
//   verify-all       run the full acceptance suite, write a JSON summary
//
// Exit codes: 0 success, 1 check failure, 2 usage error (malformed flags or
// input; diagnostics name the offending field).  All output is deterministic
// given the flags and --seed.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "udwit/acceptance.hpp"
#include "udwit/cayley_menger.hpp"
#include "udwit/density.hpp"
#include "udwit/derivation.hpp"
#include "udwit/embed.hpp"
#include "udwit/json_io.hpp"
#include "udwit/quadfield.hpp"
#include "udwit/rational.hpp"
#include "udwit/witness.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace udwit;

// Thrown for bad inputs that CLI11 cannot catch itself (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown when a requested check fails (exit 1).
struct CheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file: " + path);
  out << text;
  if (!out) throw UsageError("failed writing output file: " + path);
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError("malformed JSON in " + what + ": " + e.what());
  }
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Deterministic mixing of the global seed with a per-sample index.
uint64_t mix_seed(uint64_t seed, uint64_t salt, uint64_t index) {
  uint64_t h = seed ^ (salt * 0x9E3779B97F4A7C15ULL);
  h ^= (index + 1) * 0xBF58476D1CE4E5B9ULL;
  h ^= h >> 31;
  return h;
}

long rand_long(std::mt19937_64& rng, long lo, long hi) {  // inclusive
  return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

Rational positive_rational(std::mt19937_64& rng) {
  return Rational(rand_long(rng, 1, 40), rand_long(rng, 1, 12));
}

Rational any_rational(std::mt19937_64& rng) {
  return Rational(rand_long(rng, -40, 40), rand_long(rng, 1, 12));
}

void parallel_for(long count, int jobs, const std::function<void(long)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<long>(jobs, count));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (long i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& th : pool) th.join();
}

// --- cm ---------------------------------------------------------------------

int run_cm(const std::string& input) {
  const json doc = parse_json(slurp(input), "cm input");
  if (!doc.is_object()) throw UsageError("cm input: expected a JSON object");
  if (!doc.contains("m") || !doc["m"].is_number_integer())
    throw UsageError("cm input: field \"m\" must be an integer");
  const int m = doc["m"].get<int>();
  if (m < 1) throw UsageError("cm input: field \"m\" must be >= 1");
  if (!doc.contains("phi") || !doc["phi"].is_array())
    throw UsageError("cm input: field \"phi\" must be an array of rows");
  const json& phi = doc["phi"];
  if (static_cast<int>(phi.size()) != m)
    throw UsageError("cm input: field \"phi\" must have exactly m rows");
  std::vector<Rational> entries;
  entries.reserve(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    const json& row = phi[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw UsageError("cm input: field \"phi[" + std::to_string(i) +
                       "]\" must be an array of m entries");
    for (int j = 0; j < m; ++j) {
      const json& cell = row[static_cast<size_t>(j)];
      const std::string field =
          "phi[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (!cell.is_string())
        throw UsageError("cm input: field \"" + field +
                         "\" must be a rational string \"p/q\"");
      try {
        entries.push_back(Rational::from_string(cell.get<std::string>()));
      } catch (const std::exception& e) {
        throw UsageError("cm input: field \"" + field + "\": " + e.what());
      }
    }
  }
  SquaredDistanceSpec spec = [&] {
    try {
      return SquaredDistanceSpec::create(m, std::move(entries));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("cm input: field \"phi\": ") + e.what());
    }
  }();
  std::cout << cm_determinant(spec).to_string() << "\n";
  return 0;
}

// --- verify-identity ---------------------------------------------------------

int run_verify_identity(int lemma, int n, long samples, uint64_t seed, int jobs) {
  if (lemma == 5 && n != 2)
    throw UsageError("--n: the planar identity (--lemma 5) requires --n 2");
  if (samples < 1) throw UsageError("--samples: must be >= 1");
  struct Sample {
    bool pass = false;
    std::string line;
  };
  std::vector<Sample> rows(static_cast<size_t>(samples));
  parallel_for(samples, jobs, [&](long s) {
    std::mt19937_64 rng(mix_seed(seed, 1000003ULL * static_cast<uint64_t>(lemma) +
                                           static_cast<uint64_t>(n),
                                 static_cast<uint64_t>(s)));
    const Rational d2 = positive_rational(rng);
    std::ostringstream line;
    bool ok;
    if (lemma == 1) {
      const Rational e2 = positive_rational(rng);
      const Rational t = any_rational(rng);
      ok = bipyramid_identity_check(n, d2, e2, t);
      line << "sample " << s << ": " << (ok ? "pass" : "FAIL")
           << "  d_sq=" << d2.to_string() << " e_sq=" << e2.to_string()
           << " t=" << t.to_string();
    } else {
      const Rational t = any_rational(rng);
      ok = kite_identity_check(d2, t);
      line << "sample " << s << ": " << (ok ? "pass" : "FAIL")
           << "  d_sq=" << d2.to_string() << " t=" << t.to_string();
    }
    rows[static_cast<size_t>(s)] = {ok, line.str()};
  });
  long passed = 0;
  for (const auto& row : rows) {
    std::cout << row.line << "\n";
    passed += row.pass ? 1 : 0;
  }
  std::cout << passed << "/" << samples << " pass\n";
  return passed == samples ? 0 : 1;
}

// --- witness ------------------------------------------------------------------

int run_witness(int dim, long k, long l, const std::string& emit, bool stats,
                const std::string& out) {
  DerivPtr d = [&] {
    try {
      return derive_membership(dim, k, l);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("witness flags (--dim/--k/--l): ") + e.what());
    }
  }();
  const WitnessGraph g = build_witness(d);
  bool payload_on_stdout = false;
  if (!emit.empty()) {
    std::string text;
    if (emit == "json") {
      text = witness_to_json(g).dump(2);
      text += "\n";
    } else {  // "dot", enforced by the flag validator
      text = witness_to_dot(g);
    }
    if (out.empty()) {
      std::cout << text;
      payload_on_stdout = true;
    } else {
      spill(out, text);
    }
  }
  if (stats || emit.empty()) {
    std::ostringstream line;
    line << "vertices=" << g.vertex_ids.size() << " edges=" << g.unit_edges.size()
         << "\n";
    // Keep stdout a clean document when the payload went there.
    (payload_on_stdout ? std::cerr : std::cout) << line.str();
  }
  return 0;
}

// --- approx / approach ---------------------------------------------------------

int run_approx(int dim, double target, double tol, long kmax, bool as_json) {
  ApproxResult res = [&] {
    try {
      return approx_distance(dim, target, tol, kmax);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("approx flags (--dim/--target/--tol/--kmax): ") +
                       e.what());
    }
  }();
  if (as_json) {
    ordered_json doc;
    doc["found"] = res.found;
    if (res.found) {
      doc["k"] = res.k;
      doc["l"] = res.l;
      doc["achieved_sq"] = res.achieved_sq.to_string();
      doc["achieved"] = res.achieved;
      doc["rel_error"] = res.rel_error;
    }
    std::cout << doc.dump(2) << "\n";
  } else if (res.found) {
    std::cout << "k=" << res.k << " l=" << res.l
              << " achieved_sq=" << res.achieved_sq.to_string()
              << " achieved=" << fmt_double(res.achieved)
              << " rel_error=" << fmt_double(res.rel_error) << "\n";
  } else {
    std::cout << "no certified value within tolerance (k_max=" << kmax << ")\n";
  }
  return res.found ? 0 : 1;
}

int run_approach(int dim, double target, int count) {
  std::vector<ApproachStep> steps = [&] {
    try {
      return approach_sequence(dim, target, count);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("approach flags (--dim/--target/--count): ") +
                       e.what());
    }
  }();
  for (const auto& s : steps) {
    std::cout << "k=" << s.k << " l=" << s.l << " value=" << fmt_double(s.value)
              << " abs_error=" << fmt_double(s.abs_error) << "\n";
  }
  return 0;
}

// --- kofn -----------------------------------------------------------------------

int run_kofn(int n) {
  const auto [k, rho2] = [&]() -> std::pair<long, Rational> {
    try {
      return {k_of_n(n), rho_sq(n)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--n: ") + e.what());
    }
  }();
  std::cout << "k(" << n << ")=" << k << " rho_sq=" << rho2.to_string() << "\n";
  return 0;
}

// --- embed ------------------------------------------------------------------------

int run_embed(const std::string& input, uint64_t seed, const std::string& svg_path,
              const std::string& report) {
  const json doc = parse_json(slurp(input), "--input");
  WitnessGraph g = [&] {
    try {
      return witness_from_json(doc);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--input: ") + e.what());
    }
  }();
  if (!g.derivation)
    throw UsageError("--input: witness has no derivation; embedding needs one");
  const Embedding emb = embed(g, seed);
  if (!svg_path.empty()) {
    try {
      spill(svg_path, render_svg(g, emb));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--svg: ") + e.what());
    }
  }
  if (report == "json") {
    ordered_json rep;
    rep["max_residual"] = emb.max_edge_residual;
    rep["target_residual"] = emb.target_residual;
    rep["coincidence_warnings"] = ordered_json::array();
    for (const auto& w : emb.coincidences) {
      rep["coincidence_warnings"].push_back(
          {{"a", g.vertex_ids[w.a]}, {"b", g.vertex_ids[w.b]}, {"distance", w.distance}});
    }
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << "embedded " << g.vertex_ids.size() << " vertices in R^" << g.dim
              << "; max_residual=" << fmt_double(emb.max_edge_residual)
              << " target_residual=" << fmt_double(emb.target_residual)
              << " coincidence_warnings=" << emb.coincidences.size() << "\n";
  }
  return 0;
}

// --- counterexample -----------------------------------------------------------------

QuadExtNumber coord_from_json(const json& cell, long p, const std::string& field) {
  if (!cell.is_object() || !cell.contains("a") || !cell.contains("b") ||
      !cell["a"].is_string() || !cell["b"].is_string())
    throw UsageError("--points: field \"" + field +
                     "\" must be {\"a\": \"p/q\", \"b\": \"r/s\"}");
  try {
    return QuadExtNumber(Rational::from_string(cell["a"].get<std::string>()),
                         Rational::from_string(cell["b"].get<std::string>()), p);
  } catch (const std::exception& e) {
    throw UsageError("--points: field \"" + field + "\": " + e.what());
  }
}

int run_counterexample(long p, const std::string& points_path) {
  const json doc = parse_json(slurp(points_path), "--points");
  if (!doc.is_array() || doc.size() < 2)
    throw UsageError("--points: expected a JSON array of at least two points");
  std::vector<QuadPoint> pts;
  pts.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    const json& pj = doc[i];
    const std::string base = "points[" + std::to_string(i) + "]";
    if (!pj.is_array() || pj.empty())
      throw UsageError("--points: field \"" + base +
                       "\" must be a nonempty array of coordinates");
    std::vector<QuadExtNumber> coords;
    coords.reserve(pj.size());
    for (size_t c = 0; c < pj.size(); ++c)
      coords.push_back(
          coord_from_json(pj[c], p, base + "[" + std::to_string(c) + "]"));
    try {
      pts.push_back(make_quad_point(std::move(coords)));
    } catch (const std::invalid_argument& e) {
      throw UsageError("--points: field \"" + base + "\": " + e.what());
    }
  }
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].coords.size() != pts[i + 1].coords.size())
      throw UsageError("--points: all points must have the same dimension");
  }
  long rational_pairs = 0, irrational_pairs = 0, moved = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const CounterexampleReport rep = counterexample_report(pts[i], pts[j]);
      (rep.is_rational ? rational_pairs : irrational_pairs) += 1;
      moved += rep.preserved ? 0 : 1;
      std::cout << "phi(" << i << "," << j << ") = " << rep.phi_before.to_string()
                << " -> " << rep.phi_after.to_string() << "  ["
                << (rep.is_rational ? "rational" : "irrational") << ", "
                << (rep.preserved ? "preserved" : "moved") << "]\n";
    }
  if (!rational_distance_sweep(pts))
    throw CheckError("a rational squared distance was not preserved");
  std::cout << "sweep: all " << rational_pairs
            << " rational squared distances preserved exactly; " << irrational_pairs
            << " irrational pairs (" << moved << " moved)\n";
  return 0;
}

// --- verify-all ------------------------------------------------------------------------

int run_verify_all(int jobs, const std::string& out) {
  const std::vector<CriterionResult> results = run_acceptance(jobs);
  ordered_json suite = ordered_json::array();
  for (const auto& r : results) {
    std::printf("[%s] %d. %s — %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.index,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    suite.push_back({{"index", r.index},
                     {"name", r.name},
                     {"pass", r.pass},
                     {"detail", r.detail},
                     {"seconds", r.seconds}});
  }
  const bool ok = all_pass(results);
  ordered_json summary;
  summary["suite"] = std::move(suite);
  summary["pass"] = ok;
  spill(out, summary.dump(2) + "\n");
  std::printf("%s; summary written to %s\n",
              ok ? "all criteria passed" : "FAILURES PRESENT", out.c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"udwit: exact unit-distance witness toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--seed", seed, "seed for all randomness (default 0)")
      ->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads for sample verification")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  // cm
  auto* cm = app.add_subcommand(
      "cm", "exact bordered determinant of a squared-distance matrix");
  cm->fallthrough();
  std::string cm_input = "-";
  cm->add_option("input", cm_input,
                 "JSON file {\"m\": int, \"phi\": [[\"p/q\", ...], ...]} "
                 "(default: stdin)");

  // verify-identity
  auto* vid = app.add_subcommand("verify-identity",
                                 "check a determinant closed form on seeded samples");
  vid->fallthrough();
  int vid_lemma = 0, vid_n = 2;
  long vid_samples = 50;
  vid->add_option("--lemma", vid_lemma,
                  "which identity: 1 = two apexes over a simplex, 5 = planar kite")
      ->required()
      ->check(CLI::IsMember({1, 5}));
  vid->add_option("--n", vid_n, "simplex dimension (>= 2; must be 2 for --lemma 5)")
      ->capture_default_str();
  vid->add_option("--samples", vid_samples, "number of seeded samples")
      ->capture_default_str();

  // witness
  auto* wit = app.add_subcommand(
      "witness", "derive a family member and materialize its witness graph");
  wit->fallthrough();
  int wit_dim = 2;
  long wit_k = 0, wit_l = 0;
  std::string wit_emit, wit_out;
  bool wit_stats = false;
  wit->add_option("--dim", wit_dim, "ambient dimension n >= 2")->required();
  wit->add_option("--k", wit_k, "first family exponent")->capture_default_str();
  wit->add_option("--l", wit_l, "second family exponent")->capture_default_str();
  wit->add_option("--emit", wit_emit, "output format")
      ->check(CLI::IsMember({"json", "dot"}));
  wit->add_option("--out", wit_out, "write the emitted document to this file");
  wit->add_flag("--stats", wit_stats, "print vertex/edge counts");

  // approx
  auto* apx = app.add_subcommand(
      "approx", "approximate a target distance by a certified family value");
  apx->fallthrough();
  int apx_dim = 2;
  double apx_target = 0.0, apx_tol = 0.0;
  long apx_kmax = 4096;
  bool apx_json = false;
  apx->add_option("--dim", apx_dim, "ambient dimension n >= 2")->required();
  apx->add_option("--target", apx_target, "target distance (> 0)")->required();
  apx->add_option("--tol", apx_tol, "relative tolerance in (0, 1)")->required();
  apx->add_option("--kmax", apx_kmax, "exponent search bound")->capture_default_str();
  apx->add_flag("--json", apx_json, "machine-readable output");

  // approach
  auto* apr = app.add_subcommand(
      "approach", "strictly improving sequence of family approximations");
  apr->fallthrough();
  int apr_dim = 2, apr_count = 0;
  double apr_target = 0.0;
  apr->add_option("--dim", apr_dim, "ambient dimension n >= 2")->required();
  apr->add_option("--target", apr_target, "target distance (> 0)")->required();
  apr->add_option("--count", apr_count, "maximum number of steps")->required();

  // kofn
  auto* kf = app.add_subcommand(
      "kofn", "contraction exponent and contraction factor for one n");
  kf->fallthrough();
  int kf_n = 0;
  kf->add_option("--n", kf_n, "dimension n >= 3")->required();

  // embed
  auto* emb = app.add_subcommand(
      "embed", "realize a witness graph in R^n and report residuals");
  emb->fallthrough();
  std::string emb_input, emb_svg, emb_report;
  emb->add_option("--input", emb_input, "witness JSON file")->required();
  emb->add_option("--svg", emb_svg, "write an SVG rendering to this file");
  emb->add_option("--report", emb_report, "report format")
      ->check(CLI::IsMember({"json"}));

  // counterexample
  auto* cx = app.add_subcommand(
      "counterexample", "conjugation map on points over Q(sqrt(p)), with report");
  cx->fallthrough();
  long cx_p = 2;
  std::string cx_points;
  cx->add_option("--p", cx_p, "squarefree integer >= 2 defining the field")
      ->capture_default_str();
  cx->add_option("--points", cx_points,
                 "JSON file: array of points, each an array of "
                 "{\"a\": \"p/q\", \"b\": \"r/s\"} coordinates a + b*sqrt(p)")
      ->required();

  // verify-all
  auto* va = app.add_subcommand(
      "verify-all", "run the full acceptance suite and write a JSON summary");
  va->fallthrough();
  std::string va_out = "verify-all.json";
  va->add_option("--out", va_out, "summary output path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cm) return run_cm(cm_input);
    if (*vid) return run_verify_identity(vid_lemma, vid_n, vid_samples, seed, jobs);
    if (*wit) return run_witness(wit_dim, wit_k, wit_l, wit_emit, wit_stats, wit_out);
    if (*apx) return run_approx(apx_dim, apx_target, apx_tol, apx_kmax, apx_json);
    if (*apr) return run_approach(apr_dim, apr_target, apr_count);
    if (*kf) return run_kofn(kf_n);
    if (*emb) return run_embed(emb_input, seed, emb_svg, emb_report);
    if (*cx) return run_counterexample(cx_p, cx_points);
    if (*va) return run_verify_all(jobs, va_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const NoSolutionError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable: a subcommand is required
}
