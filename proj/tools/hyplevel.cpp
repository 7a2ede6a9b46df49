// Command-line front end: parse a map expression, run the trace / curvature /
// bounds / measures / radius pipelines, emit CSV/JSON/SVG artifacts.
//
// Exit codes: 0 success, 2 inequality violated beyond tolerance, 1 usage or
// domain errors. Artifacts are deterministic: %.17g numbers, fixed row and
// key order, LF line ends, no timestamps.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hyplevel/bounds.hpp"
#include "hyplevel/convexity.hpp"
#include "hyplevel/corpus.hpp"
#include "hyplevel/curvature.hpp"
#include "hyplevel/dsl.hpp"
#include "hyplevel/errors.hpp"
#include "hyplevel/io.hpp"
#include "hyplevel/levelset.hpp"
#include "hyplevel/measures.hpp"

using namespace hyplevel;

namespace {

namespace fs = std::filesystem;

// CI gate thresholds. Bound and isoperimetric margins tolerate quadrature
// noise; the Gauss-Bonnet identity is the coarsest of the three because it
// subtracts two O(1) integrals.
constexpr double kMarginTol = 1e-8;
constexpr double kGaussBonnetTol = 1e-6;

// The stated area cap (and the total-curvature cap inheriting from it) is not
// valid for every admissible map: scaled Blaschke products can beat it. Those
// two rows are reported as measured but never drive the exit code.
bool gated_row(const std::string& id) { return id != "T75_area" && id != "C77_upper"; }

struct ProblemArgs {
  std::string f;
  double lambda = 1.0;
  std::optional<double> r;
};

LevelProblem build_problem(const ProblemArgs& a) {
  HoloMap F = parse_map(a.f);
  if (a.r) return LevelProblem::jordan(std::move(F), *a.r);
  return LevelProblem::with_lambda(std::move(F), a.lambda);
}

struct OutputArgs {
  std::string out;                   // one file, format from the extension
  std::string out_dir;               // directory for --formats artifacts
  std::vector<std::string> formats;  // subset of csv,json,svg
};

struct Emit {
  std::string format;
  fs::path path;
};

// Empty plan means "print the command's primary artifact to stdout".
std::vector<Emit> plan_outputs(const OutputArgs& o, const std::string& stem,
                               const std::vector<std::string>& allowed) {
  auto ok = [&](const std::string& f) {
    return std::find(allowed.begin(), allowed.end(), f) != allowed.end();
  };
  auto allowed_list = [&] {
    std::string s;
    for (const auto& f : allowed) s += (s.empty() ? "" : ", ") + f;
    return s;
  };
  std::vector<Emit> plan;
  if (!o.out.empty()) {
    std::string ext = fs::path(o.out).extension().string();
    std::string fmt = ext.size() > 1 ? ext.substr(1) : "";
    if (!ok(fmt))
      throw DomainError("--out needs an extension from {" + allowed_list() + "}: " + o.out);
    plan.push_back({fmt, fs::path(o.out)});
    return plan;
  }
  if (o.out_dir.empty()) return plan;
  std::vector<std::string> fmts = o.formats;
  if (fmts.empty()) {  // svg is opt-in, data artifacts are the default
    for (const auto& f : allowed)
      if (f != "svg") fmts.push_back(f);
  }
  fs::create_directories(o.out_dir);
  for (const auto& f : fmts) {
    if (!ok(f)) throw DomainError("format not available here (have " + allowed_list() + "): " + f);
    if (std::any_of(plan.begin(), plan.end(), [&](const Emit& e) { return e.format == f; }))
      continue;
    plan.push_back({f, fs::path(o.out_dir) / (stem + "." + f)});
  }
  return plan;
}

void write_file(const fs::path& p, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw DomainError("cannot open for writing: " + p.string());
  body(os);
  os.flush();
  if (!os) throw DomainError("short write: " + p.string());
}

unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("HYPLEVEL_THREADS");
  if (!env || !*env) return hw;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<unsigned>(std::min<long>(v, 256));
}

int run_trace(const ProblemArgs& pa, const TraceOptions& topts, const OutputArgs& oa,
              const SvgOptions& svg) {
  LevelProblem p = build_problem(pa);
  TracedCurve curve = trace(p, topts);
  auto plan = plan_outputs(oa, "trace", {"csv", "json", "svg"});
  if (plan.empty()) {
    write_curve_csv(std::cout, curve);
    return 0;
  }
  for (const Emit& e : plan)
    write_file(e.path, [&](std::ostream& os) {
      if (e.format == "csv") write_curve_csv(os, curve);
      else if (e.format == "json") write_curve_json(os, curve);
      else write_curve_svg(os, curve, svg);
    });
  return 0;
}

int run_curvature(const ProblemArgs& pa, double theta) {
  LevelProblem p = build_problem(pa);
  double f0 = std::abs(p.map()(Complex(0.0, 0.0)));
  double rho = boundary_radius(p, theta, std::clamp(f0, 1e-4, 1.0 - 1e-6));
  Complex z = std::polar(rho, theta);
  CurvaturePair c = kh_implicit(p, z);
  std::cout << "z = (" << format_double(z.real()) << ", " << format_double(z.imag()) << ")\n"
            << "ke = " << format_double(c.ke) << '\n'
            << "kh = " << format_double(c.kh) << '\n';
  return 0;
}

int run_bounds(const ProblemArgs& pa, const TraceOptions& topts, const OutputArgs& oa,
               const SvgOptions& svg) {
  LevelProblem p = build_problem(pa);
  TracedCurve curve = trace(p, topts);
  std::vector<BoundReport> reports = full_report(p, curve);
  auto plan = plan_outputs(oa, "bounds", {"csv", "json", "svg"});
  if (plan.empty()) {
    write_bounds_json(std::cout, reports);
  } else {
    for (const Emit& e : plan)
      write_file(e.path, [&](std::ostream& os) {
        if (e.format == "csv") write_bounds_csv(os, reports);
        else if (e.format == "json") write_bounds_json(os, reports);
        else write_curve_svg(os, curve, svg);
      });
  }
  double min_margin = std::numeric_limits<double>::infinity();
  for (const BoundReport& rep : reports) min_margin = std::min(min_margin, rep.min_margin);
  return min_margin < -kMarginTol ? 2 : 0;
}

int run_measures(const ProblemArgs& pa, const TraceOptions& topts, const OutputArgs& oa,
                 const SvgOptions& svg) {
  LevelProblem p = build_problem(pa);
  TracedCurve curve = trace(p, topts);
  auto plan = plan_outputs(oa, "measures", {"json", "svg"});

  if (!curve.closed) {
    auto body = [](std::ostream& os) {
      os << "{\n  \"open_arc\": true,\n  \"area_h\": \"infinite\",\n"
            "  \"perimeter_h\": \"infinite\"\n}\n";
    };
    if (plan.empty()) body(std::cout);
    for (const Emit& e : plan)
      write_file(e.path, [&](std::ostream& os) {
        if (e.format == "json") body(os);
        else write_curve_svg(os, curve, svg);
      });
    std::cerr << "open arc: endpoints reach the unit circle, so hyperbolic area and "
                 "perimeter are infinite\n";
    return 0;
  }

  MeasureSet m = measures(curve);
  std::vector<MeasureCheck> checks = verify_section7(p, m);
  if (plan.empty()) write_measures_json(std::cout, m, checks);
  for (const Emit& e : plan)
    write_file(e.path, [&](std::ostream& os) {
      if (e.format == "json") write_measures_json(os, m, checks);
      else write_curve_svg(os, curve, svg);
    });

  bool violated = std::abs(gauss_bonnet_residual(m)) > kGaussBonnetTol ||
                  isoperimetric_residual(m) < -kMarginTol;
  for (const MeasureCheck& c : checks)
    if (c.applicable && !c.satisfied && gated_row(c.id)) violated = true;
  return violated ? 2 : 0;
}

int run_radius(const std::string& f_dsl) {
  HoloMap F = parse_map(f_dsl);
  RadiusReport rep = radius_of_convexity_report(F);
  char head[48];
  std::snprintf(head, sizeof(head), "%.6f", rep.value);
  std::cout << "omega = " << head << (rep.capped ? " (convex to the search cap)" : "") << '\n'
            << "bracket = [" << format_double(rep.lower) << ", " << format_double(rep.upper)
            << "]\n"
            << "certificates = " << rep.certificates << '\n';
  if (rep.witness_r > 0.0)
    std::cout << "first nonconvex: r = " << format_double(rep.witness_r) << ", z = ("
              << format_double(rep.witness_z.real()) << ", "
              << format_double(rep.witness_z.imag()) << "), ke = "
              << format_double(rep.witness_ke) << '\n';
  return 0;
}

// verify-all: one record per corpus entry, composed independently so the
// worker pool cannot affect bytes; reductions run in index order afterwards.
struct EntryResult {
  std::string json;
  bool ok = false;
  std::string error;
  bool closed = false;
  bool measured = false;
  double bounds_min = std::numeric_limits<double>::infinity();
  double gb = 0.0;
  double isop = 0.0;
  std::vector<std::string> unsat;  // applicable section7 rows with satisfied=false
};

EntryResult run_entry(const CorpusEntry& entry) {
  EntryResult res;
  std::ostringstream js;
  js << "{\"name\": " << json_quote(entry.name) << ", \"dsl\": " << json_quote(entry.dsl);
  if (entry.r) js << ", \"r\": " << format_double(*entry.r);
  else js << ", \"lambda\": " << format_double(entry.lambda);
  try {
    LevelProblem p = entry.problem();
    TracedCurve curve = trace(p, TraceOptions{});
    js << ", \"closed\": " << (curve.closed ? "true" : "false")
       << ", \"samples\": " << curve.samples.size();

    std::vector<BoundReport> reports = full_report(p, curve);
    js << ", \"bounds\": [";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const BoundReport& rep = reports[i];
      res.bounds_min = std::min(res.bounds_min, rep.min_margin);
      js << (i ? ", " : "") << "{\"id\": " << json_quote(bound_name(rep.id))
         << ", \"min_margin\": " << format_double(rep.min_margin)
         << ", \"rows\": " << rep.rows.size() << ", \"skipped\": " << rep.skipped
         << ", \"equality_count\": " << rep.equality_samples.size() << '}';
    }
    js << ']';

    res.closed = curve.closed;
    if (curve.closed) {
      MeasureSet m = measures(curve);
      std::vector<MeasureCheck> checks = verify_section7(p, m);
      res.measured = true;
      res.gb = gauss_bonnet_residual(m);
      res.isop = isoperimetric_residual(m);
      js << ", \"measures\": {\"area_h\": " << format_double(m.area_h)
         << ", \"perimeter_h\": " << format_double(m.perimeter_h)
         << ", \"total_kh\": " << format_double(m.total_kh)
         << ", \"gauss_bonnet_residual\": " << format_double(res.gb)
         << ", \"isoperimetric_residual\": " << format_double(res.isop) << ", \"section7\": [";
      bool first = true;
      for (const MeasureCheck& c : checks) {
        if (!c.applicable) continue;
        if (!c.satisfied) res.unsat.push_back(c.id);
        js << (first ? "" : ", ") << "{\"id\": " << json_quote(c.id)
           << ", \"lhs\": " << format_double(c.lhs) << ", \"rhs\": " << format_double(c.rhs)
           << ", \"margin\": " << format_double(c.margin)
           << ", \"equality\": " << (c.equality ? "true" : "false")
           << ", \"satisfied\": " << (c.satisfied ? "true" : "false") << '}';
        first = false;
      }
      js << "]}";
    } else {
      js << ", \"measures\": {\"open_arc\": true, \"area_h\": \"infinite\", "
            "\"perimeter_h\": \"infinite\"}";
    }
    res.ok = true;
  } catch (const Error& err) {
    res.error = err.what();
    js << ", \"error\": " << json_quote(err.what());
  }
  js << '}';
  res.json = js.str();
  return res;
}

int run_verify_all(const std::string& corpus_arg, const std::string& out_path) {
  std::vector<CorpusEntry> entries =
      corpus_arg == "default" ? default_corpus() : load_corpus(corpus_arg);
  std::vector<EntryResult> results(entries.size());

  unsigned threads = std::min<unsigned>(thread_cap(), static_cast<unsigned>(entries.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      results[i] = run_entry(entries[i]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  double bounds_min = std::numeric_limits<double>::infinity();
  double gb_max = 0.0;
  double isop_min = std::numeric_limits<double>::infinity();
  int closed_count = 0;
  int cap_entries = 0;
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const EntryResult& r = results[i];
    if (!r.ok) {
      failures.push_back(entries[i].name + ": " + r.error);
      continue;
    }
    bounds_min = std::min(bounds_min, r.bounds_min);
    if (r.closed) ++closed_count;
    if (r.measured) {
      gb_max = std::max(gb_max, std::abs(r.gb));
      isop_min = std::min(isop_min, r.isop);
    }
    bool cap_row = false;
    for (const std::string& id : r.unsat) {
      if (gated_row(id)) failures.push_back(entries[i].name + ": section7 row " + id +
                                            " unsatisfied");
      else cap_row = true;
    }
    if (cap_row) ++cap_entries;
  }
  if (bounds_min < -kMarginTol)
    failures.push_back("bounds min margin " + format_double(bounds_min));
  if (gb_max > kGaussBonnetTol)
    failures.push_back("Gauss-Bonnet residual " + format_double(gb_max));
  if (closed_count > 0 && isop_min < -kMarginTol)
    failures.push_back("isoperimetric residual " + format_double(isop_min));
  bool pass = failures.empty();

  std::ostringstream js;
  js << "{\n\"entries\": [\n";
  for (std::size_t i = 0; i < results.size(); ++i)
    js << results[i].json << (i + 1 < results.size() ? ",\n" : "\n");
  js << "],\n\"summary\": {\"entries\": " << entries.size() << ", \"closed\": " << closed_count
     << ", \"bounds_min_margin\": " << format_double(std::isfinite(bounds_min) ? bounds_min : 0.0)
     << ", \"gauss_bonnet_max_abs\": " << format_double(gb_max)
     << ", \"isoperimetric_min\": " << format_double(closed_count > 0 ? isop_min : 0.0)
     << ", \"area_cap_exceeded_entries\": " << cap_entries
     << ", \"pass\": " << (pass ? "true" : "false") << "}\n}\n";

  if (out_path.empty()) std::cout << js.str();
  else write_file(out_path, [&](std::ostream& os) { os << js.str(); });

  char line[256];
  if (pass) {
    std::snprintf(line, sizeof(line),
                  "PASS: %zu entries (%d closed), bounds min margin %.3e, |Gauss-Bonnet| max "
                  "%.3e, isoperimetric min %.3e, area cap exceeded on %d entries (reported)",
                  entries.size(), closed_count, bounds_min, gb_max,
                  closed_count > 0 ? isop_min : 0.0, cap_entries);
    std::cout << line << '\n';
    return 0;
  }
  std::cout << "FAIL: " << failures.size() << " problem(s)\n";
  for (const std::string& f : failures) std::cout << "  " << f << '\n';
  return 2;
}

void add_problem_flags(CLI::App* cmd, ProblemArgs& a) {
  cmd->add_option("--f", a.f, "map expression, e.g. phi(0.5,0) or falpha(0.92)")->required();
  auto* lam = cmd->add_option("--lambda", a.lambda, "level, >= 1 (default 1)");
  cmd->add_option("--r", a.r, "Jordan scale in (0,1): region {|z| < |r f(z)|}")->excludes(lam);
}

void add_trace_flags(CLI::App* cmd, TraceOptions& o) {
  cmd->add_option("--angle-budget", o.angle_budget, "max turning per predictor step, radians");
  cmd->add_option("--h-min", o.h_min, "min predictor step");
  cmd->add_option("--h-max", o.h_max, "max predictor step");
  cmd->add_option("--corrector-tol", o.corrector_tol, "|u| accepted at a sample");
  cmd->add_option("--max-steps", o.max_steps, "predictor step budget");
}

void add_output_flags(CLI::App* cmd, OutputArgs& o) {
  auto* out = cmd->add_option("--out", o.out, "artifact file; format from the extension");
  auto* dir = cmd->add_option("--out-dir", o.out_dir, "directory for --formats artifacts");
  out->excludes(dir);
  cmd->add_option("--formats", o.formats, "comma list from csv,json,svg")
      ->delimiter(',')
      ->needs(dir);
}

void add_svg_flags(CLI::App* cmd, SvgOptions& o) {
  cmd->add_option("--svg-size", o.size_px, "svg width and height in px");
  cmd->add_flag("--color-by-kh", o.color_by_kh, "tint curve segments by hyperbolic curvature");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"level curves of |F(z)|^2 - lambda |z|^2 + lambda - 1 in the unit disc"};
  app.require_subcommand(1);

  ProblemArgs pa;
  TraceOptions topts;
  OutputArgs oa;
  SvgOptions svg;
  double theta = 0.0;
  std::string radius_f;
  std::string corpus_arg = "default";
  std::string verify_out;

  auto* c_trace = app.add_subcommand("trace", "trace the level boundary and write samples");
  add_problem_flags(c_trace, pa);
  add_trace_flags(c_trace, topts);
  add_output_flags(c_trace, oa);
  add_svg_flags(c_trace, svg);

  auto* c_curv = app.add_subcommand("curvature", "curvatures at the boundary point on one ray");
  add_problem_flags(c_curv, pa);
  c_curv->add_option("--theta", theta, "ray angle in radians")->required();

  auto* c_bounds = app.add_subcommand("bounds", "evaluate every applicable curvature bound");
  add_problem_flags(c_bounds, pa);
  add_trace_flags(c_bounds, topts);
  add_output_flags(c_bounds, oa);
  add_svg_flags(c_bounds, svg);

  auto* c_meas = app.add_subcommand("measures", "hyperbolic area, perimeter, total curvature");
  add_problem_flags(c_meas, pa);
  add_trace_flags(c_meas, topts);
  add_output_flags(c_meas, oa);
  add_svg_flags(c_meas, svg);

  auto* c_radius = app.add_subcommand("radius", "scale below which the level region is convex");
  c_radius->add_option("--f", radius_f, "map expression with f(0) != 0")->required();

  auto* c_verify = app.add_subcommand("verify-all", "bounds and measures across a corpus");
  c_verify->add_option("--corpus", corpus_arg, "'default' or a corpus file path");
  c_verify->add_option("--out", verify_out, "report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (c_trace->parsed()) return run_trace(pa, topts, oa, svg);
    if (c_curv->parsed()) return run_curvature(pa, theta);
    if (c_bounds->parsed()) return run_bounds(pa, topts, oa, svg);
    if (c_meas->parsed()) return run_measures(pa, topts, oa, svg);
    if (c_radius->parsed()) return run_radius(radius_f);
    if (c_verify->parsed()) return run_verify_all(corpus_arg, verify_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
