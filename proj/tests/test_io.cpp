#include "hyplevel/io.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "hyplevel/bounds.hpp"
#include "hyplevel/dsl.hpp"
#include "hyplevel/levelset.hpp"
#include "hyplevel/measures.hpp"

using hyplevel::BoundReport;
using hyplevel::bound_name;
using hyplevel::CurveSample;
using hyplevel::format_double;
using hyplevel::full_report;
using hyplevel::json_quote;
using hyplevel::LevelProblem;
using hyplevel::MeasureCheck;
using hyplevel::MeasureSet;
using hyplevel::measures;
using hyplevel::parse_map;
using hyplevel::SvgOptions;
using hyplevel::trace;
using hyplevel::TracedCurve;
using hyplevel::verify_section7;
using hyplevel::write_bounds_csv;
using hyplevel::write_bounds_json;
using hyplevel::write_curve_csv;
using hyplevel::write_curve_json;
using hyplevel::write_curve_svg;
using hyplevel::write_measures_json;

namespace {

LevelProblem circle_problem(double r) {
  return LevelProblem::jordan(parse_map("const(1,0)"), r);
}

LevelProblem arc_problem() {
  return LevelProblem::with_lambda(parse_map("phi(0.5,0)"), 1.2);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("format_double round-trips doubles bit-exactly") {
  const double values[] = {0.0,           -0.0,   1.0,    1.0 / 3.0,  0.1 + 0.2,
                           std::numbers::pi, 1e-300, 5e-324, 1e17 + 1.0, -1.23456789e-7};
  for (double v : values) {
    std::string s = format_double(v);
    double back = std::strtod(s.c_str(), nullptr);
    CHECK(same_bits(back, v));
  }
}

TEST_CASE("json_quote escapes what the grammar requires") {
  CHECK(json_quote("entry-01") == "\"entry-01\"");
  CHECK(json_quote("a\"b\\c\nd\te") == "\"a\\\"b\\\\c\\nd\\te\"");
  CHECK(json_quote(std::string(1, '\x01')) == "\"\\u0001\"");
}

TEST_CASE("curve csv has the documented header and round-trips every sample") {
  TracedCurve curve = trace(circle_problem(0.5));
  std::ostringstream os;
  write_curve_csv(os, curve);
  std::istringstream in(os.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "s,re_z,im_z,re_t,im_t,ke,kh,u_residual");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    REQUIRE(rows < curve.samples.size());
    const CurveSample& s = curve.samples[rows];
    const double want[8] = {s.arc_param,          s.z.real(), s.z.imag(),
                            s.unit_tangent.real(), s.unit_tangent.imag(),
                            s.ke,                  s.kh,       s.u_residual};
    const char* p = line.c_str();
    for (double w : want) {
      char* end = nullptr;
      double v = std::strtod(p, &end);
      CHECK(same_bits(v, w));
      p = *end == ',' ? end + 1 : end;
    }
    CHECK(*p == '\0');
    ++rows;
  }
  CHECK(rows == curve.samples.size());
}

TEST_CASE("artifacts are byte-identical across independent runs") {
  std::ostringstream a, b;
  write_curve_csv(a, trace(arc_problem()));
  write_curve_csv(b, trace(arc_problem()));
  CHECK(a.str() == b.str());

  std::ostringstream ja, jb;
  write_curve_json(ja, trace(circle_problem(0.7)));
  write_curve_json(jb, trace(circle_problem(0.7)));
  CHECK(ja.str() == jb.str());
}

TEST_CASE("curve json parses and mirrors the csv fields") {
  TracedCurve curve = trace(circle_problem(0.5));
  std::ostringstream os;
  write_curve_json(os, curve);
  auto j = nlohmann::json::parse(os.str());
  CHECK(j["closed"].get<bool>() == curve.closed);
  CHECK(j["turning_number"].get<int>() == curve.turning_number);
  REQUIRE(j["samples"].size() == curve.samples.size());
  const auto& first = j["samples"][0];
  CHECK(same_bits(first["re_z"].get<double>(), curve.samples[0].z.real()));
  CHECK(same_bits(first["kh"].get<double>(), curve.samples[0].kh));
}

TEST_CASE("bound reports serialize every row and survive a json parse") {
  LevelProblem p = arc_problem();
  TracedCurve curve = trace(p);
  std::vector<BoundReport> reports = full_report(p, curve);
  REQUIRE(!reports.empty());

  std::ostringstream csv;
  write_bounds_csv(csv, reports);
  std::istringstream in(csv.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "spec_id,re_z,im_z,actual,bound,margin");
  std::size_t rows = 0;
  std::size_t expected = 0;
  for (const BoundReport& rep : reports) expected += rep.rows.size();
  std::string first_id;
  while (std::getline(in, line)) {
    if (rows == 0) first_id = line.substr(0, line.find(','));
    ++rows;
  }
  CHECK(rows == expected);
  CHECK(first_id == std::string(bound_name(reports.front().id)));

  std::ostringstream js;
  write_bounds_json(js, reports);
  auto j = nlohmann::json::parse(js.str());
  REQUIRE(j.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(j[i]["id"].get<std::string>() == std::string(bound_name(reports[i].id)));
    CHECK(same_bits(j[i]["min_margin"].get<double>(), reports[i].min_margin));
    CHECK(j[i]["rows"].get<std::size_t>() == reports[i].rows.size());
    CHECK(j[i]["equality_samples"].size() == reports[i].equality_samples.size());
  }
}

TEST_CASE("measures json carries the schema keys in declaration order") {
  LevelProblem p = circle_problem(0.5);
  TracedCurve curve = trace(p);
  MeasureSet m = measures(curve);
  std::vector<MeasureCheck> checks = verify_section7(p, m);
  std::ostringstream os;
  write_measures_json(os, m, checks);
  const std::string s = os.str();

  CHECK(s.find("\"area_h\"") < s.find("\"perimeter_h\""));
  CHECK(s.find("\"perimeter_h\"") < s.find("\"total_kh\""));
  CHECK(s.find("\"total_kh\"") < s.find("\"gauss_bonnet_residual\""));
  CHECK(s.find("\"gauss_bonnet_residual\"") < s.find("\"isoperimetric_residual\""));
  CHECK(s.find("\"isoperimetric_residual\"") < s.find("\"section7\""));

  auto j = nlohmann::json::parse(s);
  CHECK(same_bits(j["area_h"].get<double>(), m.area_h));
  CHECK(same_bits(j["perimeter_h"].get<double>(), m.perimeter_h));
  CHECK(same_bits(j["total_kh"].get<double>(), m.total_kh));
  std::size_t applicable = 0;
  for (const MeasureCheck& c : checks) applicable += c.applicable;
  REQUIRE(j["section7"].size() == applicable);
  for (const auto& row : j["section7"]) {
    CHECK(row.size() == 5);
    CHECK(row.contains("id"));
    CHECK(row.contains("lhs"));
    CHECK(row.contains("rhs"));
    CHECK(row.contains("margin"));
    CHECK(row.contains("equality"));
  }
}

TEST_CASE("svg renders closed curves and arcs, plain and curvature-tinted") {
  for (bool closed : {true, false}) {
    TracedCurve curve = closed ? trace(circle_problem(0.5)) : trace(arc_problem());
    CHECK(curve.closed == closed);
    for (bool tint : {false, true}) {
      SvgOptions opts;
      opts.color_by_kh = tint;
      std::ostringstream os;
      write_curve_svg(os, curve, opts);
      const std::string s = os.str();
      CHECK(s.rfind("<svg ", 0) == 0);
      CHECK(s.find("<circle cx=\"0\" cy=\"0\" r=\"1\"") != std::string::npos);
      CHECK(s.find("fill=\"#cfe0f2\"") != std::string::npos);  // region shading
      CHECK(s.substr(s.size() - 7) == "</svg>\n");

      std::ostringstream again;
      write_curve_svg(again, curve, opts);
      CHECK(again.str() == s);
    }
  }
}
