#include "hyplevel/io.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string_view>

namespace hyplevel {

namespace {

// JSON string bodies here are registry ids and skip reasons, but escape
// everything the grammar requires anyway.
void json_escape(std::ostream& os, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
}

void json_string(std::ostream& os, std::string_view s) {
  os << '"';
  json_escape(os, s);
  os << '"';
}

const char* json_bool(bool b) { return b ? "true" : "false"; }

// Shorter than %.17g, still correctly rounded; fine for presentation
// coordinates.
std::string svg_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

// SVG y axis points down; world coordinates flip the imaginary part.
std::string svg_xy(const Complex& z) {
  return svg_num(z.real()) + " " + svg_num(-z.imag());
}

std::string lerp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int lo[3] = {33, 102, 172};   // deep blue at the minimum
  const int hi[3] = {178, 24, 43};    // deep red at the maximum
  char buf[12];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(std::lround(lo[0] + t * (hi[0] - lo[0]))),
                static_cast<int>(std::lround(lo[1] + t * (hi[1] - lo[1]))),
                static_cast<int>(std::lround(lo[2] + t * (hi[2] - lo[2]))));
  return buf;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_quote(std::string_view s) {
  std::ostringstream os;
  json_string(os, s);
  return os.str();
}

void write_curve_csv(std::ostream& os, const TracedCurve& curve) {
  os << "s,re_z,im_z,re_t,im_t,ke,kh,u_residual\n";
  for (const CurveSample& s : curve.samples) {
    os << format_double(s.arc_param) << ',' << format_double(s.z.real()) << ','
       << format_double(s.z.imag()) << ',' << format_double(s.unit_tangent.real()) << ','
       << format_double(s.unit_tangent.imag()) << ',' << format_double(s.ke) << ','
       << format_double(s.kh) << ',' << format_double(s.u_residual) << '\n';
  }
}

void write_curve_json(std::ostream& os, const TracedCurve& curve) {
  os << "{\n"
     << "  \"closed\": " << json_bool(curve.closed) << ",\n"
     << "  \"turning_number\": " << curve.turning_number << ",\n"
     << "  \"theta_lo\": " << format_double(curve.theta_lo) << ",\n"
     << "  \"theta_hi\": " << format_double(curve.theta_hi) << ",\n"
     << "  \"samples\": [\n";
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const CurveSample& s = curve.samples[i];
    os << "    {\"s\": " << format_double(s.arc_param)
       << ", \"re_z\": " << format_double(s.z.real())
       << ", \"im_z\": " << format_double(s.z.imag())
       << ", \"re_t\": " << format_double(s.unit_tangent.real())
       << ", \"im_t\": " << format_double(s.unit_tangent.imag())
       << ", \"ke\": " << format_double(s.ke) << ", \"kh\": " << format_double(s.kh)
       << ", \"u_residual\": " << format_double(s.u_residual) << '}'
       << (i + 1 < curve.samples.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
  os << "spec_id,re_z,im_z,actual,bound,margin\n";
  for (const BoundReport& rep : reports) {
    std::string_view name = bound_name(rep.id);
    for (const BoundRow& row : rep.rows) {
      os << name << ',' << format_double(row.z.real()) << ',' << format_double(row.z.imag())
         << ',' << format_double(row.actual) << ',' << format_double(row.bound) << ','
         << format_double(row.margin) << '\n';
    }
  }
}

void write_bounds_json(std::ostream& os, const std::vector<BoundReport>& reports) {
  os << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const BoundReport& rep = reports[i];
    os << "  {\"id\": ";
    json_string(os, bound_name(rep.id));
    os << ", \"min_margin\": " << format_double(rep.min_margin)
       << ", \"rows\": " << rep.rows.size() << ", \"skipped\": " << rep.skipped
       << ", \"equality_samples\": [";
    for (std::size_t j = 0; j < rep.equality_samples.size(); ++j) {
      const Complex& z = rep.equality_samples[j];
      os << '[' << format_double(z.real()) << ", " << format_double(z.imag()) << ']'
         << (j + 1 < rep.equality_samples.size() ? ", " : "");
    }
    os << "]}" << (i + 1 < reports.size() ? ",\n" : "\n");
  }
  os << "]\n";
}

void write_measures_json(std::ostream& os, const MeasureSet& m,
                         const std::vector<MeasureCheck>& checks) {
  os << "{\n"
     << "  \"area_h\": " << format_double(m.area_h) << ",\n"
     << "  \"perimeter_h\": " << format_double(m.perimeter_h) << ",\n"
     << "  \"total_kh\": " << format_double(m.total_kh) << ",\n"
     << "  \"gauss_bonnet_residual\": " << format_double(gauss_bonnet_residual(m)) << ",\n"
     << "  \"isoperimetric_residual\": " << format_double(isoperimetric_residual(m)) << ",\n"
     << "  \"section7\": [\n";
  std::vector<const MeasureCheck*> rows;
  for (const MeasureCheck& c : checks)
    if (c.applicable) rows.push_back(&c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const MeasureCheck& c = *rows[i];
    os << "    {\"id\": ";
    json_string(os, c.id);
    os << ", \"lhs\": " << format_double(c.lhs) << ", \"rhs\": " << format_double(c.rhs)
       << ", \"margin\": " << format_double(c.margin)
       << ", \"equality\": " << json_bool(c.equality) << '}'
       << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
}

void write_curve_svg(std::ostream& os, const TracedCurve& curve, const SvgOptions& opts) {
  const auto& samples = curve.samples;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(opts.size_px)
     << "\" height=\"" << svg_num(opts.size_px) << "\" viewBox=\"-1.08 -1.08 2.16 2.16\">\n";
  os << "<rect x=\"-1.08\" y=\"-1.08\" width=\"2.16\" height=\"2.16\" fill=\"#ffffff\"/>\n";

  // Level-region shading. Closed components bound the region themselves; an
  // arc with endpoints on the unit circle bounds it together with the
  // complementary circle arc (the region side containing the origin is the
  // one away from the traced component, reached the long way around).
  os << "<path d=\"M " << svg_xy(samples.front().z);
  for (std::size_t i = 1; i < samples.size(); ++i) os << " L " << svg_xy(samples[i].z);
  if (!curve.closed) {
    double a1 = std::arg(samples.back().z);
    double a0 = std::arg(samples.front().z);
    while (a0 <= a1) a0 += 2.0 * kPi;
    int steps = std::max(8, static_cast<int>(std::ceil((a0 - a1) / 0.02)));
    for (int k = 1; k <= steps; ++k) {
      double a = a1 + (a0 - a1) * k / steps;
      os << " L " << svg_xy(std::polar(1.0, a));
    }
  }
  os << " Z\" fill=\"#cfe0f2\" stroke=\"none\"/>\n";

  os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#555555\" "
        "stroke-width=\"0.006\"/>\n";

  if (opts.color_by_kh && samples.size() > 1) {
    double lo = samples.front().kh, hi = lo;
    for (const CurveSample& s : samples) {
      lo = std::min(lo, s.kh);
      hi = std::max(hi, s.kh);
    }
    double span = hi - lo;
    std::size_t n = samples.size();
    std::size_t segs = curve.closed ? n : n - 1;
    for (std::size_t i = 0; i < segs; ++i) {
      const CurveSample& a = samples[i];
      const CurveSample& b = samples[(i + 1) % n];
      double mid = 0.5 * (a.kh + b.kh);
      double t = span > 0.0 ? (mid - lo) / span : 0.5;
      os << "<path d=\"M " << svg_xy(a.z) << " L " << svg_xy(b.z) << "\" fill=\"none\" stroke=\""
         << lerp_color(t) << "\" stroke-width=\"0.014\" stroke-linecap=\"round\"/>\n";
    }
  } else {
    os << "<path d=\"M " << svg_xy(samples.front().z);
    for (std::size_t i = 1; i < samples.size(); ++i) os << " L " << svg_xy(samples[i].z);
    if (curve.closed) os << " Z";
    os << "\" fill=\"none\" stroke=\"#1f62a6\" stroke-width=\"0.012\" "
          "stroke-linejoin=\"round\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace hyplevel
