#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hyplevel/bounds.hpp"
#include "hyplevel/levelset.hpp"
#include "hyplevel/measures.hpp"

namespace hyplevel {

/// printf %.17g: enough digits to round-trip any double bit-exactly, few
/// enough to never print noise. All writers below format through this, so
/// identical inputs produce byte-identical artifacts.
std::string format_double(double x);

/// JSON string literal: surrounding quotes plus the escapes the grammar
/// requires. For composing aggregate reports on top of the writers below.
std::string json_quote(std::string_view s);

/// Per-sample CSV with header s,re_z,im_z,re_t,im_t,ke,kh,u_residual
/// (arc parameter, position, unit tangent, curvatures, corrector residual).
void write_curve_csv(std::ostream& os, const TracedCurve& curve);

/// Curve metadata and samples as one JSON object (closed, turning_number,
/// theta_lo, theta_hi, samples with the CSV's fields).
void write_curve_json(std::ostream& os, const TracedCurve& curve);

/// All rows of all reports, registry order, header
/// spec_id,re_z,im_z,actual,bound,margin.
void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& reports);

/// Summaries only: [{id, min_margin, equality_samples, skipped, rows}].
void write_bounds_json(std::ostream& os, const std::vector<BoundReport>& reports);

/// {area_h, perimeter_h, total_kh, gauss_bonnet_residual,
///  isoperimetric_residual, section7: [{id, lhs, rhs, margin, equality}]}.
/// section7 carries the applicable registry rows only; margins appear as
/// measured, including the negative ones on the rows whose stated cap the
/// region genuinely beats.
void write_measures_json(std::ostream& os, const MeasureSet& m,
                         const std::vector<MeasureCheck>& checks);

struct SvgOptions {
  double size_px = 640.0;
  bool color_by_kh = false;
};

/// Unit circle, level-region shading, and the traced component; with
/// color_by_kh each sample segment is tinted by its hyperbolic curvature.
/// Presentation only: no other artifact depends on anything in here.
void write_curve_svg(std::ostream& os, const TracedCurve& curve, const SvgOptions& opts = {});

}  // namespace hyplevel
