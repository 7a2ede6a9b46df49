#include "hyplevel/bounds.hpp"

#include <cmath>
#include <limits>

#include "hyplevel/errors.hpp"

namespace hyplevel {

namespace {

// C42 divides by |z|; samples closer to the origin than this are skipped and
// counted instead of poisoning the report.
constexpr double kCenterFloor = 1e-6;

const BoundSpec kRegistry[] = {
    {BoundId::T21, BoundSide::lower_on_kh, BoundRegime::lambda_ge_1},
    {BoundId::C41, BoundSide::lower_on_kh, BoundRegime::lambda_gt_1},
    {BoundId::C31_khlb, BoundSide::lower_on_kh, BoundRegime::lambda_eq_1},
    {BoundId::C42_khlb2, BoundSide::lower_on_kh, BoundRegime::lambda_eq_1},
    {BoundId::C43_kh3, BoundSide::lower_on_kh, BoundRegime::lambda_gt_1},
    {BoundId::C44_kelb, BoundSide::lower_on_ke, BoundRegime::lambda_ge_1},
    {BoundId::T51_lower, BoundSide::lower_on_kh, BoundRegime::jordan_r},
    {BoundId::T51_upper, BoundSide::upper_on_kh, BoundRegime::jordan_r},
    {BoundId::C53_lower, BoundSide::lower_on_kh, BoundRegime::jordan_r},
    {BoundId::C53_upper, BoundSide::upper_on_kh, BoundRegime::jordan_r},
};

// Constants of the alpha-only bounds: the hyperbolic derivative of the
// slit-complement map k_alpha at -r and at r, alpha = |f(0)| of the unscaled
// map. Both radicands are bounded below by (1 -+ r)^2 > 0.
struct AlphaDerivatives {
  double at_minus_r;
  double at_plus_r;
};

AlphaDerivatives alpha_derivatives(double alpha, double r) {
  double dm = alpha * (1.0 - r) / std::sqrt((1.0 + r) * (1.0 + r) - 4.0 * alpha * alpha * r);
  double dp = alpha * (1.0 + r) / std::sqrt((1.0 - r) * (1.0 - r) + 4.0 * alpha * alpha * r);
  return {dm, dp};
}

}  // namespace

const std::vector<BoundSpec>& bound_registry() {
  static const std::vector<BoundSpec> registry(std::begin(kRegistry), std::end(kRegistry));
  return registry;
}

BoundSpec bound_spec(BoundId id) {
  for (const BoundSpec& spec : bound_registry())
    if (spec.id == id)
      return spec;
  throw RequirementMismatch("bound_spec: unknown id");
}

std::string_view bound_name(BoundId id) {
  switch (id) {
    case BoundId::T21: return "T21";
    case BoundId::C41: return "C41";
    case BoundId::C31_khlb: return "C31_khlb";
    case BoundId::C42_khlb2: return "C42_khlb2";
    case BoundId::C43_kh3: return "C43_kh3";
    case BoundId::C44_kelb: return "C44_kelb";
    case BoundId::T51_lower: return "T51_lower";
    case BoundId::T51_upper: return "T51_upper";
    case BoundId::C53_lower: return "C53_lower";
    case BoundId::C53_upper: return "C53_upper";
  }
  throw RequirementMismatch("bound_name: unknown id");
}

bool bound_applies(BoundRegime regime, const LevelProblem& p) {
  switch (regime) {
    case BoundRegime::lambda_ge_1: return true;
    case BoundRegime::lambda_gt_1: return p.lambda() > 1.0;
    case BoundRegime::lambda_eq_1: return p.lambda() == 1.0;
    case BoundRegime::jordan_r: return p.scale_r().has_value();
  }
  return false;
}

BoundReport evaluate_bound(const BoundSpec& spec, const LevelProblem& p,
                           const TracedCurve& curve) {
  if (!bound_applies(spec.regime, p))
    throw RequirementMismatch("evaluate_bound: problem outside the bound's regime");

  double lambda = p.lambda();
  double r = p.scale_r().value_or(0.0);
  AlphaDerivatives ad{0.0, 0.0};
  if (spec.id == BoundId::C53_lower || spec.id == BoundId::C53_upper)
    ad = alpha_derivatives(std::abs(p.base_map()(Complex{})), r);

  BoundReport report;
  report.id = spec.id;
  report.rows.reserve(curve.samples.size());
  double min_margin = std::numeric_limits<double>::infinity();

  for (const CurveSample& s : curve.samples) {
    double az = std::abs(s.z);
    double bound = 0.0;
    bool skip = false;

    switch (spec.id) {
      case BoundId::T21: {
        Jet j = p.map().eval(s.z, 1);
        double av = std::abs(j.f);
        double denom = lambda * std::abs(std::conj(j.d1) * j.f - lambda * s.z);
        bound = (lambda * lambda * (1.0 + az * az - 2.0 * av) -
                 std::norm(j.d1) * (1.0 - av) * (1.0 - av)) /
                denom;
        break;
      }
      case BoundId::C41: {
        Jet j = p.map().eval(s.z, 1);
        bound = lambda * (lambda - 1.0) * (1.0 - az * az) /
                std::abs(std::conj(j.d1) * j.f - lambda * s.z);
        break;
      }
      case BoundId::C31_khlb: {
        Jet j = p.map().eval(s.z, 1);
        bound = (1.0 - az) * (1.0 - az) * (1.0 - std::norm(j.d1)) /
                std::abs(std::conj(j.d1) * j.f - s.z);
        break;
      }
      case BoundId::C42_khlb2: {
        if (az < kCenterFloor) {
          skip = true;
          break;
        }
        Jet j = p.map().eval(s.z, 1);
        bound = (1.0 - az) * (1.0 - az) * (1.0 - std::norm(j.d1)) / (2.0 * az);
        break;
      }
      case BoundId::C43_kh3: {
        bound = az - std::abs(p.map()(s.z));
        break;
      }
      case BoundId::C44_kelb: {
        bound = -(az + std::abs(p.map()(s.z))) / (1.0 - az * az);
        break;
      }
      case BoundId::T51_lower:
      case BoundId::T51_upper: {
        Jet j = p.map().eval(s.z, 1);
        double c = std::abs(std::conj(j.d1) * j.f - s.z) * (1.0 - az * az) / (az * az);
        double spread = 2.0 * (1.0 - r * r) / (r * c);
        bound = spec.id == BoundId::T51_lower
                    ? (1.0 - r) / (1.0 + r) * c + spread
                    : (1.0 + r) / (1.0 - r) * c - spread;
        break;
      }
      case BoundId::C53_lower:
        bound = (1.0 - r) * (1.0 - r) / (r * ad.at_plus_r) + 2.0 * ad.at_minus_r;
        break;
      case BoundId::C53_upper:
        bound = (1.0 + r) * (1.0 + r) / (r * ad.at_minus_r) - 2.0 * ad.at_minus_r;
        break;
    }

    if (skip) {
      ++report.skipped;
      continue;
    }
    double actual = spec.side == BoundSide::lower_on_ke ? s.ke : s.kh;
    double margin = spec.side == BoundSide::upper_on_kh ? bound - actual : actual - bound;
    report.rows.push_back({s.z, actual, bound, margin});
    min_margin = std::min(min_margin, margin);
    if (std::abs(margin) < kEqualityTol)
      report.equality_samples.push_back(s.z);
  }

  report.min_margin = report.rows.empty() ? 0.0 : min_margin;
  return report;
}

std::vector<BoundReport> full_report(const LevelProblem& p, const TracedCurve& curve) {
  std::vector<BoundReport> reports;
  for (const BoundSpec& spec : bound_registry())
    if (bound_applies(spec.regime, p))
      reports.push_back(evaluate_bound(spec, p, curve));
  return reports;
}

}  // namespace hyplevel
