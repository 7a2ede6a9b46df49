#pragma once

#include <string_view>
#include <vector>

#include "hyplevel/levelset.hpp"
#include "hyplevel/types.hpp"

namespace hyplevel {

/// Registry ids of the pointwise curvature inequalities. The string form
/// (bound_name) is the stable spec_id used in report files. In the formulas
/// below F is the problem's effective map, z a curve sample, and the shared
/// denominator |conj(F'(z)) F(z) - lambda z| equals the gradient magnitude
/// |u_z| of the defining function.
enum class BoundId {
  T21,        // kh >= [l^2(1+|z|^2-2|F|) - |F'|^2(1-|F|)^2] / (l |conj(F')F - l z|)
  C41,        // kh >= l(l-1)(1-|z|^2) / |conj(F')F - l z|,  l > 1
  C31_khlb,   // kh >= (1-|z|)^2 (1-|F'|^2) / |conj(F')F - z|,  l = 1
  C42_khlb2,  // kh >= (1-|z|)^2 (1-|F'|^2) / (2|z|),  l = 1
  C43_kh3,    // kh >= |z| - |F(z)|,  l > 1
  C44_kelb,   // ke >= -(|z| + |F(z)|) / (1-|z|^2)
  T51_lower,  // kh >= (1-r)/(1+r) C + 2(1-r^2)/(r C),  Jordan r-problems
  T51_upper,  // kh <= (1+r)/(1-r) C - 2(1-r^2)/(r C)
  C53_lower,  // kh >= (1-r)^2/(r Dp) + 2 Dm, from alpha = |f(0)| alone
  C53_upper,  // kh <= (1+r)^2/(r Dm) - 2 Dm
};

enum class BoundSide { lower_on_kh, upper_on_kh, lower_on_ke };

/// Problem family a bound applies to. Jordan r-problems have effective
/// lambda 1, so they qualify for lambda_eq_1 bounds as well.
enum class BoundRegime { lambda_ge_1, lambda_gt_1, lambda_eq_1, jordan_r };

struct BoundSpec {
  BoundId id;
  BoundSide side;
  BoundRegime regime;
};

/// All ten bounds in fixed registry order.
const std::vector<BoundSpec>& bound_registry();

BoundSpec bound_spec(BoundId id);
std::string_view bound_name(BoundId id);

bool bound_applies(BoundRegime regime, const LevelProblem& p);

/// Equality detection threshold on |margin|. The analytic equality cases are
/// exact; the only pollution is tracer and corrector noise around 1e-9.
inline constexpr double kEqualityTol = 1e-7;

struct BoundRow {
  Complex z;
  double actual;  // kh, or ke for the one Euclidean-side bound
  double bound;
  double margin;  // sign-normalized: >= 0 means the inequality holds
};

struct BoundReport {
  BoundId id;
  std::vector<BoundRow> rows;
  double min_margin = 0.0;
  std::vector<Complex> equality_samples;  // |margin| < kEqualityTol
  int skipped = 0;  // samples excluded by an evaluator hypothesis (|z| floor)
};

/// Evaluate one bound on every sample of a traced curve. Throws
/// RequirementMismatch when the problem is outside the bound's regime.
BoundReport evaluate_bound(const BoundSpec& spec, const LevelProblem& p,
                           const TracedCurve& curve);

/// Every applicable bound, in registry order.
std::vector<BoundReport> full_report(const LevelProblem& p, const TracedCurve& curve);

}  // namespace hyplevel
