#pragma once

#include <string_view>

#include "lamb/pvengine.hpp"
#include "lamb/shifts.hpp"
#include "lamb/weights.hpp"

namespace lamb {

enum class Method { closed, pipeline, quadrature };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);
std::string_view to_string(PoleFrequency p);
PoleFrequency pole_frequency_from_string(std::string_view s);

struct MethodResult {
  ShiftBreakdown<double> breakdown;
  Method method{Method::closed};
  /// Quadrature error estimate; zero for the analytic routes.
  double error_estimate{0};
};

/// Breakdown by one of three routes: closed-form expressions, renormalized
/// term integrals, or the numeric PV oracle. The pipeline and quadrature
/// routes split the shift by differencing densities at (x, beta), (x, 0) and
/// at rest.
MethodResult evaluate_breakdown(Method method, double x, double beta,
                                double lambda, const DipoleWeights<double> &w,
                                PoleFrequency pole = PoleFrequency::proper,
                                double tol = 1e-10);

}  // namespace lamb
