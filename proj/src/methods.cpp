#include "lamb/methods.hpp"

#include <array>
#include <string>

#include "lamb/pvquad.hpp"

namespace lamb {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed:
      return "closed";
    case Method::pipeline:
      return "pipeline";
    case Method::quadrature:
      return "quadrature";
  }
  return "?";
}

Method method_from_string(std::string_view s) {
  if (s == "closed") return Method::closed;
  if (s == "pipeline") return Method::pipeline;
  if (s == "quadrature") return Method::quadrature;
  throw DomainError("unknown method '" + std::string(s) + "'");
}

std::string_view to_string(PoleFrequency p) {
  return p == PoleFrequency::proper ? "proper" : "lab";
}

PoleFrequency pole_frequency_from_string(std::string_view s) {
  if (s == "proper") return PoleFrequency::proper;
  if (s == "lab") return PoleFrequency::lab;
  throw DomainError("unknown pole frequency mode '" + std::string(s) + "'");
}

namespace {

struct ChannelValues {
  std::array<double, 3> moving{};  // (x, beta)
  std::array<double, 3> orbit{};   // (x, 0)
  std::array<double, 3> rest{};    // inertial
  double error{0};
};

template <typename ChannelFn>
ChannelValues channels(double x, double beta, PoleFrequency pole,
                       const ChannelFn &channel) {
  ChannelValues v;
  const auto moving = circular_densities(x, beta);
  const auto orbit = circular_densities(x, 0.0);
  const auto rest = inertial_densities<double>();
  const double w_moving = kernel_omega(pole, beta);
  for (int a = 0; a < 3; ++a) {
    v.moving[a] = channel(moving[a], w_moving, v.error);
    v.orbit[a] = channel(orbit[a], 1.0, v.error);
    v.rest[a] = channel(rest[a], 1.0, v.error);
  }
  return v;
}

ShiftBreakdown<double> assemble(const ChannelValues &v,
                                const DipoleWeights<double> &w) {
  const std::array<double, 3> wa = {w.w_rho, w.w_phi, w.w_z};
  ShiftBreakdown<double> b;
  for (int a = 0; a < 3; ++a) {
    b.inertial += wa[a] * v.rest[a];
    b.rot0 += wa[a] * (v.orbit[a] - v.rest[a]);
    b.rot2 += wa[a] * (v.moving[a] - v.orbit[a]);
  }
  b.axial_total = wa[2] * v.moving[2];
  b.transverse_total = wa[0] * v.moving[0] + wa[1] * v.moving[1];
  b.total = b.inertial + b.rot0 + b.rot2;
  return b;
}

}  // namespace

MethodResult evaluate_breakdown(Method method, double x, double beta,
                                double lambda, const DipoleWeights<double> &w,
                                PoleFrequency pole, double tol) {
  w.validate();
  validate_motion(x, beta);
  MethodResult out;
  out.method = method;
  switch (method) {
    case Method::closed:
      out.breakdown = breakdown(x, beta, lambda, w);
      break;
    case Method::pipeline: {
      auto v = channels(x, beta, pole,
                        [lambda](const SpectralDensity<double> &d, double om,
                                 double &) { return channel_shift(d, om, lambda); });
      out.breakdown = assemble(v, w);
      break;
    }
    case Method::quadrature: {
      auto v = channels(
          x, beta, pole,
          [lambda, tol](const SpectralDensity<double> &d, double om, double &err) {
            auto r = pv_quadrature_detail(d, om, lambda, tol);
            err += kShiftNormalization * r.error_estimate;
            return kShiftNormalization * r.renormalized;
          });
      out.breakdown = assemble(v, w);
      out.error_estimate = v.error;
      break;
    }
  }
  return out;
}

}  // namespace lamb
