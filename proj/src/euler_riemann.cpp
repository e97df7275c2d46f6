#include "cutdg/euler_riemann.hpp"

#include <algorithm>
#include <cmath>

#include "cutdg/errors.hpp"

namespace cutdg {

ExactEulerRiemann::ExactEulerRiemann(PrimitiveState left, PrimitiveState right, double gamma)
    : left_(left), right_(right), gamma_(gamma) {
  if (!(left.rho > 0.0 && right.rho > 0.0 && left.p > 0.0 && right.p > 0.0)) {
    throw AdmissibilityError("Riemann data need positive density and pressure");
  }
  c_left_ = std::sqrt(gamma * left.p / left.rho);
  c_right_ = std::sqrt(gamma * right.p / right.rho);
  const double g = gamma_;
  if (2.0 / (g - 1.0) * (c_left_ + c_right_) <= right.v - left.v) {
    throw NumericalError("Riemann data generate vacuum");
  }
  // Two-rarefaction guess.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((c_left_ + c_right_ - 0.5 * (g - 1.0) * (right.v - left.v)) /
                          (c_left_ / std::pow(left.p, z) + c_right_ / std::pow(right.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-12);
  for (iterations_ = 1; iterations_ <= 100; ++iterations_) {
    double fl, dfl, fr, dfr;
    pressure_function(p, left_, c_left_, fl, dfl);
    pressure_function(p, right_, c_right_, fr, dfr);
    const double delta = (fl + fr + right.v - left.v) / (dfl + dfr);
    double next = p - delta;
    if (next <= 0.0) next = 0.5 * p;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-15) break;
  }
  if (iterations_ > 100) throw NumericalError("star pressure iteration did not converge");
  p_star_ = p;
  double fl, dfl, fr, dfr;
  pressure_function(p, left_, c_left_, fl, dfl);
  pressure_function(p, right_, c_right_, fr, dfr);
  v_star_ = 0.5 * (left.v + right.v) + 0.5 * (fr - fl);
}

void ExactEulerRiemann::pressure_function(double p, const PrimitiveState& side, double c,
                                          double& f, double& df) const {
  const double g = gamma_;
  if (p > side.p) {
    const double a = 2.0 / ((g + 1.0) * side.rho);
    const double b = (g - 1.0) / (g + 1.0) * side.p;
    const double root = std::sqrt(a / (p + b));
    f = (p - side.p) * root;
    df = root * (1.0 - 0.5 * (p - side.p) / (p + b));
  } else {
    const double ratio = p / side.p;
    f = 2.0 * c / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
    df = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (side.rho * c);
  }
}

PrimitiveState ExactEulerRiemann::sample(double s) const {
  const double g = gamma_;
  const double gm = (g - 1.0) / (g + 1.0);
  if (s <= v_star_) {
    const auto& k = left_;
    const double c = c_left_;
    if (p_star_ > k.p) {
      const double ratio = p_star_ / k.p;
      const double speed = k.v - c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
      if (s <= speed) return k;
      return {k.rho * (ratio + gm) / (ratio * gm + 1.0), v_star_, p_star_};
    }
    const double head = k.v - c;
    if (s <= head) return k;
    const double c_star = c * std::pow(p_star_ / k.p, (g - 1.0) / (2.0 * g));
    const double tail = v_star_ - c_star;
    if (s >= tail) return {k.rho * std::pow(p_star_ / k.p, 1.0 / g), v_star_, p_star_};
    const double factor = 2.0 / (g + 1.0) + gm / c * (k.v - s);
    return {k.rho * std::pow(factor, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * k.v + s),
            k.p * std::pow(factor, 2.0 * g / (g - 1.0))};
  }
  const auto& k = right_;
  const double c = c_right_;
  if (p_star_ > k.p) {
    const double ratio = p_star_ / k.p;
    const double speed = k.v + c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    if (s >= speed) return k;
    return {k.rho * (ratio + gm) / (ratio * gm + 1.0), v_star_, p_star_};
  }
  const double head = k.v + c;
  if (s >= head) return k;
  const double c_star = c * std::pow(p_star_ / k.p, (g - 1.0) / (2.0 * g));
  const double tail = v_star_ + c_star;
  if (s <= tail) return {k.rho * std::pow(p_star_ / k.p, 1.0 / g), v_star_, p_star_};
  const double factor = 2.0 / (g + 1.0) - gm / c * (k.v - s);
  return {k.rho * std::pow(factor, 2.0 / (g - 1.0)),
          2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * k.v + s),
          k.p * std::pow(factor, 2.0 * g / (g - 1.0))};
}

}  // namespace cutdg
