#include "binopt/cubic_penalty.hpp"

#include <algorithm>
#include <cmath>

#include "binopt/errors.hpp"

namespace binopt {

namespace {

constexpr double kHalf = 0.5;
constexpr double kTauSplit = 1.0 / 6.0;

// Rounding slack tolerated on the square-root arguments before the guard trips.
constexpr double kDiscriminantSlack = 1e-12;

double checked_sqrt(double arg) {
  if (arg < 0.0) {
    if (arg < -kDiscriminantSlack)
      throw InternalError("prox discriminant negative: " + std::to_string(arg));
    return 0.0;
  }
  return std::sqrt(arg);
}

// Stationary point of the left cubic piece plus the quadratic, in (0, 1/2].
// 1 + (sqrt(1 + 12 tau (z-1)) - 1) / (6 tau), rationalized so small tau does
// not cancel.
double left_root(double z, double tau) {
  const double w = 1.0 + 2.0 * (z - 1.0) / (1.0 + checked_sqrt(1.0 + 12.0 * tau * (z - 1.0)));
  return std::clamp(w, 0.0, 1.0);
}

// Stationary point of the right cubic piece plus the quadratic, in [1/2, 1).
// (1 - sqrt(1 - 12 tau z)) / (6 tau), rationalized likewise.
double right_root(double z, double tau) {
  const double w = 2.0 * z / (1.0 + checked_sqrt(1.0 - 12.0 * tau * z));
  return std::clamp(w, 0.0, 1.0);
}

SmallSet prox_set(double z, double tau) {
  if (tau >= kTauSplit) {
    if (z < kHalf) return SmallSet(0.0);
    if (z > kHalf) return SmallSet(1.0);
    return SmallSet(0.0, 1.0);
  }
  const double lo = 3.0 * tau;
  const double hi = 1.0 - 3.0 * tau;
  if (z <= lo) return SmallSet(0.0);
  if (z >= hi) return SmallSet(1.0);
  if (z < kHalf) return SmallSet(left_root(z, tau));
  if (z > kHalf) return SmallSet(right_root(z, tau));
  return SmallSet(left_root(z, tau), right_root(z, tau));
}

}  // namespace

bool is_binary(const Vector& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

bool in_box(const Vector& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

ProxRegime ProxRegime::of(double tau) {
  if (!(tau > 0.0)) throw ParameterError("prox parameter tau must be positive");
  return {tau, tau >= kTauSplit ? ProxBranch::LargeTau : ProxBranch::SmallTau};
}

double g_value(double x) {
  if (x <= kHalf) return x * x * x - 3.0 * x * x + 3.0 * x;
  return 1.0 - x * x * x;
}

SmallSet g_subdiff(double x) {
  if (x < kHalf) return SmallSet(3.0 * x * x - 6.0 * x + 3.0);
  if (x > kHalf) return SmallSet(-3.0 * x * x);
  return SmallSet(-0.75, 0.75);
}

double p_value(const Vector& x) {
  double sum = 0.0;
  for (double v : x) sum += g_value(v);
  return sum;
}

ScalarProxResult prox_scalar(double z, double tau) {
  if (!(tau > 0.0)) throw ParameterError("prox parameter tau must be positive");
  const SmallSet set = prox_set(z, tau);
  // Two candidates only occur at z = 1/2, where the left one is the smaller.
  return {set, set[0]};
}

void prox_vector(const Vector& z, double tau_lambda, Vector& out) {
  if (!(tau_lambda > 0.0)) throw ParameterError("prox parameter tau*lambda must be positive");
  out.resize(z.size());
  for (Index i = 0; i < z.size(); ++i) out[i] = prox_set(z[i], tau_lambda)[0];
}

Vector prox_vector(const Vector& z, double tau_lambda) {
  Vector out;
  prox_vector(z, tau_lambda, out);
  return out;
}

}  // namespace binopt
