#include "binopt/normal.hpp"

#include <cmath>
#include <numbers>

namespace binopt::normal {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Below this the lower tail goes through the Mills-ratio continued fraction.
constexpr double kTailSwitch = -1.0;

// Phi(-t) / phi(t) for t > 0 via the Laplace continued fraction
//   1 / (t + 1 / (t + 2 / (t + 3 / (t + ...)))),
// evaluated with the modified Lentz method.
double mills_ratio(double t) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxTerms = 5000;

  double f = t;
  double c = t;
  double d = 0.0;
  for (int k = 1; k < kMaxTerms; ++k) {
    const double a = static_cast<double>(k);
    d = t + a * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = t + a / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return 1.0 / f;
}

}  // namespace

double pdf(double u) { return std::exp(log_pdf(u)); }

double log_pdf(double u) { return -0.5 * u * u - kLogSqrt2Pi; }

double cdf(double u) { return 0.5 * std::erfc(-u * kInvSqrt2); }

double log_cdf(double u) {
  if (u < kTailSwitch) return log_pdf(u) + std::log(mills_ratio(-u));
  if (u > 0.0) return std::log1p(-0.5 * std::erfc(u * kInvSqrt2));
  return std::log(cdf(u));
}

double inverse_mills(double u) {
  if (u < kTailSwitch) return 1.0 / mills_ratio(-u);
  return pdf(u) / cdf(u);
}

}  // namespace binopt::normal
