#pragma once

namespace binopt::normal {

double pdf(double u);
double log_pdf(double u);
double cdf(double u);

/// log Phi(u), finite for every finite u (no underflow in the lower tail).
double log_cdf(double u);

/// Inverse Mills ratio phi(u) / Phi(u); behaves like -u as u -> -infinity.
double inverse_mills(double u);

}  // namespace binopt::normal
