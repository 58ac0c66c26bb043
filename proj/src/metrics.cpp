#include "binopt/metrics.hpp"

#include <cmath>

#include "binopt/errors.hpp"

namespace binopt {

double accuracy(const Vector& x, const Vector& x_star) {
  if (x.size() != x_star.size()) throw ParameterError("accuracy: length mismatch");
  const double ref = x_star.norm();
  if (ref == 0.0) throw UndefinedError("accuracy is undefined for a zero ground truth");
  return 1.0 - (x - x_star).norm() / ref;
}

double bit_error_rate(const Vector& x, const Vector& x_star) {
  if (x.size() != x_star.size()) throw ParameterError("bit error rate: length mismatch");
  if (!is_binary(x) || !is_binary(x_star)) throw DomainError("bit error rate needs binary vectors");
  if (x.size() == 0) throw UndefinedError("bit error rate of empty vectors");
  const auto errors = (x.array() != x_star.array()).count();
  return static_cast<double>(errors) / static_cast<double>(x.size());
}

double gap(double obj_value, double lowest) {
  if (lowest == 0.0) throw UndefinedError("gap is undefined for a zero reference value");
  return std::abs(obj_value - lowest) / std::abs(lowest) * 100.0;
}

}  // namespace binopt
