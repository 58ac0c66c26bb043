#pragma once

#include <Eigen/Core>

namespace binopt {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// True when every component is exactly 0 or 1.
bool is_binary(const Vector& x);

/// True when every component lies in [0, 1].
bool in_box(const Vector& x);

}  // namespace binopt
