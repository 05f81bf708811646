#pragma once

#include <Eigen/Dense>

namespace podrbf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace podrbf
