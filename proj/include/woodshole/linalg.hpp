#pragma once

#include <Eigen/Dense>

namespace woodshole {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

}  // namespace woodshole
