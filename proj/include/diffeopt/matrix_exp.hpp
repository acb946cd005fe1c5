#pragma once

#include <Eigen/Dense>

namespace diffeopt {

/// Matrix exponential by scaling-and-squaring with the degree-13 Pade
/// approximant (squaring threshold ||A||_1 <= 5.371920351148152).
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// Principal logarithm of a matrix near the identity (||g - I|| < 1 required);
/// Mercator series with term-count guard.
Eigen::MatrixXd logm_near_identity(const Eigen::MatrixXd& g);

}  // namespace diffeopt
