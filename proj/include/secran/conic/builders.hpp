// SPDX-License-Identifier: Apache-2.0
//
// secran: secure downlink beamforming for mmWave C-RAN with microwave
// multicast fronthaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "secran/conic/expr.hpp"
#include "secran/conic/problem.hpp"

namespace secran::conic {

// [[a, b], [b, c]] >= 0, certifying b^2 <= a*c with a, c >= 0.
HermExpr lmi_2x2(const LinExpr& a, const LinExpr& b, const LinExpr& c);

// [[t, s1*u, s2*v], [s1*u, 1, 0], [s2*v, 0, 1]] >= 0, certifying
// s1^2 u^2 + s2^2 v^2 <= t (Schur complement against the identity block).
HermExpr quad_upper_3x3(const LinExpr& t, double s1, const LinExpr& u, double s2,
                        const LinExpr& v);

enum class SprocForm { UpperBound, LowerBound };

// S-procedure LMI over the uncertainty ball ||dh||^2 <= sigma*||h_est||^2.
//
// UpperBound builds  [[w I - Q, -b^H], [-b, c - w*sigma*||h_est||^2]] >= 0,
// certifying (h_est+dh) Q (h_est+dh)^H <= rhs for all dh in the ball when
// called with b = h_est*Q and c = rhs - h_est*Q*h_est^H.
//
// LowerBound builds  [[w I + Q, +b^H], [+b, c - w*sigma*||h_est||^2]] >= 0,
// certifying (h_est+dh) Q (h_est+dh)^H >= lhs with b = h_est*Q and
// c = h_est*Q*h_est^H - lhs.
//
// w is the slack variable (kappa_z / upsilon_z); rows of b are complex
// affine expressions of length matching Q.
HermExpr sproc_lmi(const LinExpr& weight, const HermExpr& q, const std::vector<CxAffine>& b_row,
                   const LinExpr& c, double sigma, const Eigen::RowVectorXcd& h_est,
                   SprocForm form);

// Exact extrema of the quadratic (h+dh) A (h+dh)^H over the ball
// ||dh||^2 <= sigma*||h||^2 (A Hermitian PSD), via 1-D search on the
// trust-region multiplier. The returned multiplier is exactly the slack
// weight (kappa / upsilon) that makes the matching S-procedure LMI PSD at
// the extremal value. Used by seeding and by ball-sampling oracles.
struct BallExtremum {
  double value = 0.0;
  double multiplier = 0.0;
};
BallExtremum worst_case_quadratic_max(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& a,
                                      double sigma);
BallExtremum worst_case_quadratic_min(const Eigen::RowVectorXcd& h, const Eigen::MatrixXcd& a,
                                      double sigma);

}  // namespace secran::conic
