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
#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace secran::conic {

using cxd = std::complex<double>;

// Real affine expression c + sum coeff_i * y_i over problem scalars.
struct LinExpr {
  double constant = 0.0;
  std::vector<std::pair<int, double>> terms;

  LinExpr() = default;
  /* implicit */ LinExpr(double c) : constant(c) {}

  static LinExpr variable(int v, double coeff = 1.0) {
    LinExpr e;
    e.terms.emplace_back(v, coeff);
    return e;
  }

  void add(int v, double coeff) { terms.emplace_back(v, coeff); }

  LinExpr& operator+=(const LinExpr& o) {
    constant += o.constant;
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }
  LinExpr& operator-=(const LinExpr& o) {
    constant -= o.constant;
    for (const auto& [v, c] : o.terms) terms.emplace_back(v, -c);
    return *this;
  }
  LinExpr& operator*=(double s) {
    constant *= s;
    for (auto& [v, c] : terms) c *= s;
    return *this;
  }

  double eval(const Eigen::VectorXd& y) const {
    double acc = constant;
    for (const auto& [v, c] : terms) acc += c * y(v);
    return acc;
  }

  // Merge duplicate variable indices.
  void compact();
};

inline LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
inline LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
inline LinExpr operator*(double s, LinExpr a) { return a *= s; }
inline LinExpr operator*(LinExpr a, double s) { return a *= s; }
inline LinExpr operator-(LinExpr a) { return a *= -1.0; }

// Complex affine expression; used for off-diagonal LMI entries.
struct CxAffine {
  cxd constant{0.0, 0.0};
  std::vector<std::pair<int, cxd>> terms;

  CxAffine() = default;
  /* implicit */ CxAffine(cxd c) : constant(c) {}
  /* implicit */ CxAffine(double c) : constant(c, 0.0) {}
  /* implicit */ CxAffine(const LinExpr& e) : constant(e.constant, 0.0) {
    for (const auto& [v, c] : e.terms) terms.emplace_back(v, cxd(c, 0.0));
  }

  void add(int v, cxd coeff) { terms.emplace_back(v, coeff); }
  CxAffine& operator+=(const CxAffine& o) {
    constant += o.constant;
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }
  CxAffine& operator*=(cxd s) {
    constant *= s;
    for (auto& [v, c] : terms) c *= s;
    return *this;
  }
};

inline CxAffine operator*(cxd s, CxAffine a) { return a *= s; }

// Hermitian-matrix-valued affine expression M(y) = C0 + sum y_i * C_i with
// every C_i Hermitian. Internally stored by coefficient matrices.
class HermExpr {
 public:
  explicit HermExpr(int n) : n_(n), constant_(Eigen::MatrixXcd::Zero(n, n)) {}

  int dim() const { return n_; }

  void add_constant(const Eigen::MatrixXcd& a) { constant_ += a; }
  void add_term(int var, const Eigen::MatrixXcd& c);

  // Adds e to entry (r,c) and conj(e) to (c,r). Diagonal entries must be real.
  void add_entry(int r, int c, const CxAffine& e);

  // Places a Hermitian sub-expression at diagonal offset (r0, r0).
  void add_block(int r0, const HermExpr& sub);
  // Places A (Hermitian) at diagonal offset scaled by 1.
  void add_constant_block(int r0, const Eigen::MatrixXcd& a);
  void add_term_block(int r0, int var, const Eigen::MatrixXcd& c);

  HermExpr& operator+=(const HermExpr& o);

  const Eigen::MatrixXcd& constant() const { return constant_; }
  const std::map<int, Eigen::MatrixXcd>& coeffs() const { return coeffs_; }

  bool is_real(double tol = 1e-14) const;

  // Largest deviation from Hermitian symmetry across all coefficient
  // matrices (relative to their norms).
  double hermitian_error() const;

  Eigen::MatrixXcd eval(const Eigen::VectorXd& y) const;

 private:
  int n_;
  Eigen::MatrixXcd constant_;
  std::map<int, Eigen::MatrixXcd> coeffs_;
};

// Hermitian matrix variable: n*n real parameters appended to the scalar
// variable vector. Layout: n diagonal entries H(ii), then for each pair
// i<j in row-major order the real and imaginary parts of H(ij).
struct MatVar {
  int n = 0;
  int base = -1;

  int params() const { return n * n; }
};

// Basis matrix B_p with H = sum_p y_{base+p} B_p.
Eigen::MatrixXcd matvar_basis(const MatVar& v, int p);

// Tr(A H) as a real affine expression (A Hermitian).
LinExpr tr_expr(const Eigen::MatrixXcd& a, const MatVar& v);

// H(d,d) as an affine expression (diagonal selector, used by per-BS power).
LinExpr diag_expr(const MatVar& v, int d);

// Entry H(r,c) as a complex affine expression.
CxAffine entry_expr(const MatVar& v, int r, int c);

// The variable itself as a matrix expression.
HermExpr matvar_expr(const MatVar& v);

// F H F^H as a matrix expression.
HermExpr congruence_expr(const Eigen::MatrixXcd& f, const MatVar& v);

Eigen::MatrixXcd matvar_value(const MatVar& v, const Eigen::VectorXd& y);

// A Hermitian matrix "slot" that is either a full matrix variable or a fixed
// direction scaled by a nonnegative scalar variable (power re-optimization).
class MatHandle {
 public:
  static MatHandle full(const MatVar& v);
  static MatHandle scaled(int scalar_var, const Eigen::MatrixXcd& direction);

  bool is_full() const { return full_.n > 0; }
  int dim() const;
  const MatVar& var() const { return full_; }
  int scale_var() const { return scale_var_; }

  LinExpr tr(const Eigen::MatrixXcd& a) const;  // Tr(A V)
  LinExpr trace() const;                        // Tr(V)
  LinExpr diag(int d) const;                    // V(d,d)
  HermExpr expr() const;
  HermExpr congruence(const Eigen::MatrixXcd& f) const;
  // Row vector g * V * f_adj as complex affine entries (g is 1 x n,
  // f_adj is n x p). Used by the S-procedure borders.
  std::vector<CxAffine> sandwich_row(const Eigen::RowVectorXcd& g,
                                     const Eigen::MatrixXcd& f_adj) const;
  Eigen::MatrixXcd value(const Eigen::VectorXd& y) const;

 private:
  MatVar full_{};
  int scale_var_ = -1;
  Eigen::MatrixXcd direction_;
};

}  // namespace secran::conic
