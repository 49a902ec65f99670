#pragma once

// Dense linear algebra used by the cohomology and symmetry computations.
// Exact work happens over Q with plain Gauss-Jordan elimination on
// mpq_class entries; the matrices here are at most 35 x 35.

#include "g2/exterior.hpp"

#include <Eigen/Dense>

#include <vector>

namespace g2 {

class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), Rational(0)) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Rational& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Rational& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }

  bool is_zero() const;
  Eigen::MatrixXd to_float() const;

  friend bool operator==(const RMatrix&, const RMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(RMatrix& m);

int rank(RMatrix m);

// Basis of {x : m x = 0}, one vector per free column, with a 1 in that
// free column (the standard RREF basis).
std::vector<std::vector<Rational>> nullspace(RMatrix m);

// Float nullspace through the SVD: singular values <= rel_tol * sigma_max
// count as zero. Returned vectors are orthonormal.
std::vector<Eigen::VectorXd> nullspace(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

int rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

// Column matrix whose j-th column holds the coefficients of forms[j] in
// basis_enumerate order.
RMatrix coefficient_matrix(const std::vector<RForm>& forms);
Eigen::MatrixXd coefficient_matrix(const std::vector<FForm>& forms);

}  // namespace g2
