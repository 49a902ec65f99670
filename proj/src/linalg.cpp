#include "g2/linalg.hpp"

#include <utility>

namespace g2 {

bool RMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

Eigen::MatrixXd RMatrix::to_float() const {
  Eigen::MatrixXd out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).get_d();
  return out;
}

std::vector<int> rref(RMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Rational inv = 1 / Rational(m(row, col));
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(RMatrix m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Rational>> nullspace(RMatrix m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<Rational>> out;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(m.cols()), Rational(0));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[static_cast<std::size_t>(pivots[i])] = -m(static_cast<int>(i), free);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

int numerical_rank(const Eigen::JacobiSVD<Eigen::MatrixXd>& svd, double rel_tol) {
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace

std::vector<Eigen::VectorXd> nullspace(const Eigen::MatrixXd& m, double rel_tol) {
  std::vector<Eigen::VectorXd> out;
  if (m.cols() == 0) return out;
  if (m.rows() == 0) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(Eigen::VectorXd::Unit(m.cols(), j));
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const int r = numerical_rank(svd, rel_tol);
  const auto& v = svd.matrixV();
  for (Eigen::Index j = r; j < m.cols(); ++j) out.push_back(v.col(j));
  return out;
}

int rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return numerical_rank(svd, rel_tol);
}

RMatrix coefficient_matrix(const std::vector<RForm>& forms) {
  if (forms.empty()) return {};
  const int dim = forms.front().dim();
  const int degree = forms.front().degree();
  RMatrix m(static_cast<int>(binomial(dim, degree)), static_cast<int>(forms.size()));
  for (std::size_t j = 0; j < forms.size(); ++j) {
    if (forms[j].dim() != dim || forms[j].degree() != degree) throw DimensionError("coefficient_matrix: mixed forms");
    for (const auto& [b, c] : forms[j].terms()) m(basis_position(dim, b), static_cast<int>(j)) = c;
  }
  return m;
}

Eigen::MatrixXd coefficient_matrix(const std::vector<FForm>& forms) {
  if (forms.empty()) return {};
  const int dim = forms.front().dim();
  const int degree = forms.front().degree();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(binomial(dim, degree), static_cast<Eigen::Index>(forms.size()));
  for (std::size_t j = 0; j < forms.size(); ++j) {
    if (forms[j].dim() != dim || forms[j].degree() != degree) throw DimensionError("coefficient_matrix: mixed forms");
    for (const auto& [b, c] : forms[j].terms()) m(basis_position(dim, b), static_cast<Eigen::Index>(j)) = c;
  }
  return m;
}

}  // namespace g2
