#pragma once

// G2-structures on R^7 given by a 3-form phi.
//
// The induced metric and volume satisfy
//     g(X, Y) dV = 1/6 iota_X phi ^ iota_Y phi ^ phi.
// Writing the right-hand side as B'(X, Y) e^{1..7}, B' is definite exactly
// when phi is positive. Since 7 is odd, B' flips sign with the reference
// orientation; we normalise to det B > 0 and record the sign. Then
// dV = orientation * lambda * e^{1..7}, lambda = det(B)^{1/9}, g = B / lambda
// and det g = lambda^2.
//
// All computations here are in double precision. Norms are max-norms over
// blade coefficients.

#include "g2/exterior.hpp"
#include "g2/liealg.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <stdexcept>

namespace g2 {

using Matrix7 = Eigen::Matrix<double, 7, 7>;

class DegenerateFormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotPositiveError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// e^{123} + e^{145} + e^{167} + e^{246} - e^{257} - e^{347} - e^{356}
template <class Scalar>
KForm<Scalar> standard_phi() {
  return parse_form<Scalar>("e^{123} + e^{145} + e^{167} + e^{246} - e^{257} - e^{347} - e^{356}", 7);
}

struct BilinearForm {
  Matrix7 B;
  int orientation = 1;
};

// Raw B' from the triple product; B = orientation * B' has det B > 0.
// Throws DegenerateFormError when det B' vanishes relative to max|B'|^7.
BilinearForm bilinear_from_phi(const FForm& phi);

// Smallest eigenvalue of B divided by the largest |eigenvalue|. phi is
// treated as positive only when this exceeds kPositivityMargin.
double positivity_margin(const Matrix7& B);
inline constexpr double kPositivityMargin = 1e-10;

class G2Structure {
 public:
  // Throws DegenerateFormError or NotPositiveError.
  static G2Structure from_phi(const FForm& phi);

  const FForm& phi() const noexcept { return phi_; }
  const Matrix7& bilinear() const noexcept { return B_; }
  const Matrix7& metric() const noexcept { return g_; }
  const Matrix7& inverse_metric() const noexcept { return g_inv_; }
  double vol_coeff() const noexcept { return lambda_; }
  int orientation() const noexcept { return orientation_; }

  // orientation * lambda * e^{1..7}
  FForm volume_form() const;

  // Gram-determinant extension of g to equal-degree forms.
  double inner(const FForm& a, const FForm& b) const;

  double metric(const FVector& x, const FVector& y) const;

  // Orthonormal frame data: g = Q^T Q, P = Q^{-1}. Row a of Q holds the
  // coframe element theta^a = sum_i Q(a, i) e^i.
  const std::vector<double>& frame_P() const noexcept { return P_; }
  const std::vector<double>& frame_Q() const noexcept { return Q_; }

 private:
  FForm phi_;
  Matrix7 B_;
  Matrix7 g_;
  Matrix7 g_inv_;
  double lambda_ = 1;
  int orientation_ = 1;
  std::vector<double> P_;
  std::vector<double> Q_;
};

inline G2Structure metric_from_phi(const FForm& phi) { return G2Structure::from_phi(phi); }

// Hodge star, b ^ *a = <b, a> dV. Computed in an orthonormal coframe.
FForm hodge_star(const G2Structure& g2, const FForm& a);

// Same operator through inverse-metric minors; kept as an independent route
// for cross-checking.
FForm hodge_star_by_minors(const G2Structure& g2, const FForm& a);

struct TorsionReport {
  bool closed = false;
  bool coclosed = false;
  bool parallel = false;
  double d_phi_norm = 0;
  double d_star_phi_norm = 0;
};

void to_json(nlohmann::json& j, const TorsionReport& r);

inline constexpr double kTorsionRelTol = 1e-9;

// closed: |d phi| < 1e-9 |phi|; coclosed: |d *phi| < 1e-9 |*phi|.
TorsionReport torsion_report(const LieAlgebra& algebra, const FForm& phi);

// |iota_X phi ^ phi + 2 *(iota_X phi)|, the identity in Karigiannis's
// orientation convention. Our dV comes from the +1/6 identity above, which
// is the opposite orientation, so this is 4 |*(iota_X phi)| rather than 0.
double karigiannis_identity_residual(const G2Structure& g2, const FVector& x);

// |iota_X phi ^ phi - 2 *(iota_X phi)|; vanishes for every positive phi in
// the orientation induced by g dV = 1/6 iota_X phi ^ iota_Y phi ^ phi.
double contraction_identity_residual(const G2Structure& g2, const FVector& x);

// Embeds the 6-dimensional pair and returns omega ^ e^7 + psi on R^7.
template <class Scalar>
KForm<Scalar> su3_lift(const KForm<Scalar>& omega, const KForm<Scalar>& psi) {
  if (omega.dim() != 6 || psi.dim() != 6) throw DimensionError("su3_lift: omega and psi must live on R^6");
  if (omega.degree() != 2) throw DimensionError("su3_lift: omega must be a 2-form");
  if (psi.degree() != 3) throw DimensionError("su3_lift: psi must be a 3-form");
  KForm<Scalar> out(7, 3);
  for (const auto& [b, c] : omega.terms()) out.add_term(Blade(static_cast<std::uint8_t>(b.mask() | Blade::single(7).mask())), c);
  for (const auto& [b, c] : psi.terms()) out.add_term(b, c);
  return out;
}

void to_json(nlohmann::json& j, const G2Structure& g2);

}  // namespace g2
