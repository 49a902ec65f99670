#pragma once

// Invariant symmetries of a G2-structure on a 7-dimensional Lie algebra.
//
// For X in the algebra, L_X phi = iota_X d phi + d iota_X phi with d the
// Chevalley-Eilenberg differential. The symmetry algebra s(phi) is the
// kernel of X -> L_X phi, a linear map R^7 -> Lambda^3.

#include "g2/exterior.hpp"
#include "g2/g2core.hpp"
#include "g2/liealg.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2 {

class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class Scalar>
KForm<Scalar> lie_derivative_phi(const LieAlgebra& algebra, const KForm<Scalar>& phi, const Vector<Scalar>& x) {
  if (phi.dim() != algebra.dim() || x.dim() != algebra.dim())
    throw DimensionError("lie_derivative_phi: dimension mismatch");
  return interior(x, ce_d(algebra, phi)) + ce_d(algebra, interior(x, phi));
}

template <class Scalar>
struct SymmetryAlgebra {
  std::vector<Vector<Scalar>> basis;
  bool abelian = true;
  // iota_X phi for each basis vector X.
  std::vector<KForm<Scalar>> harmonic_images;

  int dim() const noexcept { return static_cast<int>(basis.size()); }
};

// Exact kernel over Q.
SymmetryAlgebra<Rational> symmetry_algebra(const LieAlgebra& algebra, const RForm& phi);
// Float kernel through the SVD with relative threshold 1e-9.
SymmetryAlgebra<double> symmetry_algebra(const LieAlgebra& algebra, const FForm& phi);

inline constexpr double kHarmonicTol = 1e-8;

struct VerificationReport {
  std::string algebra;
  std::string phi;
  int dim_s = 0;
  int b2 = 0;
  bool nilpotent = false;
  bool abelian = false;
  bool bound_b2_ok = false;
  bool bound_6_ok = false;
  bool F_injective = false;
  bool harmonic_ok = false;
  double max_d_iota_phi = 0;       // max |d(iota_X phi)| over the basis
  double max_d_star_iota_phi = 0;  // max |d *(iota_X phi)| over the basis
  TorsionReport torsion;
  std::vector<std::string> basis;

  bool confirmed() const { return abelian && bound_b2_ok && bound_6_ok && F_injective && harmonic_ok; }
};

extern const char* const kVerificationDisclaimer;

void to_json(nlohmann::json& j, const VerificationReport& r);

// Requires phi closed and not coclosed; throws HypothesisError otherwise.
VerificationReport verify_theorem_bounds(const LieAlgebra& algebra, const RForm& phi);

struct SearchResult {
  std::optional<RForm> phi;
  int z3_dim = 0;
  long attempts_used = 0;  // index of the successful attempt + 1, or all attempts
  std::vector<int> coefficients;  // integer weights on the Z^3 basis
};

void to_json(nlohmann::json& j, const SearchResult& r);

// Basis of Z^3 = ker(d : Lambda^3 -> Lambda^4), exact.
std::vector<RForm> closed_three_forms(const LieAlgebra& algebra);

// Samples integer weights in [-3, 3] on the Z^3 basis and returns the first
// combination whose induced bilinear form is definite. Attempt i draws from
// a generator seeded by (seed, i), so the result depends only on the seed.
SearchResult find_closed_g2(const LieAlgebra& algebra, std::uint64_t seed, long attempts);

}  // namespace g2
