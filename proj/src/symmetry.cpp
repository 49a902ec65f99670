#include "g2/symmetry.hpp"

#include <algorithm>
#include <random>

namespace g2 {

const char* const kVerificationDisclaimer =
    "Instance check on left-invariant data only: s(phi) is the algebra of invariant symmetries of this "
    "particular phi. It confirms the bounds for this witness and proves nothing about other structures.";

namespace {

// Scales a rational vector to a primitive integer vector with a positive
// leading entry.
RVector primitive(std::vector<Rational> v) {
  mpz_class lcm = 1;
  for (const auto& x : v)
    if (x != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  mpz_class gcd = 0;
  for (auto& x : v) {
    x *= lcm;
    if (x != 0) mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), x.get_num_mpz_t());
  }
  if (gcd != 0) {
    const auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (*lead < 0) gcd = -gcd;
    for (auto& x : v) x /= gcd;
  }
  return RVector(std::move(v));
}

template <class Scalar>
std::vector<KForm<Scalar>> lie_derivative_columns(const LieAlgebra& algebra, const KForm<Scalar>& phi) {
  std::vector<KForm<Scalar>> cols;
  for (int i = 1; i <= algebra.dim(); ++i)
    cols.push_back(lie_derivative_phi(algebra, phi, Vector<Scalar>::unit(algebra.dim(), i)));
  return cols;
}

void require_positive(const LieAlgebra& algebra, const FForm& phi) {
  if (algebra.dim() != 7 || phi.dim() != 7 || phi.degree() != 3)
    throw DimensionError("symmetry_algebra: expects a 3-form on a 7-dimensional algebra");
  (void)G2Structure::from_phi(phi);
}

}  // namespace

SymmetryAlgebra<Rational> symmetry_algebra(const LieAlgebra& algebra, const RForm& phi) {
  require_positive(algebra, to_float(phi));
  SymmetryAlgebra<Rational> s;
  for (auto& v : nullspace(coefficient_matrix(lie_derivative_columns(algebra, phi)))) s.basis.push_back(primitive(std::move(v)));
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    for (std::size_t j = i + 1; j < s.basis.size(); ++j)
      if (!bracket(algebra, s.basis[i], s.basis[j]).is_zero()) s.abelian = false;
  for (const auto& x : s.basis) s.harmonic_images.push_back(interior(x, phi));
  return s;
}

SymmetryAlgebra<double> symmetry_algebra(const LieAlgebra& algebra, const FForm& phi) {
  require_positive(algebra, phi);
  SymmetryAlgebra<double> s;
  for (const auto& v : nullspace(coefficient_matrix(lie_derivative_columns(algebra, phi)), 1e-9))
    s.basis.emplace_back(std::vector<double>(v.data(), v.data() + v.size()));
  const double scale = std::max(1.0, algebra.dcoframe_float().empty() ? 1.0 : [&] {
    double m = 0;
    for (const auto& de : algebra.dcoframe_float()) m = std::max(m, de.max_norm());
    return m;
  }());
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    for (std::size_t j = i + 1; j < s.basis.size(); ++j)
      if (bracket(algebra, s.basis[i], s.basis[j]).max_norm() > 1e-9 * scale) s.abelian = false;
  for (const auto& x : s.basis) s.harmonic_images.push_back(interior(x, phi));
  return s;
}

VerificationReport verify_theorem_bounds(const LieAlgebra& algebra, const RForm& phi) {
  if (!ce_d(algebra, phi).is_zero()) throw HypothesisError("theorem hypothesis violated: phi is not closed");
  const FForm phi_f = to_float(phi);
  VerificationReport r;
  r.algebra = algebra.name();
  r.phi = to_string(phi);
  r.torsion = torsion_report(algebra, phi_f);
  if (r.torsion.coclosed) throw HypothesisError("theorem hypothesis violated: non-parallel required");

  const G2Structure g2 = G2Structure::from_phi(phi_f);
  const auto s = symmetry_algebra(algebra, phi);
  r.dim_s = s.dim();
  r.b2 = betti(algebra)[2];
  r.nilpotent = is_nilpotent(algebra);
  r.abelian = s.abelian;
  r.bound_b2_ok = r.dim_s <= r.b2;
  r.bound_6_ok = r.dim_s <= 6;
  r.F_injective = s.dim() == 0 || rank(coefficient_matrix(s.harmonic_images)) == s.dim();
  r.harmonic_ok = true;
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    const RForm& w = s.harmonic_images[i];
    const double d_w = ce_d(algebra, w).max_norm();
    const double d_star_w = ce_d(algebra, hodge_star(g2, to_float(w))).max_norm();
    r.max_d_iota_phi = std::max(r.max_d_iota_phi, d_w);
    r.max_d_star_iota_phi = std::max(r.max_d_star_iota_phi, d_star_w);
    if (d_w != 0 || !(d_star_w < kHarmonicTol)) r.harmonic_ok = false;
    r.basis.push_back(to_string(s.basis[i]));
  }
  return r;
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"algebra", r.algebra},
                     {"phi", r.phi},
                     {"dim_s", r.dim_s},
                     {"b2", r.b2},
                     {"nilpotent", r.nilpotent},
                     {"abelian", r.abelian},
                     {"bound_b2_ok", r.bound_b2_ok},
                     {"bound_6_ok", r.bound_6_ok},
                     {"F_injective", r.F_injective},
                     {"harmonic_ok", r.harmonic_ok},
                     {"confirmed", r.confirmed()},
                     {"residuals", {{"d_iota_phi", r.max_d_iota_phi}, {"d_star_iota_phi", r.max_d_star_iota_phi}}},
                     {"torsion", r.torsion},
                     {"symmetry_basis", r.basis},
                     {"disclaimer", kVerificationDisclaimer}};
}

void to_json(nlohmann::json& j, const SearchResult& r) {
  j = nlohmann::json{{"found", r.phi.has_value()},
                     {"z3_dim", r.z3_dim},
                     {"attempts_used", r.attempts_used},
                     {"coefficients", r.coefficients}};
  j["phi"] = r.phi ? nlohmann::json(to_string(*r.phi)) : nlohmann::json(nullptr);
}

std::vector<RForm> closed_three_forms(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  const auto blades = basis_enumerate(n, 3);
  std::vector<RForm> out;
  for (const auto& v : nullspace(d_matrix(algebra, 3))) {
    RForm f(n, 3);
    for (std::size_t k = 0; k < blades.size(); ++k) f.add_term(blades[k], v[k]);
    out.push_back(std::move(f));
  }
  return out;
}

SearchResult find_closed_g2(const LieAlgebra& algebra, std::uint64_t seed, long attempts) {
  if (attempts < 1) throw std::invalid_argument("find_closed_g2: attempts must be >= 1");
  if (algebra.dim() != 7) throw DimensionError("find_closed_g2: algebra must be 7-dimensional");
  const auto z3 = closed_three_forms(algebra);
  SearchResult result;
  result.z3_dim = static_cast<int>(z3.size());
  if (z3.empty()) {
    result.attempts_used = attempts;
    return result;
  }
  const auto blades = basis_enumerate(7, 3);
  std::vector<std::vector<double>> dense;
  for (const auto& f : z3) {
    std::vector<double> d(blades.size(), 0.0);
    for (const auto& [b, c] : f.terms()) d[static_cast<std::size_t>(basis_position(7, b))] = c.get_d();
    dense.push_back(std::move(d));
  }

  std::vector<int> weights(z3.size());
  std::vector<double> candidate(blades.size());
  for (long i = 0; i < attempts; ++i) {
    const auto s = static_cast<std::uint64_t>(seed);
    const auto a = static_cast<std::uint64_t>(i);
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32), static_cast<std::uint32_t>(a),
                      static_cast<std::uint32_t>(a >> 32)};
    std::mt19937_64 rng(seq);
    bool any = false;
    for (auto& w : weights) {
      w = static_cast<int>(rng() % 7) - 3;
      any = any || w != 0;
    }
    if (!any) continue;
    std::fill(candidate.begin(), candidate.end(), 0.0);
    for (std::size_t j = 0; j < dense.size(); ++j)
      if (weights[j] != 0)
        for (std::size_t k = 0; k < candidate.size(); ++k) candidate[k] += weights[j] * dense[j][k];
    FForm phi(7, 3);
    for (std::size_t k = 0; k < candidate.size(); ++k) phi.add_term(blades[k], candidate[k]);
    if (phi.is_zero()) continue;
    try {
      if (positivity_margin(bilinear_from_phi(phi).B) <= kPositivityMargin) continue;
    } catch (const DegenerateFormError&) {
      continue;
    }
    RForm exact(7, 3);
    for (std::size_t j = 0; j < z3.size(); ++j)
      if (weights[j] != 0) exact += Rational(weights[j]) * z3[j];
    result.phi = std::move(exact);
    result.coefficients = weights;
    result.attempts_used = i + 1;
    return result;
  }
  result.attempts_used = attempts;
  return result;
}

}  // namespace g2
