#pragma once

// Lie algebras presented by the differentials of a coframe (Salamon
// notation) and their Chevalley-Eilenberg cohomology.
//
// A tuple (de^1, ..., de^n) fixes the algebra. Brackets follow
//     d alpha(X, Y) = -alpha([X, Y])
// for 1-forms alpha and X, Y in the algebra, so [e_i, e_j] has e_k
// component -de^k(e_i, e_j) and the tuple is the differential verbatim.

#include "g2/exterior.hpp"
#include "g2/linalg.hpp"

#include <json.hpp>

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace g2 {

class JacobiError : public std::domain_error {
 public:
  JacobiError(int index, const std::string& residual)
      : std::domain_error("Jacobi identity fails: d(de^" + std::to_string(index) + ") = " + residual + " != 0"),
        index_(index) {}
  // 1-based coframe index k of the first d(de^k) != 0.
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;

  // Verifies d(de^k) = 0 for every k; throws JacobiError otherwise.
  static LieAlgebra from_differentials(std::vector<RForm> dcoframe, std::string name = {});
  // Skips the Jacobi check. Diagnostics only: downstream math assumes d^2 = 0.
  static LieAlgebra unchecked(std::vector<RForm> dcoframe, std::string name = {});

  int dim() const noexcept { return static_cast<int>(dcoframe_.size()); }
  const std::vector<RForm>& dcoframe() const noexcept { return dcoframe_; }
  const std::vector<FForm>& dcoframe_float() const noexcept { return dcoframe_float_; }
  const std::string& name() const noexcept { return name_; }

  bool is_abelian() const;

  template <class Scalar>
  const std::vector<KForm<Scalar>>& differentials() const {
    if constexpr (std::is_same_v<Scalar, Rational>)
      return dcoframe_;
    else
      return dcoframe_float_;
  }

 private:
  LieAlgebra(std::vector<RForm> dcoframe, std::string name);

  std::vector<RForm> dcoframe_;
  std::vector<FForm> dcoframe_float_;
  std::string name_;
};

// "(0, 0, e^{12}, e^{13}, ...)"; one entry per coframe element, each "0" or
// a 2-form in the exterior grammar.
LieAlgebra parse_salamon(std::string_view text, std::string name = {});
LieAlgebra parse_salamon_unchecked(std::string_view text, std::string name = {});

std::string to_salamon(const LieAlgebra& algebra);

// Chevalley-Eilenberg differential, extended from the coframe as an
// antiderivation: d(e^I) = sum_j (-1)^(j-1) de^{i_j} ^ e^{I \ i_j}.
template <class Scalar>
KForm<Scalar> ce_d(const LieAlgebra& algebra, const KForm<Scalar>& a) {
  if (a.dim() != algebra.dim()) throw DimensionError("ce_d: form dimension does not match the algebra");
  const auto& dco = algebra.differentials<Scalar>();
  KForm<Scalar> out(a.dim(), a.degree() + 1);
  if (out.degree() > a.dim()) return out;
  for (const auto& [blade, c] : a.terms()) {
    for (int i : blade.indices()) {
      const auto& de = dco[static_cast<std::size_t>(i - 1)];
      const Blade rest = blade.without(i);
      const int s = removal_sign(blade, i);
      for (const auto& [bd, cd] : de.terms()) {
        const int m = merge_sign(bd, rest);
        if (m == 0) continue;
        Scalar term = c * cd;
        if (s * m < 0) term = -term;
        out.add_term(Blade(static_cast<std::uint8_t>(bd.mask() | rest.mask())), term);
      }
    }
  }
  return out;
}

// alpha(X, Y) for a 2-form, i.e. iota_Y iota_X alpha.
template <class Scalar>
Scalar evaluate2(const KForm<Scalar>& alpha, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  Scalar out(0);
  for (const auto& [blade, c] : alpha.terms()) {
    const auto idx = blade.indices();
    const int i = idx[0] - 1;
    const int j = idx[1] - 1;
    out += c * (x[i] * y[j] - x[j] * y[i]);
  }
  return out;
}

template <class Scalar>
Vector<Scalar> bracket(const LieAlgebra& algebra, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  if (x.dim() != algebra.dim() || y.dim() != algebra.dim()) throw DimensionError("bracket: dimension mismatch");
  const auto& dco = algebra.differentials<Scalar>();
  Vector<Scalar> out(algebra.dim());
  for (int k = 0; k < algebra.dim(); ++k) out[k] = -evaluate2(dco[static_cast<std::size_t>(k)], x, y);
  return out;
}

// Matrix of d: Lambda^k -> Lambda^{k+1}, shape C(n,k+1) x C(n,k).
RMatrix d_matrix(const LieAlgebra& algebra, int k);

struct BettiVector {
  std::vector<int> b;

  int operator[](int k) const { return b.at(static_cast<std::size_t>(k)); }
  int euler_characteristic() const;
  friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

void to_json(nlohmann::json& j, const BettiVector& betti);

// b_k = C(n,k) - rank d_k - rank d_{k-1}, ranks exact over Q.
BettiVector betti(const LieAlgebra& algebra);

// trace(ad_{e_i}) = 0 for every basis vector.
bool is_unimodular(const LieAlgebra& algebra);

// Lower central series reaches zero.
bool is_nilpotent(const LieAlgebra& algebra);

struct NamedAlgebra {
  std::string name;
  LieAlgebra algebra;
};

// One algebra per non-empty line, "name: tuple" or a bare tuple; '#' starts
// a comment line. Bare tuples are named "line<N>".
std::vector<NamedAlgebra> load_algebras(std::istream& in);

// Built-in algebras: "abelian7" and "row1".."row4", the four nilpotent
// algebras with closed G2-structures and b_2 < 7.
LieAlgebra builtin_algebra(std::string_view name);
std::vector<std::string> builtin_algebra_names();

}  // namespace g2
