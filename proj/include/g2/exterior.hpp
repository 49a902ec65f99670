#pragma once

// Sparse exterior algebra over R^n, n <= 7.
//
// Basis covectors are e^1..e^n (1-based in every public interface). A Blade
// is a set of basis indices stored as a bit mask, bit (i-1) for e^i; the
// product e^{i1} ^ ... ^ e^{ik} with i1 < ... < ik is the canonical element
// it names. Every matrix in the library uses basis_enumerate() order for its
// rows and columns.

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace g2 {

using Rational = mpq_class;

inline constexpr int kMaxDim = 7;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class Blade {
 public:
  constexpr Blade() = default;
  constexpr explicit Blade(std::uint8_t mask) : mask_(mask) {}

  // Indices must be distinct and in 1..7; order is irrelevant.
  static Blade of(std::initializer_list<int> indices);
  static constexpr Blade single(int index) { return Blade(static_cast<std::uint8_t>(1u << (index - 1))); }
  static constexpr Blade top(int dim) { return Blade(static_cast<std::uint8_t>((1u << dim) - 1)); }

  constexpr std::uint8_t mask() const noexcept { return mask_; }
  constexpr int degree() const noexcept { return std::popcount(static_cast<unsigned>(mask_)); }
  constexpr bool contains(int index) const noexcept { return (mask_ >> (index - 1)) & 1u; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr int max_index() const noexcept { return std::bit_width(static_cast<unsigned>(mask_)); }

  constexpr Blade without(int index) const { return Blade(static_cast<std::uint8_t>(mask_ & ~(1u << (index - 1)))); }
  constexpr Blade complement(int dim) const { return Blade(static_cast<std::uint8_t>(top(dim).mask_ & ~mask_)); }

  // Ascending 1-based indices.
  std::vector<int> indices() const;

  friend constexpr auto operator<=>(Blade, Blade) = default;

 private:
  std::uint8_t mask_ = 0;
};

// Sign of e^A ^ e^B relative to e^{A u B}; 0 when A and B overlap.
constexpr int merge_sign(Blade a, Blade b) {
  if (a.mask() & b.mask()) return 0;
  unsigned crossings = 0;
  for (unsigned rest = b.mask(); rest != 0; rest &= rest - 1) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(rest));
    crossings += static_cast<unsigned>(std::popcount(static_cast<unsigned>(a.mask()) >> (low + 1)));
  }
  return (crossings & 1u) ? -1 : 1;
}

// Sign (-1)^(j-1) for removing e^index from slot j of the blade.
constexpr int removal_sign(Blade a, int index) {
  const unsigned below = static_cast<unsigned>(a.mask()) & ((1u << (index - 1)) - 1u);
  return (std::popcount(below) & 1) ? -1 : 1;
}

// All blades of the given degree in ascending-mask order.
std::vector<Blade> basis_enumerate(int dim, int degree);

// Position of a blade in basis_enumerate(dim, blade.degree()).
int basis_position(int dim, Blade blade);

long binomial(int n, int k);

template <class Scalar>
inline constexpr bool is_scalar_v = std::is_same_v<Scalar, Rational> || std::is_same_v<Scalar, double>;

template <class Scalar>
double to_double(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return s.get_d();
  } else {
    return s;
  }
}

template <class Scalar>
class Vector {
  static_assert(is_scalar_v<Scalar>);

 public:
  Vector() = default;
  explicit Vector(int dim) : c_(static_cast<std::size_t>(dim), Scalar(0)) {}
  Vector(std::initializer_list<Scalar> values) : c_(values) {}
  explicit Vector(std::vector<Scalar> values) : c_(std::move(values)) {}

  static Vector unit(int dim, int index) {
    Vector v(dim);
    v[index - 1] = Scalar(1);
    return v;
  }

  int dim() const noexcept { return static_cast<int>(c_.size()); }
  // 0-based component access; component i is the coefficient of e_{i+1}.
  Scalar& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const Scalar& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<Scalar>& components() const noexcept { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  double max_norm() const {
    double m = 0;
    for (const auto& x : c_) m = std::max(m, std::abs(to_double(x)));
    return m;
  }

  friend bool operator==(const Vector& a, const Vector& b) { return a.c_ == b.c_; }

 private:
  std::vector<Scalar> c_;
};

using RVector = Vector<Rational>;
using FVector = Vector<double>;

// A homogeneous alternating form of fixed degree on R^dim. Zero
// coefficients are never stored. The degree of the zero form is kept so that
// sums and comparisons stay type-checked.
template <class Scalar>
class KForm {
  static_assert(is_scalar_v<Scalar>);

 public:
  using Terms = std::map<Blade, Scalar>;

  KForm() = default;
  KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDim) throw DimensionError("form dimension must be in 0..7");
    if (degree < 0) throw DimensionError("negative form degree");
  }

  static KForm basis(int dim, Blade blade, Scalar coefficient = Scalar(1)) {
    KForm f(dim, blade.degree());
    f.add_term(blade, coefficient);
    return f;
  }

  static KForm scalar(int dim, Scalar value) {
    KForm f(dim, 0);
    f.add_term(Blade{}, value);
    return f;
  }

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(Blade blade) const {
    auto it = terms_.find(blade);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  // Accumulates c into the coefficient of the blade, dropping exact zeros.
  void add_term(Blade blade, const Scalar& c) {
    if (blade.degree() != degree_) throw DimensionError("blade degree does not match form degree");
    if (blade.max_index() > dim_) throw DimensionError("blade index exceeds form dimension");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(blade, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  double max_norm() const {
    double m = 0;
    for (const auto& [b, c] : terms_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  KForm& operator+=(const KForm& other) {
    check_compatible(other);
    for (const auto& [b, c] : other.terms_) add_term(b, c);
    return *this;
  }
  KForm& operator-=(const KForm& other) {
    check_compatible(other);
    for (const auto& [b, c] : other.terms_) add_term(b, Scalar(-c));
    return *this;
  }
  KForm& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [b, c] : terms_) c *= s;
    return *this;
  }

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(KForm a) { return a *= Scalar(-1); }
  friend KForm operator*(const Scalar& s, KForm a) { return a *= s; }
  friend KForm operator*(KForm a, const Scalar& s) { return a *= s; }

  friend bool operator==(const KForm& a, const KForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const KForm& other) const {
    if (other.dim_ != dim_) throw DimensionError("form dimension mismatch");
    if (other.degree_ != degree_) throw DimensionError("form degree mismatch");
  }

  int dim_ = 0;
  int degree_ = 0;
  Terms terms_;
};

using RForm = KForm<Rational>;
using FForm = KForm<double>;

template <class Scalar>
KForm<Scalar> add(const KForm<Scalar>& a, const KForm<Scalar>& b) {
  return a + b;
}

template <class Scalar>
KForm<Scalar> scale(const Scalar& c, const KForm<Scalar>& a) {
  return c * a;
}

template <class Scalar>
Scalar coefficient(const KForm<Scalar>& a, Blade blade) {
  return a.coefficient(blade);
}

template <class Scalar>
KForm<Scalar> wedge(const KForm<Scalar>& a, const KForm<Scalar>& b) {
  if (a.dim() != b.dim()) throw DimensionError("wedge: dimension mismatch");
  KForm<Scalar> out(a.dim(), a.degree() + b.degree());
  if (out.degree() > a.dim()) return out;
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      const int s = merge_sign(ba, bb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      if (s < 0) c = -c;
      out.add_term(Blade(static_cast<std::uint8_t>(ba.mask() | bb.mask())), c);
    }
  }
  return out;
}

template <class Scalar>
KForm<Scalar> interior(const Vector<Scalar>& x, const KForm<Scalar>& a) {
  if (x.dim() != a.dim()) throw DimensionError("interior: dimension mismatch");
  if (a.degree() == 0) throw DimensionError("interior: cannot contract a 0-form");
  KForm<Scalar> out(a.dim(), a.degree() - 1);
  for (const auto& [blade, c] : a.terms()) {
    for (int i : blade.indices()) {
      const Scalar& xi = x[i - 1];
      if (xi == 0) continue;
      Scalar term = xi * c;
      if (removal_sign(blade, i) < 0) term = -term;
      out.add_term(blade.without(i), term);
    }
  }
  return out;
}

// Explicit flavor conversion; there is no implicit path between flavors.
inline FForm to_float(const RForm& a) {
  FForm out(a.dim(), a.degree());
  for (const auto& [b, c] : a.terms()) out.add_term(b, c.get_d());
  return out;
}

inline FVector to_float(const RVector& v) {
  FVector out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = v[i].get_d();
  return out;
}

// Drops float coefficients with |c| < tol.
FForm normalize_float(const FForm& a, double tol = 1e-14);

// Linear substitution e^i -> sum_j m(i, j) e^j applied to every factor, i.e.
// the pullback along the linear map with matrix m. `m` is row-major dim x dim.
template <class Scalar>
KForm<Scalar> substitute(const KForm<Scalar>& a, const std::vector<Scalar>& m);

// Textual form grammar: signed terms `c e^{i1 i2 ...}` with an optional
// rational or decimal coefficient, e.g. "e^{12} + e^{34}", "-3/2 e^{135}".
// Indices are single digits; a missing coefficient means 1. When
// expected_degree is set, the result must have that degree (used for "0").
template <class Scalar>
KForm<Scalar> parse_form(std::string_view text, int dim, std::optional<int> expected_degree = std::nullopt);

template <class Scalar>
std::string to_string(const KForm<Scalar>& a);

std::string to_string(const Rational& r);
std::string to_string(double d);

template <class Scalar>
std::string to_string(const Vector<Scalar>& v);

}  // namespace g2
