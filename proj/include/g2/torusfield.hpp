#pragma once

// Forms with function coefficients on the torus R^7 / Z^7 (T^6 x S^1), and
// the closed G2-structure obtained by lifting the symplectic half-flat pair
//     omega = e^{14} + e^{25} + e^{36}
//     psi   = -exp(l3) e^{126} + exp(l2) e^{135} - exp(l1) e^{234} + e^{456}
// with l1 = b(x2) - c(x3), l2 = c(x3) - a(x1), l3 = a(x1) - b(x2).

#include "g2/exterior.hpp"
#include "g2/g2core.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>

namespace g2 {

using Point = std::array<double, 7>;

class RegistrationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingGradientError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A smooth 1-periodic function on R^7 with its gradient. Coefficients built
// by field_d carry a numerical gradient (sixth-order central differences of
// the exact first derivatives) so that d can be applied again.
class CoeffFn {
 public:
  using Eval = std::function<double(const Point&)>;
  using Grad = std::function<Point(const Point&)>;

  // No consistency checks; see registered().
  CoeffFn(Eval eval, Grad grad);
  static CoeffFn without_gradient(Eval eval);

  // Checks the gradient against central differences (h = 1e-5, tolerance
  // 1e-6) and periodicity (1e-12) at 100 seeded random points.
  static CoeffFn registered(Eval eval, Grad grad, std::uint64_t seed = 0);

  static CoeffFn constant(double c);
  // amplitude * sin(2 pi x^coord), coord 1-based.
  static CoeffFn sine(int coord, double amplitude);
  // Numerical gradient by sixth-order central differences, h = 2e-3.
  static CoeffFn with_numeric_gradient(Eval eval);

  double operator()(const Point& p) const { return eval_(p); }
  bool has_gradient() const noexcept { return static_cast<bool>(grad_); }
  Point gradient(const Point& p) const;

  friend CoeffFn operator+(const CoeffFn& f, const CoeffFn& g);
  friend CoeffFn operator-(const CoeffFn& f, const CoeffFn& g);
  friend CoeffFn operator*(double s, const CoeffFn& f);

 private:
  Eval eval_;
  Grad grad_;
};

CoeffFn exp(const CoeffFn& f);

// Throws RegistrationError when the checks of CoeffFn::registered fail.
void check_registration(const CoeffFn& f, std::uint64_t seed = 0);

class FieldForm {
 public:
  FieldForm(int dim, int degree);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const std::map<Blade, CoeffFn>& terms() const noexcept { return terms_; }

  // Sums with an existing coefficient on the same blade.
  void add_term(Blade blade, CoeffFn f);
  void add_term(Blade blade, double c) { add_term(blade, CoeffFn::constant(c)); }

  FForm eval_at(const Point& p) const;

 private:
  int dim_;
  int degree_;
  std::map<Blade, CoeffFn> terms_;
};

// d(f e^I) = sum_i (d_i f) e^i ^ e^I. Throws MissingGradientError.
FieldForm field_d(const FieldForm& a);

// omega ^ e^7 + psi for 6-dimensional field forms.
FieldForm field_su3_lift(const FieldForm& omega, const FieldForm& psi);

using FormSampler = std::function<FForm(const Point&)>;

// d of a pointwise-defined form by central differences in every coordinate.
FForm fd_d_of_derived(const FormSampler& sampler, const Point& p, double h = 1e-5);

struct TorusExample {
  FieldForm omega;
  FieldForm psi;
  FieldForm phi;
};

// a, b, c must depend only on x1, x2, x3 respectively and be 1-periodic.
TorusExample build_torus_example(const CoeffFn& a, const CoeffFn& b, const CoeffFn& c);

// Grid over (x1, x2, x3) with `grid` points per axis; x4..x7 held at 0.
std::vector<Point> torus_grid(int grid);

// Number of coordinate fields d_i with |L_{d_i} phi| < 1e-8 at every grid
// point, where L_{d_i} acts coefficientwise as d_i. A lower bound for the
// rank of the torus acting by coordinate translations.
int coordinate_symmetry_count(const FieldForm& phi, int grid = 8);

inline constexpr double kClosedTol = 1e-8;
inline constexpr double kNonParallelThreshold = 1e-3;

struct TorusReport {
  double amp_a = 0, amp_b = 0, amp_c = 0;
  int grid = 8;
  double h = 1e-5;
  double closed_residual = 0;      // max |d phi| over the grid
  double nonparallel_witness = 0;  // max |d * phi| over the grid, by differences
  int symmetry_count = 0;
  bool positive_everywhere = false;
  bool closed = false;
  bool parallel = false;
};

void to_json(nlohmann::json& j, const TorusReport& r);

// The example with a = amp_a sin(2 pi x1), b = amp_b sin(2 pi x2),
// c = amp_c sin(2 pi x3).
TorusReport run_torus_example(double amp_a, double amp_b, double amp_c, int grid = 8, double h = 1e-5);

}  // namespace g2
