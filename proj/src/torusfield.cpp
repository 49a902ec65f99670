#include "g2/torusfield.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace g2 {

namespace {

Point shifted(Point p, int axis, double delta) {
  p[static_cast<std::size_t>(axis)] += delta;
  return p;
}

Point numeric_gradient(const CoeffFn::Eval& f, const Point& p) {
  constexpr double h = 2e-3;
  Point g{};
  for (int i = 0; i < 7; ++i) {
    const double d1 = f(shifted(p, i, h)) - f(shifted(p, i, -h));
    const double d2 = f(shifted(p, i, 2 * h)) - f(shifted(p, i, -2 * h));
    const double d3 = f(shifted(p, i, 3 * h)) - f(shifted(p, i, -3 * h));
    g[static_cast<std::size_t>(i)] = (45 * d1 - 9 * d2 + d3) / (60 * h);
  }
  return g;
}

Point random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point p{};
  for (auto& x : p) x = u(rng);
  return p;
}

}  // namespace

CoeffFn::CoeffFn(Eval eval, Grad grad) : eval_(std::move(eval)), grad_(std::move(grad)) {}

CoeffFn CoeffFn::without_gradient(Eval eval) { return CoeffFn(std::move(eval), nullptr); }

CoeffFn CoeffFn::registered(Eval eval, Grad grad, std::uint64_t seed) {
  CoeffFn f(std::move(eval), std::move(grad));
  check_registration(f, seed);
  return f;
}

void check_registration(const CoeffFn& f, std::uint64_t seed) {
  if (!f.has_gradient()) throw RegistrationError("coefficient has no gradient");
  std::mt19937_64 rng(seed);
  constexpr double h = 1e-5;
  for (int n = 0; n < 100; ++n) {
    const Point p = random_point(rng);
    const Point g = f.gradient(p);
    for (int i = 0; i < 7; ++i) {
      const double fd = (f(shifted(p, i, h)) - f(shifted(p, i, -h))) / (2 * h);
      if (std::abs(fd - g[static_cast<std::size_t>(i)]) > 1e-6)
        throw RegistrationError("gradient disagrees with finite differences in coordinate " + std::to_string(i + 1));
      if (std::abs(f(shifted(p, i, 1.0)) - f(p)) > 1e-12)
        throw RegistrationError("coefficient is not 1-periodic in coordinate " + std::to_string(i + 1));
    }
  }
}

CoeffFn CoeffFn::constant(double c) {
  return CoeffFn([c](const Point&) { return c; }, [](const Point&) { return Point{}; });
}

CoeffFn CoeffFn::sine(int coord, double amplitude) {
  if (coord < 1 || coord > 7) throw std::invalid_argument("sine: coordinate out of range 1..7");
  const auto k = static_cast<std::size_t>(coord - 1);
  constexpr double w = 2 * std::numbers::pi;
  return CoeffFn([=](const Point& p) { return amplitude * std::sin(w * p[k]); },
                 [=](const Point& p) {
                   Point g{};
                   g[k] = amplitude * w * std::cos(w * p[k]);
                   return g;
                 });
}

CoeffFn CoeffFn::with_numeric_gradient(Eval eval) {
  auto grad = [eval](const Point& p) { return numeric_gradient(eval, p); };
  return CoeffFn(std::move(eval), std::move(grad));
}

Point CoeffFn::gradient(const Point& p) const {
  if (!grad_) throw MissingGradientError("coefficient function has no gradient");
  return grad_(p);
}

CoeffFn operator+(const CoeffFn& f, const CoeffFn& g) {
  CoeffFn::Grad grad;
  if (f.has_gradient() && g.has_gradient())
    grad = [f, g](const Point& p) {
      Point a = f.gradient(p);
      const Point b = g.gradient(p);
      for (std::size_t i = 0; i < 7; ++i) a[i] += b[i];
      return a;
    };
  return CoeffFn([f, g](const Point& p) { return f(p) + g(p); }, std::move(grad));
}

CoeffFn operator*(double s, const CoeffFn& f) {
  CoeffFn::Grad grad;
  if (f.has_gradient())
    grad = [s, f](const Point& p) {
      Point a = f.gradient(p);
      for (auto& x : a) x *= s;
      return a;
    };
  return CoeffFn([s, f](const Point& p) { return s * f(p); }, std::move(grad));
}

CoeffFn operator-(const CoeffFn& f, const CoeffFn& g) { return f + (-1.0) * g; }

CoeffFn exp(const CoeffFn& f) {
  CoeffFn::Grad grad;
  if (f.has_gradient())
    grad = [f](const Point& p) {
      const double e = std::exp(f(p));
      Point a = f.gradient(p);
      for (auto& x : a) x *= e;
      return a;
    };
  return CoeffFn([f](const Point& p) { return std::exp(f(p)); }, std::move(grad));
}

FieldForm::FieldForm(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1 || dim > 7) throw DimensionError("FieldForm: dimension must be in 1..7");
  if (degree < 0) throw DimensionError("FieldForm: negative degree");
}

void FieldForm::add_term(Blade blade, CoeffFn f) {
  if (blade.degree() != degree_) throw DimensionError("FieldForm: blade degree does not match");
  if (blade.max_index() > dim_) throw DimensionError("FieldForm: blade index exceeds dimension");
  auto it = terms_.find(blade);
  if (it == terms_.end())
    terms_.emplace(blade, std::move(f));
  else
    it->second = it->second + f;
}

FForm FieldForm::eval_at(const Point& p) const {
  FForm out(dim_, degree_);
  for (const auto& [b, f] : terms_) out.add_term(b, f(p));
  return out;
}

FieldForm field_d(const FieldForm& a) {
  for (const auto& [b, f] : a.terms())
    if (!f.has_gradient()) throw MissingGradientError("field_d: coefficient without gradient");
  FieldForm out(a.dim(), a.degree() + 1);
  if (out.degree() > a.dim()) return out;
  // Collect, per output blade, the (sign, coordinate, source coefficient)
  // contributions and combine them into one coefficient.
  struct Piece {
    int sign;
    std::size_t coord;
    CoeffFn f;
  };
  std::map<Blade, std::vector<Piece>> pieces;
  for (const auto& [blade, f] : a.terms()) {
    for (int i = 1; i <= a.dim(); ++i) {
      const Blade ei = Blade::single(i);
      const int s = merge_sign(ei, blade);
      if (s == 0) continue;
      pieces[Blade(static_cast<std::uint8_t>(blade.mask() | ei.mask()))].push_back({s, static_cast<std::size_t>(i - 1), f});
    }
  }
  for (auto& [blade, list] : pieces) {
    auto eval = [list](const Point& p) {
      double v = 0;
      for (const auto& piece : list) v += piece.sign * piece.f.gradient(p)[piece.coord];
      return v;
    };
    out.add_term(blade, CoeffFn::with_numeric_gradient(std::move(eval)));
  }
  return out;
}

FieldForm field_su3_lift(const FieldForm& omega, const FieldForm& psi) {
  if (omega.dim() != 6 || psi.dim() != 6) throw DimensionError("field_su3_lift: omega and psi must live on T^6");
  if (omega.degree() != 2 || psi.degree() != 3) throw DimensionError("field_su3_lift: expects a 2-form and a 3-form");
  FieldForm out(7, 3);
  for (const auto& [b, f] : omega.terms()) out.add_term(Blade(static_cast<std::uint8_t>(b.mask() | Blade::single(7).mask())), f);
  for (const auto& [b, f] : psi.terms()) out.add_term(b, f);
  return out;
}

FForm fd_d_of_derived(const FormSampler& sampler, const Point& p, double h) {
  const FForm centre = sampler(p);
  const int n = centre.dim();
  FForm out(n, centre.degree() + 1);
  if (out.degree() > n) return out;
  for (int i = 0; i < n; ++i) {
    FForm diff = sampler(shifted(p, i, h)) - sampler(shifted(p, i, -h));
    diff *= 1.0 / (2 * h);
    out += wedge(FForm::basis(n, Blade::single(i + 1)), diff);
  }
  return out;
}

namespace {

void require_single_variable(const CoeffFn& f, int coord, const char* name) {
  check_registration(f);
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const Point g = f.gradient(random_point(rng));
    for (int i = 0; i < 7; ++i)
      if (i != coord - 1 && std::abs(g[static_cast<std::size_t>(i)]) > 1e-12)
        throw RegistrationError(std::string(name) + " must depend only on x" + std::to_string(coord));
  }
}

}  // namespace

TorusExample build_torus_example(const CoeffFn& a, const CoeffFn& b, const CoeffFn& c) {
  require_single_variable(a, 1, "a");
  require_single_variable(b, 2, "b");
  require_single_variable(c, 3, "c");
  const CoeffFn l1 = b - c;
  const CoeffFn l2 = c - a;
  const CoeffFn l3 = a - b;

  FieldForm omega(6, 2);
  omega.add_term(Blade::of({1, 4}), 1.0);
  omega.add_term(Blade::of({2, 5}), 1.0);
  omega.add_term(Blade::of({3, 6}), 1.0);

  FieldForm psi(6, 3);
  psi.add_term(Blade::of({1, 2, 6}), -1.0 * exp(l3));
  psi.add_term(Blade::of({1, 3, 5}), exp(l2));
  psi.add_term(Blade::of({2, 3, 4}), -1.0 * exp(l1));
  psi.add_term(Blade::of({4, 5, 6}), 1.0);

  FieldForm phi = field_su3_lift(omega, psi);
  return {std::move(omega), std::move(psi), std::move(phi)};
}

std::vector<Point> torus_grid(int grid) {
  if (grid < 1) throw std::invalid_argument("grid must be >= 1");
  std::vector<Point> out;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k)
        out.push_back(Point{static_cast<double>(i) / grid, static_cast<double>(j) / grid, static_cast<double>(k) / grid, 0, 0, 0, 0});
  return out;
}

int coordinate_symmetry_count(const FieldForm& phi, int grid) {
  std::array<double, 7> worst{};
  for (const Point& p : torus_grid(grid))
    for (const auto& [b, f] : phi.terms()) {
      const Point g = f.gradient(p);
      for (std::size_t i = 0; i < 7; ++i) worst[i] = std::max(worst[i], std::abs(g[i]));
    }
  int count = 0;
  for (int i = 0; i < phi.dim(); ++i)
    if (worst[static_cast<std::size_t>(i)] < kClosedTol) ++count;
  return count;
}

void to_json(nlohmann::json& j, const TorusReport& r) {
  j = nlohmann::json{{"amplitudes", {r.amp_a, r.amp_b, r.amp_c}},
                     {"grid", r.grid},
                     {"h", r.h},
                     {"closed_residual", r.closed_residual},
                     {"nonparallel_witness", r.nonparallel_witness},
                     {"symmetry_count", r.symmetry_count},
                     {"positive_everywhere", r.positive_everywhere},
                     {"closed", r.closed},
                     {"parallel", r.parallel},
                     {"symmetry_count_note", "coordinate translations only; a lower bound for the torus rank"}};
}

TorusReport run_torus_example(double amp_a, double amp_b, double amp_c, int grid, double h) {
  if (amp_a < 0 || amp_b < 0 || amp_c < 0) throw std::invalid_argument("amplitudes must be nonnegative");
  const TorusExample ex = build_torus_example(CoeffFn::sine(1, amp_a), CoeffFn::sine(2, amp_b), CoeffFn::sine(3, amp_c));
  TorusReport r;
  r.amp_a = amp_a;
  r.amp_b = amp_b;
  r.amp_c = amp_c;
  r.grid = grid;
  r.h = h;
  const FieldForm dphi = field_d(ex.phi);
  const FormSampler star_phi = [&ex](const Point& p) { return hodge_star(G2Structure::from_phi(ex.phi.eval_at(p)), ex.phi.eval_at(p)); };
  r.positive_everywhere = true;
  for (const Point& p : torus_grid(grid)) {
    r.closed_residual = std::max(r.closed_residual, dphi.eval_at(p).max_norm());
    try {
      r.nonparallel_witness = std::max(r.nonparallel_witness, fd_d_of_derived(star_phi, p, h).max_norm());
    } catch (const std::domain_error&) {
      r.positive_everywhere = false;
    }
  }
  r.symmetry_count = coordinate_symmetry_count(ex.phi, grid);
  r.closed = r.closed_residual < kClosedTol;
  r.parallel = r.closed && r.nonparallel_witness <= kNonParallelThreshold;
  return r;
}

}  // namespace g2
