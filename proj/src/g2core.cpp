#include "g2/g2core.hpp"

#include <array>
#include <cmath>

namespace g2 {

namespace {

constexpr int kDim = 7;

// Every way of splitting e^{1..7} into an ordered (2-blade, 2-blade, 3-blade)
// triple, with the sign of the reordering. 21 * 10 = 210 entries.
struct TripleTerm {
  int p, q, r;  // positions in basis_enumerate order
  int sign;
};

const std::vector<TripleTerm>& triple_table() {
  static const std::vector<TripleTerm> table = [] {
    std::vector<TripleTerm> t;
    const auto two = basis_enumerate(kDim, 2);
    for (Blade p : two) {
      for (Blade q : two) {
        const int s1 = merge_sign(p, q);
        if (s1 == 0) continue;
        const Blade pq(static_cast<std::uint8_t>(p.mask() | q.mask()));
        const Blade r = pq.complement(kDim);
        const int s2 = merge_sign(pq, r);
        t.push_back({basis_position(kDim, p), basis_position(kDim, q), basis_position(kDim, r), s1 * s2});
      }
    }
    return t;
  }();
  return table;
}

// iota_{e_i} as a map from dense 3-form coefficients to dense 2-form ones.
struct Contraction {
  int from, to, sign;
};

const std::array<std::vector<Contraction>, kDim>& contraction_table() {
  static const auto table = [] {
    std::array<std::vector<Contraction>, kDim> t;
    const auto three = basis_enumerate(kDim, 3);
    for (std::size_t k = 0; k < three.size(); ++k)
      for (int i : three[k].indices())
        t[static_cast<std::size_t>(i - 1)].push_back(
            {static_cast<int>(k), basis_position(kDim, three[k].without(i)), removal_sign(three[k], i)});
    return t;
  }();
  return table;
}

Matrix7 raw_bilinear(const FForm& phi) {
  std::array<double, 35> dense{};
  for (const auto& [b, c] : phi.terms()) dense[static_cast<std::size_t>(basis_position(kDim, b))] = c;
  std::array<std::array<double, 21>, kDim> contracted{};
  const auto& ct = contraction_table();
  for (int i = 0; i < kDim; ++i)
    for (const auto& c : ct[static_cast<std::size_t>(i)])
      contracted[static_cast<std::size_t>(i)][static_cast<std::size_t>(c.to)] += c.sign * dense[static_cast<std::size_t>(c.from)];
  Matrix7 B = Matrix7::Zero();
  const auto& tt = triple_table();
  for (int i = 0; i < kDim; ++i) {
    const auto& ai = contracted[static_cast<std::size_t>(i)];
    for (int j = i; j < kDim; ++j) {
      const auto& aj = contracted[static_cast<std::size_t>(j)];
      double s = 0;
      for (const auto& t : tt)
        s += t.sign * ai[static_cast<std::size_t>(t.p)] * aj[static_cast<std::size_t>(t.q)] * dense[static_cast<std::size_t>(t.r)];
      B(i, j) = B(j, i) = s / 6.0;
    }
  }
  return B;
}

void check_phi_shape(const FForm& phi) {
  if (phi.dim() != kDim) throw DimensionError("G2 3-form must live on R^7");
  if (phi.degree() != 3) throw DimensionError("G2 form must have degree 3");
}

FForm flat_star(const FForm& a, int orientation) {
  FForm out(kDim, kDim - a.degree());
  for (const auto& [b, c] : a.terms()) {
    const Blade comp = b.complement(kDim);
    out.add_term(comp, orientation * merge_sign(b, comp) * c);
  }
  return out;
}

double minor(const Matrix7& m, Blade rows, Blade cols) {
  const auto ri = rows.indices();
  const auto ci = cols.indices();
  const auto k = static_cast<Eigen::Index>(ri.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = m(ri[static_cast<std::size_t>(r)] - 1, ci[static_cast<std::size_t>(c)] - 1);
  return sub.determinant();
}

}  // namespace

BilinearForm bilinear_from_phi(const FForm& phi) {
  check_phi_shape(phi);
  const Matrix7 raw = raw_bilinear(phi);
  const double scale = raw.cwiseAbs().maxCoeff();
  const double det = raw.determinant();
  if (scale == 0.0 || std::abs(det) <= 1e-12 * std::pow(scale, kDim))
    throw DegenerateFormError("degenerate 3-form: the induced bilinear form is singular");
  BilinearForm out;
  out.orientation = det > 0 ? 1 : -1;
  out.B = out.orientation * raw;
  return out;
}

double positivity_margin(const Matrix7& B) {
  Eigen::SelfAdjointEigenSolver<Matrix7> es(B, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  if (largest == 0.0) return 0.0;
  return ev.minCoeff() / largest;
}

G2Structure G2Structure::from_phi(const FForm& phi) {
  const BilinearForm bf = bilinear_from_phi(phi);
  if (positivity_margin(bf.B) <= kPositivityMargin)
    throw NotPositiveError("3-form not positive: induced bilinear form is indefinite");
  G2Structure s;
  s.phi_ = phi;
  s.B_ = bf.B;
  s.orientation_ = bf.orientation;
  s.lambda_ = std::pow(bf.B.determinant(), 1.0 / 9.0);
  s.g_ = bf.B / s.lambda_;
  s.g_inv_ = s.g_.inverse();
  const Eigen::LLT<Matrix7> llt(s.g_);
  const Matrix7 Q = llt.matrixU();  // g = Q^T Q
  const Matrix7 P = Q.inverse();
  s.P_.resize(kDim * kDim);
  s.Q_.resize(kDim * kDim);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      s.P_[static_cast<std::size_t>(i * kDim + j)] = P(i, j);
      s.Q_[static_cast<std::size_t>(i * kDim + j)] = Q(i, j);
    }
  return s;
}

FForm G2Structure::volume_form() const { return FForm::basis(kDim, Blade::top(kDim), orientation_ * lambda_); }

double G2Structure::inner(const FForm& a, const FForm& b) const {
  if (a.dim() != kDim || b.dim() != kDim) throw DimensionError("inner: forms must live on R^7");
  if (a.degree() != b.degree()) throw DimensionError("inner: degree mismatch");
  double s = 0;
  for (const auto& [ba, ca] : a.terms())
    for (const auto& [bb, cb] : b.terms()) s += ca * cb * minor(g_inv_, ba, bb);
  return s;
}

double G2Structure::metric(const FVector& x, const FVector& y) const {
  if (x.dim() != kDim || y.dim() != kDim) throw DimensionError("metric: vectors must live on R^7");
  Eigen::Map<const Eigen::Matrix<double, 7, 1>> xv(x.components().data());
  Eigen::Map<const Eigen::Matrix<double, 7, 1>> yv(y.components().data());
  return xv.dot(g_ * yv);
}

FForm hodge_star(const G2Structure& g2, const FForm& a) {
  if (a.dim() != kDim) throw DimensionError("hodge_star: form must live on R^7");
  // e^i = sum_a P(i, a) theta^a, theta^{1..7} = lambda e^{1..7}, so
  // dV = orientation * theta^{1..7}.
  const FForm in_frame = substitute(a, g2.frame_P());
  return substitute(flat_star(in_frame, g2.orientation()), g2.frame_Q());
}

FForm hodge_star_by_minors(const G2Structure& g2, const FForm& a) {
  if (a.dim() != kDim) throw DimensionError("hodge_star: form must live on R^7");
  FForm out(kDim, kDim - a.degree());
  const double vol = g2.orientation() * g2.vol_coeff();
  for (Blade b : basis_enumerate(kDim, a.degree())) {
    double s = 0;
    for (const auto& [ba, ca] : a.terms()) s += ca * minor(g2.inverse_metric(), b, ba);
    if (s == 0.0) continue;
    const Blade comp = b.complement(kDim);
    out.add_term(comp, merge_sign(b, comp) * vol * s);
  }
  return out;
}

void to_json(nlohmann::json& j, const TorsionReport& r) {
  j = nlohmann::json{{"closed", r.closed},
                     {"coclosed", r.coclosed},
                     {"parallel", r.parallel},
                     {"residuals", {{"d_phi", r.d_phi_norm}, {"d_star_phi", r.d_star_phi_norm}}}};
}

TorsionReport torsion_report(const LieAlgebra& algebra, const FForm& phi) {
  if (algebra.dim() != kDim) throw DimensionError("torsion_report: algebra must be 7-dimensional");
  const G2Structure g2 = G2Structure::from_phi(phi);
  const FForm star_phi = hodge_star(g2, phi);
  TorsionReport r;
  r.d_phi_norm = ce_d(algebra, phi).max_norm();
  r.d_star_phi_norm = ce_d(algebra, star_phi).max_norm();
  r.closed = r.d_phi_norm < kTorsionRelTol * phi.max_norm();
  r.coclosed = r.d_star_phi_norm < kTorsionRelTol * star_phi.max_norm();
  r.parallel = r.closed && r.coclosed;
  return r;
}

double karigiannis_identity_residual(const G2Structure& g2, const FVector& x) {
  const FForm w = interior(x, g2.phi());
  return (wedge(w, g2.phi()) + 2.0 * hodge_star(g2, w)).max_norm();
}

double contraction_identity_residual(const G2Structure& g2, const FVector& x) {
  const FForm w = interior(x, g2.phi());
  return (wedge(w, g2.phi()) - 2.0 * hodge_star(g2, w)).max_norm();
}

void to_json(nlohmann::json& j, const G2Structure& g2) {
  auto matrix = [](const Matrix7& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < kDim; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < kDim; ++k) row.push_back(m(i, k));
      rows.push_back(row);
    }
    return rows;
  };
  j = nlohmann::json{{"phi", to_string(g2.phi())},
                     {"metric", matrix(g2.metric())},
                     {"vol_coeff", g2.vol_coeff()},
                     {"orientation", g2.orientation()}};
}

}  // namespace g2
