// acceptance: one PASS/FAIL line per acceptance criterion.
//
// Each check is computed from scratch with the library's public API; numbers
// behind every verdict are printed so a failing line can be diagnosed from
// the log alone. Exit status is the number of failed criteria.

#include "g2/cli.hpp"
#include "g2/g2core.hpp"
#include "g2/liealg.hpp"
#include "g2/symmetry.hpp"
#include "g2/torusfield.hpp"

#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace g2;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

const char* kTableRows[] = {"row1", "row2", "row3", "row4"};

// 1. b2 of the four nilpotent algebras, exact, < 5 s.
Verdict table1() {
  Verdict v;
  const auto start = Clock::now();
  const cli::Report r = cli::cmd_table1();
  const double t = seconds_since(start);
  const int expected[] = {3, 3, 5, 6};
  for (int i = 0; i < 4; ++i) {
    const int b2 = r.outputs["rows"][i]["b2"].get<int>();
    v.require(b2 == expected[i], std::string(kTableRows[i]) + " b2=" + std::to_string(b2));
  }
  v.require(t < 5.0, "runtime " + fmt("%.3f s", t));
  return v;
}

// 2. g(phi0) = I, vol = 1 within 1e-12; g(c phi0) = c^{2/3} I within 1e-9
// relative. The bilinear form is also checked against the dense oracle.
Verdict convention_pin() {
  Verdict v;
  const FForm phi0 = standard_phi<double>();
  const G2Structure g = metric_from_phi(phi0);
  const double err = (g.metric() - Matrix7::Identity()).cwiseAbs().maxCoeff();
  v.require(err < 1e-12, "|g(phi0) - I| = " + fmt("%.2e", err));
  v.require(std::abs(g.vol_coeff() - 1) < 1e-12, "vol_coeff = " + fmt("%.15g", g.vol_coeff()));
  const double oracle = (test::naive_bilinear(phi0) - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff();
  v.require(oracle < 1e-12, "49-triple oracle |B - I| = " + fmt("%.2e", oracle));
  double worst = 0;
  for (double c : {0.1, 0.5, 2.0, 3.0, 7.5}) {
    const double expected = std::pow(c, 2.0 / 3.0);
    const double rel = (metric_from_phi(c * phi0).metric() - expected * Matrix7::Identity()).cwiseAbs().maxCoeff() / expected;
    worst = std::max(worst, rel);
  }
  v.require(worst < 1e-9, "scaling rel err " + fmt("%.2e", worst));
  return v;
}

// 3. |iota_X phi ^ phi + 2 *(iota_X phi)| < 1e-9 |X| |phi|^2, 100 X over 10
// random positive phi.
Verdict karigiannis() {
  Verdict v;
  std::mt19937_64 rng = test::make_rng(3);
  double worst = 0, worst_opposite = 0;
  int failures = 0;
  for (int i = 0; i < 10; ++i) {
    const FForm phi = test::random_positive_phi(rng);
    const G2Structure g = metric_from_phi(phi);
    for (int k = 0; k < 100; ++k) {
      const FVector x = test::random_fvector(rng, 7);
      const double scale = x.max_norm() * phi.max_norm() * phi.max_norm();
      const double r = karigiannis_identity_residual(g, x) / scale;
      worst = std::max(worst, r);
      worst_opposite = std::max(worst_opposite, contraction_identity_residual(g, x) / scale);
      if (r >= 1e-9) ++failures;
    }
  }
  v.require(failures == 0, std::to_string(failures) + "/1000 above tolerance, max rel residual " + fmt("%.3e", worst));
  v.detail += "; with -2 replaced by +2 the max rel residual is " + fmt("%.2e", worst_opposite);
  return v;
}

// 4 and 5 share the witnesses.
struct Witness {
  std::string name;
  SearchResult search;
  double seconds = 0;
};

std::vector<Witness> search_all() {
  std::vector<Witness> out;
  for (const char* name : kTableRows) {
    const auto start = Clock::now();
    Witness w{name, find_closed_g2(builtin_algebra(name), 0, 100000), 0};
    w.seconds = seconds_since(start);
    out.push_back(std::move(w));
  }
  return out;
}

// 4. For every X in s(phi): |d(iota_X phi)| < 1e-9, |d *(iota_X phi)| < 1e-8.
Verdict harmonicity(const std::vector<Witness>& witnesses) {
  Verdict v;
  for (const auto& w : witnesses) {
    if (!w.search.phi) {
      v.require(false, w.name + " no witness");
      continue;
    }
    const LieAlgebra a = builtin_algebra(w.name);
    const FForm phi = to_float(*w.search.phi);
    const G2Structure g = metric_from_phi(phi);
    const auto s = symmetry_algebra(a, *w.search.phi);
    double d_iota = 0, d_star = 0;
    for (const auto& x : s.basis) {
      const FForm iota = interior(to_float(x), phi);
      d_iota = std::max(d_iota, ce_d(a, iota).max_norm());
      d_star = std::max(d_star, ce_d(a, hodge_star(g, iota)).max_norm());
    }
    v.require(d_iota < 1e-9 && d_star < 1e-8, w.name + " dim s=" + std::to_string(s.dim()) + " |d iota|=" + fmt("%.1e", d_iota) +
                                                 " |d*iota|=" + fmt("%.1e", d_star));
  }
  return v;
}

// 5. Search succeeds with seed 0 and <= 1e5 attempts; verify reports
// abelian, dim_s <= min(6, b2), F injective; < 60 s per algebra.
Verdict theorem_instances(const std::vector<Witness>& witnesses) {
  Verdict v;
  for (const auto& w : witnesses) {
    if (!w.search.phi) {
      v.require(false, w.name + " NotFound after 100000 attempts");
      continue;
    }
    const auto start = Clock::now();
    const VerificationReport r = verify_theorem_bounds(builtin_algebra(w.name), *w.search.phi);
    const double t = w.seconds + seconds_since(start);
    const bool ok = r.abelian && r.dim_s <= std::min(6, r.b2) && r.F_injective && t < 60.0;
    v.require(ok, w.name + " attempts=" + std::to_string(w.search.attempts_used) + " dim_s=" + std::to_string(r.dim_s) +
                      " b2=" + std::to_string(r.b2) + " abelian=" + (r.abelian ? "1" : "0") +
                      " F_inj=" + (r.F_injective ? "1" : "0") + " " + fmt("%.2f s", t));
  }
  return v;
}

// 6. Torus pipeline counts and thresholds for all vanishing patterns.
Verdict torus() {
  Verdict v;
  struct Case {
    double a, b, c;
    int count;
    bool parallel;
  };
  const Case cases[] = {{1, 1, 1, 4, false}, {0, 1, 1, 5, false}, {1, 0, 1, 5, false}, {1, 1, 0, 5, false},
                        {1, 0, 0, 6, false}, {0, 1, 0, 6, false}, {0, 0, 1, 6, false}, {0, 0, 0, 7, true}};
  for (const auto& c : cases) {
    const TorusReport r = run_torus_example(c.a, c.b, c.c);
    bool ok = r.closed_residual < 1e-8 && r.symmetry_count == c.count && r.parallel == c.parallel;
    if (!c.parallel) ok = ok && r.nonparallel_witness > 1e-3;
    char label[64];
    std::snprintf(label, sizeof label, "(%g,%g,%g)", c.a, c.b, c.c);
    v.require(ok, std::string(label) + " count=" + std::to_string(r.symmetry_count) + " closed=" + fmt("%.1e", r.closed_residual) +
                      " witness=" + fmt("%.2e", r.nonparallel_witness));
  }
  return v;
}

// 7. d^2 = 0 exactly, ** = id within 1e-9, Poincare duality, iota
// antiderivation on 1000 random cases.
Verdict structural() {
  Verdict v;
  std::vector<LieAlgebra> algebras;
  for (const auto& name : builtin_algebra_names()) algebras.push_back(builtin_algebra(name));
  algebras.push_back(parse_salamon("(0,0,e^{12})"));
  algebras.push_back(parse_salamon("(0,e^{12})"));
  int dd_failures = 0;
  for (const auto& a : algebras)
    for (int k = 0; k <= a.dim(); ++k)
      for (Blade b : basis_enumerate(a.dim(), k))
        if (!ce_d(a, ce_d(a, RForm::basis(a.dim(), b))).is_zero()) ++dd_failures;
  v.require(dd_failures == 0, "d^2 failures " + std::to_string(dd_failures));

  std::mt19937_64 rng = test::make_rng(7);
  double star_err = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const G2Structure g = metric_from_phi(test::random_positive_phi(rng));
    for (int k = 0; k <= 7; ++k) {
      const FForm a = test::random_fform(rng, 7, k);
      star_err = std::max(star_err, (hodge_star(g, hodge_star(g, a)) - a).max_norm() / std::max(1.0, a.max_norm()));
    }
  }
  v.require(star_err < 1e-9, "|**a - a| " + fmt("%.1e", star_err));

  bool duality = true;
  for (const char* name : kTableRows) {
    const BettiVector b = betti(builtin_algebra(name));
    for (int k = 0; k <= 7; ++k) duality = duality && b[k] == b[7 - k];
  }
  v.require(duality, "Poincare duality");

  int anti_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = test::uniform_int(rng, 1, 4);
    const RForm a = test::random_rform(rng, 7, p), b = test::random_rform(rng, 7, test::uniform_int(rng, 1, 3));
    const RVector x = test::random_rvector(rng, 7);
    RForm rhs = wedge(interior(x, a), b);
    const RForm second = wedge(a, interior(x, b));
    rhs += p % 2 ? -second : second;
    if (interior(x, wedge(a, b)) != rhs) ++anti_failures;
  }
  v.require(anti_failures == 0, "antiderivation failures " + std::to_string(anti_failures) + "/1000");
  return v;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  int failed = 0;
  auto report = [&](int id, const char* title, const std::function<Verdict()>& check) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("[%s] %d. %s (%.2f s): %s\n", v.pass ? "PASS" : "FAIL", id, title, seconds_since(t0), v.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "Table 1 second Betti numbers", table1);
  report(2, "metric convention pin", convention_pin);
  report(3, "contraction identity with -2 sign", karigiannis);
  std::vector<Witness> witnesses;
  report(5, "theorem instance check", [&] {
    witnesses = search_all();
    return theorem_instances(witnesses);
  });
  report(4, "harmonicity chain", [&] { return harmonicity(witnesses); });
  report(6, "torus pipeline", torus);
  report(7, "structural suites", structural);

  std::printf("%d of 7 criteria failed; total %.2f s\n", failed, seconds_since(start));
  return failed;
}
