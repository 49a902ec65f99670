#include "g2/cli.hpp"

#include "g2/g2core.hpp"
#include "g2/symmetry.hpp"
#include "g2/torusfield.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace g2::cli {

namespace {

struct Table1Row {
  const char* name;
  int expected_b2;
};

constexpr Table1Row kTable1[] = {{"row1", 3}, {"row2", 3}, {"row3", 5}, {"row4", 6}};

template <class F>
Report guarded(Report report, F&& body) {
  try {
    body(report);
  } catch (const std::exception& e) {
    report.status = "error";
    report.message = e.what();
    report.exit_code = kError;
    report.outputs = nlohmann::json::object();
  }
  return report;
}

nlohmann::json matrix_json(const Matrix7& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 7; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < 7; ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

void render(std::ostringstream& out, const nlohmann::json& j, const std::string& indent) {
  for (const auto& [key, value] : j.items()) {
    const bool nested_object = value.is_object() && !value.empty();
    const bool object_list = value.is_array() && !value.empty() &&
                             std::all_of(value.begin(), value.end(), [](const auto& v) { return v.is_object(); });
    if (nested_object) {
      out << indent << key << ":\n";
      render(out, value, indent + "  ");
    } else if (object_list) {
      out << indent << key << ":\n";
      for (const auto& item : value) {
        out << indent << "  -\n";
        render(out, item, indent + "    ");
      }
    } else if (value.is_string()) {
      out << indent << key << ": " << value.get<std::string>() << "\n";
    } else {
      out << indent << key << ": " << value.dump() << "\n";
    }
  }
}

}  // namespace

nlohmann::json Report::to_json() const {
  nlohmann::json j{{"command", command}, {"inputs", inputs}, {"outputs", outputs}, {"status", status}, {"exit_code", exit_code}};
  if (!message.empty()) j["message"] = message;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  out << "status: " << status << "\n";
  if (!message.empty()) out << "message: " << message << "\n";
  if (!inputs.empty()) {
    out << "inputs:\n";
    render(out, inputs, "  ");
  }
  if (command == "table1" && outputs.contains("rows")) {
    out << "outputs:\n";
    out << "  algebra  b2  expected  result  tuple\n";
    for (const auto& row : outputs["rows"])
      out << "  " << row["algebra"].get<std::string>() << "     " << row["b2"].dump() << "   " << row["expected_b2"].dump()
          << "         " << row["result"].get<std::string>() << "    " << row["tuple"].get<std::string>() << "\n";
    out << "  all_pass: " << outputs["all_pass"].dump() << "\n";
    out << "  seconds: " << outputs["seconds"].dump() << "\n";
  } else if (!outputs.empty()) {
    out << "outputs:\n";
    render(out, outputs, "  ");
  }
  return out.str();
}

std::vector<NamedAlgebra> resolve_algebras(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty algebra specification");
  std::string name = spec;
  if (!name.empty() && name.front() == '@') name.erase(0, 1);
  const auto builtins = builtin_algebra_names();
  if (std::find(builtins.begin(), builtins.end(), name) != builtins.end()) return {{name, builtin_algebra(name)}};
  if (spec.front() == '@') throw std::invalid_argument("unknown built-in algebra '" + spec + "'");
  if (spec.find('(') != std::string::npos) return {{"tuple", parse_salamon(spec, "tuple")}};

  std::string path = spec;
  std::string select;
  if (const auto hash = spec.rfind('#'); hash != std::string::npos) {
    path = spec.substr(0, hash);
    select = spec.substr(hash + 1);
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open algebra file '" + path + "'");
  auto all = load_algebras(in);
  if (select.empty()) return all;
  for (auto& a : all)
    if (a.name == select) return {a};
  throw std::invalid_argument("no algebra named '" + select + "' in " + path);
}

LieAlgebra resolve_algebra(const std::string& spec) {
  auto all = resolve_algebras(spec);
  if (all.size() != 1) throw std::invalid_argument("'" + spec + "' names " + std::to_string(all.size()) + " algebras; select one with #name");
  return all.front().algebra;
}

RForm resolve_phi(const std::string& spec) {
  if (spec == "@phi0") return standard_phi<Rational>();
  return parse_form<Rational>(spec, 7, 3);
}

Report cmd_algebra(const std::string& subcommand, const std::string& input) {
  Report report;
  report.command = "algebra " + subcommand;
  report.inputs = {{"input", input}};
  return guarded(std::move(report), [&](Report& r) {
    if (subcommand != "check" && subcommand != "betti") throw std::invalid_argument("unknown algebra subcommand '" + subcommand + "'");
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [name, algebra] : resolve_algebras(input)) {
      nlohmann::json entry{{"name", name}, {"dim", algebra.dim()}, {"tuple", to_salamon(algebra)}};
      if (subcommand == "check") {
        entry["jacobi"] = true;
        entry["unimodular"] = is_unimodular(algebra);
        entry["nilpotent"] = is_nilpotent(algebra);
      } else {
        const BettiVector b = betti(algebra);
        entry["betti"] = b.b;
        if (algebra.dim() >= 2) entry["b2"] = b[2];
      }
      list.push_back(std::move(entry));
    }
    r.outputs["algebras"] = std::move(list);
  });
}

Report cmd_g2(const std::string& subcommand, const G2Options& options) {
  Report report;
  report.command = "g2 " + subcommand;
  report.inputs = {{"algebra", options.algebra}, {"seed", options.seed}, {"attempts", options.attempts}};
  report.inputs["phi"] = options.phi ? nlohmann::json(*options.phi) : nlohmann::json(nullptr);
  return guarded(std::move(report), [&](Report& r) {
    const LieAlgebra algebra = resolve_algebra(options.algebra);
    auto require_phi = [&] {
      if (!options.phi) throw std::invalid_argument("g2 " + subcommand + " needs --phi");
      return resolve_phi(*options.phi);
    };
    if (subcommand == "metric") {
      const RForm phi = require_phi();
      const G2Structure g2 = G2Structure::from_phi(to_float(phi));
      r.outputs = g2;
      r.outputs["bilinear"] = matrix_json(g2.bilinear());
      r.outputs["det_metric"] = g2.metric().determinant();
    } else if (subcommand == "torsion") {
      r.outputs = torsion_report(algebra, to_float(require_phi()));
    } else if (subcommand == "symmetry") {
      const RForm phi = require_phi();
      const auto s = symmetry_algebra(algebra, phi);
      nlohmann::json basis = nlohmann::json::array();
      nlohmann::json images = nlohmann::json::array();
      for (std::size_t i = 0; i < s.basis.size(); ++i) {
        basis.push_back(to_string(s.basis[i]));
        images.push_back(to_string(s.harmonic_images[i]));
      }
      r.outputs = {{"dim", s.dim()}, {"abelian", s.abelian}, {"basis", basis}, {"harmonic_images", images}};
    } else if (subcommand == "find-closed" || subcommand == "verify") {
      RForm phi;
      if (options.phi && subcommand == "verify") {
        phi = resolve_phi(*options.phi);
      } else {
        const SearchResult found = find_closed_g2(algebra, options.seed, options.attempts);
        r.outputs["search"] = found;
        if (!found.phi) {
          r.status = "not_found";
          r.exit_code = kNotFound;
          r.message = "no positive closed 3-form among " + std::to_string(options.attempts) + " samples (dim Z^3 = " +
                      std::to_string(found.z3_dim) + "); this is not a proof of non-existence";
          return;
        }
        phi = *found.phi;
      }
      if (subcommand == "verify") r.outputs["verification"] = verify_theorem_bounds(algebra, phi);
    } else {
      throw std::invalid_argument("unknown g2 subcommand '" + subcommand + "'");
    }
  });
}

Report cmd_table1() {
  Report report;
  report.command = "table1";
  return guarded(std::move(report), [](Report& r) {
    const auto start = std::chrono::steady_clock::now();
    nlohmann::json rows = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& row : kTable1) {
      const LieAlgebra algebra = builtin_algebra(row.name);
      const int b2 = betti(algebra)[2];
      const bool pass = b2 == row.expected_b2;
      all_pass = all_pass && pass;
      rows.push_back({{"algebra", row.name},
                      {"tuple", to_salamon(algebra)},
                      {"b2", b2},
                      {"expected_b2", row.expected_b2},
                      {"result", pass ? "PASS" : "FAIL"}});
    }
    r.outputs["rows"] = std::move(rows);
    r.outputs["all_pass"] = all_pass;
    r.outputs["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!all_pass) {
      r.status = "error";
      r.exit_code = kError;
      r.message = "computed b2 differs from the expected column";
    }
  });
}

Report cmd_torus(const TorusOptions& options) {
  Report report;
  report.command = "torus";
  report.inputs = {{"amp_a", options.amp_a}, {"amp_b", options.amp_b}, {"amp_c", options.amp_c}, {"grid", options.grid}, {"h", options.h}};
  return guarded(std::move(report), [&](Report& r) {
    r.outputs = run_torus_example(options.amp_a, options.amp_b, options.amp_c, options.grid, options.h);
  });
}

}  // namespace g2::cli
