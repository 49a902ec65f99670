// g2tool: command-line front end for the g2 library.
//
//   g2tool algebra betti "(0,0,e^{12},0,e^{13},e^{24}+e^{23},e^{25}+e^{34}+e^{15}+e^{16}-3e^{26})"
//   g2tool g2 verify --algebra @row1 --seed 0 --attempts 10000
//   g2tool table1
//   g2tool torus --amp-a 1 --amp-b 1 --amp-c 0
//
// Exit codes: 0 success, 1 input or math error, 2 search found nothing.

#include "g2/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace g2::cli;

  CLI::App app{"G2-structures on 7-dimensional Lie algebras and tori"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Print the report as JSON");

  std::string algebra_sub;
  std::string algebra_input;
  auto* algebra = app.add_subcommand("algebra", "Check a structure tuple or compute its Betti numbers");
  algebra->add_option("action", algebra_sub, "check | betti")->required()->check(CLI::IsMember({"check", "betti"}));
  algebra->add_option("input", algebra_input, "Tuple, @builtin or file[#name]")->required();

  std::string g2_sub;
  G2Options g2_opts;
  std::string phi;
  auto* g2cmd = app.add_subcommand("g2", "G2-structure computations on a 7-dimensional algebra");
  g2cmd->add_option("action", g2_sub, "metric | torsion | symmetry | find-closed | verify")
      ->required()
      ->check(CLI::IsMember({"metric", "torsion", "symmetry", "find-closed", "verify"}));
  g2cmd->add_option("--algebra", g2_opts.algebra, "Tuple, @builtin or file[#name]")->capture_default_str();
  g2cmd->add_option("--phi", phi, "3-form, or @phi0 for the standard form");
  g2cmd->add_option("--seed", g2_opts.seed, "Search seed")->capture_default_str();
  g2cmd->add_option("--attempts", g2_opts.attempts, "Search budget")->capture_default_str()->check(CLI::PositiveNumber);

  auto* table1 = app.add_subcommand("table1", "Second Betti numbers of the four built-in nilpotent algebras");

  TorusOptions torus_opts;
  auto* torus = app.add_subcommand("torus", "Closed G2-structure on T^7 from the half-flat pair on T^6");
  torus->add_option("--amp-a", torus_opts.amp_a, "Amplitude of a(x1) = A sin(2 pi x1)")->capture_default_str()->check(CLI::NonNegativeNumber);
  torus->add_option("--amp-b", torus_opts.amp_b, "Amplitude of b(x2)")->capture_default_str()->check(CLI::NonNegativeNumber);
  torus->add_option("--amp-c", torus_opts.amp_c, "Amplitude of c(x3)")->capture_default_str()->check(CLI::NonNegativeNumber);
  torus->add_option("--grid", torus_opts.grid, "Grid points per varying coordinate")->capture_default_str()->check(CLI::PositiveNumber);
  torus->add_option("--h", torus_opts.h, "Finite-difference step")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  Report report;
  if (*algebra) {
    report = cmd_algebra(algebra_sub, algebra_input);
  } else if (*g2cmd) {
    if (!phi.empty()) g2_opts.phi = phi;
    report = cmd_g2(g2_sub, g2_opts);
  } else if (*table1) {
    report = cmd_table1();
  } else if (*torus) {
    report = cmd_torus(torus_opts);
  }

  if (json)
    std::cout << report.to_json().dump(2) << "\n";
  else
    std::cout << report.to_text();
  if (report.exit_code == kError && !json) std::cerr << "error: " << report.message << "\n";
  return report.exit_code;
}
