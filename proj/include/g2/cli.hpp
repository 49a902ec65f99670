#pragma once

// Command implementations behind the g2tool executable. Each command returns
// a Report; the executable only parses flags and prints.

#include "g2/liealg.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace g2::cli {

enum ExitCode : int { kOk = 0, kError = 1, kNotFound = 2 };

struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  std::string status = "ok";  // "ok", "error" or "not_found"
  std::string message;
  int exit_code = kOk;

  nlohmann::json to_json() const;
  // Plain-text rendering of the same JSON values.
  std::string to_text() const;
};

// "@name" or a bare built-in name, a literal tuple "(...)", or a file path
// with optional "#name" selecting one entry.
std::vector<NamedAlgebra> resolve_algebras(const std::string& spec);
LieAlgebra resolve_algebra(const std::string& spec);

// "@phi0" names the standard form; anything else is parsed as a 3-form.
RForm resolve_phi(const std::string& spec);

Report cmd_algebra(const std::string& subcommand, const std::string& input);

struct G2Options {
  std::string algebra = "abelian7";
  std::optional<std::string> phi;
  std::uint64_t seed = 0;
  long attempts = 10000;
};

// subcommand: metric | torsion | symmetry | find-closed | verify
Report cmd_g2(const std::string& subcommand, const G2Options& options);

Report cmd_table1();

struct TorusOptions {
  double amp_a = 1, amp_b = 1, amp_c = 1;
  int grid = 8;
  double h = 1e-5;
};

Report cmd_torus(const TorusOptions& options);

}  // namespace g2::cli
