#include "g2/liealg.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace g2 {

LieAlgebra::LieAlgebra(std::vector<RForm> dcoframe, std::string name)
    : dcoframe_(std::move(dcoframe)), name_(std::move(name)) {
  const int n = static_cast<int>(dcoframe_.size());
  if (n < 1 || n > kMaxDim) throw DimensionError("Lie algebra dimension must be in 1..7");
  for (std::size_t k = 0; k < dcoframe_.size(); ++k) {
    const auto& de = dcoframe_[k];
    if (de.dim() != n) throw DimensionError("de^" + std::to_string(k + 1) + " has the wrong dimension");
    if (de.degree() != 2) throw DimensionError("de^" + std::to_string(k + 1) + " is not a 2-form");
    dcoframe_float_.push_back(to_float(de));
  }
}

LieAlgebra LieAlgebra::unchecked(std::vector<RForm> dcoframe, std::string name) {
  return LieAlgebra(std::move(dcoframe), std::move(name));
}

LieAlgebra LieAlgebra::from_differentials(std::vector<RForm> dcoframe, std::string name) {
  LieAlgebra l(std::move(dcoframe), std::move(name));
  for (int k = 0; k < l.dim(); ++k) {
    const RForm dd = ce_d(l, l.dcoframe_[static_cast<std::size_t>(k)]);
    if (!dd.is_zero()) throw JacobiError(k + 1, to_string(dd));
  }
  return l;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(dcoframe_.begin(), dcoframe_.end(), [](const RForm& f) { return f.is_zero(); });
}

namespace {

std::vector<RForm> parse_tuple(std::string_view text) {
  std::size_t open = 0;
  while (open < text.size() && std::isspace(static_cast<unsigned char>(text[open]))) ++open;
  if (open >= text.size() || text[open] != '(') throw ParseError("expected '(' to open a structure tuple", open);
  std::size_t close = text.size();
  while (close > 0 && std::isspace(static_cast<unsigned char>(text[close - 1]))) --close;
  if (close == 0 || text[close - 1] != ')' || close - 1 <= open)
    throw ParseError("expected ')' to close a structure tuple", close == 0 ? 0 : close - 1);
  --close;

  std::vector<std::pair<std::size_t, std::size_t>> spans;
  int depth = 0;
  std::size_t start = open + 1;
  for (std::size_t i = open + 1; i < close; ++i) {
    const char c = text[i];
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      spans.emplace_back(start, i);
      start = i + 1;
    }
  }
  spans.emplace_back(start, close);
  const int dim = static_cast<int>(spans.size());
  if (dim > kMaxDim) throw ParseError("structure tuple has more than 7 entries", open);

  std::vector<RForm> out;
  for (auto [b, e] : spans) {
    const std::string_view entry = text.substr(b, e - b);
    try {
      out.push_back(parse_form<Rational>(entry, dim, 2));
    } catch (const ParseError& err) {
      // Re-anchor the position to the whole tuple.
      std::string msg = err.what();
      msg = msg.substr(0, msg.rfind(" at position "));
      throw ParseError(msg, b + err.position());
    }
  }
  return out;
}

}  // namespace

LieAlgebra parse_salamon(std::string_view text, std::string name) {
  return LieAlgebra::from_differentials(parse_tuple(text), std::move(name));
}

LieAlgebra parse_salamon_unchecked(std::string_view text, std::string name) {
  return LieAlgebra::unchecked(parse_tuple(text), std::move(name));
}

std::string to_salamon(const LieAlgebra& algebra) {
  std::string out = "(";
  for (int k = 0; k < algebra.dim(); ++k) {
    if (k) out += ", ";
    out += to_string(algebra.dcoframe()[static_cast<std::size_t>(k)]);
  }
  return out + ")";
}

RMatrix d_matrix(const LieAlgebra& algebra, int k) {
  const int n = algebra.dim();
  if (k < 0 || k > n) throw DimensionError("d_matrix: degree out of range");
  const auto cols = basis_enumerate(n, k);
  RMatrix m(static_cast<int>(binomial(n, k + 1)), static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const RForm image = ce_d(algebra, RForm::basis(n, cols[j]));
    for (const auto& [b, c] : image.terms()) m(basis_position(n, b), static_cast<int>(j)) = c;
  }
  return m;
}

int BettiVector::euler_characteristic() const {
  int chi = 0;
  for (std::size_t k = 0; k < b.size(); ++k) chi += (k % 2 ? -1 : 1) * b[k];
  return chi;
}

void to_json(nlohmann::json& j, const BettiVector& betti) { j = nlohmann::json{{"betti", betti.b}}; }

BettiVector betti(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  std::vector<int> ranks(static_cast<std::size_t>(n + 1), 0);
  for (int k = 0; k < n; ++k) ranks[static_cast<std::size_t>(k)] = rank(d_matrix(algebra, k));
  BettiVector out;
  for (int k = 0; k <= n; ++k) {
    const int below = k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0;
    out.b.push_back(static_cast<int>(binomial(n, k)) - ranks[static_cast<std::size_t>(k)] - below);
  }
  return out;
}

bool is_unimodular(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  for (int i = 1; i <= n; ++i) {
    const RVector x = RVector::unit(n, i);
    Rational trace(0);
    for (int j = 1; j <= n; ++j) trace += bracket(algebra, x, RVector::unit(n, j))[j - 1];
    if (trace != 0) return false;
  }
  return true;
}

bool is_nilpotent(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  std::vector<RVector> current;
  for (int i = 1; i <= n; ++i) current.push_back(RVector::unit(n, i));
  // Each step of the lower central series either shrinks or the series stalls.
  for (int step = 0; step <= n; ++step) {
    std::vector<RVector> brackets;
    for (int i = 1; i <= n; ++i)
      for (const auto& y : current) brackets.push_back(bracket(algebra, RVector::unit(n, i), y));
    RMatrix m(static_cast<int>(brackets.size()), n);
    for (std::size_t r = 0; r < brackets.size(); ++r)
      for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = brackets[r][c];
    const auto pivots = rref(m);
    if (pivots.empty()) return true;
    if (pivots.size() == current.size()) return false;
    current.clear();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      RVector v(n);
      for (int c = 0; c < n; ++c) v[c] = m(static_cast<int>(r), c);
      current.push_back(std::move(v));
    }
  }
  return false;
}

std::vector<NamedAlgebra> load_algebras(std::istream& in) {
  std::vector<NamedAlgebra> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string name = "line" + std::to_string(lineno);
    std::string tuple = line.substr(first);
    const auto paren = tuple.find('(');
    const auto colon = tuple.find(':');
    if (colon != std::string::npos && (paren == std::string::npos || colon < paren)) {
      name = tuple.substr(0, colon);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
      tuple = tuple.substr(colon + 1);
    }
    try {
      out.push_back({name, parse_salamon(tuple, name)});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), e.position());
    }
  }
  return out;
}

namespace {

const std::map<std::string, std::string, std::less<>>& builtin_table() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"abelian7", "(0, 0, 0, 0, 0, 0, 0)"},
      {"row1", "(0, 0, e^{12}, e^{13}, e^{23}, e^{15} + e^{24}, e^{16} + e^{34})"},
      {"row2", "(0, 0, e^{12}, e^{13}, e^{23}, e^{15} + e^{24}, e^{16} + e^{34} + e^{25})"},
      {"row3", "(0, 0, e^{12}, 0, e^{13} + e^{24}, e^{14}, e^{46} + e^{34} + e^{15} + e^{23})"},
      {"row4", "(0, 0, e^{12}, 0, e^{13}, e^{24} + e^{23}, e^{25} + e^{34} + e^{15} + e^{16} - 3 e^{26})"},
  };
  return table;
}

}  // namespace

LieAlgebra builtin_algebra(std::string_view name) {
  const auto& table = builtin_table();
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown built-in algebra '" + std::string(name) + "'");
  return parse_salamon(it->second, it->first);
}

std::vector<std::string> builtin_algebra_names() {
  std::vector<std::string> out;
  for (const auto& [name, tuple] : builtin_table()) out.push_back(name);
  return out;
}

}  // namespace g2
