#include "g2/exterior.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstring>

namespace g2 {

Blade Blade::of(std::initializer_list<int> indices) {
  unsigned mask = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxDim) throw DimensionError("blade index out of range 1..7");
    const unsigned bit = 1u << (i - 1);
    if (mask & bit) throw DimensionError("repeated index in blade");
    mask |= bit;
  }
  return Blade(static_cast<std::uint8_t>(mask));
}

std::vector<int> Blade::indices() const {
  std::vector<int> out;
  for (unsigned rest = mask_; rest != 0; rest &= rest - 1) out.push_back(std::countr_zero(rest) + 1);
  return out;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Blade> basis_enumerate(int dim, int degree) {
  if (dim < 0 || dim > kMaxDim) throw DimensionError("basis_enumerate: dimension must be in 0..7");
  std::vector<Blade> out;
  if (degree < 0 || degree > dim) return out;
  for (unsigned m = 0; m < (1u << dim); ++m)
    if (std::popcount(m) == degree) out.emplace_back(static_cast<std::uint8_t>(m));
  return out;
}

int basis_position(int dim, Blade blade) {
  // Tables are small; a lookup per (dim, mask) keeps matrix assembly O(1).
  static const auto table = [] {
    std::array<std::array<int, 128>, kMaxDim + 1> t{};
    for (int d = 0; d <= kMaxDim; ++d) {
      t[d].fill(-1);
      for (int k = 0; k <= d; ++k) {
        int pos = 0;
        for (Blade b : basis_enumerate(d, k)) t[d][b.mask()] = pos++;
      }
    }
    return t;
  }();
  if (dim < 0 || dim > kMaxDim || blade.max_index() > dim) throw DimensionError("basis_position: blade outside dimension");
  return table[dim][blade.mask()];
}

FForm normalize_float(const FForm& a, double tol) {
  FForm out(a.dim(), a.degree());
  for (const auto& [b, c] : a.terms())
    if (std::abs(c) >= tol) out.add_term(b, c);
  return out;
}

template <class Scalar>
KForm<Scalar> substitute(const KForm<Scalar>& a, const std::vector<Scalar>& m) {
  const int n = a.dim();
  if (m.size() != static_cast<std::size_t>(n * n)) throw DimensionError("substitute: matrix shape mismatch");
  std::vector<KForm<Scalar>> images;
  images.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    KForm<Scalar> row(n, 1);
    for (int j = 0; j < n; ++j) row.add_term(Blade::single(j + 1), m[static_cast<std::size_t>(i * n + j)]);
    images.push_back(std::move(row));
  }
  KForm<Scalar> out(n, a.degree());
  for (const auto& [blade, c] : a.terms()) {
    KForm<Scalar> term = KForm<Scalar>::scalar(n, c);
    for (int i : blade.indices()) {
      term = wedge(term, images[static_cast<std::size_t>(i - 1)]);
      if (term.is_zero()) break;
    }
    if (!term.is_zero()) out += term;
  }
  return out;
}

template RForm substitute(const RForm&, const std::vector<Rational>&);
template FForm substitute(const FForm&, const std::vector<double>&);

namespace {

// A coefficient as written: decimal mantissa with optional exponent, or a
// quotient of two such.
struct NumberToken {
  std::string numerator;
  std::string denominator;  // empty when absent
};

Rational decimal_to_rational(const std::string& s) {
  // s = digits[.digits][(e|E)[sign]digits]
  std::size_t epos = s.find_first_of("eE");
  std::string mant = s.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
  const std::size_t dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty()) digits = "0";
  mpz_class num(digits, 10);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational r = exp10 >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  r.canonicalize();
  return r;
}

template <class Scalar>
Scalar token_value(const NumberToken& t, std::size_t pos) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    Rational v = decimal_to_rational(t.numerator);
    if (!t.denominator.empty()) {
      Rational d = decimal_to_rational(t.denominator);
      if (d == 0) throw ParseError("division by zero in coefficient", pos);
      v /= d;
    }
    return v;
  } else {
    auto parse = [pos](const std::string& s) {
      double v = 0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("malformed number", pos);
      return v;
    };
    double v = parse(t.numerator);
    if (!t.denominator.empty()) {
      const double d = parse(t.denominator);
      if (d == 0) throw ParseError("division by zero in coefficient", pos);
      v /= d;
    }
    return v;
  }
}

class FormParser {
 public:
  FormParser(std::string_view text, int dim) : s_(text), dim_(dim) {}

  template <class Scalar>
  KForm<Scalar> run(std::optional<int> expected_degree) {
    struct Term {
      Blade blade;
      int sign;
      Scalar coef;
    };
    std::vector<Term> terms;
    std::optional<int> degree = expected_degree;
    skip_ws();
    if (at_end()) throw ParseError("empty form expression", pos_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-' between terms", pos_);
      }
      const std::size_t term_pos = pos_;
      Scalar coef(1);
      bool have_coef = false;
      if (peek() == '(') {
        ++pos_;
        skip_ws();
        coef = token_value<Scalar>(read_number(), term_pos);
        skip_ws();
        expect(')');
        have_coef = true;
      } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
        coef = token_value<Scalar>(read_number(), term_pos);
        have_coef = true;
      }
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      } else if (match_utf8_dot()) {
        skip_ws();
      }
      Blade blade;
      int perm_sign = 1;
      if (peek() == 'e') {
        std::tie(blade, perm_sign) = read_basis();
      } else if (!have_coef) {
        throw ParseError("expected coefficient or basis element", pos_);
      } else if (coef == 0) {
        // A bare "0" is the zero form of whatever degree the context needs.
        skip_ws();
        first = false;
        continue;
      }
      if (degree && *degree != blade.degree())
        throw ParseError("mixed degrees in one expression (expected " + std::to_string(*degree) + ", got " +
                             std::to_string(blade.degree()) + ")",
                         term_pos);
      degree = blade.degree();
      terms.push_back({blade, sign * perm_sign, coef});
      skip_ws();
      first = false;
    }
    KForm<Scalar> out(dim_, degree.value_or(0));
    for (auto& t : terms) out.add_term(t.blade, t.sign < 0 ? Scalar(-t.coef) : t.coef);
    return out;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  bool match_utf8_dot() {
    if (s_.substr(pos_, 2) == "\xC2\xB7") {
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::string read_decimal() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && s_[start] == '.')) throw ParseError("malformed number", start);
    // 'e' starts an exponent only when a digit (optionally signed) follows;
    // otherwise it is the basis symbol of "3e^{12}".
    if (peek() == 'e' || peek() == 'E') {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  NumberToken read_number() {
    NumberToken t;
    t.numerator = read_decimal();
    const std::size_t save = pos_;
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      t.denominator = read_decimal();
    } else {
      pos_ = save;
    }
    return t;
  }

  std::pair<Blade, int> read_basis() {
    expect('e');
    expect('^');
    std::vector<std::pair<int, std::size_t>> idx;
    auto read_index = [&] {
      const char c = peek();
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("expected basis index digit", pos_);
      idx.emplace_back(c - '0', pos_);
      ++pos_;
    };
    if (peek() == '{') {
      ++pos_;
      skip_ws();
      while (peek() != '}') {
        if (at_end()) throw ParseError("unterminated '{'", pos_);
        read_index();
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
      if (idx.empty()) throw ParseError("empty index list", pos_ - 1);
    } else {
      read_index();
    }
    unsigned mask = 0;
    int sign = 1;
    for (auto [i, at] : idx) {
      if (i < 1 || i > dim_) throw ParseError("index " + std::to_string(i) + " out of range 1.." + std::to_string(dim_), at);
      const Blade single = Blade::single(i);
      if (mask & single.mask()) throw ParseError("repeated index " + std::to_string(i), at);
      sign *= merge_sign(Blade(static_cast<std::uint8_t>(mask)), single);
      mask |= single.mask();
    }
    return {Blade(static_cast<std::uint8_t>(mask)), sign};
  }

  std::string_view s_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

template <class Scalar>
KForm<Scalar> parse_form(std::string_view text, int dim, std::optional<int> expected_degree) {
  if (dim < 1 || dim > kMaxDim) throw DimensionError("parse_form: dimension must be in 1..7");
  return FormParser(text, dim).run<Scalar>(expected_degree);
}

template RForm parse_form(std::string_view, int, std::optional<int>);
template FForm parse_form(std::string_view, int, std::optional<int>);

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(double d) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), d);
  return std::string(buf.data(), res.ptr);
}

template <class Scalar>
std::string to_string(const KForm<Scalar>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [blade, c] : a.terms()) {
    const bool negative = c < 0;
    const Scalar mag = negative ? Scalar(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (blade.empty()) {
      out += to_string(mag);
      continue;
    }
    if (mag != 1) out += to_string(mag) + " ";
    out += "e^{";
    for (int i : blade.indices()) out += static_cast<char>('0' + i);
    out += "}";
  }
  return out;
}

template std::string to_string(const RForm&);
template std::string to_string(const FForm&);

template <class Scalar>
std::string to_string(const Vector<Scalar>& v) {
  std::string out = "(";
  for (int i = 0; i < v.dim(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

template std::string to_string(const RVector&);
template std::string to_string(const FVector&);

}  // namespace g2
