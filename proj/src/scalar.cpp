#include "gacalc/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace gacalc {

namespace {

mpz_class parse_digits(std::string_view digits) {
  if (digits.empty()) return 0;
  return mpz_class(std::string(digits), 10);
}

mpz_class pow10(unsigned long k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, k);
  return out;
}

// Parses an optionally signed decimal literal with optional exponent exactly.
mpq_class parse_decimal(std::string_view text) {
  const std::string original(text);
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::size_t int_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  std::string_view int_part = text.substr(int_begin, i - int_begin);
  std::string_view frac_part;
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t frac_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    frac_part = text.substr(frac_begin, i - frac_begin);
  }
  if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number '" + original + "'", 0);
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    std::size_t exp_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == exp_begin) throw ParseError("malformed exponent in '" + original + "'", 0);
    exponent = std::stol(std::string(text.substr(exp_begin, i - exp_begin)));
    if (exp_negative) exponent = -exponent;
  }
  if (i != text.size()) throw ParseError("malformed number '" + original + "'", 0);

  mpz_class mantissa = parse_digits(std::string(int_part) + std::string(frac_part));
  exponent -= static_cast<long>(frac_part.size());
  mpq_class out;
  if (exponent >= 0) {
    out = mpq_class(mantissa * pow10(static_cast<unsigned long>(exponent)));
  } else {
    out = mpq_class(mantissa, pow10(static_cast<unsigned long>(-exponent)));
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw MathError("division by zero");
  v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_decimal(text));
  mpq_class num = parse_decimal(text.substr(0, slash));
  mpq_class den = parse_decimal(text.substr(slash + 1));
  if (sgn(den) == 0) throw MathError("division by zero in '" + std::string(text) + "'");
  return Rational(mpq_class(num / den));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw MathError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::to_string() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const Rational& constant) {
  if (!constant.is_zero()) c_.push_back(constant);
}

Polynomial Polynomial::indeterminate() { return Polynomial(std::vector<Rational>{Rational(0), Rational(1)}); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(const Rational& k) const {
  if (k.is_zero()) return {};
  Polynomial out = *this;
  for (auto& c : out.c_) c *= k;
  return out;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return scaled(Rational(1) / leading());
}

Rational Polynomial::evaluate(const Rational& s) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& quotient, Polynomial& remainder) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  const int db = b.degree();
  if (a.degree() < db) {
    quotient = {};
    remainder = a;
    return;
  }
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational inv_lead = Rational(1) / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Rational& top = rem[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    Rational factor = top * inv_lead;
    quo[static_cast<std::size_t>(k - db)] = factor;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= factor * b.c_[static_cast<std::size_t>(j)];
  }
  quotient = Polynomial(std::move(quo));
  remainder = Polynomial(std::move(rem));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    std::string coeff = c_[k].to_string();
    bool negative = c_[k].sign() < 0;
    if (!out.empty()) {
      out += negative ? " - " : " + ";
      if (negative) coeff = coeff.substr(1);
    }
    if (k == 0) {
      out += coeff;
    } else {
      if (coeff != "1" && coeff != "-1") out += coeff + "*";
      if (coeff == "-1") out += "-";
      out += "s";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) throw MathError("gcd of two zero polynomials");
  Polynomial x = a.monic();
  Polynomial y = b.monic();
  while (!y.is_zero()) {
    Polynomial q, r;
    Polynomial::divmod(x, y, q, r);
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

// --------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (den_.is_zero()) throw MathError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  if (den_.degree() > 0 && num_.degree() >= 0) {
    Polynomial g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      Polynomial q, r;
      Polynomial::divmod(num_, g, q, r);
      num_ = std::move(q);
      Polynomial::divmod(den_, g, q, r);
      den_ = std::move(q);
    }
  }
  if (!(den_.leading() == Rational(1))) {
    Rational inv = Rational(1) / den_.leading();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw MathError("rational function is not constant");
  return num_.coeff(0);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ = num_ + o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw MathError("division by zero rational function");
  if (is_zero()) return *this;
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  canonicalize();
  return *this;
}

std::string RationalFunction::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::vector<std::vector<mpz_class>> clear_to_integers(const std::vector<Polynomial>& polys) {
  mpz_class scale = 1;
  for (const auto& p : polys)
    for (const auto& c : p.coeffs()) scale = lcm(scale, c.denominator());
  std::vector<std::vector<mpz_class>> out;
  mpz_class content = 0;
  for (const auto& p : polys) {
    std::vector<mpz_class> ints;
    for (const auto& c : p.coeffs()) {
      mpz_class v = c.numerator() * (scale / c.denominator());
      content = gcd(content, v);
      ints.push_back(v);
    }
    out.push_back(std::move(ints));
  }
  if (content == 0) return out;
  if (!out.empty() && !out.back().empty() && out.back().back() < 0) content = -content;
  for (auto& ints : out)
    for (auto& v : ints) v /= content;
  return out;
}

std::string integer_poly_to_string(const std::vector<mpz_class>& ascending) {
  std::string out;
  for (std::size_t k = ascending.size(); k-- > 0;) {
    const mpz_class& c = ascending[k];
    if (c == 0) continue;
    std::string digits = mpz_class(abs(c)).get_str();
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (k == 0) {
      out += digits;
      continue;
    }
    if (digits != "1") out += digits + "*";
    out += "s";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

// ------------------------------------------------------------ scalar traits

double ScalarTraits<double>::from_decimal(std::string_view text) {
  std::string buf(text);
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    // Accept "a/b" as well.
    return Rational::parse(text).to_double();
  }
  return v;
}

double ScalarTraits<double>::sqrt(double v) {
  if (v < 0) throw MathError("square root of negative scalar");
  return std::sqrt(v);
}

std::string ScalarTraits<double>::to_text(double v) {
  if (v == 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5g", v);
  return buf;
}

double ScalarTraits<double>::from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return from_decimal(j.get<std::string>());
  throw ParseError("expected a number", 0);
}

Rational ScalarTraits<Rational>::sqrt(const Rational& v) {
  if (v.sign() < 0) throw MathError("square root of negative scalar");
  mpz_class num = v.numerator();
  mpz_class den = v.denominator();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    throw MathError("square root of " + v.to_string() + " is not rational");
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

nlohmann::json ScalarTraits<Rational>::to_json(const Rational& v) { return v.to_string(); }

Rational ScalarTraits<Rational>::from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  // A JSON float is re-read from its shortest round-trip text so that
  // 0.0289 becomes 289/10000 rather than the nearest binary double.
  if (j.is_number()) return Rational::parse(j.dump());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("expected a rational number", 0);
}

RationalFunction ScalarTraits<RationalFunction>::abs(const RationalFunction& v) {
  if (!v.is_constant()) throw MathError("abs is undefined for a non-constant rational function");
  Rational c = v.constant_value();
  return c.sign() < 0 ? RationalFunction(-c) : v;
}

RationalFunction ScalarTraits<RationalFunction>::sqrt(const RationalFunction& v) {
  if (!v.is_constant()) throw MathError("square root of a non-constant rational function");
  return RationalFunction(ScalarTraits<Rational>::sqrt(v.constant_value()));
}

double ScalarTraits<RationalFunction>::to_double(const RationalFunction& v) { return v.constant_value().to_double(); }

nlohmann::json polynomial_to_json(const Polynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.to_string());
  return arr;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_array()) return Polynomial(ScalarTraits<Rational>::from_json(j));
  std::vector<Rational> coeffs;
  for (const auto& c : j) coeffs.push_back(ScalarTraits<Rational>::from_json(c));
  return Polynomial(std::move(coeffs));
}

nlohmann::json ScalarTraits<RationalFunction>::to_json(const RationalFunction& v) {
  return nlohmann::json{{"num", polynomial_to_json(v.num())}, {"den", polynomial_to_json(v.den())}};
}

RationalFunction ScalarTraits<RationalFunction>::from_json(const nlohmann::json& j) {
  if (j.is_object()) {
    Polynomial num = polynomial_from_json(j.at("num"));
    Polynomial den = j.contains("den") ? polynomial_from_json(j.at("den")) : Polynomial(Rational(1));
    return RationalFunction(std::move(num), std::move(den));
  }
  return RationalFunction(ScalarTraits<Rational>::from_json(j));
}

}  // namespace gacalc
