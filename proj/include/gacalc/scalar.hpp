#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gacalc/error.hpp"

namespace gacalc {

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : v_(mpz_class(std::to_string(value), 10)) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "a", "a/b", "-1.25", "3e-2" and combinations such as "1.5/7".
  static Rational parse(std::string_view text);

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Dense univariate polynomial in s over Rational, ascending powers, no
// trailing zero coefficients (the zero polynomial is empty).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)

  static Polynomial indeterminate();

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Rational& leading() const { return c_.back(); }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational{}; }

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial scaled(const Rational& k) const;
  Polynomial monic() const;
  Rational evaluate(const Rational& s) const;

  // Euclidean division; throws MathError on a zero divisor.
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& quotient, Polynomial& remainder);

  // Renders ascending in s: "15052095 + 2552384*s + 136080*s^2".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Monic greatest common divisor; throws MathError when both inputs are zero.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// Quotient of polynomials in canonical form: gcd(num, den) = 1, den monic.
class RationalFunction {
 public:
  RationalFunction() : den_(Rational(1)) {}
  RationalFunction(long long value) : num_(Rational(value)), den_(Rational(1)) {}  // NOLINT
  RationalFunction(const Rational& value) : num_(value), den_(Rational(1)) {}      // NOLINT
  RationalFunction(const Polynomial& p) : num_(p), den_(Rational(1)) {}            // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction s() { return RationalFunction(Polynomial::indeterminate()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rational constant_value() const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void canonicalize();
  Polynomial num_;
  Polynomial den_;
};

// Integer-coefficient form of a set of polynomials sharing one scale factor:
// every polynomial is multiplied by the lcm of all coefficient denominators
// and the common content is divided out.
std::vector<std::vector<mpz_class>> clear_to_integers(const std::vector<Polynomial>& polys);

// Render an integer polynomial in descending powers: "16*s^4+2592*s^3+...".
std::string integer_poly_to_string(const std::vector<mpz_class>& ascending);

// Field-specific behaviour the generic code needs. Specialized for double,
// Rational and RationalFunction.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double from_integer(long long v) { return static_cast<double>(v); }
  static double from_fraction(long long n, long long d) { return static_cast<double>(n) / static_cast<double>(d); }
  static double from_decimal(std::string_view text);
  static bool is_zero(double v, double tol = 0.0) { return std::abs(v) <= tol; }
  static double clean(double v, double tol) { return std::abs(v) < tol ? 0.0 : v; }
  static double abs(double v) { return std::abs(v); }
  static double sqrt(double v);
  static double to_double(double v) { return v; }
  static double pivot_weight(double v) { return std::abs(v); }
  static std::string to_text(double v);
  static nlohmann::json to_json(double v) { return v; }
  static double from_json(const nlohmann::json& j);
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational from_integer(long long v) { return Rational(v); }
  static Rational from_fraction(long long n, long long d) { return Rational(n, d); }
  static Rational from_decimal(std::string_view text) { return Rational::parse(text); }
  static bool is_zero(const Rational& v, double = 0.0) { return v.is_zero(); }
  static Rational clean(const Rational& v, double) { return v; }
  static Rational abs(const Rational& v) { return v.sign() < 0 ? -v : v; }
  // Exact square root of a perfect-square rational; MathError otherwise.
  static Rational sqrt(const Rational& v);
  static double to_double(const Rational& v) { return v.to_double(); }
  static double pivot_weight(const Rational& v) { return v.is_zero() ? 0.0 : 1.0; }
  static std::string to_text(const Rational& v) { return v.to_string(); }
  static nlohmann::json to_json(const Rational& v);
  static Rational from_json(const nlohmann::json& j);
};

template <>
struct ScalarTraits<RationalFunction> {
  static constexpr bool exact = true;
  static constexpr const char* name = "ratfun";
  static RationalFunction from_integer(long long v) { return RationalFunction(v); }
  static RationalFunction from_fraction(long long n, long long d) { return RationalFunction(Rational(n, d)); }
  static RationalFunction from_decimal(std::string_view text) { return RationalFunction(Rational::parse(text)); }
  static bool is_zero(const RationalFunction& v, double = 0.0) { return v.is_zero(); }
  static RationalFunction clean(const RationalFunction& v, double) { return v; }
  static RationalFunction abs(const RationalFunction& v);
  static RationalFunction sqrt(const RationalFunction& v);
  static double to_double(const RationalFunction& v);
  static double pivot_weight(const RationalFunction& v) { return v.is_zero() ? 0.0 : 1.0; }
  static std::string to_text(const RationalFunction& v) { return v.to_string(); }
  static nlohmann::json to_json(const RationalFunction& v);
  static RationalFunction from_json(const nlohmann::json& j);
};

nlohmann::json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace gacalc
