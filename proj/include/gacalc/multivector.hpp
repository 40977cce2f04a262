#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gacalc/algebra.hpp"
#include "gacalc/error.hpp"
#include "gacalc/scalar.hpp"

namespace gacalc {

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Dense multivector: one coefficient per basis blade, in graded-lex order of
// the algebra's internal (orthonormal) basis.
template <class S>
class Multivector {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;

  explicit Multivector(AlgebraPtr alg) : alg_(std::move(alg)), c_(alg_->size(), Traits::from_integer(0)) {}

  Multivector(AlgebraPtr alg, std::vector<S> coeffs) : alg_(std::move(alg)), c_(std::move(coeffs)) {
    if (c_.size() != alg_->size())
      throw MathError("coefficient count " + std::to_string(c_.size()) + " does not match 2^" +
                      std::to_string(alg_->dimension()) + " = " + std::to_string(alg_->size()) + " for signature " +
                      alg_->signature().to_string());
  }

  static Multivector scalar(AlgebraPtr alg, S value) {
    Multivector out(std::move(alg));
    out.c_[0] = std::move(value);
    return out;
  }

  static Multivector blade(AlgebraPtr alg, std::size_t position, S value = Traits::from_integer(1)) {
    Multivector out(std::move(alg));
    if (position >= out.c_.size()) throw MathError("basis position out of range");
    out.c_[position] = std::move(value);
    return out;
  }

  // Generator e_{index} (1-based), the way the listings name them.
  static Multivector generator(AlgebraPtr alg, int index) {
    if (index < 1 || index > alg->dimension()) throw MathError("generator index out of range");
    std::size_t pos = alg->position_of(BladeBits{1} << (index - 1));
    return blade(std::move(alg), pos);
  }

  // Builds from coefficients given in the display basis (identical to the
  // internal basis unless the algebra carries a view).
  static Multivector from_display(AlgebraPtr alg, const std::vector<S>& display) {
    const BasisView* view = alg->view();
    if (!view) return Multivector(std::move(alg), display);
    if (display.size() != alg->size()) throw MathError("coefficient count does not match the algebra dimension");
    Multivector out(alg);
    for (std::size_t d = 0; d < display.size(); ++d) {
      if (Traits::is_zero(display[d])) continue;
      for (const auto& e : view->to_internal[d]) out.c_[e.index] += display[d] * fraction(e.value);
    }
    return out;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const Signature& signature() const { return alg_->signature(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<S>& coeffs() const { return c_; }
  const S& operator[](std::size_t pos) const { return c_[pos]; }
  S& operator[](std::size_t pos) { return c_[pos]; }

  // Coefficients in the display basis.
  std::vector<S> display_coeffs() const {
    const BasisView* view = alg_->view();
    if (!view) return c_;
    std::vector<S> out(c_.size(), Traits::from_integer(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (Traits::is_zero(c_[i])) continue;
      for (const auto& e : view->to_display[i]) out[e.index] += c_[i] * fraction(e.value);
    }
    return out;
  }

  bool is_zero(double tol = 0.0) const {
    for (const auto& c : c_)
      if (!Traits::is_zero(c, tol)) return false;
    return true;
  }

  void require_same(const Multivector& o) const {
    if (alg_ != o.alg_ && !alg_->same_signature(*o.alg_))
      throw MathError("signature mismatch: " + signature().to_string() + " vs " + o.signature().to_string());
  }

  Multivector& operator+=(const Multivector& o) {
    require_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    require_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(const S& k) {
    for (auto& c : c_) c *= k;
    return *this;
  }

  Multivector operator-() const {
    Multivector out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const S& k) { return a *= k; }
  friend Multivector operator*(const S& k, Multivector a) { return a *= k; }

  // Scalar shortcuts: A + 1, 2 - A.
  friend Multivector operator+(Multivector a, const S& k) {
    a.c_[0] += k;
    return a;
  }
  friend Multivector operator+(const S& k, Multivector a) { return std::move(a) + k; }
  friend Multivector operator-(Multivector a, const S& k) {
    a.c_[0] -= k;
    return a;
  }
  friend Multivector operator-(const S& k, const Multivector& a) { return (-a) + k; }

  // Geometric product.
  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    return a.product(b, [](int, int, int) { return true; });
  }
  // Outer product.
  friend Multivector operator^(const Multivector& a, const Multivector& b) {
    return a.product(b, [](int ga, int gb, int g) { return g == ga + gb; });
  }
  // Inner product ("fat dot"): grade |r - s| part of every grade pair.
  friend Multivector operator|(const Multivector& a, const Multivector& b) {
    return a.product(b, [](int ga, int gb, int g) { return g == (ga > gb ? ga - gb : gb - ga); });
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.alg_->same_signature(*b.alg_) && a.c_ == b.c_;
  }

  // Bilinear extension of the blade product, keeping only the terms whose
  // (grade a, grade b, grade result) triple passes `keep`.
  template <class Keep>
  Multivector product(const Multivector& o, Keep keep) const {
    require_same(o);
    Multivector out(alg_);
    const std::size_t m = c_.size();
    std::vector<std::size_t> nz_b;
    nz_b.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
      if (!Traits::is_zero(o.c_[j])) nz_b.push_back(j);
    for (std::size_t i = 0; i < m; ++i) {
      if (Traits::is_zero(c_[i])) continue;
      const int gi = alg_->grade(i);
      for (std::size_t j : nz_b) {
        const auto term = alg_->product(i, j);
        if (term.sign == 0) continue;
        if (!keep(gi, alg_->grade(j), alg_->grade(term.position))) continue;
        if (term.sign > 0)
          out.c_[term.position] += c_[i] * o.c_[j];
        else
          out.c_[term.position] -= c_[i] * o.c_[j];
      }
    }
    return out;
  }

  static S fraction(const Fraction& f) {
    if (f.den == 1) return Traits::from_integer(f.num);
    return Traits::from_fraction(f.num, f.den);
  }

 private:
  AlgebraPtr alg_;
  std::vector<S> c_;
};

using MultivectorF = Multivector<double>;
using MultivectorQ = Multivector<Rational>;
using MultivectorRF = Multivector<RationalFunction>;

// ------------------------------------------------------------------ products

template <class S>
Multivector<S> geometric_product(const Multivector<S>& a, const Multivector<S>& b) {
  return a * b;
}

template <class S>
Multivector<S> outer_product(const Multivector<S>& a, const Multivector<S>& b) {
  return a ^ b;
}

template <class S>
Multivector<S> inner_product(const Multivector<S>& a, const Multivector<S>& b) {
  return a | b;
}

template <class S>
Multivector<S> left_contraction(const Multivector<S>& a, const Multivector<S>& b) {
  return a.product(b, [](int ga, int gb, int g) { return gb >= ga && g == gb - ga; });
}

template <class S>
Multivector<S> right_contraction(const Multivector<S>& a, const Multivector<S>& b) {
  return a.product(b, [](int ga, int gb, int g) { return ga >= gb && g == ga - gb; });
}

// (AB - BA) / 2
template <class S>
Multivector<S> commutator(const Multivector<S>& a, const Multivector<S>& b) {
  Multivector<S> out = a * b - b * a;
  out *= ScalarTraits<S>::from_fraction(1, 2);
  return out;
}

// ------------------------------------------------------------- grade algebra

template <class S>
Multivector<S> grade(const Multivector<S>& a, int k) {
  if (k < 0 || k > a.algebra()->dimension())
    throw MathError("grade " + std::to_string(k) + " out of range 0.." + std::to_string(a.algebra()->dimension()));
  Multivector<S> out(a.algebra());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.algebra()->grade(i) == k) out[i] = a[i];
  return out;
}

template <class S>
S scalar_part(const Multivector<S>& a) {
  return a[0];
}

namespace detail {
template <class S, class SignOf>
Multivector<S> per_grade_sign(const Multivector<S>& a, SignOf sign_of) {
  Multivector<S> out = a;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (sign_of(a.algebra()->grade(i)) < 0) out[i] = -out[i];
  return out;
}
}  // namespace detail

template <class S>
Multivector<S> reverse(const Multivector<S>& a) {
  return detail::per_grade_sign(a, [](int k) { return ((k * (k - 1) / 2) % 2) ? -1 : 1; });
}

template <class S>
Multivector<S> grade_involution(const Multivector<S>& a) {
  return detail::per_grade_sign(a, [](int k) { return (k % 2) ? -1 : 1; });
}

template <class S>
Multivector<S> conjugate(const Multivector<S>& a) {
  return detail::per_grade_sign(a, [](int k) { return ((k * (k + 1) / 2) % 2) ? -1 : 1; });
}

// Grades with a nonzero coefficient.
template <class S>
std::vector<int> grades_present(const Multivector<S>& a, double tol = 0.0) {
  std::vector<bool> seen(static_cast<std::size_t>(a.algebra()->dimension()) + 1, false);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!ScalarTraits<S>::is_zero(a[i], tol)) seen[static_cast<std::size_t>(a.algebra()->grade(i))] = true;
  std::vector<int> out;
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (seen[k]) out.push_back(static_cast<int>(k));
  return out;
}

// ---------------------------------------------------------------- dualities

template <class S>
Multivector<S> pseudoscalar(const AlgebraPtr& alg) {
  return Multivector<S>::blade(alg, alg->pseudoscalar_position());
}

// A* = A I. Needs an invertible pseudoscalar (r = 0).
template <class S>
Multivector<S> dual_pseudoscalar(const Multivector<S>& a) {
  if (a.signature().r != 0)
    throw MathError("pseudoscalar dual undefined in a degenerate algebra (I^2 = 0); use the hodge or complement dual");
  return a * pseudoscalar<S>(a.algebra());
}

// Inverse of dual_pseudoscalar: A = B I^-1.
template <class S>
Multivector<S> undual_pseudoscalar(const Multivector<S>& a) {
  if (a.signature().r != 0) throw MathError("pseudoscalar dual undefined in a degenerate algebra");
  const auto& alg = a.algebra();
  Multivector<S> inv = pseudoscalar<S>(alg);
  // I^-1 = I / (I I), and I I = +-1 when r = 0.
  auto sq = alg->product(alg->pseudoscalar_position(), alg->pseudoscalar_position());
  if (sq.sign < 0) inv = -inv;
  return a * inv;
}

namespace detail {
// Sign s with (s e_{S^c}) e_S = I under a unit metric.
inline int left_complement_sign(BladeBits bits, BladeBits full) { return reorder_sign(full ^ bits, bits); }
}  // namespace detail

// Linear extension of e_S -> s e_{S^c}, s fixed by (s e_{S^c}) e_S = +I
// with every generator squaring to +1.
template <class S>
Multivector<S> dual_complement(const Multivector<S>& a) {
  const auto& alg = a.algebra();
  const BladeBits full = static_cast<BladeBits>(alg->size() - 1);
  Multivector<S> out(alg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ScalarTraits<S>::is_zero(a[i])) continue;
    const BladeBits bits = alg->bits_of(i);
    const std::size_t target = alg->position_of(full ^ bits);
    out[target] = detail::left_complement_sign(bits, full) > 0 ? a[i] : -a[i];
  }
  return out;
}

// Inverse of dual_complement.
template <class S>
Multivector<S> undual_complement(const Multivector<S>& a) {
  const auto& alg = a.algebra();
  const BladeBits full = static_cast<BladeBits>(alg->size() - 1);
  Multivector<S> out(alg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ScalarTraits<S>::is_zero(a[i])) continue;
    const BladeBits target_bits = full ^ alg->bits_of(i);
    const std::size_t target = alg->position_of(target_bits);
    out[target] = detail::left_complement_sign(target_bits, full) > 0 ? a[i] : -a[i];
  }
  return out;
}

// (A* ^ B*)*, with the pseudoscalar dual when r = 0 and the complement dual
// otherwise.
template <class S>
Multivector<S> regressive(const Multivector<S>& a, const Multivector<S>& b) {
  a.require_same(b);
  if (a.signature().r == 0) return dual_pseudoscalar(dual_pseudoscalar(a) ^ dual_pseudoscalar(b));
  return dual_complement(dual_complement(a) ^ dual_complement(b));
}

// ----------------------------------------------------------------- norms

// <A ~A>_0
template <class S>
S norm_squared(const Multivector<S>& a) {
  return scalar_part(a * reverse(a));
}

template <class S>
S norm(const Multivector<S>& a) {
  S sq = norm_squared(a);
  if constexpr (!ScalarTraits<S>::exact) {
    if (sq < 0) throw MathError("indefinite norm: <A ~A>_0 = " + ScalarTraits<S>::to_text(sq) + " is negative");
  } else if constexpr (std::is_same_v<S, Rational>) {
    if (sq.sign() < 0) throw MathError("indefinite norm: <A ~A>_0 = " + sq.to_string() + " is negative");
  }
  return ScalarTraits<S>::sqrt(sq);
}

template <class S>
Multivector<S> normalize(const Multivector<S>& a) {
  S n = norm(a);
  if (ScalarTraits<S>::is_zero(n)) throw MathError("cannot normalize a multivector with zero norm");
  Multivector<S> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] / n;
  return out;
}

// ------------------------------------------------------- slicing & helpers

// 1-based positions in the display basis, matching the listing convention.
template <class S>
std::vector<S> slice(const Multivector<S>& a, std::span<const std::size_t> positions) {
  std::vector<S> display = a.display_coeffs();
  std::vector<S> out;
  for (std::size_t p : positions) {
    if (p < 1 || p > display.size())
      throw MathError("index " + std::to_string(p) + " out of range 1.." + std::to_string(display.size()));
    out.push_back(display[p - 1]);
  }
  return out;
}

template <class S>
S slice(const Multivector<S>& a, std::size_t position) {
  std::size_t p[1] = {position};
  return slice(a, std::span<const std::size_t>(p, 1)).front();
}

// Coefficient of a named basis blade ("e0", "e13", "n0e1ni").
template <class S>
S slice(const Multivector<S>& a, std::string_view name) {
  auto pos = a.algebra()->find_display(name);
  if (!pos) throw MathError("unknown basis element '" + std::string(name) + "'");
  return a.display_coeffs()[*pos];
}

// 1-based positions of grade k.
inline std::vector<std::size_t> grade_tag_positions(const Algebra& alg, int k) {
  if (k < 0 || k > alg.dimension()) throw MathError("grade " + std::to_string(k) + " out of range");
  std::vector<std::size_t> out;
  for (std::size_t p : alg.grade_positions(k)) out.push_back(p + 1);
  return out;
}

template <class S>
std::vector<S> slice_grade(const Multivector<S>& a, int k) {
  auto pos = grade_tag_positions(*a.algebra(), k);
  return slice(a, std::span<const std::size_t>(pos));
}

template <class S>
Multivector<S> sub_multivector(const Multivector<S>& a, std::span<const std::size_t> positions) {
  std::vector<S> display = a.display_coeffs();
  std::vector<S> kept(display.size(), ScalarTraits<S>::from_integer(0));
  for (std::size_t p : positions) {
    if (p < 1 || p > display.size())
      throw MathError("index " + std::to_string(p) + " out of range 1.." + std::to_string(display.size()));
    kept[p - 1] = display[p - 1];
  }
  return Multivector<S>::from_display(a.algebra(), kept);
}

template <class S>
Multivector<S> sub_multivector_grade(const Multivector<S>& a, int k) {
  auto pos = grade_tag_positions(*a.algebra(), k);
  return sub_multivector(a, std::span<const std::size_t>(pos));
}

// Zeroes float coefficients with |c| < tol; exact coefficients are untouched.
template <class S>
Multivector<S> clean(const Multivector<S>& a, double tol = 1e-12) {
  Multivector<S> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ScalarTraits<S>::clean(out[i], tol);
  return out;
}

template <class S>
Multivector<S> abs_coeffs(const Multivector<S>& a) {
  Multivector<S> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ScalarTraits<S>::abs(out[i]);
  return out;
}

template <class S>
bool equals(const Multivector<S>& a, const Multivector<S>& b, double tol = 0.0) {
  if (!a.algebra()->same_signature(*b.algebra())) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!ScalarTraits<S>::is_zero(a[i] - b[i], tol)) return false;
  return true;
}

// Coefficients in position order.
template <class S>
std::vector<S> coeff_array(const Multivector<S>& a) {
  return a.coeffs();
}

// "( 7 )*e0+( 9 )*e12"; the zero multivector renders as "0". Uses the
// display basis when the algebra has one.
template <class S>
std::string to_text(const Multivector<S>& a) {
  std::vector<S> display = a.display_coeffs();
  std::string out;
  for (std::size_t i = 0; i < display.size(); ++i) {
    if (ScalarTraits<S>::is_zero(display[i])) continue;
    if (!out.empty()) out += "+";
    out += "( " + ScalarTraits<S>::to_text(display[i]) + " )*" + a.algebra()->display_name(i);
  }
  return out.empty() ? "0" : out;
}

template <class S>
nlohmann::json to_json(const Multivector<S>& a) {
  const Signature& sig = a.signature();
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(ScalarTraits<S>::to_json(c));
  nlohmann::json out;
  out["signature"] = {sig.p, sig.q, sig.r};
  out["coeffs"] = std::move(coeffs);
  return out;
}

template <class S>
Multivector<S> multivector_from_json(const AlgebraPtr& alg, const nlohmann::json& j) {
  const auto& sig = j.at("signature");
  Signature parsed{sig.at(0).get<int>(), sig.at(1).get<int>(), sig.at(2).get<int>()};
  if (!(parsed == alg->signature()))
    throw MathError("signature mismatch: " + parsed.to_string() + " vs " + alg->signature().to_string());
  std::vector<S> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(ScalarTraits<S>::from_json(c));
  return Multivector<S>(alg, std::move(coeffs));
}

// Converts between scalar domains when a lossless map exists.
template <class To, class From>
Multivector<To> convert(const Multivector<From>& a) {
  std::vector<To> out;
  out.reserve(a.size());
  for (const auto& c : a.coeffs()) {
    if constexpr (std::is_same_v<To, From>) {
      out.push_back(c);
    } else if constexpr (std::is_same_v<To, double>) {
      out.push_back(ScalarTraits<From>::to_double(c));
    } else if constexpr (std::is_same_v<To, RationalFunction> && std::is_same_v<From, Rational>) {
      out.push_back(RationalFunction(c));
    } else if constexpr (std::is_same_v<To, Rational> && std::is_same_v<From, double>) {
      out.push_back(Rational(mpq_class(c)));
    } else {
      static_assert(sizeof(To) == 0, "unsupported scalar conversion");
    }
  }
  return Multivector<To>(a.algebra(), std::move(out));
}

}  // namespace gacalc
