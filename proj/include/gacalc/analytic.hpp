#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include "gacalc/dense_matrix.hpp"
#include "gacalc/multivector.hpp"

namespace gacalc {

// Left-multiplication matrix of A: column i holds the coefficients of A E_i.
template <class S>
DenseMatrix<S> to_matrix(const Multivector<S>& a) {
  const auto& alg = a.algebra();
  const std::size_t m = a.size();
  DenseMatrix<S> out(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    if (ScalarTraits<S>::is_zero(a[k])) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const auto term = alg->product(k, i);
      if (term.sign == 0) continue;
      if (term.sign > 0)
        out(term.position, i) += a[k];
      else
        out(term.position, i) -= a[k];
    }
  }
  return out;
}

// X from M_X: the first column is the coefficient array of X * 1.
template <class S>
Multivector<S> from_first_column(const AlgebraPtr& alg, const DenseMatrix<S>& m) {
  if (m.rows() != alg->size()) throw MathError("matrix order does not match the algebra");
  std::vector<S> coeffs;
  coeffs.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) coeffs.push_back(m(i, 0));
  return Multivector<S>(alg, std::move(coeffs));
}

namespace detail {
MultivectorF inverse_float(const MultivectorF& a);
}

// X with A X = X A = 1, from M_A x = [1 0 ... 0]^T.
template <class S>
Multivector<S> inverse(const Multivector<S>& a) {
  if constexpr (std::is_same_v<S, double>) {
    return detail::inverse_float(a);
  } else {
    const std::size_t m = a.size();
    DenseMatrix<S> rhs(m, 1);
    rhs(0, 0) = ScalarTraits<S>::from_integer(1);
    DenseMatrix<S> x = gauss_solve(to_matrix(a), std::move(rhs), "multivector not invertible");
    return from_first_column(a.algebra(), x);
  }
}

// A^k by repeated squaring; negative k inverts first, A^0 = 1.
template <class S>
Multivector<S> int_power(const Multivector<S>& a, long long k) {
  Multivector<S> base = k < 0 ? inverse(a) : a;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  Multivector<S> result = Multivector<S>::scalar(a.algebra(), ScalarTraits<S>::from_integer(1));
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

// R X ~R
template <class S>
Multivector<S> sandwich(const Multivector<S>& r, const Multivector<S>& x) {
  return r * x * reverse(r);
}

// Named analytic functions available on float multivectors.
enum class AnalyticFn {
  exp, log, sqrt,
  sin, cos, tan, cot, sec, csc,
  sinh, cosh, tanh, coth, sech, csch,
  asin, acos, atan, acot, asec, acsc,
  asinh, acosh, atanh, acoth, asech, acsch,
};

std::optional<AnalyticFn> analytic_fn_from_name(std::string_view name);
std::string_view analytic_fn_name(AnalyticFn fn);

// f(A) through the matrix representation. exp uses scaling and squaring
// with a [13/13] Pade approximant; every other function diagonalizes M_A
// over the complex numbers and applies the principal branch to the
// eigenvalues.
MultivectorF analytic_function(const MultivectorF& a, AnalyticFn fn);

using ScalarHook = std::function<std::complex<double>(std::complex<double>)>;
// User-supplied scalar function applied through the eigendecomposition.
MultivectorF apply(const MultivectorF& a, const ScalarHook& f);

inline MultivectorF exp(const MultivectorF& a) { return analytic_function(a, AnalyticFn::exp); }
inline MultivectorF log(const MultivectorF& a) { return analytic_function(a, AnalyticFn::log); }
inline MultivectorF sqrt(const MultivectorF& a) { return analytic_function(a, AnalyticFn::sqrt); }

// exp(-theta/2 B). Closed forms when B^2 is a scalar (circular, parabolic
// or hyperbolic case); otherwise the general exponential.
MultivectorF rotor_exp_bivector(double theta, const MultivectorF& b);

// Float inverse tolerances: condition estimate below which M_A counts as
// singular, defectiveness threshold for the eigenvector basis and the
// largest imaginary residue accepted in a real result.
inline constexpr double kSingularRcond = 1e-13;
inline constexpr double kDefectiveCondition = 1e10;
inline constexpr double kImaginaryResidue = 1e-8;

}  // namespace gacalc
