#include "gacalc/analytic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace gacalc {

namespace {

using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Complex = std::complex<double>;

MatrixXd to_eigen(const MultivectorF& a) {
  const DenseMatrix<double> m = to_matrix(a);
  MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

MultivectorF first_column(const AlgebraPtr& alg, const Eigen::VectorXd& col) {
  std::vector<double> coeffs(col.data(), col.data() + col.size());
  return MultivectorF(alg, std::move(coeffs));
}

// Scaling and squaring with the degree-13 Pade approximant.
MatrixXd expm(const MatrixXd& a) {
  static constexpr std::array<double, 14> b = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                               670442572800.0,      33522128640.0,       1323241920.0,
                                               40840800.0,          960960.0,            16380.0,
                                               182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
  const MatrixXd x = a / std::ldexp(1.0, squarings);
  const MatrixXd id = MatrixXd::Identity(n, n);
  const MatrixXd x2 = x * x;
  const MatrixXd x4 = x2 * x2;
  const MatrixXd x6 = x4 * x2;
  const MatrixXd u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id;
  const MatrixXd u = x * u_inner;
  const MatrixXd v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
  MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

bool is_real(Complex z, double tol) { return std::abs(z.imag()) <= tol; }

[[noreturn]] void branch_violation(AnalyticFn fn, Complex z) {
  std::ostringstream os;
  os << "branch violation: " << analytic_fn_name(fn) << " has an eigenvalue " << z.real()
     << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i on its branch cut";
  throw MathError(os.str());
}

[[noreturn]] void pole(AnalyticFn fn, Complex z) {
  std::ostringstream os;
  os << analytic_fn_name(fn) << " has a pole at eigenvalue " << z.real() << (z.imag() < 0 ? "-" : "+")
     << std::abs(z.imag()) << "i";
  throw MathError(os.str());
}

Complex reciprocal(AnalyticFn fn, Complex z, double tol) {
  if (std::abs(z) <= tol) pole(fn, z);
  return 1.0 / z;
}

// Principal-branch scalar function with cut checks; `tol` decides when an
// eigenvalue sits on the real or imaginary axis.
Complex eval_scalar(AnalyticFn fn, Complex z, double tol) {
  const bool real = is_real(z, tol);
  const bool imaginary = std::abs(z.real()) <= tol;
  const double re = z.real();
  const double im = z.imag();
  auto guard_denominator = [&](Complex d) {
    if (std::abs(d) <= 1e-14) pole(fn, z);
    return d;
  };
  switch (fn) {
    case AnalyticFn::exp:
      return std::exp(z);
    case AnalyticFn::log:
      if (real && re <= tol) branch_violation(fn, z);
      return std::log(z);
    case AnalyticFn::sqrt:
      if (real && re < -tol) branch_violation(fn, z);
      return std::sqrt(z);
    case AnalyticFn::sin:
      return std::sin(z);
    case AnalyticFn::cos:
      return std::cos(z);
    case AnalyticFn::tan:
      return std::sin(z) / guard_denominator(std::cos(z));
    case AnalyticFn::cot:
      return std::cos(z) / guard_denominator(std::sin(z));
    case AnalyticFn::sec:
      return 1.0 / guard_denominator(std::cos(z));
    case AnalyticFn::csc:
      return 1.0 / guard_denominator(std::sin(z));
    case AnalyticFn::sinh:
      return std::sinh(z);
    case AnalyticFn::cosh:
      return std::cosh(z);
    case AnalyticFn::tanh:
      return std::sinh(z) / guard_denominator(std::cosh(z));
    case AnalyticFn::coth:
      return std::cosh(z) / guard_denominator(std::sinh(z));
    case AnalyticFn::sech:
      return 1.0 / guard_denominator(std::cosh(z));
    case AnalyticFn::csch:
      return 1.0 / guard_denominator(std::sinh(z));
    case AnalyticFn::asin:
      if (real && std::abs(re) > 1.0 + tol) branch_violation(fn, z);
      return std::asin(z);
    case AnalyticFn::acos:
      if (real && std::abs(re) > 1.0 + tol) branch_violation(fn, z);
      return std::acos(z);
    case AnalyticFn::atan:
      if (imaginary && std::abs(im) >= 1.0 - tol) branch_violation(fn, z);
      return std::atan(z);
    case AnalyticFn::asinh:
      if (imaginary && std::abs(im) > 1.0 + tol) branch_violation(fn, z);
      return std::asinh(z);
    case AnalyticFn::acosh:
      if (real && re < 1.0 - tol) branch_violation(fn, z);
      return std::acosh(z);
    case AnalyticFn::atanh:
      if (real && std::abs(re) >= 1.0 - tol) branch_violation(fn, z);
      return std::atanh(z);
    case AnalyticFn::acot: {
      Complex w = reciprocal(fn, z, tol);
      if (std::abs(w.real()) <= tol && std::abs(w.imag()) >= 1.0 - tol) branch_violation(fn, z);
      return std::atan(w);
    }
    case AnalyticFn::asec: {
      Complex w = reciprocal(fn, z, tol);
      if (real && std::abs(w.real()) > 1.0 + tol) branch_violation(fn, z);
      return std::acos(w);
    }
    case AnalyticFn::acsc: {
      Complex w = reciprocal(fn, z, tol);
      if (real && std::abs(w.real()) > 1.0 + tol) branch_violation(fn, z);
      return std::asin(w);
    }
    case AnalyticFn::acoth: {
      Complex w = reciprocal(fn, z, tol);
      if (real && std::abs(w.real()) >= 1.0 - tol) branch_violation(fn, z);
      return std::atanh(w);
    }
    case AnalyticFn::asech: {
      Complex w = reciprocal(fn, z, tol);
      if (real && w.real() < 1.0 - tol) branch_violation(fn, z);
      return std::acosh(w);
    }
    case AnalyticFn::acsch: {
      Complex w = reciprocal(fn, z, tol);
      if (std::abs(w.real()) <= tol && std::abs(w.imag()) > 1.0 + tol) branch_violation(fn, z);
      return std::asinh(w);
    }
  }
  throw MathError("unknown analytic function");
}

struct Eigenspace {
  Complex value;
  MatrixXcd basis;
};

// Eigenvalues grouped into clusters, each with an orthonormal basis of its
// eigenspace taken from the SVD of M - mu I. A cluster whose eigenspace is
// smaller than its multiplicity means M is not diagonalizable.
std::vector<Eigenspace> eigenspaces(const MatrixXd& m) {
  const Eigen::Index n = m.rows();
  const MatrixXcd mc = m.cast<Complex>();
  Eigen::ComplexEigenSolver<MatrixXcd> solver(mc, false);
  if (solver.info() != Eigen::Success) throw MathError("eigendecomposition of the representation failed");
  const VectorXcd& lambda = solver.eigenvalues();
  const double scale = std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
  const double cluster_tol = 1e-7 * scale;

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<Eigenspace> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    Complex sum = 0;
    Eigen::Index mult = 0;
    for (Eigen::Index j = i; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)] || std::abs(lambda(j) - lambda(i)) > cluster_tol) continue;
      used[static_cast<std::size_t>(j)] = true;
      sum += lambda(j);
      ++mult;
    }
    const Complex mu = sum / static_cast<double>(mult);
    const MatrixXcd shifted = mc - mu * MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<MatrixXcd> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const MatrixXcd basis = svd.matrixV().rightCols(mult);
    if (sv(n - mult) > cluster_tol || (shifted * basis).norm() > cluster_tol) {
      std::ostringstream os;
      os << "defective representation: eigenvalue " << mu.real() << (mu.imag() < 0 ? "-" : "+") << std::abs(mu.imag())
         << "i has multiplicity " << mult << " but a smaller eigenspace";
      throw MathError(os.str());
    }
    out.push_back({mu, basis});
  }
  return out;
}

// f(M_A) e_0 through M_A = V diag(lambda) V^-1.
template <class F>
MultivectorF apply_spectral(const MultivectorF& a, F&& f) {
  const MatrixXd m = to_eigen(a);
  const Eigen::Index n = m.rows();
  const std::vector<Eigenspace> spaces = eigenspaces(m);

  MatrixXcd v(n, n);
  VectorXcd lambda(n);
  Eigen::Index col = 0;
  for (const auto& s : spaces) {
    v.middleCols(col, s.basis.cols()) = s.basis;
    lambda.segment(col, s.basis.cols()).setConstant(s.value);
    col += s.basis.cols();
  }

  Eigen::JacobiSVD<MatrixXcd> svd(v);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(cond <= kDefectiveCondition)) {
    std::ostringstream os;
    os << "defective representation: eigenvector condition " << cond << " exceeds " << kDefectiveCondition;
    throw MathError(os.str());
  }

  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  const double tol = 1e-10 * scale;
  std::vector<Complex> fvals;
  for (const auto& s : spaces) fvals.push_back(f(s.value, tol));
  VectorXcd e0 = VectorXcd::Zero(n);
  e0(0) = 1.0;
  VectorXcd y = v.partialPivLu().solve(e0);
  col = 0;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    const Eigen::Index w = spaces[k].basis.cols();
    y.segment(col, w) *= fvals[k];
    col += w;
  }
  const VectorXcd result = v * y;

  const double real_scale = std::max(1.0, result.real().cwiseAbs().maxCoeff());
  const double residue = result.imag().cwiseAbs().maxCoeff();
  if (residue > kImaginaryResidue * real_scale) {
    std::ostringstream os;
    os << "non-real result: imaginary residue " << residue;
    throw MathError(os.str());
  }
  return first_column(a.algebra(), result.real());
}

constexpr std::array<std::pair<AnalyticFn, std::string_view>, 27> kNames = {{
    {AnalyticFn::exp, "exp"},     {AnalyticFn::log, "log"},     {AnalyticFn::sqrt, "sqrt"},
    {AnalyticFn::sin, "sin"},     {AnalyticFn::cos, "cos"},     {AnalyticFn::tan, "tan"},
    {AnalyticFn::cot, "cot"},     {AnalyticFn::sec, "sec"},     {AnalyticFn::csc, "csc"},
    {AnalyticFn::sinh, "sinh"},   {AnalyticFn::cosh, "cosh"},   {AnalyticFn::tanh, "tanh"},
    {AnalyticFn::coth, "coth"},   {AnalyticFn::sech, "sech"},   {AnalyticFn::csch, "csch"},
    {AnalyticFn::asin, "asin"},   {AnalyticFn::acos, "acos"},   {AnalyticFn::atan, "atan"},
    {AnalyticFn::acot, "acot"},   {AnalyticFn::asec, "asec"},   {AnalyticFn::acsc, "acsc"},
    {AnalyticFn::asinh, "asinh"}, {AnalyticFn::acosh, "acosh"}, {AnalyticFn::atanh, "atanh"},
    {AnalyticFn::acoth, "acoth"}, {AnalyticFn::asech, "asech"}, {AnalyticFn::acsch, "acsch"},
}};

}  // namespace

std::optional<AnalyticFn> analytic_fn_from_name(std::string_view name) {
  for (const auto& [fn, n] : kNames)
    if (n == name) return fn;
  return std::nullopt;
}

std::string_view analytic_fn_name(AnalyticFn fn) {
  for (const auto& [f, n] : kNames)
    if (f == fn) return n;
  return "?";
}

namespace detail {

MultivectorF inverse_float(const MultivectorF& a) {
  const MatrixXd m = to_eigen(a);
  Eigen::PartialPivLU<MatrixXd> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > kSingularRcond)) {
    std::ostringstream os;
    os << "multivector not invertible (reciprocal condition estimate " << rcond << ")";
    throw MathError(os.str());
  }
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(m.rows());
  e0(0) = 1.0;
  return first_column(a.algebra(), lu.solve(e0));
}

}  // namespace detail

MultivectorF analytic_function(const MultivectorF& a, AnalyticFn fn) {
  if (fn == AnalyticFn::exp) {
    const MatrixXd e = expm(to_eigen(a));
    return first_column(a.algebra(), e.col(0));
  }
  return apply_spectral(a, [fn](Complex z, double tol) { return eval_scalar(fn, z, tol); });
}

MultivectorF apply(const MultivectorF& a, const ScalarHook& f) {
  return apply_spectral(a, [&f](Complex z, double) { return f(z); });
}

MultivectorF rotor_exp_bivector(double theta, const MultivectorF& b) {
  const MultivectorF sq = b * b;
  double scale = 1.0;
  for (double c : b.coeffs()) scale = std::max(scale, std::abs(c) * std::abs(c));
  bool scalar_square = true;
  for (std::size_t i = 1; i < sq.size(); ++i)
    if (std::abs(sq[i]) > 1e-12 * scale) scalar_square = false;
  const double x = -theta / 2.0;
  if (!scalar_square) return analytic_function(b * x, AnalyticFn::exp);

  const double c = sq[0];
  const auto& alg = b.algebra();
  if (std::abs(c) <= 1e-15 * scale) return MultivectorF::scalar(alg, 1.0) + b * x;
  if (c < 0) {
    const double w = std::sqrt(-c);
    return MultivectorF::scalar(alg, std::cos(x * w)) + b * (std::sin(x * w) / w);
  }
  const double w = std::sqrt(c);
  return MultivectorF::scalar(alg, std::cosh(x * w)) + b * (std::sinh(x * w) / w);
}

}  // namespace gacalc
