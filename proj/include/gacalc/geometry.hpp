#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gacalc/multivector.hpp"

namespace gacalc {

template <class S>
using Coords = std::vector<S>;

// ------------------------------------------------------------------- PGA

// Projective model G(n,0,1). The null generator e = e_{n+1} is last.
class PgaModel {
 public:
  explicit PgaModel(int n);

  const AlgebraPtr& algebra() const { return alg_; }
  int dimension() const { return n_; }

  template <class S>
  Multivector<S> null_generator() const {
    return Multivector<S>::generator(alg_, n_ + 1);
  }

  template <class S>
  Multivector<S> vector(const Coords<S>& x) const {
    require_coords(x.size());
    Multivector<S> out(alg_);
    for (int i = 0; i < n_; ++i) out[alg_->position_of(BladeBits{1} << i)] = x[static_cast<std::size_t>(i)];
    return out;
  }

  // 1 + (b ^ e)/2. T X ~T moves an encoded point by +b, the way the
  // forward-kinematics chain composes its link translators.
  template <class S>
  Multivector<S> translator(const Coords<S>& b) const {
    Multivector<S> out = vector(b) ^ null_generator<S>();
    out *= ScalarTraits<S>::from_fraction(1, 2);
    return out + ScalarTraits<S>::from_integer(1);
  }

  // cos(theta/2) - sin(theta/2) e_ij: rotation by theta from e_i towards e_j.
  MultivectorF rotor(double theta, int i = 1, int j = 2) const;

  // (1 - e x) e_1...e_n. In the plane this equals dual(x e1 + y e2 + e3).
  template <class S>
  Multivector<S> point(const Coords<S>& x) const {
    require_coords(x.size());
    Multivector<S> out = Multivector<S>::blade(alg_, euclidean_pseudoscalar_);
    for (int i = 0; i < n_; ++i) {
      const auto& slot = coord_slots_[static_cast<std::size_t>(i)];
      out[slot.position] = slot.sign > 0 ? x[static_cast<std::size_t>(i)] : -x[static_cast<std::size_t>(i)];
    }
    return out;
  }

  // n - delta e. A non-unit normal is rescaled (with delta) and `normalized`
  // is set.
  template <class S>
  Multivector<S> plane(Coords<S> normal, S delta, bool* normalized = nullptr) const {
    require_coords(normal.size());
    S sq = ScalarTraits<S>::from_integer(0);
    for (const auto& c : normal) sq += c * c;
    if (ScalarTraits<S>::is_zero(sq)) throw MathError("plane normal is zero");
    const bool unit = ScalarTraits<S>::is_zero(sq - ScalarTraits<S>::from_integer(1), 1e-14);
    if (normalized) *normalized = !unit;
    if (!unit) {
      S len = ScalarTraits<S>::sqrt(sq);
      for (auto& c : normal) c = c / len;
      delta = delta / len;
    }
    return vector(normal) - null_generator<S>() * delta;
  }

  // v I - e (p ^ v) I with I = e123. Three-dimensional model only.
  template <class S>
  Multivector<S> line(const Coords<S>& direction, const Coords<S>& support) const {
    if (n_ != 3) throw MathError("PGA line encoding needs the three-dimensional model");
    const auto i3 = Multivector<S>::blade(alg_, euclidean_pseudoscalar_);
    const auto v = vector(direction);
    return v * i3 - null_generator<S>() * (vector(support) ^ v) * i3;
  }

  // Inverse of point(): divides by the e_1...e_n weight.
  template <class S>
  Coords<S> point_coordinates(const Multivector<S>& p) const {
    const S& w = p[euclidean_pseudoscalar_];
    if (ScalarTraits<S>::is_zero(w)) throw MathError("ideal point");
    Coords<S> out;
    for (const auto& slot : coord_slots_) {
      S c = p[slot.position] / w;
      out.push_back(slot.sign > 0 ? c : -c);
    }
    return out;
  }

 private:
  void require_coords(std::size_t count) const;

  struct Slot {
    std::size_t position;
    int sign;
  };
  AlgebraPtr alg_;
  int n_;
  std::size_t euclidean_pseudoscalar_;
  std::vector<Slot> coord_slots_;  // -e e_i e_1..n = sign * blade(position)
};

// Linear extension of *e_S = s e_{S^c} with e_S ^ *e_S = I. The norm factor
// of the Euclidean part is 1 for every basis blade once the null generator's
// metric is read as 1.
template <class S>
Multivector<S> hodge_dual(const Multivector<S>& a) {
  const Signature& sig = a.signature();
  if (sig.q != 0 || sig.r != 1) throw MathError("hodge dual requires a PGA signature [n,0,1], got " + sig.to_string());
  const auto& alg = a.algebra();
  const BladeBits full = static_cast<BladeBits>(alg->size() - 1);
  Multivector<S> out(alg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ScalarTraits<S>::is_zero(a[i])) continue;
    const BladeBits bits = alg->bits_of(i);
    out[alg->position_of(full ^ bits)] = reorder_sign(bits, full ^ bits) > 0 ? a[i] : -a[i];
  }
  return out;
}

// ------------------------------------------------------------------- CGA

// Conformal model of R^{p,q}: internal signature [p+1, q+1, 0] with e+ in
// the last positive slot and e- in the last negative slot. Multivectors
// display in the null basis n0 = (e- + e+)/2, ni = e- - e+.
class CgaModel {
 public:
  explicit CgaModel(int n);
  explicit CgaModel(const Signature& base);

  const AlgebraPtr& algebra() const { return alg_; }
  const Signature& base() const { return base_; }
  int euclidean_dimension() const { return base_.p + base_.q; }

  // Internal generator index (1-based) of Euclidean generator i (1-based).
  int internal_index(int i) const { return i <= base_.p ? i : i + 1; }
  int plus_index() const { return base_.p + 1; }
  int minus_index() const { return base_.p + base_.q + 2; }

  template <class S>
  Multivector<S> n0() const {
    const S half = ScalarTraits<S>::from_fraction(1, 2);
    return (Multivector<S>::generator(alg_, minus_index()) + Multivector<S>::generator(alg_, plus_index())) * half;
  }

  template <class S>
  Multivector<S> ni() const {
    return Multivector<S>::generator(alg_, minus_index()) - Multivector<S>::generator(alg_, plus_index());
  }

  template <class S>
  Multivector<S> vector(const Coords<S>& x) const {
    require_coords(x.size());
    Multivector<S> out(alg_);
    for (int i = 1; i <= euclidean_dimension(); ++i)
      out[alg_->position_of(BladeBits{1} << (internal_index(i) - 1))] = x[static_cast<std::size_t>(i - 1)];
    return out;
  }

  // Components along e1..en of a multivector that is a Euclidean vector.
  template <class S>
  Coords<S> euclidean_coords(const Multivector<S>& x) const {
    Coords<S> out;
    for (int i = 1; i <= euclidean_dimension(); ++i)
      out.push_back(x[alg_->position_of(BladeBits{1} << (internal_index(i) - 1))]);
    return out;
  }

  // Coefficients of n0 and ni in a vector.
  template <class S>
  S n0_coeff(const Multivector<S>& x) const {
    return x[alg_->position_of(BladeBits{1} << (plus_index() - 1))] +
           x[alg_->position_of(BladeBits{1} << (minus_index() - 1))];
  }
  template <class S>
  S ni_coeff(const Multivector<S>& x) const {
    S d = x[alg_->position_of(BladeBits{1} << (minus_index() - 1))] -
          x[alg_->position_of(BladeBits{1} << (plus_index() - 1))];
    return d * ScalarTraits<S>::from_fraction(1, 2);
  }

  // x^2/2 ni + n0 + x
  template <class S>
  Multivector<S> push(const Coords<S>& x) const {
    S sq = ScalarTraits<S>::from_integer(0);
    for (int i = 1; i <= euclidean_dimension(); ++i) {
      const S& c = x[static_cast<std::size_t>(i - 1)];
      sq += i <= base_.p ? c * c : -(c * c);
    }
    return vector(x) + n0<S>() + ni<S>() * (sq * ScalarTraits<S>::from_fraction(1, 2));
  }

  template <class S>
  Multivector<S> push(const Multivector<S>& x) const {
    require_euclidean_vector(x);
    return push(euclidean_coords(x));
  }

  // Euclidean part after dividing by the n0 coefficient.
  template <class S>
  Coords<S> pull(const Multivector<S>& x) const {
    if (grades_present(x) != std::vector<int>{1} && !x.is_zero())
      throw MathError("pull expects a conformal vector");
    S w = n0_coeff(x);
    if (ScalarTraits<S>::is_zero(w, 1e-300)) throw MathError("ideal point");
    Coords<S> out = euclidean_coords(x);
    for (auto& c : out) c = c / w;
    return out;
  }

  template <class S>
  Multivector<S> pull_vector(const Multivector<S>& x) const {
    return vector(pull(x));
  }

  // 1 - (v ^ ni)/2
  template <class S>
  Multivector<S> translator(const Coords<S>& v) const {
    Multivector<S> out = vector(v) ^ ni<S>();
    out *= ScalarTraits<S>::from_fraction(-1, 2);
    return out + ScalarTraits<S>::from_integer(1);
  }

  // Inner representations: push(c) - r^2/2 ni and n + delta ni.
  template <class S>
  Multivector<S> sphere_inner(const Coords<S>& center, const S& radius) const {
    return push(center) - ni<S>() * (radius * radius * ScalarTraits<S>::from_fraction(1, 2));
  }
  template <class S>
  Multivector<S> plane_inner(const Coords<S>& normal, const S& delta) const {
    return vector(normal) + ni<S>() * delta;
  }

  // Outer representations through Euclidean points.
  template <class S>
  Multivector<S> point_pair(const Coords<S>& a, const Coords<S>& b) const {
    return push(a) ^ push(b);
  }
  template <class S>
  Multivector<S> line(const Coords<S>& a, const Coords<S>& b) const {
    return push(a) ^ push(b) ^ ni<S>();
  }
  template <class S>
  Multivector<S> circle(const Coords<S>& a, const Coords<S>& b, const Coords<S>& c) const {
    return push(a) ^ push(b) ^ push(c);
  }
  template <class S>
  Multivector<S> plane3(const Coords<S>& a, const Coords<S>& b, const Coords<S>& c) const {
    return push(a) ^ push(b) ^ push(c) ^ ni<S>();
  }
  template <class S>
  Multivector<S> sphere(const Coords<S>& a, const Coords<S>& b, const Coords<S>& c, const Coords<S>& d) const {
    return push(a) ^ push(b) ^ push(c) ^ push(d);
  }

 private:
  void require_coords(std::size_t count) const;
  template <class S>
  void require_euclidean_vector(const Multivector<S>& x) const {
    const Multivector<S> e = vector(euclidean_coords(x));
    if (!equals(x, e)) throw MathError("push expects a Euclidean vector");
  }

  Signature base_;
  AlgebraPtr alg_;
};

// How a conformal multivector encodes its entity: x ^ X = 0 (outer) or
// x . X = 0 (inner).
enum class Representation { outer, inner };

// Meet (o1* ^ o2*)* of two or three entities, returned as an outer
// representation. Inner inputs are wedged directly.
MultivectorF intersect(const std::vector<MultivectorF>& entities, Representation input = Representation::outer);

// cos = <o1 . o2>_0 sgn(<o1 o1>_0) / sqrt(|<o1 o1>_0| |<o2 o2>_0|), clamped.
double angle_between(const MultivectorF& o1, const MultivectorF& o2);

// Splits a point-pair bivector B with B^2 > 0 into its two points, each
// scaled to unit n0 coefficient, using P = (1 + B/sqrt(B^2))/2.
std::pair<MultivectorF, MultivectorF> extract_point_pair(const CgaModel& model, const MultivectorF& b);

enum class EntityKind { point, point_pair, line, circle, plane, sphere, unknown };

std::string entity_kind_name(EntityKind kind);

struct GeometricEntity {
  EntityKind kind = EntityKind::unknown;
  // Negative squared radius (empty intersection).
  bool imaginary = false;
  std::vector<std::vector<double>> points;  // point: 1, point pair: 2
  std::vector<double> center;
  double radius = 0.0;
  std::vector<double> normal;  // plane, circle carrier (3D), line normal (2D)
  double distance = 0.0;       // plane / 2D line: x . normal = distance
  std::vector<double> direction;
  std::vector<double> support;
  std::vector<double> coefficients;  // unknown entities
};

// Recovers the entity type and parameters of a homogeneous-grade conformal
// multivector over R^2 or R^3. Vectors are read as inner representations
// (point, sphere, plane) whatever `rep` says. Throws "not a conformal entity".
GeometricEntity classify(const CgaModel& model, const MultivectorF& x, Representation rep = Representation::outer);

// classify(), with unrecognized input recorded as kind "unknown".
GeometricEntity describe(const CgaModel& model, const MultivectorF& x, Representation rep = Representation::outer);

nlohmann::ordered_json entity_to_json(const GeometricEntity& entity);
nlohmann::ordered_json emit_geometry(const std::vector<GeometricEntity>& entities);

}  // namespace gacalc
