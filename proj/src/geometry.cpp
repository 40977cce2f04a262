#include "gacalc/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "gacalc/analytic.hpp"

namespace gacalc {

// ------------------------------------------------------------------- PGA

PgaModel::PgaModel(int n) : n_(n) {
  if (n < 1) throw MathError("PGA dimension must be at least 1");
  alg_ = Algebra::create(Signature{n, 0, 1});
  const BladeBits euclid = (BladeBits{1} << n) - 1;
  const BladeBits e = BladeBits{1} << n;
  euclidean_pseudoscalar_ = alg_->position_of(euclid);
  for (int i = 0; i < n; ++i) {
    BladeProduct ee = blade_product(e, BladeBits{1} << i, alg_->signature());
    BladeProduct full = blade_product(ee.bits, euclid, alg_->signature());
    coord_slots_.push_back({alg_->position_of(full.bits), -ee.sign * full.sign});
  }
}

void PgaModel::require_coords(std::size_t count) const {
  if (count != static_cast<std::size_t>(n_))
    throw MathError("expected " + std::to_string(n_) + " coordinates, got " + std::to_string(count));
}

MultivectorF PgaModel::rotor(double theta, int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_ || i == j) throw MathError("rotor plane needs two distinct Euclidean generators");
  const auto bivector = MultivectorF::generator(alg_, i) * MultivectorF::generator(alg_, j);
  return std::cos(theta / 2) - bivector * std::sin(theta / 2);
}

// ------------------------------------------------------------------- CGA

namespace {

AlgebraPtr make_conformal(const Signature& base) {
  if (base.r != 0) throw MathError("conformal model needs a nondegenerate base signature");
  const int p = base.p;
  const int q = base.q;
  const int n = p + q;
  if (n < 1) throw MathError("conformal model needs at least one Euclidean generator");
  const Signature sig{p + 1, q + 1, 0};
  validate(sig);
  const int dim = n + 2;
  const int plus = p;           // 0-based internal slots
  const int minus = p + q + 1;
  auto internal = [p](int i) { return i < p ? i : i + 1; };  // Euclidean 0-based -> internal

  std::vector<std::string> names;
  std::vector<std::vector<Fraction>> gens(static_cast<std::size_t>(dim), std::vector<Fraction>(static_cast<std::size_t>(dim)));
  std::vector<std::vector<Fraction>> inv(static_cast<std::size_t>(dim), std::vector<Fraction>(static_cast<std::size_t>(dim)));

  // Display generators: n0, e1..en, ni.
  names.push_back("n0");
  gens[0][static_cast<std::size_t>(plus)] = {1, 2};
  gens[0][static_cast<std::size_t>(minus)] = {1, 2};
  for (int i = 0; i < n; ++i) {
    names.push_back("e" + std::to_string(i + 1));
    gens[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(internal(i))] = {1, 1};
  }
  names.push_back("ni");
  gens[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(plus)] = {-1, 1};
  gens[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(minus)] = {1, 1};

  // Internal generators in display terms: e+ = n0 - ni/2, e- = n0 + ni/2.
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(internal(i))][static_cast<std::size_t>(i + 1)] = {1, 1};
  inv[static_cast<std::size_t>(plus)][0] = {1, 1};
  inv[static_cast<std::size_t>(plus)][static_cast<std::size_t>(dim - 1)] = {-1, 2};
  inv[static_cast<std::size_t>(minus)][0] = {1, 1};
  inv[static_cast<std::size_t>(minus)][static_cast<std::size_t>(dim - 1)] = {1, 2};

  return Algebra::create_with_view(sig, "cga", std::move(names), std::move(gens), std::move(inv));
}

}  // namespace

CgaModel::CgaModel(int n) : CgaModel(Signature{n, 0, 0}) {}

CgaModel::CgaModel(const Signature& base) : base_(base), alg_(make_conformal(base)) {}

void CgaModel::require_coords(std::size_t count) const {
  if (count != static_cast<std::size_t>(euclidean_dimension()))
    throw MathError("expected " + std::to_string(euclidean_dimension()) + " coordinates, got " + std::to_string(count));
}

// --------------------------------------------------------- meet and angle

MultivectorF intersect(const std::vector<MultivectorF>& entities, Representation input) {
  if (entities.size() < 2 || entities.size() > 3) throw MathError("intersect takes two or three entities");
  MultivectorF acc = input == Representation::outer ? dual_pseudoscalar(entities[0]) : entities[0];
  for (std::size_t i = 1; i < entities.size(); ++i)
    acc = acc ^ (input == Representation::outer ? dual_pseudoscalar(entities[i]) : entities[i]);
  return dual_pseudoscalar(acc);
}

double angle_between(const MultivectorF& o1, const MultivectorF& o2) {
  const double n1 = scalar_part(o1 * o1);
  const double n2 = scalar_part(o2 * o2);
  if (n1 == 0.0 || n2 == 0.0) throw MathError("angle of a zero-norm entity");
  double c = scalar_part(o1 | o2) / std::sqrt(std::abs(n1) * std::abs(n2));
  if (n1 < 0) c = -c;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

namespace {

double max_abs(const MultivectorF& x) {
  double m = 0.0;
  for (double c : x.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

MultivectorF unit_n0(const CgaModel& model, const MultivectorF& x) {
  const double w = model.n0_coeff(x);
  if (std::abs(w) <= 1e-14 * std::max(1.0, max_abs(x))) throw MathError("ideal point");
  return x * (1.0 / w);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> scaled(std::vector<double> v, double k) {
  for (auto& c : v) c *= k;
  return v;
}

}  // namespace

std::pair<MultivectorF, MultivectorF> extract_point_pair(const CgaModel& model, const MultivectorF& b) {
  const double scale = max_abs(b);
  if (scale == 0.0 || grades_present(b, 1e-12 * scale) != std::vector<int>{2})
    throw MathError("point pair extraction expects a bivector");
  const MultivectorF bb = b * b;
  const double sq = scalar_part(bb);
  const auto& ni = model.ni<double>();
  if (std::abs(sq) <= 1e-12 * scale * scale) {
    // Tangent pair: both points sit at the center B ni B.
    MultivectorF c = unit_n0(model, grade(b * ni * b, 1));
    return {c, c};
  }
  if (sq < 0) throw MathError("imaginary point pair (B^2 = " + ScalarTraits<double>::to_text(sq) + ")");
  const MultivectorF p = (b * (1.0 / std::sqrt(sq)) + 1.0) * 0.5;
  const MultivectorF bn = grade(b | ni, 1);
  MultivectorF b1 = -(reverse(p) * bn * p);
  MultivectorF b2 = p * bn * reverse(p);
  return {unit_n0(model, grade(b1, 1)), unit_n0(model, grade(b2, 1))};
}

// ------------------------------------------------------------ classification

std::string entity_kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::point: return "point";
    case EntityKind::point_pair: return "point-pair";
    case EntityKind::line: return "line";
    case EntityKind::circle: return "circle";
    case EntityKind::plane: return "plane";
    case EntityKind::sphere: return "sphere";
    case EntityKind::unknown: break;
  }
  return "unknown";
}

namespace {

constexpr double kClassifyTol = 1e-9;

[[noreturn]] void not_entity() { throw MathError("not a conformal entity"); }

// Coefficient of the display blade made of the given display generators
// (0 = n0, 1..n = e_i, n+1 = ni).
double display_coeff(const CgaModel& model, const std::vector<double>& display, std::initializer_list<int> gens) {
  BladeBits bits = 0;
  for (int g : gens) bits |= BladeBits{1} << g;
  return display[model.algebra()->position_of(bits)];
}

// Sphere, plane or point from a vector alpha n0 + x + beta ni.
GeometricEntity classify_vector(const CgaModel& model, const MultivectorF& v) {
  const int n = model.euclidean_dimension();
  const double scale = max_abs(v);
  const double alpha = model.n0_coeff(v);
  const double beta = model.ni_coeff(v);
  std::vector<double> x = model.euclidean_coords(v);
  GeometricEntity out;
  if (std::abs(alpha) <= kClassifyTol * scale) {
    const double len = std::sqrt(dot(x, x));
    if (len <= kClassifyTol * scale) not_entity();
    out.normal = scaled(x, 1.0 / len);
    out.distance = beta / len;
    if (n == 3) {
      out.kind = EntityKind::plane;
    } else {
      out.kind = EntityKind::line;
      out.direction = {-out.normal[1], out.normal[0]};
      out.support = scaled(out.normal, out.distance);
    }
    return out;
  }
  std::vector<double> c = scaled(x, 1.0 / alpha);
  const double c2 = dot(c, c);
  const double r2 = c2 - 2.0 * beta / alpha;
  if (std::abs(r2) <= kClassifyTol * std::max(1.0, c2)) {
    out.kind = EntityKind::point;
    out.points = {c};
    return out;
  }
  out.kind = n == 3 ? EntityKind::sphere : EntityKind::circle;
  out.center = c;
  out.imaginary = r2 < 0;
  out.radius = std::sqrt(std::abs(r2));
  return out;
}

// Euclidean part of a grade-k flat's direction and moment: X = n0^A^ni + M^ni.
GeometricEntity classify_flat(const CgaModel& model, const MultivectorF& x, int k) {
  const int n = model.euclidean_dimension();
  const std::vector<double> d = x.display_coeffs();
  const double scale = max_abs(x);
  GeometricEntity out;
  if (k == 2) {
    const double a = display_coeff(model, d, {0, n + 1});
    if (std::abs(a) <= kClassifyTol * scale) not_entity();
    std::vector<double> s;
    for (int i = 1; i <= n; ++i) s.push_back(display_coeff(model, d, {i, n + 1}) / a);
    out.kind = EntityKind::point;
    out.points = {s};
    return out;
  }
  // k == 3 in R^3: a line n0^v^ni + (s^v)^ni.
  std::vector<double> v;
  for (int i = 1; i <= n; ++i) v.push_back(display_coeff(model, d, {0, i, n + 1}));
  const double v2 = dot(v, v);
  if (v2 <= kClassifyTol * kClassifyTol * scale * scale) not_entity();
  // s_perp = -(v _| M)/v^2 with v _| e_ij = v_i e_j - v_j e_i.
  std::vector<double> s(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const double m = display_coeff(model, d, {i, j, n + 1});
      s[static_cast<std::size_t>(j - 1)] -= v[static_cast<std::size_t>(i - 1)] * m / v2;
      s[static_cast<std::size_t>(i - 1)] += v[static_cast<std::size_t>(j - 1)] * m / v2;
    }
  out.kind = EntityKind::line;
  out.direction = scaled(v, 1.0 / std::sqrt(v2));
  out.support = s;
  return out;
}

// Point pair (k = 2) or circle (k = 3, R^3) from its outer representation.
GeometricEntity classify_round(const CgaModel& model, const MultivectorF& x, int k) {
  const auto& ni = model.ni<double>();
  GeometricEntity out;
  const MultivectorF c = grade(x * ni * x, 1);
  out.center = model.pull(unit_n0(model, c));
  const MultivectorF nx = left_contraction(ni, x);
  // r^2 = -<X ~X>_0 / <(ni _| X)(ni _| X)~>_0
  const double denom = scalar_part(nx * reverse(nx));
  if (denom == 0.0) not_entity();
  const double r2 = -scalar_part(x * reverse(x)) / denom;
  const double c2 = dot(out.center, out.center);
  const bool tangent = std::abs(r2) <= kClassifyTol * std::max(1.0, c2);
  out.imaginary = !tangent && r2 < 0;
  out.radius = tangent ? 0.0 : std::sqrt(std::abs(r2));
  if (k == 2) {
    out.kind = EntityKind::point_pair;
    if (tangent) {
      out.points = {out.center, out.center};
    } else if (!out.imaginary) {
      auto [p1, p2] = extract_point_pair(model, x);
      out.points = {model.pull(p1), model.pull(p2)};
    }
    return out;
  }
  out.kind = EntityKind::circle;
  const MultivectorF carrier = grade(dual_pseudoscalar(x ^ ni), 1);
  std::vector<double> nrm = model.euclidean_coords(carrier);
  const double len = std::sqrt(dot(nrm, nrm));
  if (len == 0.0) not_entity();
  out.normal = scaled(nrm, 1.0 / len);
  return out;
}

}  // namespace

GeometricEntity classify(const CgaModel& model, const MultivectorF& x, Representation rep) {
  const Signature& base = model.base();
  if (base.q != 0 || (base.p != 2 && base.p != 3))
    throw MathError("classification supports the conformal models of R^2 and R^3");
  const int top = base.p + 2;
  const double scale = max_abs(x);
  if (scale == 0.0) not_entity();
  const std::vector<int> grades = grades_present(x, kClassifyTol * scale);
  if (grades.size() != 1) not_entity();
  int k = grades.front();
  MultivectorF outer = grade(x, k);
  if (k != 1 && rep == Representation::inner) {
    outer = dual_pseudoscalar(outer);
    k = top - k;
  }
  if (k == 1) return classify_vector(model, outer);
  if (k == top - 1) return classify_vector(model, dual_pseudoscalar(outer));
  if (k < 2 || k > 3) not_entity();
  const MultivectorF carrier = outer ^ model.ni<double>();
  if (max_abs(carrier) <= kClassifyTol * scale) return classify_flat(model, outer, k);
  return classify_round(model, outer, k);
}

GeometricEntity describe(const CgaModel& model, const MultivectorF& x, Representation rep) {
  try {
    return classify(model, x, rep);
  } catch (const MathError&) {
    GeometricEntity out;
    out.coefficients = x.display_coeffs();
    return out;
  }
}

nlohmann::ordered_json entity_to_json(const GeometricEntity& e) {
  nlohmann::ordered_json out;
  out["kind"] = entity_kind_name(e.kind);
  switch (e.kind) {
    case EntityKind::point:
      out["position"] = e.points.at(0);
      break;
    case EntityKind::point_pair:
      if (e.imaginary) {
        out["imaginary"] = true;
        out["center"] = e.center;
        out["radius"] = e.radius;
      } else {
        out["p1"] = e.points.at(0);
        out["p2"] = e.points.at(1);
      }
      break;
    case EntityKind::line:
      out["direction"] = e.direction;
      out["support"] = e.support;
      break;
    case EntityKind::circle:
    case EntityKind::sphere:
      out["center"] = e.center;
      out["radius"] = e.radius;
      if (!e.normal.empty()) out["normal"] = e.normal;
      if (e.imaginary) out["imaginary"] = true;
      break;
    case EntityKind::plane:
      out["normal"] = e.normal;
      out["distance"] = e.distance;
      break;
    case EntityKind::unknown:
      out["coefficients"] = e.coefficients;
      break;
  }
  return out;
}

nlohmann::ordered_json emit_geometry(const std::vector<GeometricEntity>& entities) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : entities) out.push_back(entity_to_json(e));
  return out;
}

}  // namespace gacalc
