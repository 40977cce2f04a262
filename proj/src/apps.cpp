#include "gacalc/apps.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "gacalc/analytic.hpp"

namespace gacalc {

// ------------------------------------------------------------ 3R planar FK

Pose2 fk3r(const std::array<double, 3>& lengths, const std::array<double, 3>& angles) {
  for (double l : lengths)
    if (!(l > 0.0)) throw MathError("link lengths must be positive");
  const PgaModel pga(2);
  MultivectorF chain = MultivectorF::scalar(pga.algebra(), 1.0);
  for (std::size_t i = 0; i < 3; ++i) chain = chain * pga.rotor(angles[i]) * pga.translator<double>({lengths[i], 0.0});
  const MultivectorF p = sandwich(chain, pga.point<double>({0.0, 0.0}));
  const auto xy = pga.point_coordinates(p);
  return {xy[0], xy[1], angles[0] + angles[1] + angles[2]};
}

// ------------------------------------------------------------ 6R position IK

namespace {

double dot3(const std::vector<double>& a, const std::vector<double>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// cos(theta/2) - sin(theta/2) e_i e_j over the Euclidean generators.
MultivectorF cga_rotor(const CgaModel& cga, double theta, int i, int j) {
  const auto& alg = cga.algebra();
  const MultivectorF b = MultivectorF::generator(alg, cga.internal_index(i)) *
                         MultivectorF::generator(alg, cga.internal_index(j));
  return MultivectorF::scalar(alg, std::cos(theta / 2)) - b * std::sin(theta / 2);
}

// Angle from direction a to direction b in the (u, z) arm plane, positive
// when turning from z towards u.
double signed_plane_angle(double magnitude, const std::vector<double>& a, const std::vector<double>& b,
                          const std::vector<double>& u) {
  const double au = dot3(a, u), bu = dot3(b, u);
  const double cross = a[2] * bu - au * b[2];
  return cross < 0 ? -magnitude : magnitude;
}

std::vector<double> minus3(const std::vector<double>& a, const std::vector<double>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

}  // namespace

Ik6rResult ik6r(const Ik6rParams& params) {
  if (!(params.d1 > 0.0 && params.a3 > 0.0 && params.d4 > 0.0)) throw MathError("link lengths must be positive");
  const CgaModel cga(3);
  const MultivectorF ni = cga.ni<double>();
  const Coords<double> target(params.target.begin(), params.target.end());

  const MultivectorF p0 = cga.n0<double>();
  const MultivectorF p1 = sandwich(cga.translator<double>({0.0, 0.0, params.d1}), p0);
  const MultivectorF pos = cga.push(target);

  const MultivectorF plane = p0 ^ p1 ^ pos ^ ni;
  if (plane.is_zero(1e-9 * params.d1 * (1.0 + dot3(target, target))))
    throw MathError("target on the base axis: the arm plane is undefined");

  const MultivectorF s1 = p1 - ni * (0.5 * params.a3 * params.a3);
  const MultivectorF s2 = pos - ni * (0.5 * params.d4 * params.d4);
  const MultivectorF circle = s1 ^ s2;
  const MultivectorF plane_inner = dual_pseudoscalar(plane);
  const MultivectorF pair = intersect({s1, s2, plane_inner}, Representation::inner);

  Ik6rResult out;
  out.scene = {describe(cga, s1, Representation::inner), describe(cga, s2, Representation::inner),
               describe(cga, plane), describe(cga, circle, Representation::inner), describe(cga, pair)};

  const auto [p2a, p2b] = extract_point_pair(cga, pair);

  // Plane normal oriented as e3 x target, so that normal x e3 is the arm
  // direction u.
  std::vector<double> n = cga.euclidean_coords(plane_inner);
  if (-n[0] * target[1] + n[1] * target[0] < 0)
    for (auto& c : n) c = -c;
  const double theta1 = std::atan2(-n[0], n[1]);
  const std::vector<double> u{std::cos(theta1), std::sin(theta1), 0.0};

  const MultivectorF l1 = p0 ^ p1 ^ ni;
  const std::vector<double> w1 = cga.pull(p1), wp = target;
  for (const MultivectorF& p2 : {p2a, p2b}) {
    const MultivectorF l2 = p1 ^ p2 ^ ni;
    const MultivectorF l3 = p2 ^ pos ^ ni;
    const std::vector<double> w2 = cga.pull(p2);
    const std::vector<double> d1 = minus3(w1, {0.0, 0.0, 0.0}), d2 = minus3(w2, w1), d3 = minus3(wp, w2);
    const double theta2 = signed_plane_angle(angle_between(l1, l2), d1, d2, u);
    const double theta3 = signed_plane_angle(angle_between(l2, l3), d2, d3, u);
    out.solutions.push_back({theta1, theta2, theta3});
  }
  return out;
}

std::array<double, 3> ik6r_forward(const Ik6rParams& params, const JointTriple& q) {
  const CgaModel cga(3);
  const MultivectorF motor = cga.translator<double>({0.0, 0.0, params.d1}) * cga_rotor(cga, q[0], 1, 2) *
                             cga_rotor(cga, q[1], 3, 1) * cga.translator<double>({0.0, 0.0, params.a3}) *
                             cga_rotor(cga, q[2], 3, 1) * cga.translator<double>({0.0, 0.0, params.d4});
  const auto x = cga.pull(grade(sandwich(motor, cga.n0<double>()), 1));
  return {x[0], x[1], x[2]};
}

// ------------------------------------------------------------ power network

namespace {

RationalFunction rf_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return RationalFunction();
  return ScalarTraits<RationalFunction>::from_json(j.at(key));
}

GeometricImpedance impedance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("impedance must be an object with av, unI, unR", 0);
  return {rf_from_json(j, "av"), rf_from_json(j, "unI"), rf_from_json(j, "unR")};
}

MultivectorRF to_multivector(const AlgebraPtr& alg, const GeometricImpedance& z) {
  MultivectorRF out(alg);
  out[0] = z.av;
  out[1] = z.unI;
  out[2] = z.unR;
  return out;
}

RationalFunction linear(const char* constant, const char* slope) {
  return RationalFunction(Polynomial({Rational::parse(constant), Rational::parse(slope)}));
}

RationalFunction constant(const char* value) { return RationalFunction(Rational::parse(value)); }

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  Polynomial q, r;
  Polynomial::divmod(a, b, q, r);
  return q;
}

std::string int_poly(const std::vector<mpz_class>& c) {
  const std::string s = integer_poly_to_string(c);
  return s.empty() ? "0" : s;
}

nlohmann::json int_array(const std::vector<mpz_class>& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : c) out.push_back(v.get_str());
  return out;
}

const char* const kUnknowns[] = {"v1", "v2", "v3", "is"};
const char* const kBlades[] = {"e0", "e1", "e2", "e12"};

}  // namespace

PowerNetwork power_network_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("impedances")) throw ParseError("network config needs an \"impedances\" object", 0);
  const auto& z = j.at("impedances");
  auto get = [&z](const char* name) {
    if (!z.contains(name)) throw ParseError(std::string("missing impedance ") + name, 0);
    return impedance_from_json(z.at(name));
  };
  return {get("z12"), get("z13"), get("z23"), get("zL2"), get("zL3")};
}

PowerNetwork example_power_network() {
  PowerNetwork net;
  net.z12 = {linear("0.01", "0.02"), {}, {}};
  net.z13 = {linear("0.02", "0.04"), {}, {}};
  net.z23 = {linear("0.01", "0.02"), {}, {}};
  net.zL2 = {constant("0.5"), constant("-0.0289"), constant("0.05")};
  net.zL3 = {constant("0.4"), constant("-0.1155"), constant("-0.1")};
  return net;
}

PowerSolution solve_power_network(const PowerNetwork& net) {
  const AlgebraPtr alg = Algebra::create({2, 0, 0});
  const auto y12 = inverse(to_multivector(alg, net.z12));
  const auto y13 = inverse(to_multivector(alg, net.z13));
  const auto y23 = inverse(to_multivector(alg, net.z23));
  const auto yL2 = inverse(to_multivector(alg, net.zL2));
  const auto yL3 = inverse(to_multivector(alg, net.zL3));
  const MultivectorRF one = MultivectorRF::scalar(alg, RationalFunction(1));
  const MultivectorRF zero(alg);

  const auto y = MvMatrix<RationalFunction>::from_rows(alg, {{y12 + y13, -y12, -y13, one},
                                                            {-y12, y12 + y23 + yL2, -y23, zero},
                                                            {-y13, -y23, y13 + y23 + yL3, zero},
                                                            {one, zero, zero, zero}});
  MvMatrix<RationalFunction> rhs(alg, 4, 2);
  rhs(3, 0)[0] = RationalFunction(1);
  rhs(3, 0)[2] = RationalFunction(1);
  rhs(3, 1)[1] = RationalFunction(1);
  rhs(3, 1)[3] = RationalFunction(1);
  const auto x = solve(y, rhs);

  PowerSolution out{alg, {}, {}};
  for (std::size_t k = 0; k < 4; ++k) {
    out.alpha.push_back(x(k, 0));
    out.beta.push_back(x(k, 1));
  }
  return out;
}

IntegerTransfer integer_transfer(const RationalFunction& alpha, const RationalFunction& beta) {
  const Polynomial common = exact_quotient(alpha.den() * beta.den(), poly_gcd(alpha.den(), beta.den()));
  const Polynomial na = alpha.num() * exact_quotient(common, alpha.den());
  const Polynomial nb = beta.num() * exact_quotient(common, beta.den());
  auto ints = clear_to_integers({na, nb, common});
  return {std::move(ints[0]), std::move(ints[1]), std::move(ints[2])};
}

std::string power_report(const PowerSolution& sol) {
  std::ostringstream os;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t b = 0; b < 4; ++b) {
      const auto t = integer_transfer(sol.alpha[k][b], sol.beta[k][b]);
      const std::string tag = std::string(kUnknowns[k]) + kBlades[b];
      os << "N" << tag << " = (" << int_poly(t.num_alpha) << ")*va + (" << int_poly(t.num_beta) << ")*vb\n";
      os << "D" << tag << " = " << int_poly(t.den) << "\n";
    }
  return os.str();
}

nlohmann::ordered_json power_report_json(const PowerSolution& sol) {
  nlohmann::ordered_json unknowns = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < 4; ++k) {
    nlohmann::ordered_json blades = nlohmann::ordered_json::object();
    for (std::size_t b = 0; b < 4; ++b) {
      const auto t = integer_transfer(sol.alpha[k][b], sol.beta[k][b]);
      blades[kBlades[b]] = {{"num_va", int_array(t.num_alpha)}, {"num_vb", int_array(t.num_beta)}, {"den", int_array(t.den)}};
    }
    unknowns[kUnknowns[k]] = std::move(blades);
  }
  return {{"unknowns", std::move(unknowns)}};
}

// ------------------------------------------------------------ benchmark

std::vector<Signature> bench_signatures(const Signature& max) {
  std::vector<Signature> out;
  for (int n = 1; n <= max.p; ++n) out.push_back({n, 0, 0});
  if (max.q != 0 || max.r != 0) out.push_back(max);
  return out;
}

BenchRow bench_signature(const Signature& sig, unsigned seed) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
  BenchRow row;
  row.signature = sig;

  const auto t0 = clock::now();
  const AlgebraPtr alg = Algebra::create(sig);
  alg->product(0, 0);  // builds the product table where one is used
  MultivectorF a(alg);
  const auto t1 = clock::now();
  row.construct_ms = ms(t1 - t0);

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = coeff(rng);

  const auto t2 = clock::now();
  const MultivectorF inv = inverse(a);
  const auto t3 = clock::now();
  row.inverse_ms = ms(t3 - t2);

  const MultivectorF check = a * inv;
  const MultivectorF unit = MultivectorF::scalar(alg, 1.0);
  for (std::size_t i = 0; i < check.size(); ++i) row.residual = std::max(row.residual, std::abs(check[i] - unit[i]));
  row.correct = clean(check - unit, 1e-9).is_zero();
  return row;
}

std::string bench_report(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %14s %14s %12s  %s\n", "signature", "construct_ms", "inverse_ms", "residual",
                "A*inv(A)=1");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %14.3f %14.3f %12.3e  %s\n", r.signature.to_string().c_str(),
                  r.construct_ms, r.inverse_ms, r.residual, r.correct ? "yes" : "NO");
    os << line;
  }
  return os.str();
}

}  // namespace gacalc
