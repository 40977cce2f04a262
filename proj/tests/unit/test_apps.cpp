#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gacalc/apps.hpp"
#include "support.hpp"

namespace gacalc {
namespace {

using testing::rand_real;

// Textbook 3R planar forward kinematics.
Pose2 planar_closed_form(const std::array<double, 3>& l, const std::array<double, 3>& t) {
  const double a = t[0], b = t[0] + t[1], c = t[0] + t[1] + t[2];
  return {l[0] * std::cos(a) + l[1] * std::cos(b) + l[2] * std::cos(c),
          l[0] * std::sin(a) + l[1] * std::sin(b) + l[2] * std::sin(c), c};
}

// Wrist position of the 6R arm from plain trigonometry.
std::array<double, 3> arm_closed_form(const Ik6rParams& p, const JointTriple& q) {
  const double r = p.a3 * std::sin(q[1]) + p.d4 * std::sin(q[1] + q[2]);
  const double z = p.d1 + p.a3 * std::cos(q[1]) + p.d4 * std::cos(q[1] + q[2]);
  return {r * std::cos(q[0]), r * std::sin(q[0]), z};
}

std::vector<long> ints(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& c : v) out.push_back(c.get_si());
  return out;
}

TEST(Fk3r, SimplePoses) {
  auto straight = fk3r({1, 1, 1}, {0, 0, 0});
  EXPECT_NEAR(straight.x, 3.0, 1e-15);
  EXPECT_NEAR(straight.y, 0.0, 1e-15);
  EXPECT_EQ(straight.phi, 0.0);
  auto up = fk3r({1, 1, 1}, {std::numbers::pi / 2, 0, 0});
  EXPECT_NEAR(up.x, 0.0, 1e-15);
  EXPECT_NEAR(up.y, 3.0, 1e-15);
  EXPECT_THROW(fk3r({1, 0, 1}, {0, 0, 0}), MathError);
}

TEST(Fk3r, MatchesClosedForm) {
  for (int t = 0; t < 1000; ++t) {
    const std::array<double, 3> l{rand_real(0.1, 3), rand_real(0.1, 3), rand_real(0.1, 3)};
    const std::array<double, 3> a{rand_real(-4, 4), rand_real(-4, 4), rand_real(-4, 4)};
    const Pose2 got = fk3r(l, a), want = planar_closed_form(l, a);
    EXPECT_NEAR(got.x, want.x, 1e-12);
    EXPECT_NEAR(got.y, want.y, 1e-12);
    EXPECT_NEAR(got.phi, want.phi, 1e-12);
  }
}

const Ik6rParams kStaubli{480, 425, 425, {561.8479, 262.7685, 455.0104}};

TEST(Ik6r, ListingConfiguration) {
  const auto res = ik6r(kStaubli);
  ASSERT_EQ(res.solutions.size(), 2u);
  bool found = false;
  for (const auto& q : res.solutions)
    found = found || (std::abs(q[0] - 0.4375) < 1e-3 && std::abs(q[1] - 0.8590) < 1e-3 && std::abs(q[2] - 1.5040) < 1e-3);
  EXPECT_TRUE(found) << res.solutions[0][0] << " " << res.solutions[0][1] << " " << res.solutions[0][2];
  for (const auto& q : res.solutions) {
    const auto p = arm_closed_form(kStaubli, q);
    const auto f = ik6r_forward(kStaubli, q);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(p[static_cast<std::size_t>(i)], kStaubli.target[static_cast<std::size_t>(i)], 1e-6);
      EXPECT_NEAR(f[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)], 1e-8);
    }
  }
}

TEST(Ik6r, RandomReachableTargets) {
  for (int t = 0; t < 200; ++t) {
    Ik6rParams p{rand_real(1, 5), rand_real(1, 5), rand_real(1, 5), {}};
    const JointTriple q{rand_real(-3, 3), rand_real(0.2, 2.5), rand_real(0.2, 2.5)};
    p.target = arm_closed_form(p, q);
    if (std::hypot(p.target[0], p.target[1]) < 1e-3) continue;
    const auto res = ik6r(p);
    for (const auto& s : res.solutions) {
      const auto got = arm_closed_form(p, s);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(got[i], p.target[i], 1e-6);
    }
  }
}

TEST(Ik6r, Scene) {
  const auto res = ik6r(kStaubli);
  ASSERT_EQ(res.scene.size(), 5u);
  EXPECT_EQ(res.scene[0].kind, EntityKind::sphere);
  EXPECT_NEAR(res.scene[0].radius, 425.0, 1e-6);
  EXPECT_NEAR(res.scene[0].center[2], 480.0, 1e-6);
  EXPECT_EQ(res.scene[1].kind, EntityKind::sphere);
  EXPECT_EQ(res.scene[2].kind, EntityKind::plane);
  EXPECT_EQ(res.scene[3].kind, EntityKind::circle);
  EXPECT_EQ(res.scene[4].kind, EntityKind::point_pair);
  EXPECT_EQ(emit_geometry(res.scene).size(), 5u);
}

TEST(Ik6r, Errors) {
  Ik6rParams far = kStaubli;
  far.target = {2000, 0, 480};
  try {
    ik6r(far);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_NE(std::string(e.what()).find("imaginary point pair (B^2 = -"), std::string::npos) << e.what();
  }
  Ik6rParams axis = kStaubli;
  axis.target = {0, 0, 900};
  EXPECT_THROW(ik6r(axis), MathError);
  Ik6rParams bad = kStaubli;
  bad.a3 = 0;
  EXPECT_THROW(ik6r(bad), MathError);
}

// G(2,0,0) product on (1, e1, e2, e12) coefficients.
std::array<double, 4> g2_mul(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return {a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3], a[0] * b[1] + a[1] * b[0] - a[2] * b[3] + a[3] * b[2],
          a[0] * b[2] + a[2] * b[0] + a[1] * b[3] - a[3] * b[1], a[0] * b[3] + a[3] * b[0] + a[1] * b[2] - a[2] * b[1]};
}

// Dense Gaussian elimination with partial pivoting.
std::vector<double> gauss(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= a[r][k] * x[k];
    x[r] = acc / a[r][r];
  }
  return x;
}

std::array<double, 4> g2_inv(const std::array<double, 4>& a) {
  std::vector<std::vector<double>> m(4, std::vector<double>(4));
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<double, 4> unit{};
    unit[c] = 1;
    const auto col = g2_mul(a, unit);
    for (std::size_t r = 0; r < 4; ++r) m[r][c] = col[r];
  }
  const auto x = gauss(m, {1, 0, 0, 0});
  return {x[0], x[1], x[2], x[3]};
}

// v2 for the unit source `vs` at a numeric s, by a float nodal solve.
std::array<double, 4> v2_float(double s, const std::array<double, 3>& zl2, const std::array<double, 3>& zl3,
                               const std::array<double, 4>& vs) {
  using V = std::array<double, 4>;
  auto add = [](V a, const V& b) { for (std::size_t i = 0; i < 4; ++i) a[i] += b[i]; return a; };
  auto neg = [](V a) { for (auto& c : a) c = -c; return a; };
  const V y12 = g2_inv({0.02 * s + 0.01, 0, 0, 0}), y13 = g2_inv({0.04 * s + 0.02, 0, 0, 0}), y23 = y12;
  const V yl2 = g2_inv({zl2[0], zl2[1], zl2[2], 0}), yl3 = g2_inv({zl3[0], zl3[1], zl3[2], 0});
  const V one{1, 0, 0, 0}, zero{};
  const V y[4][4] = {{add(y12, y13), neg(y12), neg(y13), one},
                     {neg(y12), add(add(y12, y23), yl2), neg(y23), zero},
                     {neg(y13), neg(y23), add(add(y13, y23), yl3), zero},
                     {one, zero, zero, zero}};
  std::vector<std::vector<double>> m(16, std::vector<double>(16));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t c = 0; c < 4; ++c) {
        V unit{};
        unit[c] = 1;
        const auto col = g2_mul(y[i][j], unit);
        for (std::size_t r = 0; r < 4; ++r) m[i * 4 + r][j * 4 + c] = col[r];
      }
  std::vector<double> rhs(16);
  for (std::size_t k = 0; k < 4; ++k) rhs[12 + k] = vs[k];
  const auto x = gauss(m, rhs);
  return {x[4], x[5], x[6], x[7]};
}

double eval_rf(const RationalFunction& f, double s) {
  auto ev = [s](const Polynomial& p) {
    double acc = 0;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * s + p.coeffs()[k].to_double();
    return acc;
  };
  return ev(f.num()) / ev(f.den());
}

TEST(PowerNetwork, ListingValuesMatchFloatSolve) {
  const auto sol = solve_power_network(example_power_network());
  for (double s : {0.0, 0.5, 3.0, 40.0, 250.0})
    for (int src = 0; src < 2; ++src) {
      const std::array<double, 4> vs = src == 0 ? std::array<double, 4>{1, 0, 1, 0} : std::array<double, 4>{0, 1, 0, 1};
      const auto want = v2_float(s, {0.5, -0.0289, 0.05}, {0.4, -0.1155, -0.1}, vs);
      const auto& got = src == 0 ? sol.alpha[1] : sol.beta[1];
      for (std::size_t b = 0; b < 4; ++b) EXPECT_NEAR(eval_rf(got[b], s), want[b], 1e-12) << s << " " << b;
    }
}

// The printed v2 polynomials are reproduced exactly by the rounded load
// unbalance terms zL2.unI = -0.03 and zL3.unI = -0.1.
TEST(PowerNetwork, PrintedPolynomialsFromRoundedLoads) {
  auto net = example_power_network();
  net.zL2.unI = RationalFunction(Rational::parse("-0.03"));
  net.zL3.unI = RationalFunction(Rational::parse("-0.1"));
  const auto sol = solve_power_network(net);
  const std::vector<long> den{15052095, 2552384, 136080, 2592, 16};
  const std::vector<long> even_a{14595547, 1596858, 50148, 440}, even_b{-62633, -126698, -2876, -24};
  const std::vector<long> odd_a{-62553, -126378, -2556, -24}, odd_b{14651277, 1706478, 46428, 360};
  for (std::size_t b = 0; b < 4; ++b) {
    const auto t = integer_transfer(sol.alpha[1][b], sol.beta[1][b]);
    EXPECT_EQ(ints(t.den), den) << b;
    const bool even = b == 0 || b == 2;
    EXPECT_EQ(ints(t.num_alpha), even ? even_a : odd_a) << b;
    EXPECT_EQ(ints(t.num_beta), even ? even_b : odd_b) << b;
  }
  const std::string report = power_report(sol);
  EXPECT_NE(report.find("Dv2e0 = 16*s^4+2592*s^3+136080*s^2+2552384*s+15052095"), std::string::npos) << report;
  EXPECT_NE(report.find("Nv2e0 = (440*s^3+50148*s^2+1596858*s+14595547)*va + (-24*s^3-2876*s^2-126698*s-62633)*vb"),
            std::string::npos);
}

TEST(PowerNetwork, ListingValuesDifferFromPrinted) {
  const auto sol = solve_power_network(example_power_network());
  const auto t = integer_transfer(sol.alpha[1][0], sol.beta[1][0]);
  EXPECT_NE(ints(t.den), (std::vector<long>{15052095, 2552384, 136080, 2592, 16}));
}

TEST(PowerNetwork, SlackRowFixesV1) {
  const auto sol = solve_power_network(example_power_network());
  auto vs_alpha = MultivectorRF(sol.algebra), vs_beta = MultivectorRF(sol.algebra);
  vs_alpha[0] = vs_alpha[2] = RationalFunction(1);
  vs_beta[1] = vs_beta[3] = RationalFunction(1);
  EXPECT_EQ(sol.alpha[0], vs_alpha);
  EXPECT_EQ(sol.beta[0], vs_beta);
}

TEST(PowerNetwork, BalancedLoadsKeepPairs) {
  auto net = example_power_network();
  net.zL2.unI = net.zL2.unR = net.zL3.unI = net.zL3.unR = RationalFunction();
  const auto sol = solve_power_network(net);
  EXPECT_TRUE(sol.alpha[1][1].is_zero());
  EXPECT_TRUE(sol.alpha[1][3].is_zero());
  EXPECT_FALSE(sol.alpha[1][0].is_zero());
  EXPECT_EQ(sol.alpha[1][0], sol.alpha[1][2]);
}

TEST(PowerNetwork, ZeroImpedanceRejected) {
  auto net = example_power_network();
  net.z23 = {};
  EXPECT_THROW(solve_power_network(net), MathError);
}

TEST(PowerNetwork, JsonConfig) {
  const auto j = nlohmann::json::parse(R"({"impedances": {
    "z12": {"av": {"num": ["0.01", "0.02"], "den": [1]}},
    "z13": {"av": {"num": [0.02, 0.04]}},
    "z23": {"av": {"num": ["1/100", "1/50"]}},
    "zL2": {"av": 0.5, "unI": -0.0289, "unR": 0.05},
    "zL3": {"av": "0.4", "unI": "-0.1155", "unR": "-0.1"}}})");
  const auto net = power_network_from_json(j);
  const auto ref = example_power_network();
  EXPECT_EQ(net.z12.av, ref.z12.av);
  EXPECT_EQ(net.z13.av, ref.z13.av);
  EXPECT_EQ(net.z23.av, ref.z23.av);
  EXPECT_EQ(net.zL2.unI, ref.zL2.unI);
  EXPECT_EQ(net.zL3.unI, ref.zL3.unI);
  EXPECT_THROW(power_network_from_json(nlohmann::json::parse(R"({"impedances": {}})")), ParseError);
}

TEST(Bench, InverseCorrectness) {
  for (const auto& sig : std::vector<Signature>{{1, 0, 0}, {7, 0, 0}, {3, 1, 0}}) {
    const auto row = bench_signature(sig);
    EXPECT_TRUE(row.correct) << sig.to_string();
    EXPECT_LT(row.residual, 1e-9);
  }
  const auto sigs = bench_signatures({9, 1, 0});
  ASSERT_EQ(sigs.size(), 10u);
  EXPECT_EQ(sigs.front(), (Signature{1, 0, 0}));
  EXPECT_EQ(sigs.back(), (Signature{9, 1, 0}));
}

}  // namespace
}  // namespace gacalc
