#pragma once

#include <array>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "gacalc/geometry.hpp"
#include "gacalc/mv_matrix.hpp"

namespace gacalc {

// ------------------------------------------------------------ 3R planar FK

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;
};

// Rotor chain R1 D1 R2 D2 R3 D3 in G(2,0,1) applied to the origin point.
// Lengths must be positive.
Pose2 fk3r(const std::array<double, 3>& lengths, const std::array<double, 3>& angles);

// ------------------------------------------------------------ 6R position IK

struct Ik6rParams {
  double d1 = 0.0;
  double a3 = 0.0;
  double d4 = 0.0;
  std::array<double, 3> target{};
};

using JointTriple = std::array<double, 3>;

struct Ik6rResult {
  std::vector<JointTriple> solutions;  // two elbow configurations
  // Spheres S1 and S2, the arm plane, their circle S1 ^ S2 and the point pair.
  std::vector<GeometricEntity> scene;
};

// Conformal construction: spheres around the elbow candidates, the arm plane
// through the base axis and the target, and the point pair where they meet.
// theta2 and theta3 are line angles signed in the arm plane (positive tilts
// the arm from the vertical towards the target). An unreachable target
// raises the "imaginary point pair" diagnostic.
Ik6rResult ik6r(const Ik6rParams& params);

// Wrist position for a joint triple: translator d1 e3, rotations about e3
// (theta1) and the arm-plane normal (theta2, theta3), links a3 and d4.
std::array<double, 3> ik6r_forward(const Ik6rParams& params, const JointTriple& q);

// ------------------------------------------------------------ power network

// z_av e0 + z_unI e1 + z_unR e2.
struct GeometricImpedance {
  RationalFunction av;
  RationalFunction unI;
  RationalFunction unR;
};

struct PowerNetwork {
  GeometricImpedance z12, z13, z23, zL2, zL3;
};

// Parses {"impedances": {"z12": {"av": {"num": [...], "den": [...]}, "unI": ..., "unR": ...}, ...}}.
// Coefficients ascend in s and are decimal or "a/b" strings; a bare value is
// a constant. A missing component is zero.
PowerNetwork power_network_from_json(const nlohmann::json& j);

// The three-node example network with its listing values (unbalance terms
// -0.0289 and -0.1155). Its printed transfer polynomials correspond to the
// rounded terms -0.03 and -0.1 instead.
PowerNetwork example_power_network();

// Unknowns v1, v2, v3, i_s for the unit sources v_alpha = 1 and v_beta = 1,
// with v_s = v_alpha (e0 + e2) + v_beta (e1 + e12).
struct PowerSolution {
  AlgebraPtr algebra;
  std::vector<MultivectorRF> alpha;  // v1, v2, v3, i_s
  std::vector<MultivectorRF> beta;
};

PowerSolution solve_power_network(const PowerNetwork& net);

// One coefficient v = (N_alpha v_alpha + N_beta v_beta) / D over a shared
// denominator, scaled to coprime integer coefficients (ascending in s).
struct IntegerTransfer {
  std::vector<mpz_class> num_alpha;
  std::vector<mpz_class> num_beta;
  std::vector<mpz_class> den;
};

IntegerTransfer integer_transfer(const RationalFunction& alpha, const RationalFunction& beta);

// Text report: per unknown and blade, "Nv2e0 = (...)*va + (...)*vb" and
// "Dv2e0 = ...".
std::string power_report(const PowerSolution& sol);
nlohmann::ordered_json power_report_json(const PowerSolution& sol);

// ------------------------------------------------------------ benchmark

struct BenchRow {
  Signature signature;
  double construct_ms = 0.0;
  double inverse_ms = 0.0;
  double residual = 0.0;  // max |A A^-1 - 1| coefficient
  bool correct = false;   // clean(A A^-1 - 1) == 0
};

// (1,0,0) ... (p,0,0), then (p,q,r) itself when q or r is nonzero.
std::vector<Signature> bench_signatures(const Signature& max);

BenchRow bench_signature(const Signature& sig, unsigned seed = 1);

std::string bench_report(const std::vector<BenchRow>& rows);

}  // namespace gacalc
