// gacalc: command-line front end for the geometric algebra library.
//
//   gacalc eval --sig 2,0,0 "(1+2*e12)*(5-e12)"
//   gacalc fk3r --lengths 1,1,1 --angles 0.1,0.2,0.3
//   gacalc ik6r --d1 480 --a3 425 --d4 425 --target 561.8479,262.7685,455.0104
//   gacalc power --config data/power_network.json
//   gacalc bench --max-sig 9,1,0
//
// Exit codes: 0 success, 2 parse or usage error, 3 math error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gacalc/apps.hpp"
#include "gacalc/expr.hpp"

namespace {

constexpr int kParseExit = 2;
constexpr int kMathExit = 3;

std::vector<double> parse_doubles(const std::string& text, std::size_t count, const std::string& option) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw gacalc::ParseError(option + ": not a number: '" + item + "'", 0);
    out.push_back(v);
  }
  if (out.size() != count)
    throw gacalc::ParseError(option + " expects " + std::to_string(count) + " comma-separated values", 0);
  return out;
}

gacalc::Signature parse_signature(const std::string& text, const std::string& option) {
  const auto v = parse_doubles(text, 3, option);
  gacalc::Signature sig;
  int* slots[] = {&sig.p, &sig.q, &sig.r};
  for (std::size_t i = 0; i < 3; ++i) {
    if (v[i] < 0 || v[i] != static_cast<int>(v[i])) throw gacalc::ParseError(option + " expects non-negative integers", 0);
    *slots[i] = static_cast<int>(v[i]);
  }
  return sig;
}

std::string fixed(double v, int digits = 10) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct EvalArgs {
  std::string sig;
  int cga = 0;
  std::string scalars = "float";
  std::string expr;
  bool json = false;
};

int run_eval(const EvalArgs& a) {
  const auto kind = gacalc::scalar_kind_from_name(a.scalars);
  if (!kind) throw gacalc::ParseError("--scalars must be float, rational or ratfun", 0);
  if (a.cga > 0 && !a.sig.empty()) throw gacalc::ParseError("--sig and --cga are mutually exclusive", 0);
  gacalc::Session session = a.cga > 0 ? gacalc::Session::conformal(a.cga, *kind)
                                      : gacalc::Session::plain(parse_signature(a.sig.empty() ? "3,0,0" : a.sig, "--sig"), *kind);
  const auto result = gacalc::evaluate_source(session, a.expr);
  std::cout << (a.json ? result.json.dump() : result.text) << "\n";
  return 0;
}

struct Fk3rArgs {
  std::string lengths;
  std::string angles;
  bool json = false;
};

int run_fk3r(const Fk3rArgs& a) {
  const auto l = parse_doubles(a.lengths, 3, "--lengths");
  const auto t = parse_doubles(a.angles, 3, "--angles");
  const auto pose = gacalc::fk3r({l[0], l[1], l[2]}, {t[0], t[1], t[2]});
  if (a.json)
    std::cout << nlohmann::ordered_json{{"x", pose.x}, {"y", pose.y}, {"phi", pose.phi}}.dump() << "\n";
  else
    std::cout << "x = " << fixed(pose.x) << "\ny = " << fixed(pose.y) << "\nphi = " << fixed(pose.phi) << "\n";
  return 0;
}

struct Ik6rArgs {
  double d1 = 0.0;
  double a3 = 0.0;
  double d4 = 0.0;
  std::string target;
  std::string geometry_path;
  bool json = false;
};

int run_ik6r(const Ik6rArgs& a) {
  const auto p = parse_doubles(a.target, 3, "--target");
  const gacalc::Ik6rParams params{a.d1, a.a3, a.d4, {p[0], p[1], p[2]}};
  const auto res = gacalc::ik6r(params);
  if (!a.geometry_path.empty()) {
    std::ofstream out(a.geometry_path);
    if (!out) throw gacalc::ParseError("cannot write " + a.geometry_path, 0);
    out << gacalc::emit_geometry(res.scene).dump(2) << "\n";
  }
  if (a.json) {
    nlohmann::ordered_json sols = nlohmann::ordered_json::array();
    for (const auto& q : res.solutions) sols.push_back({q[0], q[1], q[2]});
    std::cout << nlohmann::ordered_json{{"solutions", sols}}.dump() << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < res.solutions.size(); ++i) {
    const auto& q = res.solutions[i];
    std::cout << "solution " << i + 1 << ": theta1 = " << fixed(q[0], 4) << ", theta2 = " << fixed(q[1], 4)
              << ", theta3 = " << fixed(q[2], 4) << "\n";
  }
  return 0;
}

struct PowerArgs {
  std::string config;
  bool json = false;
};

int run_power(const PowerArgs& a) {
  std::ifstream in(a.config);
  if (!in) throw gacalc::ParseError("cannot read " + a.config, 0);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw gacalc::ParseError(a.config + ": " + e.what(), 0);
  }
  const auto sol = gacalc::solve_power_network(gacalc::power_network_from_json(j));
  std::cout << (a.json ? gacalc::power_report_json(sol).dump(2) + "\n" : gacalc::power_report(sol));
  return 0;
}

int run_bench(const std::string& max_sig) {
  const auto max = parse_signature(max_sig, "--max-sig");
  std::vector<gacalc::BenchRow> rows;
  bool ok = true;
  for (const auto& sig : gacalc::bench_signatures(max)) {
    rows.push_back(gacalc::bench_signature(sig));
    ok = ok && rows.back().correct;
  }
  std::cout << gacalc::bench_report(rows);
  if (!ok) {
    std::cerr << "error: inverse check failed\n";
    return kMathExit;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric algebra calculator"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate an expression");
  cmd_eval->add_option("--sig", eval.sig, "Signature p,q,r (default 3,0,0)");
  cmd_eval->add_option("--cga", eval.cga, "Conformal model over R^n");
  cmd_eval->add_option("--scalars", eval.scalars, "float, rational or ratfun");
  cmd_eval->add_flag("--json", eval.json, "Print JSON");
  cmd_eval->add_option("expr", eval.expr, "Expression")->required();

  Fk3rArgs fk;
  auto* cmd_fk = app.add_subcommand("fk3r", "Forward kinematics of a 3R planar arm");
  cmd_fk->add_option("--lengths", fk.lengths, "l1,l2,l3")->required();
  cmd_fk->add_option("--angles", fk.angles, "theta1,theta2,theta3 in radians")->required();
  cmd_fk->add_flag("--json", fk.json, "Print JSON");

  Ik6rArgs ik;
  auto* cmd_ik = app.add_subcommand("ik6r", "Inverse position kinematics of a 6R arm");
  cmd_ik->add_option("--d1", ik.d1, "Base height")->required();
  cmd_ik->add_option("--a3", ik.a3, "Upper arm length")->required();
  cmd_ik->add_option("--d4", ik.d4, "Forearm length")->required();
  cmd_ik->add_option("--target", ik.target, "x,y,z")->required();
  cmd_ik->add_option("--emit-geometry", ik.geometry_path, "Write the construction entities as JSON");
  cmd_ik->add_flag("--json", ik.json, "Print JSON");

  PowerArgs power;
  auto* cmd_power = app.add_subcommand("power", "Nodal analysis of a three-node power network");
  cmd_power->add_option("--config", power.config, "Network JSON")->required();
  cmd_power->add_flag("--json", power.json, "Print JSON");

  std::string max_sig = "9,1,0";
  auto* cmd_bench = app.add_subcommand("bench", "Time algebra construction and inverses");
  cmd_bench->add_option("--max-sig", max_sig, "Largest signature p,q,r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseExit;
  }

  try {
    if (cmd_eval->parsed()) return run_eval(eval);
    if (cmd_fk->parsed()) return run_fk3r(fk);
    if (cmd_ik->parsed()) return run_ik6r(ik);
    if (cmd_power->parsed()) return run_power(power);
    if (cmd_bench->parsed()) return run_bench(max_sig);
  } catch (const gacalc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseExit;
  } catch (const gacalc::MathError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return kMathExit;
  }
  return 0;
}
