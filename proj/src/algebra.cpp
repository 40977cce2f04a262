#include "gacalc/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "gacalc/error.hpp"

namespace gacalc {

std::string Signature::to_string() const {
  return "[" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + "]";
}

void validate(const Signature& sig) {
  if (sig.p < 0 || sig.q < 0 || sig.r < 0) throw MathError("signature counts must be non-negative");
  if (sig.dimension() < 1) throw MathError("signature must have at least one generator");
  if (sig.dimension() > kMaxDimension)
    throw MathError("signature dimension " + std::to_string(sig.dimension()) + " exceeds the supported maximum of " +
                    std::to_string(kMaxDimension));
}

int reorder_sign(BladeBits a, BladeBits b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += __builtin_popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

BladeProduct blade_product(BladeBits a, BladeBits b, const Signature& sig) {
  int sign = reorder_sign(a, b);
  BladeBits common = a & b;
  while (common != 0 && sign != 0) {
    int i = __builtin_ctz(common);
    sign *= sig.metric(i);
    common &= common - 1;
  }
  return {a ^ b, sign};
}

BladeProduct blade_wedge(BladeBits a, BladeBits b) {
  if (a & b) return {a ^ b, 0};
  return {a | b, reorder_sign(a, b)};
}

namespace {

Fraction reduce(std::int64_t num, std::int64_t den) {
  if (den == 0) throw MathError("zero denominator in basis view");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Fraction operator*(Fraction a, Fraction b) { return reduce(a.num * b.num, a.den * b.den); }
Fraction operator+(Fraction a, Fraction b) { return reduce(a.num * b.den + b.num * a.den, a.den * b.den); }

// Graded-lexicographic enumeration of all subsets of {0..n-1}.
std::vector<BladeBits> graded_lex_order(int n) {
  std::vector<BladeBits> order;
  order.reserve(std::size_t{1} << n);
  std::vector<int> combo;
  for (int k = 0; k <= n; ++k) {
    combo.resize(k);
    std::iota(combo.begin(), combo.end(), 0);
    while (true) {
      BladeBits bits = 0;
      for (int i : combo) bits |= BladeBits{1} << i;
      order.push_back(bits);
      // Advance to the next combination in lexicographic order.
      int i = k - 1;
      while (i >= 0 && combo[i] == n - k + i) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return order;
}

// Outermorphism column: wedge of the images of the generators in `bits`.
std::map<BladeBits, Fraction> wedge_images(BladeBits bits, const std::vector<std::vector<Fraction>>& images) {
  std::map<BladeBits, Fraction> acc{{0u, Fraction{1, 1}}};
  for (int j = 0; bits >> j; ++j) {
    if (!((bits >> j) & 1u)) continue;
    std::map<BladeBits, Fraction> next;
    for (const auto& [blade, coeff] : acc) {
      for (std::size_t i = 0; i < images[j].size(); ++i) {
        if (images[j][i].num == 0) continue;
        BladeProduct w = blade_wedge(blade, BladeBits{1} << i);
        if (w.sign == 0) continue;
        Fraction term = coeff * images[j][i] * Fraction{w.sign, 1};
        auto it = next.find(w.bits);
        if (it == next.end())
          next.emplace(w.bits, term);
        else
          it->second = it->second + term;
      }
    }
    acc.clear();
    for (auto& [blade, coeff] : next)
      if (coeff.num != 0) acc.emplace(blade, coeff);
  }
  return acc;
}

bool is_e_index(const std::string& name) {
  return name.size() >= 2 && name[0] == 'e' &&
         std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

std::string blade_name(const std::vector<std::string>& generator_names, BladeBits bits, bool separate) {
  if (bits == 0) return "e0";
  std::string out;
  bool in_run = false;
  for (std::size_t i = 0; i < generator_names.size(); ++i) {
    if (!((bits >> i) & 1u)) continue;
    const std::string& g = generator_names[i];
    if (is_e_index(g)) {
      if (!in_run) {
        out += 'e';
      } else if (separate) {
        out += '_';
      }
      out += g.substr(1);
      in_run = true;
    } else {
      out += g;
      in_run = false;
    }
  }
  return out;
}

Algebra::Algebra(const Signature& sig) : sig_(sig) {
  validate(sig);
  const int n = sig.dimension();
  bits_ = graded_lex_order(n);
  position_.assign(bits_.size(), 0);
  for (std::size_t pos = 0; pos < bits_.size(); ++pos) position_[bits_[pos]] = static_cast<std::uint32_t>(pos);

  std::vector<std::string> generators;
  for (int i = 1; i <= n; ++i) generators.push_back("e" + std::to_string(i));
  names_.reserve(bits_.size());
  for (BladeBits b : bits_) names_.push_back(blade_name(generators, b, n >= 10));
  for (std::size_t pos = 0; pos < names_.size(); ++pos) lookup_.emplace(names_[pos], pos);
}

std::shared_ptr<const Algebra> Algebra::create(const Signature& sig) {
  return std::shared_ptr<const Algebra>(new Algebra(sig));
}

std::shared_ptr<const Algebra> Algebra::create_with_view(const Signature& sig, std::string label,
                                                         std::vector<std::string> generator_names,
                                                         std::vector<std::vector<Fraction>> generators,
                                                         std::vector<std::vector<Fraction>> inverse_generators) {
  auto alg = std::shared_ptr<Algebra>(new Algebra(sig));
  alg->build_view(std::move(label), std::move(generator_names), std::move(generators), std::move(inverse_generators));
  return alg;
}

void Algebra::build_view(std::string label, std::vector<std::string> generator_names,
                         std::vector<std::vector<Fraction>> generators,
                         std::vector<std::vector<Fraction>> inverse_generators) {
  const std::size_t n = static_cast<std::size_t>(dimension());
  if (generator_names.size() != n || generators.size() != n || inverse_generators.size() != n)
    throw MathError("basis view must list one entry per generator");

  auto view = std::make_unique<BasisView>();
  view->label = std::move(label);
  view->generator_names = std::move(generator_names);
  view->generators = std::move(generators);
  view->inverse_generators = std::move(inverse_generators);

  view->to_internal.resize(size());
  view->to_display.resize(size());
  for (std::size_t pos = 0; pos < size(); ++pos) {
    for (const auto& [blade, value] : wedge_images(bits_[pos], view->generators))
      view->to_internal[pos].push_back({position_[blade], value});
    for (const auto& [blade, value] : wedge_images(bits_[pos], view->inverse_generators))
      view->to_display[pos].push_back({position_[blade], value});
  }

  bool separate = false;
  for (const auto& g : view->generator_names)
    if (is_e_index(g) && g.size() > 2) separate = true;
  display_names_.reserve(size());
  for (BladeBits b : bits_) display_names_.push_back(blade_name(view->generator_names, b, separate));
  for (std::size_t pos = 0; pos < display_names_.size(); ++pos) display_lookup_.emplace(display_names_[pos], pos);
  view_ = std::move(view);
}

BladeBits Algebra::bits_of(std::size_t position) const {
  if (position >= bits_.size())
    throw MathError("basis position " + std::to_string(position) + " out of range for " + sig_.to_string());
  return bits_[position];
}

std::size_t Algebra::position_of(BladeBits bits) const {
  if (bits >= position_.size()) throw MathError("blade bits out of range for " + sig_.to_string());
  return position_[bits];
}

std::vector<std::size_t> Algebra::grade_positions(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < bits_.size(); ++pos)
    if (grade_of(bits_[pos]) == k) out.push_back(pos);
  return out;
}

void Algebra::ensure_table() const {
  std::call_once(table_once_, [this] {
    const std::size_t m = size();
    std::vector<std::uint16_t> pos(m * m);
    std::vector<std::int8_t> sign(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        BladeProduct prod = blade_product(bits_[a], bits_[b], sig_);
        pos[a * m + b] = static_cast<std::uint16_t>(position_[prod.bits]);
        sign[a * m + b] = static_cast<std::int8_t>(prod.sign);
      }
    }
    table_pos_ = std::move(pos);
    table_sign_ = std::move(sign);
  });
}

Algebra::Term Algebra::product(std::size_t a, std::size_t b) const {
  if (dimension() <= kTableDimension) {
    ensure_table();
    const std::size_t idx = a * size() + b;
    return {table_pos_[idx], table_sign_[idx]};
  }
  BladeProduct prod = blade_product(bits_[a], bits_[b], sig_);
  return {position_[prod.bits], prod.sign};
}

std::optional<std::size_t> Algebra::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

const std::string& Algebra::display_name(std::size_t position) const {
  return view_ ? display_names_[position] : names_[position];
}

std::optional<std::size_t> Algebra::find_display(std::string_view name) const {
  if (!view_) return find(name);
  auto it = display_lookup_.find(std::string(name));
  if (it == display_lookup_.end()) return std::nullopt;
  return it->second;
}

}  // namespace gacalc
