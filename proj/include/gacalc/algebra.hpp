#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gacalc {

// Metric descriptor of G(p,q,r): p generators square to +1, q to -1, r to 0,
// in that order.
struct Signature {
  int p = 0;
  int q = 0;
  int r = 0;

  int dimension() const { return p + q + r; }
  std::size_t size() const { return std::size_t{1} << dimension(); }

  // Square of generator `i` (0-based).
  int metric(int i) const { return i < p ? 1 : (i < p + q ? -1 : 0); }

  bool operator==(const Signature&) const = default;

  std::string to_string() const;
};

// Throws MathError unless p,q,r >= 0 and 1 <= p+q+r <= kMaxDimension.
void validate(const Signature& sig);

inline constexpr int kMaxDimension = 14;

// Blades are n-bit sets: bit i set means generator e_{i+1} is a factor.
using BladeBits = std::uint32_t;

struct BladeProduct {
  BladeBits bits = 0;
  int sign = 0;  // -1, 0 or +1
};

inline int grade_of(BladeBits bits) { return __builtin_popcount(bits); }

// Sign picked up when reordering the concatenation e_a e_b into ascending order.
int reorder_sign(BladeBits a, BladeBits b);

// Geometric product of two basis blades, computed directly from the bits.
BladeProduct blade_product(BladeBits a, BladeBits b, const Signature& sig);

// Outer product of two basis blades (metric free).
BladeProduct blade_wedge(BladeBits a, BladeBits b);

// Exact small fraction used for basis-change coefficients of display views.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// A linear change of generators used for display (the conformal null basis).
// Display generator j is sum_i generators[j][i] * e_{i+1}. Both directions
// are tabulated on the whole algebra as sparse column lists: column `c` of
// `to_internal` holds the internal coefficients of display blade `c`, column
// `c` of `to_display` the display coefficients of internal blade `c`.
struct BasisView {
  std::string label;
  std::vector<std::string> generator_names;
  std::vector<std::vector<Fraction>> generators;
  std::vector<std::vector<Fraction>> inverse_generators;

  struct Entry {
    std::size_t index;
    Fraction value;
  };
  std::vector<std::vector<Entry>> to_internal;
  std::vector<std::vector<Entry>> to_display;
};

// An algebra instance: signature, graded-lexicographic basis ordering,
// basis names and an optional display view. Immutable once created.
class Algebra {
 public:
  static std::shared_ptr<const Algebra> create(const Signature& sig);

  // `generator_names` and the two generator matrices describe the display
  // basis; see BasisView.
  static std::shared_ptr<const Algebra> create_with_view(const Signature& sig, std::string label,
                                                         std::vector<std::string> generator_names,
                                                         std::vector<std::vector<Fraction>> generators,
                                                         std::vector<std::vector<Fraction>> inverse_generators);

  const Signature& signature() const { return sig_; }
  int dimension() const { return sig_.dimension(); }
  std::size_t size() const { return sig_.size(); }

  BladeBits bits_of(std::size_t position) const;
  std::size_t position_of(BladeBits bits) const;
  int grade(std::size_t position) const { return grade_of(bits_of(position)); }
  std::size_t pseudoscalar_position() const { return size() - 1; }

  // Positions of grade k, in order.
  std::vector<std::size_t> grade_positions(int k) const;

  struct Term {
    std::size_t position;
    int sign;
  };
  // Product of the basis blades at two positions.
  Term product(std::size_t a, std::size_t b) const;

  // Name of the blade at `position` in the internal (orthonormal) basis.
  const std::string& name(std::size_t position) const { return names_[position]; }
  std::optional<std::size_t> find(std::string_view name) const;

  const BasisView* view() const { return view_ ? view_.get() : nullptr; }
  // Display-basis names, equal to name() without a view.
  const std::string& display_name(std::size_t position) const;
  std::optional<std::size_t> find_display(std::string_view name) const;

  bool same_signature(const Algebra& other) const { return sig_ == other.sig_; }

 private:
  explicit Algebra(const Signature& sig);
  void build_view(std::string label, std::vector<std::string> generator_names,
                  std::vector<std::vector<Fraction>> generators,
                  std::vector<std::vector<Fraction>> inverse_generators);
  void ensure_table() const;

  Signature sig_;
  std::vector<BladeBits> bits_;
  std::vector<std::uint32_t> position_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> lookup_;
  std::unique_ptr<BasisView> view_;
  std::vector<std::string> display_names_;
  std::unordered_map<std::string, std::size_t> display_lookup_;

  // Dense product table, built lazily for dimension <= kTableDimension.
  static constexpr int kTableDimension = 8;
  mutable std::once_flag table_once_;
  mutable std::vector<std::uint16_t> table_pos_;
  mutable std::vector<std::int8_t> table_sign_;
};

// Joins generator names into a blade name: runs of "e<digits>" merge into a
// single "e" prefix ("n0", "e1", "e2", "ni" -> "n0e12ni"). The empty blade
// is "e0". With `separate`, merged indices are joined by '_' (used once any
// index has two digits).
std::string blade_name(const std::vector<std::string>& generator_names, BladeBits bits, bool separate);

}  // namespace gacalc
