#ifndef THETALAB_CHARACTERISTIC_HPP
#define THETALAB_CHARACTERISTIC_HPP

// Rational theta characteristics [a; b] = [top/N; bottom/N] and the
// half-integer special case with its mod-2 symplectic algebra.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace thetalab {

/// A characteristic with common denominator N. Entries are kept reduced
/// into [0, N). The stored denominator is the one it was built with; equality
/// compares the lowest-terms form, so [2/4] == [1/2].
class Characteristic {
 public:
  Characteristic() = default;
  /// Zero characteristic of the given genus and denominator.
  Characteristic(int genus, int denom);
  Characteristic(int denom, std::vector<int> top, std::vector<int> bottom);

  int genus() const noexcept { return static_cast<int>(top_.size()); }
  int denom() const noexcept { return denom_; }
  const std::vector<int>& top() const noexcept { return top_; }
  const std::vector<int>& bottom() const noexcept { return bottom_; }

  std::vector<double> top_values() const;
  std::vector<double> bottom_values() const;

  bool is_zero() const noexcept;
  /// Smallest k > 0 with k·c ≡ 0 (the order of the point τa + b).
  int order() const;
  /// Same point written over the smallest possible denominator.
  Characteristic reduced() const;
  /// Same point rewritten over denominator n; n must be a multiple of the
  /// reduced denominator.
  Characteristic with_denom(int n) const;
  Characteristic scaled(int k) const;

  /// Base-N integer of (top ‖ bottom), first top entry most significant.
  std::uint64_t code() const;

  friend bool operator==(const Characteristic& x, const Characteristic& y);
  /// Canonical order: lowest-terms denominator first, then code.
  friend std::strong_ordering operator<=>(const Characteristic& x,
                                          const Characteristic& y);

 private:
  int denom_ = 1;
  std::vector<int> top_;
  std::vector<int> bottom_;
};

/// Denominators the library accepts (divisors of 12).
bool is_supported_denom(int n) noexcept;

Characteristic add(const Characteristic& x, const Characteristic& y);
Characteristic negate(const Characteristic& x);
Characteristic subtract(const Characteristic& x, const Characteristic& y);

/// All characteristics of denominator N in canonical code order.
/// Throws when N^{2g} exceeds 10^7.
std::vector<Characteristic> enumerate_chars(int genus, int denom);

/// Weil-pairing exponent of two torsion points: with N = lcm of their orders
/// the value is N²·(b_x·a_y − a_x·b_y) mod N, returned with N. On half
/// periods this is the mod-2 pairing |x, y|.
struct PairingValue {
  int exponent;
  int modulus;
};
PairingValue weil_pairing(const Characteristic& x, const Characteristic& y);

std::string to_string(const Characteristic& c);

/// Half-integer characteristic packed as a 2g-bit code. Bit layout matches
/// Characteristic::code() for N = 2, so codes sort canonically.
class HalfChar {
 public:
  static constexpr int kMaxGenus = 16;

  HalfChar() = default;
  explicit HalfChar(int genus);  // zero
  HalfChar(int genus, std::uint32_t code);

  static HalfChar from_bits(const std::vector<int>& top,
                            const std::vector<int>& bottom);
  /// Throws unless 2c ≡ 0.
  static HalfChar from_char(const Characteristic& c);
  /// Compact "t1…tg/b1…bg" form of 0/1 digits.
  static HalfChar parse(std::string_view text);

  int genus() const noexcept { return genus_; }
  std::uint32_t code() const noexcept { return code_; }
  std::uint32_t top_mask() const noexcept { return code_ >> genus_; }
  std::uint32_t bottom_mask() const noexcept {
    return code_ & ((1u << genus_) - 1u);
  }
  int top(int i) const noexcept { return (code_ >> (2 * genus_ - 1 - i)) & 1; }
  int bottom(int i) const noexcept { return (code_ >> (genus_ - 1 - i)) & 1; }
  bool is_zero() const noexcept { return code_ == 0; }

  Characteristic to_char() const;
  std::string to_string() const;

  friend HalfChar operator^(HalfChar x, HalfChar y);
  friend bool operator==(HalfChar x, HalfChar y) = default;
  friend auto operator<=>(HalfChar x, HalfChar y) {
    return x.code_ <=> y.code_;
  }

 private:
  int genus_ = 0;
  std::uint32_t code_ = 0;
};

HalfChar add(HalfChar x, HalfChar y);

/// |m| = Σ m_i m'_i mod 2.
int parity_exponent(HalfChar m);
/// e_*(m) = (−1)^{|m|}.
int parity(HalfChar m);
inline bool is_even(HalfChar m) { return parity_exponent(m) == 0; }

/// |m, a| = Σ (m'_i a_i − m_i a'_i) mod 2.
int pairing(HalfChar m, HalfChar a);
/// |m, a, b| = |a, b| + |b, m| + |m, a| mod 2.
int triple_pairing(HalfChar m, HalfChar a, HalfChar b);
/// (m choose a) = (−1)^{Σ m_j a'_j}.
int binom_sign(HalfChar m, HalfChar a);

std::vector<HalfChar> enumerate_half_chars(int genus);

}  // namespace thetalab

#endif
