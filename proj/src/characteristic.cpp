#include "thetalab/characteristic.hpp"

#include <bit>
#include <numeric>
#include <sstream>

#include "thetalab/error.hpp"

namespace thetalab {

namespace {

int mod(long long v, int n) {
  long long r = v % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

void require_same_genus(int g1, int g2) {
  if (g1 != g2) {
    throw ThetaError(ErrorCode::kGenusMismatch,
                     "incompatible characteristics: genus " +
                         std::to_string(g1) + " vs " + std::to_string(g2));
  }
}

void require_denom(int n) {
  if (!is_supported_denom(n)) {
    throw ThetaError(ErrorCode::kDenominator,
                     "unsupported characteristic denominator " +
                         std::to_string(n) + " (must divide 12)");
  }
}

}  // namespace

bool is_supported_denom(int n) noexcept { return n >= 1 && 12 % n == 0; }

Characteristic::Characteristic(int genus, int denom)
    : denom_(denom), top_(genus, 0), bottom_(genus, 0) {
  require_denom(denom);
  if (genus < 1) {
    throw ThetaError(ErrorCode::kConstraint, "genus must be at least 1");
  }
}

Characteristic::Characteristic(int denom, std::vector<int> top,
                               std::vector<int> bottom)
    : denom_(denom), top_(std::move(top)), bottom_(std::move(bottom)) {
  require_denom(denom);
  if (top_.empty() || top_.size() != bottom_.size()) {
    throw ThetaError(ErrorCode::kConstraint,
                     "characteristic rows must be nonempty and equally long");
  }
  for (auto& v : top_) v = mod(v, denom_);
  for (auto& v : bottom_) v = mod(v, denom_);
}

std::vector<double> Characteristic::top_values() const {
  std::vector<double> out(top_.size());
  for (std::size_t i = 0; i < top_.size(); ++i) {
    out[i] = static_cast<double>(top_[i]) / denom_;
  }
  return out;
}

std::vector<double> Characteristic::bottom_values() const {
  std::vector<double> out(bottom_.size());
  for (std::size_t i = 0; i < bottom_.size(); ++i) {
    out[i] = static_cast<double>(bottom_[i]) / denom_;
  }
  return out;
}

bool Characteristic::is_zero() const noexcept {
  for (int v : top_) if (v != 0) return false;
  for (int v : bottom_) if (v != 0) return false;
  return true;
}

Characteristic Characteristic::reduced() const {
  int d = denom_;
  for (int v : top_) d = std::gcd(d, v);
  for (int v : bottom_) d = std::gcd(d, v);
  if (d == 1) return *this;
  Characteristic r = *this;
  r.denom_ = denom_ / d;
  for (auto& v : r.top_) v /= d;
  for (auto& v : r.bottom_) v /= d;
  return r;
}

int Characteristic::order() const { return reduced().denom_; }

Characteristic Characteristic::with_denom(int n) const {
  require_denom(n);
  Characteristic r = reduced();
  if (n % r.denom_ != 0) {
    throw ThetaError(ErrorCode::kDenominator,
                     "cannot write " + thetalab::to_string(*this) +
                         " over denominator " + std::to_string(n));
  }
  const int f = n / r.denom_;
  r.denom_ = n;
  for (auto& v : r.top_) v *= f;
  for (auto& v : r.bottom_) v *= f;
  return r;
}

Characteristic Characteristic::scaled(int k) const {
  std::vector<int> t(top_), b(bottom_);
  for (auto& v : t) v = mod(static_cast<long long>(v) * k, denom_);
  for (auto& v : b) v = mod(static_cast<long long>(v) * k, denom_);
  return Characteristic(denom_, std::move(t), std::move(b));
}

std::uint64_t Characteristic::code() const {
  std::uint64_t c = 0;
  for (int v : top_) c = c * denom_ + v;
  for (int v : bottom_) c = c * denom_ + v;
  return c;
}

bool operator==(const Characteristic& x, const Characteristic& y) {
  if (x.genus() != y.genus()) return false;
  const Characteristic rx = x.reduced();
  const Characteristic ry = y.reduced();
  return rx.denom_ == ry.denom_ && rx.top_ == ry.top_ &&
         rx.bottom_ == ry.bottom_;
}

std::strong_ordering operator<=>(const Characteristic& x,
                                 const Characteristic& y) {
  if (auto c = x.genus() <=> y.genus(); c != 0) return c;
  const Characteristic rx = x.reduced();
  const Characteristic ry = y.reduced();
  if (auto c = rx.denom_ <=> ry.denom_; c != 0) return c;
  return rx.code() <=> ry.code();
}

Characteristic add(const Characteristic& x, const Characteristic& y) {
  require_same_genus(x.genus(), y.genus());
  const int n = std::lcm(x.denom(), y.denom());
  require_denom(n);
  const int fx = n / x.denom();
  const int fy = n / y.denom();
  std::vector<int> t(x.genus()), b(x.genus());
  for (int i = 0; i < x.genus(); ++i) {
    t[i] = x.top()[i] * fx + y.top()[i] * fy;
    b[i] = x.bottom()[i] * fx + y.bottom()[i] * fy;
  }
  return Characteristic(n, std::move(t), std::move(b));
}

Characteristic negate(const Characteristic& x) { return x.scaled(-1); }

Characteristic subtract(const Characteristic& x, const Characteristic& y) {
  return add(x, negate(y));
}

std::vector<Characteristic> enumerate_chars(int genus, int denom) {
  require_denom(denom);
  if (genus < 1) {
    throw ThetaError(ErrorCode::kConstraint, "genus must be at least 1");
  }
  double count = 1.0;
  for (int i = 0; i < 2 * genus; ++i) count *= denom;
  if (count > 1e7) {
    throw ThetaError(ErrorCode::kGuardExceeded,
                     "enumeration guard: " + std::to_string(denom) + "^" +
                         std::to_string(2 * genus) + " exceeds 10^7");
  }
  const auto total = static_cast<std::uint64_t>(count);
  std::vector<Characteristic> out;
  out.reserve(total);
  std::vector<int> digits(2 * genus, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 2 * genus - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(c % denom);
      c /= denom;
    }
    out.emplace_back(denom,
                     std::vector<int>(digits.begin(), digits.begin() + genus),
                     std::vector<int>(digits.begin() + genus, digits.end()));
  }
  return out;
}

PairingValue weil_pairing(const Characteristic& x, const Characteristic& y) {
  require_same_genus(x.genus(), y.genus());
  const Characteristic rx = x.reduced();
  const Characteristic ry = y.reduced();
  const long long n = std::lcm(rx.denom(), ry.denom());
  // N²·(b_x·a_y − a_x·b_y) with a_x = top/dx etc.; N² / (dx·dy) is integral.
  long long cross = 0;
  for (int i = 0; i < rx.genus(); ++i) {
    cross += static_cast<long long>(rx.bottom()[i]) * ry.top()[i] -
             static_cast<long long>(rx.top()[i]) * ry.bottom()[i];
  }
  const long long scale = (n / rx.denom()) * (n / ry.denom());
  return {mod(cross * scale, static_cast<int>(n)), static_cast<int>(n)};
}

std::string to_string(const Characteristic& c) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < c.genus(); ++i) {
    os << (i ? "," : "") << c.top()[i];
  }
  os << ';';
  for (int i = 0; i < c.genus(); ++i) {
    os << (i ? "," : "") << c.bottom()[i];
  }
  os << "]/" << c.denom();
  return os.str();
}

// ---------------------------------------------------------------------------

HalfChar::HalfChar(int genus) : HalfChar(genus, 0u) {}

HalfChar::HalfChar(int genus, std::uint32_t code) : genus_(genus), code_(code) {
  if (genus < 1 || genus > kMaxGenus) {
    throw ThetaError(ErrorCode::kConstraint,
                     "half characteristic genus out of range: " +
                         std::to_string(genus));
  }
  if (genus < kMaxGenus && (code >> (2 * genus)) != 0) {
    throw ThetaError(ErrorCode::kConstraint, "half characteristic code too wide");
  }
}

HalfChar HalfChar::from_bits(const std::vector<int>& top,
                             const std::vector<int>& bottom) {
  if (top.size() != bottom.size() || top.empty()) {
    throw ThetaError(ErrorCode::kConstraint,
                     "half characteristic rows must be nonempty and equally long");
  }
  const int g = static_cast<int>(top.size());
  std::uint32_t code = 0;
  for (int v : top) code = (code << 1) | static_cast<std::uint32_t>(mod(v, 2));
  for (int v : bottom) code = (code << 1) | static_cast<std::uint32_t>(mod(v, 2));
  return HalfChar(g, code);
}

HalfChar HalfChar::from_char(const Characteristic& c) {
  if (!c.scaled(2).is_zero()) {
    throw ThetaError(ErrorCode::kDenominator,
                     thetalab::to_string(c) + " is not a half-integer characteristic");
  }
  const Characteristic h = c.with_denom(2);
  return from_bits(h.top(), h.bottom());
}

HalfChar HalfChar::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos || slash == 0 ||
      text.size() != 2 * slash + 1) {
    throw ThetaError(ErrorCode::kParse,
                     "expected compact half characteristic \"t1..tg/b1..bg\", got \"" +
                         std::string(text) + "\"");
  }
  std::vector<int> top, bottom;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == slash) continue;
    const char ch = text[i];
    if (ch != '0' && ch != '1') {
      throw ThetaError(ErrorCode::kParse,
                       "half characteristic digits must be 0 or 1: \"" +
                           std::string(text) + "\"");
    }
    (i < slash ? top : bottom).push_back(ch - '0');
  }
  return from_bits(top, bottom);
}

Characteristic HalfChar::to_char() const {
  std::vector<int> t(genus_), b(genus_);
  for (int i = 0; i < genus_; ++i) {
    t[i] = top(i);
    b[i] = bottom(i);
  }
  return Characteristic(2, std::move(t), std::move(b));
}

std::string HalfChar::to_string() const {
  std::string s;
  for (int i = 0; i < genus_; ++i) s.push_back(static_cast<char>('0' + top(i)));
  s.push_back('/');
  for (int i = 0; i < genus_; ++i) s.push_back(static_cast<char>('0' + bottom(i)));
  return s;
}

HalfChar operator^(HalfChar x, HalfChar y) {
  require_same_genus(x.genus_, y.genus_);
  return HalfChar(x.genus_, x.code_ ^ y.code_);
}

HalfChar add(HalfChar x, HalfChar y) { return x ^ y; }

int parity_exponent(HalfChar m) {
  return std::popcount(m.top_mask() & m.bottom_mask()) & 1;
}

int parity(HalfChar m) { return parity_exponent(m) == 0 ? 1 : -1; }

int pairing(HalfChar m, HalfChar a) {
  require_same_genus(m.genus(), a.genus());
  // Subtraction and addition agree mod 2.
  return (std::popcount(m.bottom_mask() & a.top_mask()) +
          std::popcount(m.top_mask() & a.bottom_mask())) & 1;
}

int triple_pairing(HalfChar m, HalfChar a, HalfChar b) {
  return pairing(a, b) ^ pairing(b, m) ^ pairing(m, a);
}

int binom_sign(HalfChar m, HalfChar a) {
  require_same_genus(m.genus(), a.genus());
  return (std::popcount(m.top_mask() & a.bottom_mask()) & 1) ? -1 : 1;
}

std::vector<HalfChar> enumerate_half_chars(int genus) {
  if (genus < 1 || genus > 11) {
    throw ThetaError(ErrorCode::kGuardExceeded,
                     "half characteristic enumeration guard: genus " +
                         std::to_string(genus));
  }
  std::vector<HalfChar> out;
  const std::uint32_t total = 1u << (2 * genus);
  out.reserve(total);
  for (std::uint32_t c = 0; c < total; ++c) out.emplace_back(genus, c);
  return out;
}

}  // namespace thetalab
