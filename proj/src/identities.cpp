#include "thetalab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thetalab/error.hpp"

namespace thetalab {

const char* to_string(IdentityKind kind) {
  return kind == IdentityKind::kProduct ? "product" : "quartic";
}

IdentityKind parse_identity_kind(const std::string& text) {
  if (text == "product") return IdentityKind::kProduct;
  if (text == "quartic") return IdentityKind::kQuartic;
  throw ThetaError(ErrorCode::kParse,
                   "identity kind must be \"product\" or \"quartic\", got \"" + text + "\"");
}

std::vector<HalfChar> admissible_e(HalfChar a, HalfChar h, IdentityKind kind) {
  if (a.genus() != h.genus()) {
    throw ThetaError(ErrorCode::kGenusMismatch, "a and h have different genus");
  }
  if (h.is_zero()) {
    throw ThetaError(ErrorCode::kEmptyAdmissibleSet,
                     "h = 0 gives e = e⊕h for every e; no admissible set");
  }
  std::vector<HalfChar> out;
  for (const HalfChar& e : enumerate_half_chars(a.genus())) {
    const HalfChar eh = e ^ h;
    if (eh < e) continue;
    if (!is_even(e) || !is_even(eh)) continue;
    if (kind == IdentityKind::kProduct) {
      if (pairing(a ^ e, h) != 0) continue;
    } else {
      if ((parity_exponent(h) + pairing(e, h)) % 2 != 0) continue;
    }
    out.push_back(e);
  }
  return out;
}

Identity generate_identity(HalfChar a, HalfChar h, IdentityKind kind) {
  Identity id;
  id.genus = a.genus();
  id.kind = kind;
  id.a = a;
  id.h = h;
  id.admissible = admissible_e(a, h, kind);
  if (id.admissible.empty()) {
    throw ThetaError(ErrorCode::kEmptyAdmissibleSet,
                     "no admissible e for a = " + a.to_string() + ", h = " + h.to_string());
  }
  id.scale_exponent = id.genus - 1;
  if (kind == IdentityKind::kProduct) {
    id.left.push_back({1, a, a ^ h, 2, 0});
    for (const HalfChar& e : id.admissible) {
      const int sign = parity(a ^ e) * binom_sign(h, a ^ e);
      id.right.push_back({sign, e, e ^ h, 2, 0});
    }
  } else {
    const int s = pairing(a, h) ? -1 : 1;
    id.left.push_back({1, a, a ^ h, 4, s});
    for (const HalfChar& e : id.admissible) {
      id.right.push_back({parity(a ^ e), e, e ^ h, 4, s});
    }
  }
  return id;
}

Complex evaluate_term(const IdentityTerm& term, IdentityKind kind,
                      const std::vector<Complex>& half_nulls) {
  const Complex x = std::pow(half_nulls.at(term.first.code()), term.power);
  const Complex y = std::pow(half_nulls.at(term.second.code()), term.power);
  const Complex inner = kind == IdentityKind::kProduct ? x * y
                                                       : x + double(term.inner_sign) * y;
  return double(term.sign) * inner;
}

IdentityResidual verify_identity(const Identity& id,
                                 const std::vector<Complex>& half_nulls) {
  if (half_nulls.size() != (std::size_t{1} << (2 * id.genus))) {
    throw ThetaError(ErrorCode::kGenusMismatch,
                     "theta-null table does not match the identity genus " +
                         std::to_string(id.genus));
  }
  IdentityResidual r{{0.0, 0.0}, {0.0, 0.0}, 0.0, 0.0};
  double largest = 0.0;
  for (const auto& t : id.left) {
    const Complex v = evaluate_term(t, id.kind, half_nulls);
    r.lhs += v;
    largest = std::max(largest, std::abs(v));
  }
  const double scale = std::ldexp(1.0, -id.scale_exponent);
  for (const auto& t : id.right) {
    const Complex v = scale * evaluate_term(t, id.kind, half_nulls);
    r.rhs += v;
    largest = std::max(largest, std::abs(v));
  }
  for (const auto& m : id.admissible) {
    largest = std::max(largest, std::pow(std::abs(half_nulls[m.code()]), 4));
  }
  r.absolute = std::abs(r.lhs - r.rhs);
  r.relative = largest > 0.0 ? r.absolute / largest : r.absolute;
  return r;
}

IdentityResidual verify_identity(const Identity& id, const RiemannMatrix& tau,
                                 const EvalConfig& cfg) {
  if (tau.genus() != id.genus) {
    throw ThetaError(ErrorCode::kGenusMismatch,
                     "identity of genus " + std::to_string(id.genus) +
                         " evaluated at a period matrix of genus " +
                         std::to_string(tau.genus()));
  }
  return verify_identity(id, theta_null_grid(tau, 2, cfg));
}

namespace {

std::string latex_char(HalfChar m) {
  std::ostringstream os;
  os << "\\begin{bmatrix}";
  for (int i = 0; i < m.genus(); ++i) os << (i ? " & " : "") << m.top(i);
  os << " \\\\ ";
  for (int i = 0; i < m.genus(); ++i) os << (i ? " & " : "") << m.bottom(i);
  os << "\\end{bmatrix}";
  return os.str();
}

std::string latex_term(const IdentityTerm& t, IdentityKind kind, bool leading) {
  std::ostringstream os;
  os << (t.sign < 0 ? " - " : (leading ? "" : " + "));
  const std::string p = std::to_string(t.power);
  const std::string x = "\\theta^{" + p + "}" + latex_char(t.first);
  const std::string y = "\\theta^{" + p + "}" + latex_char(t.second);
  if (kind == IdentityKind::kProduct) {
    os << x << y;
  } else {
    os << "\\left(" << x << (t.inner_sign < 0 ? " - " : " + ") << y << "\\right)";
  }
  return os.str();
}

}  // namespace

std::string to_latex(const Identity& id) {
  std::ostringstream os;
  for (std::size_t i = 0; i < id.left.size(); ++i) {
    os << latex_term(id.left[i], id.kind, i == 0);
  }
  os << " = ";
  if (id.scale_exponent > 0) os << "\\frac{1}{2^{" << id.scale_exponent << "}}";
  os << "\\left(";
  for (std::size_t i = 0; i < id.right.size(); ++i) {
    os << latex_term(id.right[i], id.kind, i == 0);
  }
  os << "\\right)";
  return os.str();
}

}  // namespace thetalab
