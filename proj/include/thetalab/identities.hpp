#ifndef THETALAB_IDENTITIES_HPP
#define THETALAB_IDENTITIES_HPP

// Theta-null identities obtained from Baker's two-variable identity:
//
//   product:  θ²[a] θ²[a⊕h] = 2^{−(g−1)} Σ_e (−1)^{|a⊕e|} (h choose a⊕e) θ²[e] θ²[e⊕h]
//   quartic:  θ⁴[a] + s θ⁴[a⊕h] = 2^{−(g−1)} Σ_e (−1)^{|a⊕e|} (θ⁴[e] + s θ⁴[e⊕h]),
//             s = (−1)^{|a,h|}
//
// with e running over one representative of each admissible pair {e, e⊕h}.

#include <string>
#include <vector>

#include "thetalab/characteristic.hpp"
#include "thetalab/theta.hpp"

namespace thetalab {

enum class IdentityKind { kProduct, kQuartic };

const char* to_string(IdentityKind kind);
IdentityKind parse_identity_kind(const std::string& text);

/// sign · θ^power[first] · θ^power[second] for the product kind,
/// sign · (θ^power[first] + inner_sign · θ^power[second]) for the quartic kind.
struct IdentityTerm {
  int sign = 1;
  HalfChar first;
  HalfChar second;
  int power = 2;
  int inner_sign = 0;
};

struct Identity {
  int genus = 0;
  IdentityKind kind = IdentityKind::kProduct;
  std::vector<IdentityTerm> left;
  std::vector<IdentityTerm> right;
  int scale_exponent = 0;  // right-hand side carries 2^{−scale_exponent}
  HalfChar a;
  HalfChar h;
  std::vector<HalfChar> admissible;
};

/// Admissible e for (a, h), keeping the smaller code of each {e, e⊕h}.
/// Throws kEmptyAdmissibleSet for h = 0.
std::vector<HalfChar> admissible_e(HalfChar a, HalfChar h, IdentityKind kind);

Identity generate_identity(HalfChar a, HalfChar h, IdentityKind kind);

struct IdentityResidual {
  Complex lhs;
  Complex rhs;
  double absolute = 0.0;
  double relative = 0.0;  // against the largest single term
};

Complex evaluate_term(const IdentityTerm& term, IdentityKind kind,
                      const std::vector<Complex>& half_nulls);

IdentityResidual verify_identity(const Identity& id, const RiemannMatrix& tau,
                                 const EvalConfig& cfg = {});
/// Same, reusing theta_null_grid(tau, 2).
IdentityResidual verify_identity(const Identity& id,
                                 const std::vector<Complex>& half_nulls);

std::string to_latex(const Identity& id);

}  // namespace thetalab

#endif
