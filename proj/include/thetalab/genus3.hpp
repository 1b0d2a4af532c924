#ifndef THETALAB_GENUS3_HPP
#define THETALAB_GENUS3_HPP

// Automorphism detection for genus-3 Jacobians from the vanishing pattern of
// theta-nulls at half, quarter and sixth periods.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "thetalab/characteristic.hpp"
#include "thetalab/theta.hpp"

namespace thetalab {

/// A torsion point τa + b, kept in lowest terms, with its theta-null data.
struct PeriodPoint {
  Characteristic c;
  double modulus = 0.0;
  double gradient_norm = 0.0;
  int order = 0;  // vanishing order: 0, 1, or 2 (at least 2)
};

/// All vanishing theta-nulls at points of order dividing 4 or 6.
struct VanishingProfile {
  double scale = 1.0;  // max |θ[m](0)| over even half characteristics
  VanishThresholds thresholds;
  std::vector<PeriodPoint> half;     // exact order 2
  std::vector<PeriodPoint> quarter;  // exact order 4
  std::vector<PeriodPoint> sixth;    // exact order 6
  std::map<Characteristic, PeriodPoint> lookup;  // every vanisher, any order
  int even_half_vanishers = 0;
  bool hyperelliptic = false;  // exactly one even half-period theta-null vanishes

  bool is_theta_null(const Characteristic& c) const;
  /// 0 for non-vanishers.
  int order_at(const Characteristic& c) const;
};

/// Builds a profile from explicit points, for tests and external data.
VanishingProfile make_profile(std::vector<PeriodPoint> points, double scale = 1.0,
                              VanishThresholds thresholds = {});

/// Points of denominator N whose theta-null is below the vanish threshold,
/// in canonical order, with gradient norms and vanishing orders filled in.
std::vector<PeriodPoint> vanishing_periods(const RiemannMatrix& tau, int denom,
                                           const VanishThresholds& thresholds = {},
                                           const EvalConfig& cfg = {});

VanishingProfile compute_profile(const RiemannMatrix& tau,
                                 const VanishThresholds& thresholds = {},
                                 const EvalConfig& cfg = {});

/// |x, y| as the Weil-pairing exponent (the mod-2 pairing on half periods).
int period_pairing(const Characteristic& x, const Characteristic& y);

struct InvolutionWitness {
  Characteristic f1;
  Characteristic f2;
  std::vector<Characteristic> half_group;     // J = ⟨2f1, 2f2⟩
  std::vector<Characteristic> quarter_group;  // JJ = ⟨f1, f2⟩
  std::vector<Characteristic> quarter_periods;  // the 12 of exact order 4
};

/// The groups generated by f1, f2 with no vanishing test. Throws kWitness
/// unless f1, f2 have order 4 and ⟨f1⟩ ∩ ⟨f2⟩ = {0}.
InvolutionWitness derived_groups(const Characteristic& f1, const Characteristic& f2);

/// derived_groups plus the requirement that every element of ⟨f1, f2⟩ is a
/// theta-null; throws kWitness otherwise.
InvolutionWitness build_involution_witness(const Characteristic& f1,
                                           const Characteristic& f2,
                                           const VanishingProfile& profile);

/// |J₁ ∩ J₂| == 2.
bool commuting_involutions(const InvolutionWitness& w1, const InvolutionWitness& w2);

enum class CaseId {
  kC2,
  kV4Hyperelliptic,
  kV4NonHyperelliptic,
  kC3,
  kC2Cubed,
  kS3,
  kD4,
  kS4,
  kC4SquaredS3,
  kL32,
};

const std::vector<CaseId>& all_cases();
const char* case_name(CaseId id);
CaseId parse_case(const std::string& name);

struct CaseResult {
  CaseId id = CaseId::kC2;
  bool detected = false;
  std::size_t witness_count = 0;
  std::vector<std::vector<Characteristic>> witnesses;  // first few, in search order
  bool necessary_only = false;
  std::string note;
};

inline constexpr std::size_t kMaxReportedWitnesses = 16;

CaseResult detect_case(const VanishingProfile& profile, CaseId id);
CaseResult detect_case(const RiemannMatrix& tau, CaseId id,
                       const VanishThresholds& thresholds = {},
                       const EvalConfig& cfg = {});

/// Pairs of quarter-period theta-nulls f1 ≠ ±f2 with 2f1 = 2f2 and
/// |2f1, f1 + f2| = 1.
CaseResult detect_c2(const VanishingProfile& profile);

/// Pairs (f1, f2) meeting the C₄ × C₄ criterion: ⟨f1, f2⟩ ≅ C₄ × C₄, every
/// element a theta-null, ⟨2f1, 2f2⟩ a Klein four-group of half periods.
CaseResult detect_c2_subgroup(const VanishingProfile& profile);

struct DetectionReport {
  std::vector<CaseResult> cases;
  CaseResult c2_subgroup;
  bool c2_criteria_agree = true;
  bool hyperelliptic = false;
  double scale = 0.0;
  VanishThresholds thresholds;
  std::size_t half_vanishers = 0;
  std::size_t even_half_vanishers = 0;
  std::size_t quarter_vanishers = 0;
  std::size_t sixth_vanishers = 0;
  std::vector<std::string> violations;

  const CaseResult& at(CaseId id) const;
  bool consistent() const { return violations.empty(); }
};

DetectionReport detect_all(const VanishingProfile& profile);
DetectionReport detect_all(const RiemannMatrix& tau,
                           const VanishThresholds& thresholds = {},
                           const EvalConfig& cfg = {});

}  // namespace thetalab

#endif
