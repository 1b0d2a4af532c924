#include "thetalab/genus3.hpp"

#include <algorithm>
#include <set>

#include "thetalab/error.hpp"
#include "thetalab/goepel.hpp"

namespace thetalab {

namespace {

Characteristic twice(const Characteristic& c) { return c.scaled(2).reduced(); }
Characteristic thrice(const Characteristic& c) { return c.scaled(3).reduced(); }
Characteristic plus(const Characteristic& x, const Characteristic& y) {
  return add(x, y).reduced();
}

SubgroupType half_type(const std::vector<Characteristic>& gens) {
  std::vector<HalfChar> h;
  h.reserve(gens.size());
  for (const auto& c : gens) h.push_back(HalfChar::from_char(c));
  return group_type(h);
}

bool has_type(const SubgroupType& t, int m, int n) { return t.m == m && t.n == n; }

void record(CaseResult& r, std::vector<Characteristic> witness) {
  ++r.witness_count;
  r.detected = true;
  if (r.witnesses.size() < kMaxReportedWitnesses) r.witnesses.push_back(std::move(witness));
}

bool all_distinct(const std::vector<Characteristic>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return false;
    }
  }
  return true;
}

// A pair of quarter-period theta-nulls meeting the single-pair C₂ test, with its
// derived half periods d = 2f1 and s = f1 + f2.
struct QuarterPair {
  Characteristic f1, f2, d, s;
};

std::vector<QuarterPair> c2_pairs(const VanishingProfile& p) {
  std::vector<QuarterPair> out;
  const auto& q = p.quarter;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const Characteristic& f1 = q[i].c;
      const Characteristic& f2 = q[j].c;
      if (f1 == negate(f2)) continue;
      const Characteristic d = twice(f1);
      if (d != twice(f2)) continue;
      const Characteristic s = plus(f1, f2);
      if (period_pairing(d, s) != 1) continue;
      out.push_back({f1, f2, d, s});
    }
  }
  return out;
}

// Quarter vanishers grouped by their double.
std::map<Characteristic, std::vector<const PeriodPoint*>> by_double(const VanishingProfile& p) {
  std::map<Characteristic, std::vector<const PeriodPoint*>> out;
  for (const auto& pt : p.quarter) out[twice(pt.c)].push_back(&pt);
  return out;
}

std::vector<const PeriodPoint*> order_two_halves(const VanishingProfile& p) {
  std::vector<const PeriodPoint*> out;
  for (const auto& pt : p.half) {
    if (pt.order >= 2) out.push_back(&pt);
  }
  return out;
}

CaseResult detect_v4_hyperelliptic(const VanishingProfile& p) {
  CaseResult r;
  r.id = CaseId::kV4Hyperelliptic;
  if (!p.hyperelliptic) {
    r.note = "not hyperelliptic by the even half-period census";
    return r;
  }
  for (const auto& [dbl, pts] : by_double(p)) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          record(r, {pts[i]->c, pts[j]->c, pts[k]->c});
        }
      }
    }
  }
  return r;
}

CaseResult detect_v4_non_hyperelliptic(const VanishingProfile& p) {
  CaseResult r;
  r.id = CaseId::kV4NonHyperelliptic;
  if (p.hyperelliptic) {
    r.note = "hyperelliptic by the even half-period census";
    return r;
  }
  const auto halves = order_two_halves(p);
  if (halves.empty()) return r;
  for (const auto& pair : c2_pairs(p)) {
    for (const PeriodPoint* h : halves) record(r, {h->c, pair.f1, pair.f2});
  }
  return r;
}

CaseResult detect_c3(const VanishingProfile& p) {
  CaseResult r;
  r.id = CaseId::kC3;
  const auto& s = p.sixth;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const Characteristic& f1 = s[i].c;
      const Characteristic& f2 = s[j].c;
      if (thrice(f1) != thrice(f2)) continue;
      if (period_pairing(twice(f1), plus(f1, f2)) != 1) continue;
      record(r, {f1, f2});
    }
  }
  return r;
}

CaseResult detect_c2_cubed(const VanishingProfile& p) {
  CaseResult r;
  r.id = CaseId::kC2Cubed;
  r.necessary_only = true;
  r.note = "necessary condition only";
  const auto halves = order_two_halves(p);
  if (halves.empty()) return r;
  for (const auto& [dbl, pts] : by_double(p)) {
    std::vector<const PeriodPoint*> simple;
    for (const PeriodPoint* pt : pts) {
      if (pt->order == 1) simple.push_back(pt);
    }
    for (std::size_t i = 0; i < simple.size(); ++i) {
      for (std::size_t j = i + 1; j < simple.size(); ++j) {
        for (std::size_t k = j + 1; k < simple.size(); ++k) {
          for (const PeriodPoint* h : halves) {
            record(r, {h->c, simple[i]->c, simple[j]->c, simple[k]->c});
          }
        }
      }
    }
  }
  return r;
}

// S₃ and D₄ share conditions i), ii) and differ in the type of iii).
CaseResult detect_two_pairs(const VanishingProfile& p, CaseId id, int m, int n) {
  CaseResult r;
  r.id = id;
  const auto pairs = c2_pairs(p);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto& a = pairs[i];
      const auto& b = pairs[j];
      if (a.d == b.d) continue;
      if (!all_distinct({a.f1, a.f2, b.f1, b.f2})) continue;
      if (!has_type(half_type({a.d, a.s, b.d, b.s}), m, n)) continue;
      record(r, {a.f1, a.f2, b.f1, b.f2});
    }
  }
  return r;
}

CaseResult detect_s4(const VanishingProfile& p) {
  CaseResult r;
  r.id = CaseId::kS4;
  const auto pairs = c2_pairs(p);
  if (pairs.empty()) return r;
  for (const auto& [dbl, pts] : by_double(p)) {
    for (const PeriodPoint* h1 : pts) {
      for (const PeriodPoint* h2 : pts) {
        for (const PeriodPoint* h3 : pts) {
          if (h2 == h1 || h3 == h1 || h3 == h2) continue;
          const Characteristic s2 = plus(h1->c, h2->c);
          const Characteristic s3 = plus(h1->c, h3->c);
          if (period_pairing(dbl, s2) != 1 || period_pairing(dbl, s3) != 1) continue;
          for (const auto& f : pairs) {
            if (!all_distinct({f.f1, f.f2, h1->c, h2->c, h3->c})) continue;
            if (!has_type(half_type({f.d, f.s, dbl, s2}), 2, 1)) continue;
            if (!has_type(half_type({f.d, f.s, dbl, s3}), 0, 2)) continue;
            record(r, {f.f1, f.f2, h1->c, h2->c, h3->c});
          }
        }
      }
    }
  }
  return r;
}

// C₄² ⋊ S₃ and L₃(2) share the three-pair conditions and differ in the type
// of M = ⟨y, z, 2f5, f5+f6⟩ over every hyperbolic pair (y, z) of H.
CaseResult detect_three_pairs(const VanishingProfile& p, CaseId id, int m, int n) {
  CaseResult r;
  r.id = id;
  r.note = "type of M checked for every y, z in H with |y, z| = 1";
  const auto pairs = c2_pairs(p);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto& a = pairs[i];
      const auto& b = pairs[j];
      const std::vector<Characteristic> hgens{a.d, a.s, b.d, b.s};
      if (!has_type(half_type(hgens), 2, 1)) continue;
      std::vector<HalfChar> hh;
      for (const auto& c : hgens) hh.push_back(HalfChar::from_char(c));
      const auto H = span(hh);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (k == i || k == j) continue;
        const auto& c = pairs[k];
        if (!all_distinct({a.f1, a.f2, b.f1, b.f2, c.f1, c.f2})) continue;
        if (half_type({a.d, a.s, b.d, b.s, c.d, c.s}).rank != 6) continue;
        const HalfChar cd = HalfChar::from_char(c.d);
        const HalfChar cs = HalfChar::from_char(c.s);
        bool any = false;
        bool ok = true;
        for (const HalfChar& y : H) {
          for (const HalfChar& z : H) {
            if (pairing(y, z) != 1) continue;
            any = true;
            if (!has_type(group_type({y, z, cd, cs}), m, n)) ok = false;
          }
        }
        if (any && ok) record(r, {a.f1, a.f2, b.f1, b.f2, c.f1, c.f2});
      }
    }
  }
  return r;
}

std::vector<Characteristic> sorted_unique(std::vector<Characteristic> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool VanishingProfile::is_theta_null(const Characteristic& c) const {
  return lookup.find(c.reduced()) != lookup.end();
}

int VanishingProfile::order_at(const Characteristic& c) const {
  const auto it = lookup.find(c.reduced());
  return it == lookup.end() ? 0 : it->second.order;
}

VanishingProfile make_profile(std::vector<PeriodPoint> points, double scale,
                              VanishThresholds thresholds) {
  VanishingProfile p;
  p.scale = scale;
  p.thresholds = thresholds;
  for (auto& pt : points) {
    if (pt.c.genus() != 3) {
      throw ThetaError(ErrorCode::kGenusMismatch, "genus-3 profile got a point of genus " +
                                                      std::to_string(pt.c.genus()));
    }
    pt.c = pt.c.reduced();
    if (pt.order < 1) pt.order = 1;
    p.lookup[pt.c] = pt;
  }
  for (const auto& [c, pt] : p.lookup) {
    switch (c.order()) {
      case 2:
        p.half.push_back(pt);
        if (is_even(HalfChar::from_char(c))) ++p.even_half_vanishers;
        break;
      case 4: p.quarter.push_back(pt); break;
      case 6: p.sixth.push_back(pt); break;
      default: break;
    }
  }
  p.hyperelliptic = p.even_half_vanishers == 1;
  return p;
}

std::vector<PeriodPoint> vanishing_periods(const RiemannMatrix& tau, int denom,
                                           const VanishThresholds& thresholds,
                                           const EvalConfig& cfg) {
  const double scale = even_null_scale(tau, cfg);
  const auto grid = theta_null_grid(tau, denom, cfg);
  const auto chars = enumerate_chars(tau.genus(), denom);
  std::vector<PeriodPoint> out;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const double mod = std::abs(grid[i]);
    if (mod >= thresholds.value * scale) continue;
    PeriodPoint pt;
    pt.c = chars[i].reduced();
    pt.modulus = mod;
    pt.gradient_norm = theta_gradient(chars[i], CVector::Zero(tau.genus()), tau, cfg).norm();
    pt.order = pt.gradient_norm < thresholds.gradient * scale ? 2 : 1;
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(),
            [](const PeriodPoint& x, const PeriodPoint& y) { return x.c < y.c; });
  return out;
}

VanishingProfile compute_profile(const RiemannMatrix& tau, const VanishThresholds& thresholds,
                                 const EvalConfig& cfg) {
  if (tau.genus() != 3) {
    throw ThetaError(ErrorCode::kGenusMismatch,
                     "automorphism detection needs a genus-3 period matrix");
  }
  std::vector<PeriodPoint> points = vanishing_periods(tau, 4, thresholds, cfg);
  for (auto& pt : vanishing_periods(tau, 6, thresholds, cfg)) {
    if (pt.c.order() == 3 || pt.c.order() == 6) points.push_back(std::move(pt));
  }
  return make_profile(std::move(points), even_null_scale(tau, cfg), thresholds);
}

int period_pairing(const Characteristic& x, const Characteristic& y) {
  return weil_pairing(x, y).exponent;
}

InvolutionWitness derived_groups(const Characteristic& f1, const Characteristic& f2) {
  if (f1.genus() != 3 || f2.genus() != 3) {
    throw ThetaError(ErrorCode::kGenusMismatch, "involution witnesses live in genus 3");
  }
  if (f1.order() != 4 || f2.order() != 4) {
    throw ThetaError(ErrorCode::kWitness, "f1 and f2 must be quarter periods of order 4");
  }
  InvolutionWitness w;
  w.f1 = f1.reduced();
  w.f2 = f2.reduced();
  std::vector<Characteristic> group;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      group.push_back(plus(f1.scaled(i), f2.scaled(j)));
    }
  }
  w.quarter_group = sorted_unique(group);
  if (w.quarter_group.size() != 16) {
    throw ThetaError(ErrorCode::kWitness,
                     "<f1> and <f2> intersect nontrivially; <f1, f2> is not C4 x C4");
  }
  w.half_group = sorted_unique({Characteristic(3, 1), twice(f1), twice(f2),
                                plus(twice(f1), twice(f2))});
  for (const auto& c : w.quarter_group) {
    if (c.order() == 4) w.quarter_periods.push_back(c);
  }
  return w;
}

InvolutionWitness build_involution_witness(const Characteristic& f1,
                                           const Characteristic& f2,
                                           const VanishingProfile& profile) {
  InvolutionWitness w = derived_groups(f1, f2);
  for (const auto& c : w.quarter_group) {
    if (!profile.is_theta_null(c)) {
      throw ThetaError(ErrorCode::kWitness,
                       "element " + to_string(c) + " of <f1, f2> is not a theta-null");
    }
  }
  return w;
}

bool commuting_involutions(const InvolutionWitness& w1, const InvolutionWitness& w2) {
  std::size_t common = 0;
  for (const auto& c : w1.half_group) {
    if (std::find(w2.half_group.begin(), w2.half_group.end(), c) != w2.half_group.end()) {
      ++common;
    }
  }
  return common == 2;
}

const std::vector<CaseId>& all_cases() {
  static const std::vector<CaseId> cases{
      CaseId::kC2, CaseId::kV4Hyperelliptic, CaseId::kV4NonHyperelliptic, CaseId::kC3,
      CaseId::kC2Cubed, CaseId::kS3, CaseId::kD4, CaseId::kS4, CaseId::kC4SquaredS3,
      CaseId::kL32};
  return cases;
}

const char* case_name(CaseId id) {
  switch (id) {
    case CaseId::kC2: return "C2";
    case CaseId::kV4Hyperelliptic: return "V4_hyperelliptic";
    case CaseId::kV4NonHyperelliptic: return "V4_non_hyperelliptic";
    case CaseId::kC3: return "C3";
    case CaseId::kC2Cubed: return "C2^3";
    case CaseId::kS3: return "S3";
    case CaseId::kD4: return "D4";
    case CaseId::kS4: return "S4";
    case CaseId::kC4SquaredS3: return "C4^2:S3";
    case CaseId::kL32: return "L3(2)";
  }
  return "?";
}

CaseId parse_case(const std::string& name) {
  for (CaseId id : all_cases()) {
    if (name == case_name(id)) return id;
  }
  throw ThetaError(ErrorCode::kUnsupportedCase, "unknown detection case \"" + name + "\"");
}

CaseResult detect_c2(const VanishingProfile& profile) {
  CaseResult r;
  r.id = CaseId::kC2;
  for (const auto& pair : c2_pairs(profile)) record(r, {pair.f1, pair.f2});
  return r;
}

CaseResult detect_c2_subgroup(const VanishingProfile& profile) {
  CaseResult r;
  r.id = CaseId::kC2;
  r.note = "C4 x C4 subgroup criterion";
  const auto& q = profile.quarter;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      InvolutionWitness w;
      try {
        w = build_involution_witness(q[i].c, q[j].c, profile);
      } catch (const ThetaError&) {
        continue;
      }
      if (w.half_group.size() != 4) continue;
      record(r, {w.f1, w.f2});
    }
  }
  return r;
}

CaseResult detect_case(const VanishingProfile& profile, CaseId id) {
  CaseResult r;
  switch (id) {
    case CaseId::kC2: r = detect_c2(profile); break;
    case CaseId::kV4Hyperelliptic: r = detect_v4_hyperelliptic(profile); break;
    case CaseId::kV4NonHyperelliptic: r = detect_v4_non_hyperelliptic(profile); break;
    case CaseId::kC3: r = detect_c3(profile); break;
    case CaseId::kC2Cubed: r = detect_c2_cubed(profile); break;
    case CaseId::kS3: r = detect_two_pairs(profile, CaseId::kS3, 0, 2); break;
    case CaseId::kD4: r = detect_two_pairs(profile, CaseId::kD4, 2, 1); break;
    case CaseId::kS4: r = detect_s4(profile); break;
    case CaseId::kC4SquaredS3:
      r = detect_three_pairs(profile, CaseId::kC4SquaredS3, 2, 1);
      break;
    case CaseId::kL32: r = detect_three_pairs(profile, CaseId::kL32, 0, 2); break;
  }
  r.detected = r.witness_count > 0;
  return r;
}

CaseResult detect_case(const RiemannMatrix& tau, CaseId id,
                       const VanishThresholds& thresholds, const EvalConfig& cfg) {
  return detect_case(compute_profile(tau, thresholds, cfg), id);
}

const CaseResult& DetectionReport::at(CaseId id) const {
  for (const auto& c : cases) {
    if (c.id == id) return c;
  }
  throw ThetaError(ErrorCode::kUnsupportedCase,
                   std::string("report has no entry for ") + case_name(id));
}

DetectionReport detect_all(const VanishingProfile& profile) {
  DetectionReport report;
  for (CaseId id : all_cases()) report.cases.push_back(detect_case(profile, id));
  report.c2_subgroup = detect_c2_subgroup(profile);
  report.c2_subgroup.detected = report.c2_subgroup.witness_count > 0;
  report.c2_criteria_agree = report.c2_subgroup.detected == report.at(CaseId::kC2).detected;
  report.hyperelliptic = profile.hyperelliptic;
  report.scale = profile.scale;
  report.thresholds = profile.thresholds;
  report.half_vanishers = profile.half.size();
  report.even_half_vanishers = static_cast<std::size_t>(profile.even_half_vanishers);
  report.quarter_vanishers = profile.quarter.size();
  report.sixth_vanishers = profile.sixth.size();

  static const std::pair<CaseId, CaseId> implications[] = {
      {CaseId::kV4Hyperelliptic, CaseId::kC2},  {CaseId::kV4NonHyperelliptic, CaseId::kC2},
      {CaseId::kS3, CaseId::kC2},               {CaseId::kD4, CaseId::kC2},
      {CaseId::kS4, CaseId::kD4},               {CaseId::kC4SquaredS3, CaseId::kD4},
      {CaseId::kL32, CaseId::kS3},              {CaseId::kL32, CaseId::kD4},
  };
  for (const auto& [from, to] : implications) {
    if (report.at(from).detected && !report.at(to).detected) {
      report.violations.push_back(std::string(case_name(from)) + " detected without " +
                                  case_name(to));
    }
  }
  if (!report.c2_criteria_agree) {
    report.violations.push_back("C2 pair criterion and C4 x C4 subgroup criterion disagree");
  }
  return report;
}

DetectionReport detect_all(const RiemannMatrix& tau, const VanishThresholds& thresholds,
                           const EvalConfig& cfg) {
  return detect_all(compute_profile(tau, thresholds, cfg));
}

}  // namespace thetalab
