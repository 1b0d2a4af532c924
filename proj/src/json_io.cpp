#include "thetalab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "thetalab/error.hpp"

namespace thetalab {

namespace {

template <typename Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw ThetaError(ErrorCode::kParse, std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<int> int_list(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_array()) throw ThetaError(ErrorCode::kParse, std::string(key) + " must be an array");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(x.get<int>());
  return out;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw ThetaError(ErrorCode::kParse, "complex value must be a number or {\"re\", \"im\"}");
}

Json chars_to_json(const std::vector<Characteristic>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(to_json(c));
  return out;
}

}  // namespace

double round15(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

std::string format_complex(Complex z) {
  char buf[80];
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::snprintf(buf, sizeof buf, "%.15g%s%.15gi", re,
                (std::signbit(im) ? "-" : "+"), std::fabs(im));
  return buf;
}

Json complex_to_json(Complex z) {
  return Json{{"re", round15(z.real())}, {"im", round15(z.imag())}};
}

Json to_json(const Characteristic& c) {
  return Json{{"genus", c.genus()}, {"denom", c.denom()}, {"top", c.top()},
              {"bottom", c.bottom()}};
}

Characteristic characteristic_from_json(const Json& j) {
  return guarded("characteristic", [&] {
    if (!j.is_object()) throw ThetaError(ErrorCode::kParse, "characteristic must be an object");
    Characteristic c(j.at("denom").get<int>(), int_list(j, "top"), int_list(j, "bottom"));
    if (j.contains("genus") && j.at("genus").get<int>() != c.genus()) {
      throw ThetaError(ErrorCode::kGenusMismatch, "characteristic genus field disagrees with rows");
    }
    return c;
  });
}

HalfChar half_char_from_json(const Json& j) {
  if (j.is_string()) return HalfChar::parse(j.get<std::string>());
  return HalfChar::from_char(characteristic_from_json(j));
}

Json tau_to_json(const CMatrix& tau) {
  Json rows = Json::array();
  for (int i = 0; i < tau.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < tau.cols(); ++k) row.push_back(complex_to_json(tau(i, k)));
    rows.push_back(row);
  }
  return Json{{"genus", tau.rows()}, {"entries", rows}};
}

CMatrix tau_from_json(const Json& j) {
  return guarded("period matrix", [&] {
    const Json& rows = j.at("entries");
    const int g = static_cast<int>(rows.size());
    if (g == 0) throw ThetaError(ErrorCode::kParse, "period matrix has no entries");
    if (j.contains("genus") && j.at("genus").get<int>() != g) {
      throw ThetaError(ErrorCode::kGenusMismatch, "genus field disagrees with the entries");
    }
    CMatrix tau(g, g);
    for (int i = 0; i < g; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != g) {
        throw ThetaError(ErrorCode::kParse, "period matrix must be square");
      }
      for (int k = 0; k < g; ++k) tau(i, k) = complex_from_json(rows[i][k]);
    }
    return tau;
  });
}

Json curve_to_json(const BranchSet& branch) {
  Json pts = Json::array();
  for (const auto& p : branch.points()) {
    if (p.imag() == 0.0) {
      pts.push_back(round15(p.real()));
    } else {
      pts.push_back(complex_to_json(p));
    }
  }
  return Json{{"genus", branch.genus()}, {"branch_points", pts}};
}

BranchSet curve_from_json(const Json& j) {
  return guarded("curve", [&] {
    std::vector<Complex> pts;
    for (const auto& p : j.at("branch_points")) pts.push_back(complex_from_json(p));
    BranchSet b(std::move(pts));
    if (j.contains("genus") && j.at("genus").get<int>() != b.genus()) {
      throw ThetaError(ErrorCode::kGenusMismatch,
                       "genus field disagrees with the number of branch points");
    }
    return b;
  });
}

Json to_json(const ThomaeReport& r) {
  return Json{{"max_rel_err", round15(r.max_rel_err)},
              {"worst_case", {{"T1", indices_of(r.worst_t1)}, {"T2", indices_of(r.worst_t2)}}},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"seed", r.seed},
              {"samples", r.samples}};
}

Json to_json(const Identity& id) {
  auto term = [&](const IdentityTerm& t) {
    Json j{{"sign", t.sign},
           {"chars", {t.first.to_string(), t.second.to_string()}},
           {"power", t.power}};
    if (id.kind == IdentityKind::kQuartic) j["inner_sign"] = t.inner_sign;
    return j;
  };
  Json left = Json::array(), right = Json::array(), adm = Json::array();
  for (const auto& t : id.left) left.push_back(term(t));
  for (const auto& t : id.right) right.push_back(term(t));
  for (const auto& e : id.admissible) adm.push_back(e.to_string());
  return Json{{"genus", id.genus},
              {"kind", to_string(id.kind)},
              {"a", id.a.to_string()},
              {"h", id.h.to_string()},
              {"left", left},
              {"right", right},
              {"right_scale", "1/2^" + std::to_string(id.scale_exponent)},
              {"admissible_e", adm}};
}

Json to_json(const IdentityResidual& r) {
  return Json{{"lhs", format_complex(r.lhs)},
              {"rhs", format_complex(r.rhs)},
              {"absolute", round15(r.absolute)},
              {"relative", round15(r.relative)}};
}

Json to_json(const CaseResult& r) {
  Json w = Json::array();
  for (const auto& witness : r.witnesses) w.push_back(chars_to_json(witness));
  return Json{{"case", case_name(r.id)},
              {"detected", r.detected},
              {"witness_count", r.witness_count},
              {"witnesses", w},
              {"necessary_only", r.necessary_only},
              {"note", r.note}};
}

CaseResult case_result_from_json(const Json& j) {
  return guarded("case result", [&] {
    CaseResult r;
    r.id = parse_case(j.at("case").get<std::string>());
    r.detected = j.at("detected").get<bool>();
    r.witness_count = j.at("witness_count").get<std::size_t>();
    for (const auto& w : j.at("witnesses")) {
      std::vector<Characteristic> witness;
      for (const auto& c : w) witness.push_back(characteristic_from_json(c));
      r.witnesses.push_back(std::move(witness));
    }
    r.necessary_only = j.at("necessary_only").get<bool>();
    r.note = j.at("note").get<std::string>();
    return r;
  });
}

Json to_json(const DetectionReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  return Json{{"hyperelliptic", r.hyperelliptic},
              {"scale", round15(r.scale)},
              {"thresholds",
               {{"value", r.thresholds.value}, {"gradient", r.thresholds.gradient}}},
              {"vanishers",
               {{"half", r.half_vanishers},
                {"even_half", r.even_half_vanishers},
                {"quarter", r.quarter_vanishers},
                {"sixth", r.sixth_vanishers}}},
              {"cases", cases},
              {"c2_subgroup_criterion", to_json(r.c2_subgroup)},
              {"c2_criteria_agree", r.c2_criteria_agree},
              {"violations", r.violations}};
}

DetectionReport detection_report_from_json(const Json& j) {
  return guarded("detection report", [&] {
    DetectionReport r;
    r.hyperelliptic = j.at("hyperelliptic").get<bool>();
    r.scale = j.at("scale").get<double>();
    r.thresholds.value = j.at("thresholds").at("value").get<double>();
    r.thresholds.gradient = j.at("thresholds").at("gradient").get<double>();
    const Json& v = j.at("vanishers");
    r.half_vanishers = v.at("half").get<std::size_t>();
    r.even_half_vanishers = v.at("even_half").get<std::size_t>();
    r.quarter_vanishers = v.at("quarter").get<std::size_t>();
    r.sixth_vanishers = v.at("sixth").get<std::size_t>();
    for (const auto& c : j.at("cases")) r.cases.push_back(case_result_from_json(c));
    r.c2_subgroup = case_result_from_json(j.at("c2_subgroup_criterion"));
    r.c2_criteria_agree = j.at("c2_criteria_agree").get<bool>();
    r.violations = j.at("violations").get<std::vector<std::string>>();
    return r;
  });
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ThetaError(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ThetaError(ErrorCode::kParse, "cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

}  // namespace thetalab
