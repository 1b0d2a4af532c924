#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thetalab/characteristic.hpp"
#include "thetalab/error.hpp"
#include "thetalab/genus3.hpp"
#include "thetalab/goepel.hpp"
#include "thetalab/hyperelliptic.hpp"
#include "thetalab/identities.hpp"
#include "thetalab/json_io.hpp"
#include "thetalab/random_tau.hpp"
#include "thetalab/theta.hpp"

namespace thetalab::cli {

namespace {

struct Options {
  int genus = 0;
  int denom = 2;
  int rank = 1;
  int samples = 10;
  std::uint64_t seed = 1;
  double tol = 0.0;  // 0 = command default
  std::string input;
  std::string tau;
  std::string chr;
  std::string z = "0";
  std::string format = "json";
  std::string case_name;
  std::string a;
  std::string h;
  std::string kind = "quartic";
  bool gradient = false;
};

struct Outcome {
  Json report;
  int code = kOk;
};

[[noreturn]] void input_error(const std::string& message) {
  throw ThetaError(ErrorCode::kParse, message);
}

double tol_or(const Options& o, double fallback) {
  if (o.tol == 0.0) return fallback;
  if (!(o.tol >= 1e-13 && o.tol <= 1e-3)) {
    throw ThetaError(ErrorCode::kConstraint, "--tol must lie in [1e-13, 1e-3]");
  }
  return o.tol;
}

void require_genus(const Options& o) {
  if (o.genus < 1) input_error("--genus is required and must be at least 1");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') input_error("cannot parse number \"" + s + "\"");
  return v;
}

// "1.5", "2i", "-i", "0.5-0.25i", "1e-3+2e-2i".
Complex parse_complex(const std::string& text) {
  if (text.empty()) input_error("empty complex number");
  if (text.back() != 'i') return {parse_real(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  if (cut == std::string::npos) return {0.0, parse_real(body)};
  return {parse_real(body.substr(0, cut)), parse_real(body.substr(cut))};
}

CVector parse_z(const std::string& text, int genus) {
  if (text == "0") return CVector::Zero(genus);
  const auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) != genus) {
    throw ThetaError(ErrorCode::kGenusMismatch, "--z needs " + std::to_string(genus) +
                                                    " comma-separated entries");
  }
  CVector z(genus);
  for (int i = 0; i < genus; ++i) z(i) = parse_complex(parts[i]);
  return z;
}

std::vector<int> parse_ints(const std::string& row) {
  std::vector<int> out;
  if (row.find(',') == std::string::npos) {
    for (char c : row) {
      if (c < '0' || c > '9') input_error("bad characteristic digit in \"" + row + "\"");
      out.push_back(c - '0');
    }
    return out;
  }
  for (const auto& p : split(row, ',')) {
    char* end = nullptr;
    const long v = std::strtol(p.c_str(), &end, 10);
    if (p.empty() || *end != '\0') input_error("bad characteristic entry \"" + p + "\"");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// "01/10" (half, 0/1 digits) or "1,0,2/0,0,0:4" (entries over a denominator).
Characteristic parse_char(const std::string& text) {
  std::string body = text;
  int denom = 2;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    body = text.substr(0, colon);
    denom = static_cast<int>(parse_real(text.substr(colon + 1)));
  }
  const auto rows = split(body, '/');
  if (rows.size() != 2) input_error("characteristic must look like \"top/bottom\"");
  return Characteristic(denom, parse_ints(rows[0]), parse_ints(rows[1]));
}

HalfChar parse_half(const std::string& text) { return HalfChar::from_char(parse_char(text)); }

Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_json(arg);
  return read_json_file(arg);
}

RiemannMatrix load_tau(const Options& o) {
  if (o.tau.empty()) input_error("--tau is required");
  return validate_period_matrix(tau_from_json(load_json_arg(o.tau)));
}

BranchSet load_curve(const Options& o) {
  if (o.input.empty()) input_error("--input is required");
  const BranchSet b = curve_from_json(load_json_arg(o.input));
  if (o.genus != 0 && o.genus != b.genus()) {
    throw ThetaError(ErrorCode::kGenusMismatch, "--genus disagrees with the curve file");
  }
  return b;
}

Json half_list(const std::vector<HalfChar>& v) {
  Json out = Json::array();
  for (const auto& m : v) out.push_back(m.to_string());
  return out;
}

// ---------------------------------------------------------------------------

Outcome chars_count(const Options& o) {
  require_genus(o);
  if (o.denom == 2) {
    std::uint64_t even = 0, odd = 0;
    for (const HalfChar& m : enumerate_half_chars(o.genus)) (is_even(m) ? even : odd)++;
    return {Json{{"even", even}, {"odd", odd}}};
  }
  return {Json{{"genus", o.genus},
               {"denom", o.denom},
               {"total", enumerate_chars(o.genus, o.denom).size()}}};
}

Outcome chars_list(const Options& o) {
  require_genus(o);
  Json rows = Json::array();
  for (const auto& c : enumerate_chars(o.genus, o.denom)) {
    Json j = to_json(c);
    if (o.denom == 2) j["parity"] = parity(HalfChar::from_char(c));
    rows.push_back(j);
  }
  return {Json{{"genus", o.genus}, {"denom", o.denom}, {"characteristics", rows}}};
}

Outcome goepel_enumerate(const Options& o) {
  require_genus(o);
  const auto groups = enumerate_goepel_groups(o.genus, o.rank);
  const auto expected = goepel_group_count(o.genus, o.rank);
  Json list = Json::array();
  for (const auto& g : groups) list.push_back(half_list(g.elements));
  const bool match = groups.size() == expected;
  return {Json{{"genus", o.genus},
               {"rank", o.rank},
               {"count", groups.size()},
               {"expected_count", expected},
               {"match", match},
               {"groups", list}},
          match ? kOk : kVerificationFailed};
}

Outcome goepel_classify(const Options& o) {
  require_genus(o);
  const auto groups = enumerate_goepel_groups(o.genus, o.rank);
  const SystemCensus want = expected_census(o.genus, o.rank);
  bool all_match = true;
  Json rows = Json::array();
  for (const auto& g : groups) {
    const SystemCensus got = census(goepel_systems(g));
    const bool match = got.all_even == want.all_even && got.all_odd == want.all_odd &&
                       got.mixed == want.mixed;
    all_match = all_match && match;
    rows.push_back(Json{{"group", half_list(g.elements)},
                        {"all_even", got.all_even},
                        {"all_odd", got.all_odd},
                        {"mixed", got.mixed},
                        {"match", match}});
  }
  return {Json{{"genus", o.genus},
               {"rank", o.rank},
               {"expected",
                {{"all_even", want.all_even}, {"all_odd", want.all_odd}, {"mixed", want.mixed}}},
               {"all_match", all_match},
               {"groups", rows}},
          all_match ? kOk : kVerificationFailed};
}

Outcome theta_eval(const Options& o) {
  const RiemannMatrix tau = load_tau(o);
  if (o.chr.empty()) input_error("--char is required");
  const Characteristic c = parse_char(o.chr);
  if (c.genus() != tau.genus()) {
    throw ThetaError(ErrorCode::kGenusMismatch, "--char genus differs from the period matrix");
  }
  const CVector z = parse_z(o.z, tau.genus());
  EvalConfig cfg;
  cfg.tol = tol_or(o, cfg.tol);
  const auto t = c.top_values();
  const auto b = c.bottom_values();
  const ThetaSum s = theta_sum(Eigen::Map<const Eigen::VectorXd>(t.data(), t.size()),
                               Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()), z, tau,
                               cfg);
  Json zs = Json::array();
  for (int i = 0; i < z.size(); ++i) zs.push_back(format_complex(z(i)));
  Json report{{"genus", tau.genus()},
              {"char", to_json(c)},
              {"z", zs},
              {"value", format_complex(s.value)},
              {"modulus", round15(std::abs(s.value))},
              {"radius", s.radius},
              {"tol", cfg.tol}};
  if (o.gradient) {
    const CVector grad = theta_gradient(c, z, tau, cfg);
    Json gs = Json::array();
    for (int i = 0; i < grad.size(); ++i) gs.push_back(format_complex(grad(i)));
    report["gradient"] = gs;
  }
  return {report};
}

Outcome curve_periods(const Options& o) {
  const CurveData cd = period_matrix(load_curve(o));
  return {Json{{"curve", curve_to_json(cd.branch)},
               {"tau", tau_to_json(cd.tau.tau())},
               {"a_periods", tau_to_json(cd.a_periods)["entries"]},
               {"b_periods", tau_to_json(cd.b_periods)["entries"]},
               {"asymmetry", round15(cd.asymmetry)}}};
}

Outcome curve_vanishing(const Options& o) {
  const CurveData cd = period_matrix(load_curve(o));
  const int g = cd.branch.genus();
  const VanishThresholds th;
  const double scale = even_null_scale(cd.tau);
  const auto grid = theta_null_grid(cd.tau, 2);
  Json predicted = Json::array(), measured = Json::array();
  bool match = true;
  const auto rows = vanishing_table(g);
  for (const auto& row : rows) {
    const double ratio = std::abs(grid[row.characteristic.code()]) / scale;
    const bool zero = ratio < th.value;
    if (row.vanishing) {
      predicted.push_back(Json{{"char", row.characteristic.to_string()},
                               {"subset", indices_of(row.subset)}});
    }
    if (zero) {
      measured.push_back(Json{{"char", row.characteristic.to_string()}, {"ratio", round15(ratio)}});
    }
    match = match && zero == row.vanishing;
  }
  return {Json{{"genus", g},
               {"even_count", rows.size()},
               {"threshold", th.value},
               {"predicted", predicted},
               {"measured", measured},
               {"match", match}},
          match ? kOk : kVerificationFailed};
}

Outcome curve_thomae(const Options& o) {
  const CurveData cd = period_matrix(load_curve(o));
  const ThomaeReport r = verify_thomae(cd, o.samples, o.seed, tol_or(o, 1e-5));
  return {to_json(r), r.pass ? kOk : kVerificationFailed};
}

Outcome curve_frobenius(const Options& o) {
  if (o.samples < 1) input_error("--samples must be positive");
  const CurveData cd = period_matrix(load_curve(o));
  const int g = cd.branch.genus();
  const double tol = tol_or(o, 1e-7);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, (1u << (2 * g)) - 1);
  double worst = -1.0, worst_rel = 0.0;
  Json worst_case;
  for (int s = 0; s < o.samples; ++s) {
    std::array<HalfChar, 4> b{HalfChar(g, pick(rng)), HalfChar(g, pick(rng)),
                              HalfChar(g, pick(rng)), HalfChar(g)};
    b[3] = b[0] ^ b[1] ^ b[2];
    std::array<CVector, 4> z;
    for (int i = 0; i < 3; ++i) {
      z[i] = s == 0 ? CVector::Zero(g) : random_argument(g, rng);
    }
    z[3] = -(z[0] + z[1] + z[2]);
    const FrobeniusResult r = frobenius_sum(b, z, cd);
    const double res = std::abs(r.sum);
    if (r.largest_term > 0.0) worst_rel = std::max(worst_rel, res / r.largest_term);
    if (res > worst) {
      worst = res;
      worst_case = Json{{"sample", s},
                        {"b", {b[0].to_string(), b[1].to_string(), b[2].to_string(),
                               b[3].to_string()}},
                        {"residual", round15(res)},
                        {"largest_term", round15(r.largest_term)}};
    }
  }
  const bool pass = worst < tol;
  return {Json{{"max_rel_err", round15(worst_rel)},
               {"max_abs_residual", round15(worst)},
               {"worst_case", worst_case},
               {"tolerance", tol},
               {"pass", pass},
               {"seed", o.seed},
               {"samples", o.samples}},
          pass ? kOk : kVerificationFailed};
}

std::vector<Identity> selected_identities(const Options& o, int genus) {
  const IdentityKind kind = parse_identity_kind(o.kind);
  if (!o.a.empty() || !o.h.empty()) {
    if (o.a.empty() || o.h.empty()) input_error("--a and --h must be given together");
    const HalfChar a = parse_half(o.a);
    const HalfChar h = parse_half(o.h);
    if (a.genus() != genus || h.genus() != genus) {
      throw ThetaError(ErrorCode::kGenusMismatch, "--a/--h genus differs from the target genus");
    }
    return {generate_identity(a, h, kind)};
  }
  if (genus > 3) {
    throw ThetaError(ErrorCode::kGuardExceeded, "listing every identity is limited to genus <= 3");
  }
  std::vector<Identity> out;
  for (const HalfChar& a : enumerate_half_chars(genus)) {
    for (const HalfChar& h : enumerate_half_chars(genus)) {
      if (h.is_zero() || admissible_e(a, h, kind).empty()) continue;
      out.push_back(generate_identity(a, h, kind));
    }
  }
  return out;
}

Outcome identities_generate(const Options& o) {
  int genus = o.genus;
  if (genus == 0 && !o.a.empty()) genus = parse_half(o.a).genus();
  if (genus < 1) input_error("--genus (or --a/--h) is required");
  const auto ids = selected_identities(o, genus);
  Json list = Json::array();
  for (const auto& id : ids) {
    Json j = to_json(id);
    j["latex"] = to_latex(id);
    list.push_back(j);
  }
  return {Json{{"genus", genus}, {"kind", o.kind}, {"count", ids.size()}, {"identities", list}}};
}

Outcome identities_verify(const Options& o) {
  const RiemannMatrix tau = load_tau(o);
  if (o.genus != 0 && o.genus != tau.genus()) {
    throw ThetaError(ErrorCode::kGenusMismatch, "--genus differs from the period matrix");
  }
  const double tol = tol_or(o, 1e-8);
  const auto ids = selected_identities(o, tau.genus());
  const auto nulls = theta_null_grid(tau, 2);
  double worst = -1.0;
  Json worst_case;
  for (const auto& id : ids) {
    const IdentityResidual r = verify_identity(id, nulls);
    if (r.relative > worst) {
      worst = r.relative;
      worst_case = Json{{"a", id.a.to_string()}, {"h", id.h.to_string()}, {"residual", to_json(r)}};
    }
  }
  const bool pass = worst < tol;
  return {Json{{"genus", tau.genus()},
               {"kind", o.kind},
               {"count", ids.size()},
               {"max_rel_err", round15(worst)},
               {"worst_case", worst_case},
               {"tolerance", tol},
               {"pass", pass}},
          pass ? kOk : kVerificationFailed};
}

Outcome detect(const Options& o) {
  EvalConfig cfg;
  cfg.tol = tol_or(o, cfg.tol);
  RiemannMatrix tau = [&] {
    if (!o.tau.empty()) return load_tau(o);
    if (!o.input.empty()) return period_matrix(load_curve(o)).tau;
    input_error("detect needs --tau or --input");
  }();
  if (tau.genus() != 3) {
    throw ThetaError(ErrorCode::kGenusMismatch, "detect needs a genus-3 period matrix");
  }
  const VanishingProfile profile = compute_profile(tau, {}, cfg);
  if (!o.case_name.empty()) {
    const CaseResult r = detect_case(profile, parse_case(o.case_name));
    return {to_json(r)};
  }
  const DetectionReport report = detect_all(profile);
  return {to_json(report), report.consistent() ? kOk : kVerificationFailed};
}

// ---------------------------------------------------------------------------

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Json& report, const std::string& format, std::ostream& out) {
  if (format == "table") {
    flatten(report, "", out);
  } else {
    out << report.dump(2) << "\n";
  }
}

void emit_error(const std::string& code, const std::string& message, std::ostream& out) {
  out << Json{{"error", {{"code", code}, {"message", message}}}}.dump(2) << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out) {
  Options o;
  CLI::App app{"Riemann theta functions, characteristics and hyperelliptic curves", "thetalab"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "json | table")
      ->check(CLI::IsMember({"json", "table"}))
      ->default_val("json");

  std::function<Outcome(const Options&)> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  Outcome (*fn)(const Options&)) {
    CLI::App* cmd = parent->add_subcommand(name, help);
    cmd->callback([&action, fn] { action = fn; });
    cmd->add_option("--format", o.format, "json | table")
        ->check(CLI::IsMember({"json", "table"}));
    return cmd;
  };

  CLI::App* chars = app.add_subcommand("chars", "theta characteristics");
  chars->require_subcommand(1);
  for (auto* c : {leaf(chars, "count", "count characteristics", chars_count),
                  leaf(chars, "list", "list characteristics", chars_list)}) {
    c->add_option("--genus", o.genus, "genus g")->required();
    c->add_option("--denom", o.denom, "denominator N (divides 12)");
  }

  CLI::App* goepel = app.add_subcommand("goepel", "Göpel groups and systems");
  goepel->require_subcommand(1);
  for (auto* c : {leaf(goepel, "enumerate", "enumerate Göpel groups", goepel_enumerate),
                  leaf(goepel, "classify", "classify Göpel systems", goepel_classify)}) {
    c->add_option("--genus", o.genus, "genus g (<= 3)")->required();
    c->add_option("--rank", o.rank, "group order 2^r");
  }

  CLI::App* theta = app.add_subcommand("theta", "theta function evaluation");
  theta->require_subcommand(1);
  {
    auto* c = leaf(theta, "eval", "evaluate θ[a;b](z, τ)", theta_eval);
    c->add_option("--tau", o.tau, "period matrix JSON file or inline JSON")->required();
    c->add_option("--char", o.chr, "\"01/10\" or \"1,0,2/0,0,0:4\"")->required();
    c->add_option("--z", o.z, "\"0\" or comma-separated complex entries");
    c->add_option("--tol", o.tol, "tail tolerance");
    c->add_flag("--gradient", o.gradient, "also report the z-gradient");
  }

  CLI::App* curve = app.add_subcommand("curve", "hyperelliptic curves");
  curve->require_subcommand(1);
  for (auto* c : {leaf(curve, "periods", "period matrix", curve_periods),
                  leaf(curve, "vanishing", "even theta-null vanishing pattern", curve_vanishing),
                  leaf(curve, "thomae", "verify Thomae ratios", curve_thomae),
                  leaf(curve, "frobenius", "verify Frobenius' theta formula", curve_frobenius)}) {
    c->add_option("--input", o.input, "curve JSON file or inline JSON")->required();
    c->add_option("--genus", o.genus, "expected genus");
    c->add_option("--samples", o.samples, "random samples");
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--tol", o.tol, "pass tolerance");
  }

  CLI::App* ids = app.add_subcommand("identities", "theta-null identities");
  ids->require_subcommand(1);
  {
    auto* gen = leaf(ids, "generate", "generate identities", identities_generate);
    auto* ver = leaf(ids, "verify", "verify identities at τ", identities_verify);
    ver->add_option("--tau", o.tau, "period matrix JSON file or inline JSON")->required();
    ver->add_option("--tol", o.tol, "pass tolerance");
    for (auto* c : {gen, ver}) {
      c->set_help_flag("--help", "Print this help message and exit");
      c->add_option("--genus", o.genus, "genus g");
      c->add_option("--a", o.a, "characteristic a");
      c->add_option("--h", o.h, "characteristic h");
      c->add_option("--kind", o.kind, "product | quartic")
          ->check(CLI::IsMember({"product", "quartic"}));
    }
  }

  {
    auto* c = leaf(&app, "detect", "genus-3 automorphism detection", detect);
    c->add_option("--tau", o.tau, "period matrix JSON file or inline JSON");
    c->add_option("--input", o.input, "curve JSON file or inline JSON");
    c->add_option("--case", o.case_name, "run a single case");
    c->add_option("--tol", o.tol, "tail tolerance");
  }

  if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
    emit_error("usage", std::string("unknown command \"") + argv[1] + "\"", out);
    return kInputError;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what(), out);
    return kInputError;
  }

  try {
    const Outcome result = action(o);
    emit(result.report, o.format, out);
    return result.code;
  } catch (const ThetaError& e) {
    emit_error(std::string(error_code_name(e.code())), e.what(), out);
    return kInputError;
  } catch (const std::exception& e) {
    emit_error("internal", e.what(), out);
    return kInputError;
  }
}

}  // namespace thetalab::cli
