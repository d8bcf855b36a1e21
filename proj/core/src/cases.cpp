#include "modmahler/cases.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mm {

using nlohmann::json;

namespace {

TorsionDivisor divisor_from_json(const json& j) {
  TorsionDivisor d;
  d.N = j.at("N").get<long>();
  for (auto& [key, val] : j.at("points").items()) {
    // "(a,b)" -> rational coefficient (JSON number or string)
    std::string k = key;
    auto comma = k.find(',');
    long a = std::stol(k.substr(1, comma - 1));
    long b = std::stol(k.substr(comma + 1, k.size() - comma - 2));
    Rat c = val.is_string() ? rat_from_string(val.get<std::string>())
                            : Rat(val.get<long>());
    d.add({a, b}, c);
  }
  return d;
}

json divisor_to_json(const TorsionDivisor& d) {
  json points = json::object();
  for (auto& [p, c] : d.pts)
    points["(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"] =
        c.get_str();
  return json{{"N", d.N}, {"points", points}};
}

}  // namespace

CaseSpec CaseSpec::from_json_text(const std::string& text) {
  json j = json::parse(text);
  CaseSpec s;
  s.name = j.at("name").get<std::string>();
  s.kind = j.value("kind", std::string("modular"));
  s.polynomial = j.at("polynomial").get<std::string>();
  std::string zv = j.value("zvar", std::string("Z"));
  s.zvar = (zv == "X") ? 0 : (zv == "Y" ? 1 : 2);
  s.tolerance = j.value("tolerance", 1e-4);
  s.expected = j.at("expected").get<std::string>();
  if (s.kind == "modular") {
    s.level = j.at("level").get<long>();
    s.unit = j.at("unit").get<std::string>();
    s.div_iota_x = divisor_from_json(j.at("milnor").at("divIotaX"));
    s.div_y = divisor_from_json(j.at("milnor").at("divY"));
    auto& cy = j.at("cycle");
    s.cycle_poly.m = cy.at("poly")[0].get<long>();
    s.cycle_poly.n = cy.at("poly")[1].get<long>();
    s.cycle_from = Cusp::parse(cy.at("from").get<std::string>());
    s.cycle_to = Cusp::parse(cy.at("to").get<std::string>());
    s.multiplicity = cy.value("multiplicity", 1L);
    s.degeneracy = j.value("degeneracy", false);
    if (j.contains("residueParams")) {
      auto& rp = j.at("residueParams");
      s.residue_params = std::array<long, 3>{rp[0].get<long>(), rp[1].get<long>(),
                                             rp[2].get<long>()};
    }
    if (j.contains("offsets")) {
      auto& of = j.at("offsets");
      s.offset_rational = rat_from_string(of.value("rational", std::string("0")));
      if (of.contains("log"))
        for (auto& [p, c] : of.at("log").items())
          s.offset_log[std::stol(p)] = rat_from_string(c.get<std::string>());
    }
    s.rescale = rat_from_string(j.at("rescale").get<std::string>());
    s.target_level = j.at("targetLevel").get<long>();
  }
  return s;
}

std::string CaseSpec::to_json() const {
  json j;
  j["name"] = name;
  j["kind"] = kind;
  j["polynomial"] = polynomial;
  j["zvar"] = (zvar == 0) ? "X" : (zvar == 1 ? "Y" : "Z");
  j["tolerance"] = tolerance;
  j["expected"] = expected;
  if (kind == "modular") {
    j["level"] = level;
    j["unit"] = unit;
    j["milnor"] = {{"divIotaX", divisor_to_json(div_iota_x)},
                   {"divY", divisor_to_json(div_y)}};
    j["cycle"] = {{"poly", {cycle_poly.m, cycle_poly.n}},
                  {"from", cycle_from.str()},
                  {"to", cycle_to.str()},
                  {"multiplicity", multiplicity}};
    j["degeneracy"] = degeneracy;
    if (residue_params)
      j["residueParams"] = {(*residue_params)[0], (*residue_params)[1],
                            (*residue_params)[2]};
    json logj = json::object();
    for (auto& [p, c] : offset_log) logj[std::to_string(p)] = c.get_str();
    j["offsets"] = {{"rational", offset_rational.get_str()}, {"log", logj}};
    j["rescale"] = rescale.get_str();
    j["targetLevel"] = target_level;
  }
  return j.dump(2);
}

CaseRegistry::CaseRegistry() {
  const char* names[] = {"P2", "Q", "R", "P6", "P26", "E4", "smyth3"};
  for (const char* n : names) {
    std::string path = data_dir() + "/cases/" + n + ".json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("case file not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    cases_.push_back(CaseSpec::from_json_text(ss.str()));
    if (cases_.back().name != n)
      throw std::runtime_error("case name mismatch in " + path);
  }
}

const CaseRegistry& CaseRegistry::instance() {
  static CaseRegistry reg;
  return reg;
}

std::vector<std::string> CaseRegistry::names() const {
  std::vector<std::string> out;
  for (auto& c : cases_) out.push_back(c.name);
  return out;
}

const CaseSpec& CaseRegistry::get(const std::string& name) const {
  for (auto& c : cases_)
    if (c.name == name) return c;
  throw std::invalid_argument("unknown case: " + name);
}

namespace {

// --- expected-RHS expression evaluation ------------------------------------

long double eval_factor(const std::string& f, long double prec) {
  const long double pi = 3.14159265358979323846264338327950288L;
  if (f.rfind("Lambda(", 0) == 0) {
    auto comma = f.find(',');
    std::string label = f.substr(7, comma - 7);
    long double s = std::stold(f.substr(comma + 1, f.size() - comma - 2));
    const NewformTable& t = newform(label);
    int eps = fricke_sign(t, t.level);
    return lambda_cusp(t, t.level, s, eps, prec);
  }
  if (f.rfind("log(", 0) == 0)
    return std::log(std::stold(f.substr(4, f.size() - 5)));
  if (f == "zeta(3)") return zeta3();
  if (f == "pi") return pi;
  if (f.rfind("pi^", 0) == 0) return std::pow(pi, std::stold(f.substr(3)));
  // rational number
  return to_ld(rat_from_string(f));
}

long double eval_term(const std::string& term, long double prec) {
  // product/quotient of factors
  long double acc = 1;
  std::string cur;
  char op = '*';
  int depth = 0;
  auto flush = [&]() {
    if (cur.empty()) return;
    long double v = eval_factor(cur, prec);
    acc = (op == '*') ? acc * v : acc / v;
    cur.clear();
  };
  for (char c : term) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '*' || c == '/')) {
      flush();
      op = c;
    } else {
      cur += c;
    }
  }
  flush();
  return acc;
}

}  // namespace

long double eval_rhs_expression(const std::string& expr, long double prec) {
  std::string s;
  for (char c : expr)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  long double total = 0;
  std::string term;
  int sign = 1, depth = 0;
  bool at_start = true;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-') && !at_start) {
      total += sign * eval_term(term, prec);
      term.clear();
      sign = (c == '-') ? -1 : 1;
      continue;
    }
    if (at_start && (c == '+' || c == '-')) {
      sign = (c == '-') ? -1 : 1;
      at_start = false;
      continue;
    }
    term += c;
    at_start = false;
  }
  if (!term.empty()) total += sign * eval_term(term, prec);
  return total;
}

namespace {

struct RhsExact {
  std::map<std::string, Rat> lambda_coeff;  // Lambda_{level}(label, 3) terms
  ClosedFormValue cfv;
  std::string str() const {
    std::ostringstream os;
    bool any = false;
    for (auto& [label, c] : lambda_coeff) {
      if (c == 0) continue;
      if (any) os << " + ";
      os << c.get_str() << "*Lambda(" << label << ",3)";
      any = true;
    }
    std::string cs = cfv.str();
    if (cs != "0") {
      if (any) os << " + ";
      os << cs;
      any = true;
    }
    if (!any) os << "0";
    return os.str();
  }
};

void scale_cfv(ClosedFormValue* v, const Rat& k) {
  v->c_one *= k;
  for (auto& [p, c] : v->c_log_prime) c *= k;
  v->c_log_pi *= k;
  v->c_zeta3_over_pi2 *= k;
  v->numeric_extra *= to_ld(k);
}

}  // namespace

VerificationReport verify_case(const CaseSpec& spec, const VerifyOptions& opt) {
  VerificationReport rep;
  rep.case_name = spec.name;
  rep.tolerance = opt.tolerance > 0 ? opt.tolerance : spec.tolerance;

  auto abort_with = [&](const std::string& stage, const std::string& detail) {
    rep.aborted = true;
    rep.abort_stage = stage;
    rep.abort_detail = detail;
    rep.pass = false;
    return rep;
  };

  LaurentPoly3 poly = LaurentPoly3::parse(spec.polynomial);
  rep.expected_value = eval_rhs_expression(spec.expected, opt.lvalue_precision);

  long double rhs_total[2] = {0, 0};
  std::string rhs_sym[2];
  if (spec.kind == "modular") {
    auto t0 = std::chrono::steady_clock::now();

    // 1. unit -> weight-0 Eisenstein combo
    UnitProduct unit = UnitProduct::parse(spec.unit);
    Eis0FromUnit u = unit_to_eis0(unit);
    Cyclotomic modulus = (u.prefactor * u.prefactor.conj()).canonical();
    if (!(modulus == Cyclotomic(Rat(1))))
      return abort_with("unit", "unit prefactor does not have modulus 1");

    // 2. Milnor divisor data -> weight-1 combo
    EisCombo milnor = milnor_to_eis(spec.div_iota_x, spec.div_y);

    EisCombo w0 = u.combo, w1 = milnor;
    long n_rz = spec.level;
    ManinDecomposition dec;
    if (spec.degeneracy) {
      if (spec.level != 4)
        return abort_with("degeneracy", "only the level 4 -> 8 map is supported");
      w0 = level_degeneracy_pullback(w0);
      w1 = level_degeneracy_pullback(w1);
      n_rz = 8;
      // the pushforward cycle is X{0,oo} itself; the configured cycle
      // (2X-Y){1/2,oo} is its image and is recorded for documentation
      ShokurovTerm t{Rat(1), Mat2{}, 'X'};
      dec.terms.push_back(t);
      dec.segments.push_back(Mat2{});
    } else {
      dec = manin_decompose(spec.cycle_poly, spec.cycle_from, spec.cycle_to, true);
    }

    PhiCombo base = make_base_phi(w0, w1);

    // 3. gates
    if (spec.residue_params) {
      auto [b, bp, d] = *spec.residue_params;
      if (!residue_trivial_check(b, bp, d, n_rz))
        return abort_with("residue_trivial_check",
                          "configured (b,b',d) fails the triviality criterion");
    }
    if (!spec.degeneracy) {
      std::string diag;
      if (!path_residue_gate(base, dec, spec.cycle_poly, &diag))
        return abort_with("stokes-residues", diag);
    }
    PhiCombo phi = spec.degeneracy ? base : phi_pullback(base, dec.terms);
    rep.phi_str = phi.str();
    ConvergenceReport conv = convergence_check(phi);
    if (!conv.x_converges)
      return abort_with("convergence", "condition (1)/(2) fails for the assembled phi");
    if (conv.structural_warning)
      return abort_with("convergence",
                        "log combination vanishes numerically but not structurally");

    // 4. Rogers-Zudilin product and identification
    RZProduct F;
    try {
      F = phi_to_F(phi);
    } catch (const UnbalancedFamilyError& e) {
      return abort_with("rz-balance", e.what());
    }
    FormIdentification ident =
        expand_and_identify(F, spec.rescale, spec.target_level, opt.extra_order);
    if (!ident.identified) return abort_with("identification", ident.diagnostic);
    if (!ident.constant_consistent)
      return abort_with("identification", "constant-term consistency check failed");
    {
      std::ostringstream os;
      os << "cusp: {";
      for (auto& [l, c] : ident.cusp) os << l << ": " << c.get_str() << ", ";
      os << "} eis: {";
      for (auto& [c, e] : ident.eis) os << e.label() << ": " << c.get_str() << ", ";
      os << "}";
      rep.identification = os.str();
      rep.ident = ident;
    }

    // 5. L-values
    RhsExact lin;
    for (auto& [label, c] : ident.cusp) {
      std::string base_label = label.substr(0, label.find('@'));
      const NewformTable& t = newform(base_label);
      int eps = fricke_sign(t, t.level);
      // Lambda(f(shift .), 0) = eps * Lambda_{level}(f, 3) at s = 0
      lin.lambda_coeff[base_label] += c * eps;
    }
    std::vector<EisTerm> eterms;
    for (auto& [c, e] : ident.eis) {
      if (e.combo == 0) {
        eterms.push_back({Cyclotomic(c), e.phi, e.psi, e.t});
      } else if (e.combo == 1) {
        eterms.push_back({Cyclotomic(c), e.phi, e.psi, e.t});
        eterms.push_back({Cyclotomic(c), e.phi.conjugate(), e.psi.conjugate(), e.t});
      } else {
        Cyclotomic ic = Cyclotomic(c) * Cyclotomic::root_of_unity(4, 1);
        eterms.push_back({ic, e.phi, e.psi, e.t});
        eterms.push_back({-ic, e.phi.conjugate(), e.psi.conjugate(), e.t});
      }
    }
    if (!eterms.empty()) {
      try {
        lin.cfv = lambda_eis_reg(eterms, spec.target_level);
      } catch (const PoleError& e) {
        return abort_with("lambda-regularization", e.what());
      }
    }

    // 6. assemble RHS = offsets ± K * Lambda-part
    Rat K = phi.scale * Rat(spec.multiplicity) * Rat(3) /
            Rat(n_rz * n_rz * n_rz);
    long double lam_cusp_total = 0;
    for (auto& [label, c] : lin.lambda_coeff) {
      const NewformTable& t = newform(label);
      int eps = fricke_sign(t, t.level);
      lam_cusp_total +=
          to_ld(c) * lambda_cusp(t, t.level, 3.0L, eps, opt.lvalue_precision);
    }
    long double lam_total = lam_cusp_total + lin.cfv.value();
    long double offset_value = to_ld(spec.offset_rational);
    for (auto& [p, c] : spec.offset_log)
      offset_value += to_ld(c) * std::log(static_cast<long double>(p));

    for (int si = 0; si < 2; ++si) {
      int s = si == 0 ? 1 : -1;
      rhs_total[si] = offset_value + s * to_ld(K) * lam_total;
      RhsExact scaled = lin;
      Rat sk = K * s;
      for (auto& [l, c] : scaled.lambda_coeff) c *= sk;
      scale_cfv(&scaled.cfv, sk);
      scaled.cfv.c_one += spec.offset_rational;
      for (auto& [p, c] : spec.offset_log) scaled.cfv.c_log_prime[p] += c;
      rhs_sym[si] = scaled.str();
    }
    rep.seconds_rhs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  // 7. Mahler side
  {
    auto t0 = std::chrono::steady_clock::now();
    TorusQuadrature quad;
    if (opt.grid > 0) quad.base_n = opt.grid;
    if (opt.levels > 0) quad.levels = opt.levels;
    quad.threads = opt.threads;
    MahlerEstimate est = mahler_measure(poly, quad, spec.zvar);
    rep.lhs = est.value;
    rep.lhs_error = est.error;
    rep.seconds_lhs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opt.monte_carlo)
      rep.monte_carlo = mahler_montecarlo(poly, opt.mc_samples, opt.seed);
  }

  if (spec.kind == "modular") {
    // resolve the global sign by the final numerical match
    long double d0 = std::abs(rep.lhs - rhs_total[0]);
    long double d1 = std::abs(rep.lhs - rhs_total[1]);
    int si = d0 <= d1 ? 0 : 1;
    if (std::abs(rhs_total[0] - rhs_total[1]) < 10 * rep.tolerance) {
      rep.aborted = true;
      rep.abort_stage = "sign-resolution";
      rep.abort_detail = "candidate signs are numerically indistinguishable";
      rep.pass = false;
      return rep;
    }
    rep.resolved_sign = si == 0 ? 1 : -1;
    rep.rhs = rhs_total[si];
    rep.rhs_symbolic = rhs_sym[si];
  } else {
    rep.rhs = rep.expected_value;
    rep.rhs_symbolic = spec.expected;
  }
  rep.abs_diff = std::abs(rep.lhs - rep.rhs);
  rep.rel_diff = rep.abs_diff / std::max(std::abs(rep.rhs), 1e-30L);
  rep.pass = !rep.aborted && rep.abs_diff < rep.tolerance;
  return rep;
}

VerificationReport verify_case(const std::string& name, const VerifyOptions& opt) {
  return verify_case(CaseRegistry::instance().get(name), opt);
}

std::string VerificationReport::json() const {
  nlohmann::json j;
  j["case"] = case_name;
  j["pass"] = pass;
  if (aborted) {
    j["aborted"] = true;
    j["stage"] = abort_stage;
    j["detail"] = abort_detail;
  }
  j["lhs"] = static_cast<double>(lhs);
  j["lhsError"] = static_cast<double>(lhs_error);
  j["rhs"] = static_cast<double>(rhs);
  j["rhsSymbolic"] = rhs_symbolic;
  j["expected"] = static_cast<double>(expected_value);
  j["absDiff"] = static_cast<double>(abs_diff);
  j["relDiff"] = static_cast<double>(rel_diff);
  j["tolerance"] = tolerance;
  j["resolvedSign"] = resolved_sign;
  if (ident) {
    nlohmann::json idj;
    nlohmann::json cuspj = nlohmann::json::object();
    for (auto& [label, c] : ident->cusp) cuspj[label] = c.get_str();
    idj["cusp"] = cuspj;
    nlohmann::json eisj = nlohmann::json::array();
    for (auto& [c, e] : ident->eis)
      eisj.push_back({{"phi", e.phi.name()},
                      {"psi", e.psi.name()},
                      {"t", e.t},
                      {"combo", e.combo},
                      {"coeff", c.get_str()}});
    idj["eis"] = eisj;
    idj["residual"] = 0;  // identification requires an exactly consistent system
    nlohmann::json symj = nlohmann::json::object();
    for (auto& [sym, v] : ident->symbols) symj[sym.str()] = v.get_str();
    idj["constants"] = symj;
    idj["targetLevel"] = ident->target_level;
    idj["rows"] = ident->rows_used;
    j["identification"] = idj;
  } else {
    j["identification"] = identification;
  }
  j["secondsMahler"] = seconds_lhs;
  j["secondsLvalue"] = seconds_rhs;
  if (monte_carlo) {
    j["monteCarlo"] = {{"value", static_cast<double>(monte_carlo->value)},
                       {"stderr", static_cast<double>(monte_carlo->error)},
                       {"samples", monte_carlo->nodes}};
  }
  return j.dump(2);
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << case_name << ": ";
  if (aborted) {
    os << "ABORT at " << abort_stage << " (" << abort_detail << ")";
    return os.str();
  }
  os << (pass ? "PASS" : "FAIL") << "  m = " << static_cast<double>(lhs)
     << " (±" << static_cast<double>(lhs_error) << ")"
     << "  rhs = " << static_cast<double>(rhs) << " [" << rhs_symbolic << "]"
     << "  |diff| = " << static_cast<double>(abs_diff) << " (tol " << tolerance
     << ")";
  return os.str();
}

}  // namespace mm
