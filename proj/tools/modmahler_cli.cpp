// Command-line front end: verify registered Mahler-measure identities and
// poke at the individual pipeline stages (q-expansions, Siegel units,
// Manin decompositions, L-values, torus quadrature).
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "modmahler/cases.hpp"

using namespace mm;

namespace {

int cmd_verify(const std::string& name, const VerifyOptions& opt, bool as_json) {
  VerificationReport rep = verify_case(name, opt);
  if (as_json)
    std::cout << rep.json() << "\n";
  else
    std::cout << rep.summary() << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_mahler(const std::string& poly, int grid, int levels, long mc,
               std::uint64_t seed, bool as_json) {
  LaurentPoly3 p = LaurentPoly3::parse(poly);
  TorusQuadrature quad;
  if (grid > 0) quad.base_n = grid;
  if (levels > 0) quad.levels = levels;
  MahlerEstimate est = mahler_measure(p, quad);
  if (as_json) {
    printf("{\"value\": %.12Lg, \"error\": %.3Lg, \"nodes\": %zu, \"seconds\": %.3f}\n",
           est.value, est.error, est.nodes, est.seconds);
  } else {
    printf("m(P) = %.10Lf  (est. error %.2Lg, %zu nodes, %.2fs)\n", est.value,
           est.error, est.nodes, est.seconds);
  }
  if (mc > 0) {
    MahlerEstimate m = mahler_montecarlo(p, static_cast<std::size_t>(mc), seed);
    printf("monte-carlo: %.8Lf ± %.2Lg (%zu samples)\n", m.value, m.error, m.nodes);
  }
  return 0;
}

int cmd_lvalue(const std::string& form, double s, const std::string& eis, long level) {
  if (!form.empty()) {
    const NewformTable& t = newform(form);
    int eps = fricke_sign(t, t.level);
    long double v = lambda_cusp(t, t.level, static_cast<long double>(s), eps);
    printf("Lambda_%ld(%s, %g) = %.14Lf   (Fricke sign %+d)\n", t.level,
           form.c_str(), s, v, eps);
    return 0;
  }
  if (!eis.empty()) {
    // format: "c1*E3(phi,psi,t) + c2*E3(...) ..." evaluated at s = 0
    std::vector<EisTerm> terms;
    std::string str = eis;
    size_t pos = 0;
    Rat sign(1);
    while (pos < str.size()) {
      while (pos < str.size() && (isspace((unsigned char)str[pos]) || str[pos] == '+'))
        ++pos;
      if (pos < str.size() && str[pos] == '-') {
        sign = -1;
        ++pos;
      } else {
        sign = 1;
      }
      auto e3 = str.find("E3(", pos);
      if (e3 == std::string::npos) break;
      std::string coef = str.substr(pos, e3 - pos);
      while (!coef.empty() && (coef.back() == '*' || isspace((unsigned char)coef.back())))
        coef.pop_back();
      Rat c = coef.empty() ? Rat(1) : rat_from_string(coef);
      auto close = str.find(')', e3);
      std::string args = str.substr(e3 + 3, close - e3 - 3);
      auto c1 = args.find(','), c2 = args.rfind(',');
      EisTerm term;
      term.coeff = Cyclotomic(c * sign);
      term.phi = DirichletChar::by_name(args.substr(0, c1));
      term.psi = DirichletChar::by_name(args.substr(c1 + 1, c2 - c1 - 1));
      term.t = std::stol(args.substr(c2 + 1));
      terms.push_back(term);
      pos = close + 1;
    }
    ClosedFormValue v = lambda_eis_reg(terms, level);
    printf("Lambda*(combo, 0) = %s = %.14Lf\n", v.str().c_str(), v.value());
    long double num = lambda_eis_reg_numeric(terms, level);
    printf("numeric cross-check: %.14Lf  (|diff| = %.2Lg)\n", num,
           std::abs(num - v.value()));
    return 0;
  }
  std::cerr << "lvalue: pass --form or --eis\n";
  return 2;
}

int cmd_qexp(const std::string& what, long a, long b, long N, int k, long order,
             const std::string& label) {
  if (what == "siegel") {
    QSeries s = siegel_qexp(SiegelIndex(a, b, N), order);
    std::cout << "g(" << a << "," << b << ") @ " << N << " = " << s.str(16) << "\n";
  } else if (what == "G") {
    QSeries s = G_qexp(k, a, b, N, order, true);
    std::cout << "G^(" << k << ")_{" << a << "," << b << "} @ " << N
              << " = (a0) + " << s.str(16) << "\n";
  } else if (what == "newform") {
    const NewformTable& t = newform(label);
    std::cout << label << " = " << t.qexp(order).str(16) << "\n";
  } else {
    std::cerr << "qexp: unknown kind " << what << "\n";
    return 2;
  }
  return 0;
}

int cmd_decompose(long m, long n, const std::string& from, const std::string& to,
                  bool as_json) {
  ManinDecomposition dec =
      manin_decompose({m, n}, Cusp::parse(from), Cusp::parse(to), true);
  if (as_json) {
    // [{"c":1,"g":[[0,-1],[1,-2]],"base":"X"}, ...]
    std::cout << "[";
    for (size_t i = 0; i < dec.terms.size(); ++i) {
      auto& t = dec.terms[i];
      if (i) std::cout << ", ";
      std::cout << "{\"c\":" << t.c.get_str() << ",\"g\":[[" << t.g.a << ","
                << t.g.b << "],[" << t.g.c << "," << t.g.d << "]],\"base\":\""
                << t.base << "\"}";
    }
    std::cout << "]\n";
    return 0;
  }
  std::cout << "(" << m << "X+" << n << "Y){" << from << "," << to << "} =\n";
  for (auto& t : dec.terms)
    std::cout << "  " << t.c.get_str() << " * " << t.g.str() << "_* " << t.base
              << "{0,oo}\n";
  return 0;
}

int cmd_siegel(long a, long b, long N, const std::string& cusp,
               const std::string& tau) {
  UnitProduct f;
  f.N = N;
  f.factors.push_back({SiegelIndex(a, b, N), 1});
  if (!cusp.empty()) {
    Cusp c = Cusp::parse(cusp);
    Rat ord = ord_at_cusp(f, c);
    std::cout << "ord_{" << c.str() << "} g(" << a << "," << b << ") = "
              << ord.get_str() << "\n";
    CuspValue v = eval_at_cusp(f, c);
    if (v.kind == CuspValue::Kind::Value)
      std::cout << "value = " << v.value.str() << "\n";
    else
      std::cout << "value verdict: "
                << (v.kind == CuspValue::Kind::Zero ? "zero" : "pole") << "\n";
  }
  if (!tau.empty()) {
    auto plus = tau.find('+');
    long double re = std::stold(tau.substr(0, plus));
    std::string imag = tau.substr(plus + 1);
    if (!imag.empty() && imag.back() == 'i') imag.pop_back();
    long double im = std::stold(imag);
    UnitEval ev = eval_on_h(f, {re, im});
    printf("g(%ld,%ld)(%Lg + %Lgi) = %.12Lg + %.12Lgi\n", a, b, re, im,
           ev.value.real(), ev.value.imag());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modmahler: Mahler measure / L-value identities for elliptic modular surfaces"};
  app.require_subcommand(1);

  // verify
  std::string case_name;
  VerifyOptions vopt;
  bool as_json = false;
  double tol = -1;
  int grid = 0, levels = 0, threads = 0;
  long mc = 0;
  std::uint64_t seed = 20260809;
  auto* verify = app.add_subcommand("verify", "run one registered case end to end");
  verify->add_option("case", case_name, "case name (see `cases`)")->required();
  verify->add_option("--tol", tol, "comparison tolerance");
  verify->add_option("--grid", grid, "base quadrature grid");
  verify->add_option("--levels", levels, "quadrature refinement levels");
  verify->add_option("--threads", threads, "quadrature threads");
  long order = 0;
  verify->add_option("--order", order, "extra q-expansion rows past the Sturm bound");
  verify->add_option("--mc", mc, "also run a Monte Carlo cross-check with this many samples");
  verify->add_option("--seed", seed, "Monte Carlo seed");
  verify->add_flag("--json", as_json, "machine-readable report");

  // cases
  auto* cases = app.add_subcommand("cases", "list registered cases");
  std::string info_name;
  auto* case_info = app.add_subcommand("case-info", "show one case's data");
  case_info->add_option("case", info_name)->required();

  // mahler
  std::string poly;
  auto* mahler = app.add_subcommand("mahler", "numerical Mahler measure of a Laurent polynomial");
  mahler->add_option("--poly", poly, "polynomial, e.g. \"1 + X + Y + Z\"")->required();
  mahler->add_option("--grid", grid, "base grid");
  mahler->add_option("--levels", levels, "refinement levels");
  mahler->add_option("--mc", mc, "Monte Carlo samples for a cross-check");
  mahler->add_option("--seed", seed, "Monte Carlo seed");
  mahler->add_flag("--json", as_json);

  // lvalue
  std::string form, eis;
  double sval = 3.0;
  long level = 8;
  auto* lvalue = app.add_subcommand("lvalue", "completed L-values");
  lvalue->add_option("--form", form, "newform label (f8, f12, f16)");
  lvalue->add_option("--s", sval, "evaluation point");
  lvalue->add_option("--eis", eis, "E3 combination, e.g. \"4*E3(chi4,1,1) - 32*E3(chi4,1,2)\"");
  lvalue->add_option("--level", level, "ambient level N for the E3 combination");

  // qexp
  std::string what = "siegel", label = "f8";
  long qa = 0, qb = 1, qN = 8, qorder = 16;
  int qk = 1;
  auto* qexp = app.add_subcommand("qexp", "print q-expansions");
  qexp->add_option("--what", what, "siegel | G | newform");
  qexp->add_option("--a", qa);
  qexp->add_option("--b", qb);
  qexp->add_option("--level", qN);
  qexp->add_option("--k", qk, "weight for G");
  qexp->add_option("--order", qorder);
  qexp->add_option("--label", label, "newform label");

  // decompose
  long pm = 0, pn = 1;
  std::string from = "1/2", to = "oo";
  auto* decompose = app.add_subcommand("decompose", "Manin decomposition of P{a,b}");
  decompose->add_option("--m", pm, "coefficient of X");
  decompose->add_option("--n", pn, "coefficient of Y");
  decompose->add_option("--from", from);
  decompose->add_option("--to", to);
  decompose->add_flag("--json", as_json);

  // siegel
  std::string cusp, tau;
  auto* siegel = app.add_subcommand("siegel", "Siegel unit order/value at a cusp or on H");
  siegel->add_option("--a", qa)->required();
  siegel->add_option("--b", qb)->required();
  siegel->add_option("--level", qN)->required();
  siegel->add_option("--cusp", cusp);
  siegel->add_option("--tau", tau, "complex point, e.g. 0.5+1.0i");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      vopt.tolerance = tol;
      vopt.grid = grid;
      vopt.levels = levels;
      vopt.threads = threads;
      vopt.extra_order = order;
      vopt.monte_carlo = mc > 0;
      vopt.mc_samples = static_cast<std::size_t>(mc > 0 ? mc : 0);
      vopt.seed = seed;
      return cmd_verify(case_name, vopt, as_json);
    }
    if (*cases) {
      for (auto& n : CaseRegistry::instance().names()) {
        const CaseSpec& c = CaseRegistry::instance().get(n);
        printf("%-8s %-8s expected: %s\n", n.c_str(), c.kind.c_str(),
               c.expected.c_str());
      }
      return 0;
    }
    if (*case_info) {
      std::cout << CaseRegistry::instance().get(info_name).to_json() << "\n";
      return 0;
    }
    if (*mahler) return cmd_mahler(poly, grid, levels, mc, seed, as_json);
    if (*lvalue) return cmd_lvalue(form, sval, eis, level);
    if (*qexp) return cmd_qexp(what, qa, qb, qN, qk, qorder, label);
    if (*decompose) return cmd_decompose(pm, pn, from, to, as_json);
    if (*siegel) return cmd_siegel(qa, qb, qN, cusp, tau);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
