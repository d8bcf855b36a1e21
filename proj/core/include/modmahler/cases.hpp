// Case registry and the end-to-end verification pipeline: unit -> Eisenstein
// symbols -> Manin decomposition -> gates -> Rogers-Zudilin -> L-values,
// compared against the independently computed Mahler measure.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modmahler/lfun.hpp"
#include "modmahler/mahler.hpp"
#include "modmahler/rz.hpp"

namespace mm {

struct CaseSpec {
  std::string name;
  std::string kind = "modular";  // "modular" or "direct"
  std::string polynomial;
  int zvar = 2;
  double tolerance = 1e-4;
  std::string expected;  // RHS expression string

  // modular-pipeline data
  long level = 0;
  std::string unit;
  TorsionDivisor div_iota_x, div_y;
  WeightPoly cycle_poly{0, 1};
  Cusp cycle_from, cycle_to;
  long multiplicity = 1;
  bool degeneracy = false;  // Gamma(4): level 4 -> 8 pullback route
  std::optional<std::array<long, 3>> residue_params;  // (b, b', d)
  Rat offset_rational{0};
  std::map<long, Rat> offset_log;  // prime -> coefficient of log p
  Rat rescale{1};
  long target_level = 0;

  static CaseSpec from_json_text(const std::string& text);
  std::string to_json() const;
};

class CaseRegistry {
 public:
  static const CaseRegistry& instance();
  std::vector<std::string> names() const;
  const CaseSpec& get(const std::string& name) const;

 private:
  CaseRegistry();
  std::vector<CaseSpec> cases_;
};

struct VerifyOptions {
  double tolerance = -1;  // <0: use the case default
  int grid = 0;           // base grid override
  int levels = 0;
  int threads = 0;
  long extra_order = 0;   // extra identification rows past the Sturm bound
  long double lvalue_precision = 1e-11L;
  bool monte_carlo = false;
  std::size_t mc_samples = 400000;
  std::uint64_t seed = 20260809;
};

struct VerificationReport {
  std::string case_name;
  bool pass = false;
  bool aborted = false;
  std::string abort_stage;
  std::string abort_detail;

  long double lhs = 0;
  long double lhs_error = 0;
  long double rhs = 0;
  std::string rhs_symbolic;
  long double expected_value = 0;
  long double abs_diff = 0;
  long double rel_diff = 0;
  double tolerance = 0;
  int resolved_sign = 0;
  std::string phi_str;
  std::string identification;
  std::optional<FormIdentification> ident;
  double seconds_lhs = 0, seconds_rhs = 0;
  std::optional<MahlerEstimate> monte_carlo;

  std::string json() const;
  std::string summary() const;
};

VerificationReport verify_case(const CaseSpec& spec, const VerifyOptions& opt = {});
VerificationReport verify_case(const std::string& name, const VerifyOptions& opt = {});

// evaluate an expected-RHS expression such as
// "4*Lambda(f8,3)" or "log(2) + 7*zeta(3)/pi^2"
long double eval_rhs_expression(const std::string& expr,
                                long double lvalue_precision = 1e-11L);

}  // namespace mm
