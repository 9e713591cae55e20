#pragma once

#include <cctype>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "arstat/bounds.hpp"
#include "arstat/model.hpp"
#include "arstat/roots.hpp"
#include "arstat/schur.hpp"

namespace arstat {

// Console values carry 6 significant digits; file emitters use full precision.
inline std::string fmt6(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6g", x);
  return buffer;
}

inline std::string fmt17(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

// One-spec stationarity analysis: the exact root oracle, the determinant
// criterion, and the perturbation bound, with their pairwise agreement.
struct AnalysisReport {
  GeometricARSpec spec;
  CoefficientVector coefficients;
  RootVerdict root;
  SchurReport schur;
  std::vector<double> kappas;  // kappa_m, m = 1..k
  StationarityBound bound;
  CoefficientSumReport sums;
  bool theorem_stationary = false;
  bool agree_root_schur = false;
  bool agree_root_theorem = false;
  bool agree_schur_theorem = false;

  // 0 all tests stationary, 2 all tests nonstationary, 3 disagreement.
  int exit_code() const {
    const int n = int(root.stationary) + int(schur.all_positive) + int(theorem_stationary);
    if (n == 3) return 0;
    if (n == 0) return 2;
    return 3;
  }
};

inline AnalysisReport analyze(const GeometricARSpec& spec, double tol = 1e-9) {
  validate(spec);
  AnalysisReport report;
  report.spec = spec;
  report.coefficients = build_coefficients(spec);
  const CharPolynomial p = char_polynomial(spec);
  report.root = is_stationary_by_roots(p, tol);
  report.schur = schur_stationarity(p);
  report.kappas.reserve(spec.k);
  for (int m = 1; m <= spec.k; ++m) report.kappas.push_back(kappa(spec, m));
  report.bound = theorem_bound(spec);
  report.sums = coefficient_sum_check(spec);
  report.theorem_stationary = spec.beta > 0.0 && spec.beta < report.bound.beta_upper;
  report.agree_root_schur = report.root.stationary == report.schur.all_positive;
  report.agree_root_theorem = report.root.stationary == report.theorem_stationary;
  report.agree_schur_theorem = report.schur.all_positive == report.theorem_stationary;
  return report;
}

// Flat key=value view; the human rendering prints exactly these pairs grouped
// under section headings, so both carry identical numbers.
inline std::vector<std::pair<std::string, std::string>> report_entries(
    const AnalysisReport& r) {
  std::vector<std::pair<std::string, std::string>> kv;
  const auto add = [&kv](std::string key, std::string value) {
    kv.emplace_back(std::move(key), std::move(value));
  };
  add("beta", fmt6(r.spec.beta));
  add("delta", fmt6(r.spec.delta));
  add("k", std::to_string(r.spec.k));
  add("epsilon2", fmt6(r.spec.epsilon2));
  for (std::size_t i = 0; i < r.coefficients.b.size(); ++i)
    add("b" + std::to_string(i + 1), fmt6(r.coefficients.b[i]));
  add("root_max_modulus", fmt6(r.root.max_modulus));
  add("root_margin", fmt6(r.root.margin));
  add("root_stationary", r.root.stationary ? "yes" : "no");
  add("root_borderline", r.root.borderline ? "yes" : "no");
  for (std::size_t m = 0; m < r.schur.determinants.size(); ++m)
    add("det_A" + std::to_string(m + 1), fmt6(r.schur.determinants[m]));
  add("schur_all_positive", r.schur.all_positive ? "yes" : "no");
  if (r.schur.first_failure) add("schur_first_failure", std::to_string(*r.schur.first_failure));
  if (!r.schur.near_singular.empty()) {
    std::string ms;
    for (int m : r.schur.near_singular) ms += (ms.empty() ? "" : " ") + std::to_string(m);
    add("schur_near_singular", ms);
  }
  for (std::size_t m = 0; m < r.kappas.size(); ++m)
    add("kappa_" + std::to_string(m + 1), fmt6(r.kappas[m]));
  add("beta_upper", fmt6(r.bound.beta_upper));
  add("beta_lower", fmt6(r.bound.beta_lower));
  if (r.bound.delta_lower) {
    if (r.bound.delta_lower->vacuous)
      add("delta_lower", "none (vacuous)");
    else
      add("delta_lower", fmt6(r.bound.delta_lower->value));
  }
  add("theorem_stationary", r.theorem_stationary ? "yes" : "no");
  add("coefficient_sum_magnitude", fmt6(r.sums.magnitude_sum));
  add("coefficient_sum_signed", fmt6(r.sums.signed_sum));
  add("coefficient_sum_bound_side", fmt6(r.sums.bound_side));
  add("coefficient_sum_lt_one", r.sums.signed_lt_one ? "yes" : "no");
  add("magnitude_sum_lt_one", r.sums.magnitude_lt_one ? "yes" : "no");
  add("agree_root_schur", r.agree_root_schur ? "yes" : "no");
  add("agree_root_theorem", r.agree_root_theorem ? "yes" : "no");
  add("agree_schur_theorem", r.agree_schur_theorem ? "yes" : "no");
  return kv;
}

inline void render_machine(const AnalysisReport& r, std::ostream& out) {
  for (const auto& [key, value] : report_entries(r)) out << key << '=' << value << '\n';
}

inline void render_human(const AnalysisReport& r, std::ostream& out) {
  const auto kv = report_entries(r);
  std::string last_group;
  const auto group_of = [](const std::string& key) -> std::string {
    if (key == "beta" || key == "delta" || key == "k" || key == "epsilon2") return "spec";
    if (key.size() > 1 && key[0] == 'b' && std::isdigit(static_cast<unsigned char>(key[1])))
      return "coefficients";
    if (key.rfind("root_", 0) == 0) return "root oracle";
    if (key.rfind("det_", 0) == 0 || key.rfind("schur_", 0) == 0) return "determinant test";
    if (key.rfind("kappa_", 0) == 0 || key.rfind("beta_", 0) == 0 ||
        key.rfind("delta_lower", 0) == 0 || key == "theorem_stationary")
      return "perturbation bound";
    if (key.rfind("coefficient_sum", 0) == 0 || key == "magnitude_sum_lt_one")
      return "coefficient sum";
    return "agreement";
  };
  for (const auto& [key, value] : kv) {
    const std::string group = group_of(key);
    if (group != last_group) {
      out << "[" << group << "]\n";
      last_group = group;
    }
    out << "  " << key << " = " << value << '\n';
  }
}

}  // namespace arstat
