#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reslab/moments.hpp"

namespace reslab::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::vector<std::pair<std::string, double>> metrics;
  std::string detail;  // failing check, or the error message when a module threw
  std::optional<std::string> error_kind;
};

struct AcceptanceOptions {
  // Replaces every pinned error tolerance; ranges and trend checks are unaffected.
  std::optional<double> tol_override;
  double maass_r = 9.53369526135355755;  // first even Maass form for SL(2, Z)
  std::vector<int> only;                 // empty runs all
};

// Runs the acceptance criteria in order, reporting each through `sink` as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& sink = {});

// One line: "[PASS] 7 prescribed-argument  (12.3 s)  key=value ...".
std::string format_line(const CriterionResult& result);

nlohmann::json to_json(const CriterionResult& result);

// Independent evaluation of the diagonal main term: group each side of the
// constraint by its product, then join on divisibility.
double diagonal_main_term_join(const DirichletPolynomial& R_star, const DirichletPolynomial& A_half,
                               const EigenvalueTable& eigen, DiagonalVariant variant);

}  // namespace reslab::app
