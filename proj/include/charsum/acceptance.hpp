#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace charsum {

struct AcceptanceOptions {
  std::uint64_t seed = 1;  // drives the sampled parts only
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool correct = false;        // every exact check held
  bool within_budget = false;  // wall time below the stated bound
  double seconds = 0;
  double budget = 0;
  std::string detail;

  bool pass() const { return correct && within_budget; }
};

constexpr int kCriteria = 15;

std::string criterion_name(int id);
// Exceptions from the engines are caught and reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

}  // namespace charsum
