#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finsler/sweep.hpp"

namespace finsler {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  ExecMode mode = ExecMode::parallel;
  std::uint64_t seed = 0x5eed2024;
};

// Runs the full battery; deterministic for a fixed seed.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace finsler
