#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qres {

struct InvariantResult {
  std::string suite;
  std::string invariant;
  bool passed = false;
  std::string detail;
};

/// qmat, divergences, smoothing, monotones, constructions, catalysis.
std::vector<std::string> suite_names();

/// Runs one suite, or every suite for "all"; unknown names raise InvalidArgument.
std::vector<InvariantResult> run_suite(const std::string& name, std::uint64_t seed = 0);

}  // namespace qres
