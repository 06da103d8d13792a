#pragma once

// The pinned reference systems and the reproduction suite that checks their
// verdicts against a golden expectation file.

#include <string>
#include <vector>

#include "kato/io.hpp"
#include "kato/spaces.hpp"

namespace kato::golden {

using io::json;

/// f1 = tent, f2 = 1 - tent.
MultiMapping tent_pair();
/// f1 = 2x then 1, f2 = 1 then 2 - 2x.
MultiMapping plateau_pair();
/// f1: 0 -> 1 -> 2 -> 0, f2: 0 -> 2 -> 1 -> 0 on the discrete three-point space.
MultiMapping finite_cycle_pair();
/// alpha -> alpha/2, alpha -> alpha/3 on the circle with the literal metric.
MultiMapping circle_pair();
/// {constant 0, tent}.
MultiMapping constant_tent();
SelfMap tent_map();

const std::vector<std::string>& system_names();

struct SystemRun {
  std::string name;
  json config;
  /// check name -> verdict string.
  json checks;
  json details;
  double timing_ms = 0;
};

/// Throws Error(InvalidArgument) for an unknown name.
SystemRun run_system(const std::string& name, unsigned threads = 0);

/// The expectation file compiled into the library (identical to data/golden.json).
json embedded_expectations();

struct Mismatch {
  std::string system;
  std::string check;
  std::string expected;
  std::string actual;
};

std::vector<Mismatch> compare(const std::vector<SystemRun>& runs, const json& expected);

}  // namespace kato::golden
