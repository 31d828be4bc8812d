#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

// Checks accepted by run-example: "axioms", "cartan", "functor", "simples".
struct ExampleOutcome {
  std::string json;                  // report document
  bool ok = true;
  std::vector<std::string> summary;  // human-readable lines
};

// Builds the named worked example (D, C, B1, B2) at the given ell and runs the
// selected checks. Claims tied to a specific ell are only checked there.
ExampleOutcome run_example(const std::string& name, int ell, const std::set<std::string>& checks,
                           std::uint64_t seed, int max_height);
