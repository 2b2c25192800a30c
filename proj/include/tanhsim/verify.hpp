#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tanhsim {

struct VerifyCase {
  std::string name;
  double max_deviation;
  double bar;
  bool pass;
};

struct VerifyReport {
  std::vector<VerifyCase> cases;
  std::vector<std::string> warnings;
  bool pass = true;
};

/// Closed form against numeric integration over a fixed corpus: the tanh
/// figure presets (analytic propagator vs ODE), the Rabi and Landau-Zener
/// presets, and a seeded set of random tanh draws. `quick` shortens the random
/// part. The result depends only on (quick, seed), not on `workers`.
VerifyReport run_verify(bool quick, std::uint64_t seed, int workers);

}  // namespace tanhsim
