#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace sglab {

struct VerifyOptions {
  std::uint32_t p_max = 101;
  // Corrupts one convolution entry per case; the suite must then fail.
  bool inject_fault = false;
  std::ostream* log = nullptr;
};

struct VerifyResult {
  bool ok = true;
  std::size_t cases = 0;       // (p, d) pairs examined
  std::string counterexample;  // first violation, empty when ok
};

// Definition equivalences, oracle comparisons, containment and coverage
// properties over every subgroup of every odd prime p <= p_max.
VerifyResult verify_all(const VerifyOptions& options);

}  // namespace sglab
