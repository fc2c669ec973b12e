#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace elmod {

bool is_prime_u64(uint64_t n);

// Deterministic factorization: trial division to 10^6, then Brent's variant
// of Pollard rho with a fixed seed sequence.  Sorted (prime, exponent) list.
std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n);

}  // namespace elmod
