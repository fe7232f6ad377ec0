#pragma once

// Exact Ramanujan tau values.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace reslab {

__extension__ using int128 = __int128;

// tau(0..limit) from the q-expansion of q * prod_{m>=1} (1 - q^m)^24.
// Computed modulo five NTT primes and lifted by CRT; |tau(n)| <= d(n) n^{11/2}
// keeps every value well inside the reconstruction range for limit <= 2^20.
std::vector<int128> ramanujan_tau_expansion(std::size_t limit);

// tau(0..limit) rebuilt from the prime entries of `source` (indexed by n) via
// tau(p^{k+1}) = tau(p) tau(p^k) - p^11 tau(p^{k-1}) and multiplicativity.
std::vector<int128> ramanujan_tau_multiplicative(std::span<const int128> source,
                                                 std::size_t limit);

std::string to_string(int128 value);

}  // namespace reslab
