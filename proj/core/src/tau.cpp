#include "reslab/tau.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "reslab/error.hpp"

namespace reslab {
namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Montgomery arithmetic modulo an odd prime below 2^30, R = 2^32.
class Montgomery {
 public:
  explicit Montgomery(u32 mod) : mod_(mod) {
    u32 inv = mod;
    for (int i = 0; i < 5; ++i) inv *= 2 - mod * inv;
    neg_inv_ = ~inv + 1;
    r2_ = static_cast<u32>((static_cast<unsigned __int128>(1) << 64) % mod);
  }

  u32 mod() const { return mod_; }

  u32 reduce(u64 t) const {
    const u32 q = static_cast<u32>(t) * neg_inv_;
    const u64 r = (t + static_cast<u64>(q) * mod_) >> 32;
    return r >= mod_ ? static_cast<u32>(r - mod_) : static_cast<u32>(r);
  }
  u32 mul(u32 a, u32 b) const { return reduce(static_cast<u64>(a) * b); }
  u32 add(u32 a, u32 b) const {
    const u32 s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + mod_ - b; }
  u32 to_mont(u32 a) const { return mul(a, r2_); }
  u32 from_mont(u32 a) const { return reduce(a); }

  u32 pow(u32 base_mont, u64 e) const {
    u32 result = to_mont(1);
    while (e) {
      if (e & 1) result = mul(result, base_mont);
      base_mont = mul(base_mont, base_mont);
      e >>= 1;
    }
    return result;
  }

 private:
  u32 mod_;
  u32 neg_inv_;
  u32 r2_;
};

struct NttPrime {
  u32 mod;
  u32 generator;
};

// Each supports transforms of length up to 2^21.
constexpr std::array<NttPrime, 5> kPrimes{{
    {998244353u, 3u},
    {167772161u, 3u},
    {469762049u, 3u},
    {754974721u, 11u},
    {1004535809u, 3u},
}};

void ntt(std::vector<u32>& a, bool inverse, const Montgomery& mg, u32 generator) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const u32 g = mg.to_mont(generator);
  std::vector<u32> w(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u32 root = mg.pow(g, (mg.mod() - 1) / len);
    if (inverse) root = mg.pow(root, mg.mod() - 2);
    const std::size_t half = len / 2;
    w[0] = mg.to_mont(1);
    for (std::size_t k = 1; k < half; ++k) w[k] = mg.mul(w[k - 1], root);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const u32 u = a[i + k];
        const u32 v = mg.mul(a[i + k + half], w[k]);
        a[i + k] = mg.add(u, v);
        a[i + k + half] = mg.sub(u, v);
      }
    }
  }
  if (inverse) {
    const u32 inv_n = mg.pow(mg.to_mont(static_cast<u32>(n % mg.mod())), mg.mod() - 2);
    for (auto& x : a) x = mg.mul(x, inv_n);
  }
}

// Coefficients of prod (1 - q^m)^24 modulo one prime, for q^0..q^{len-1}.
std::vector<u32> eta24_mod(std::size_t len, const NttPrime& prime) {
  const Montgomery mg(prime.mod);
  std::size_t size = 1;
  while (size < 2 * len) size <<= 1;

  // Jacobi: prod (1 - q^m)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}.
  std::vector<u32> a(len, 0);
  for (u64 k = 0;; ++k) {
    const u64 e = k * (k + 1) / 2;
    if (e >= len) break;
    const u32 c = static_cast<u32>((2 * k + 1) % prime.mod);
    a[e] = mg.to_mont(k % 2 == 0 ? c : (c == 0 ? 0 : prime.mod - c));
  }
  for (int round = 0; round < 3; ++round) {
    a.resize(size, 0);
    ntt(a, false, mg, prime.generator);
    for (auto& x : a) x = mg.mul(x, x);
    ntt(a, true, mg, prime.generator);
    a.resize(len);
  }
  for (auto& x : a) x = mg.from_mont(x);
  return a;
}

u32 pow_mod(u64 base, u64 e, u32 mod) {
  u64 result = 1;
  base %= mod;
  while (e) {
    if (e & 1) result = result * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return static_cast<u32>(result);
}

}  // namespace

std::vector<int128> ramanujan_tau_expansion(std::size_t limit) {
  if (limit > (std::size_t{1} << 20)) {
    throw Error(ErrorKind::kDomain, "tau expansion limit exceeds 2^20");
  }
  std::vector<int128> tau(limit + 1, 0);
  if (limit == 0) return tau;

  std::array<std::vector<u32>, kPrimes.size()> residues;
  for (std::size_t i = 0; i < kPrimes.size(); ++i) residues[i] = eta24_mod(limit, kPrimes[i]);

  // Garner with balanced digits so negative coefficients come out directly.
  std::array<std::array<u32, kPrimes.size()>, kPrimes.size()> inv{};
  for (std::size_t i = 1; i < kPrimes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) inv[i][j] = pow_mod(kPrimes[j].mod, kPrimes[i].mod - 2, kPrimes[i].mod);
  }
  for (std::size_t c = 0; c < limit; ++c) {
    std::array<std::int64_t, kPrimes.size()> digit{};
    for (std::size_t i = 0; i < kPrimes.size(); ++i) {
      const std::int64_t m = kPrimes[i].mod;
      std::int64_t x = residues[i][c];
      for (std::size_t j = 0; j < i; ++j) {
        x = ((x - digit[j]) % m + m) % m;
        x = x * inv[i][j] % m;
      }
      digit[i] = x > m / 2 ? x - m : x;
    }
    int128 value = 0;
    for (std::size_t i = kPrimes.size(); i-- > 0;) value = value * kPrimes[i].mod + digit[i];
    tau[c + 1] = value;
  }
  return tau;
}

std::vector<int128> ramanujan_tau_multiplicative(std::span<const int128> source, std::size_t limit) {
  if (source.size() <= limit) throw Error(ErrorKind::kDomain, "tau source shorter than limit");
  std::vector<int128> tau(limit + 1, 0);
  if (limit == 0) return tau;
  tau[1] = 1;
  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (std::size_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t j = i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  for (std::size_t n = 2; n <= limit; ++n) {
    const std::size_t p = spf[n];
    std::size_t m = n / p;
    if (m % p != 0) {
      tau[n] = (m == 1 ? source[p] : tau[p] * tau[m]);
      continue;
    }
    std::size_t pk = p;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m > 1) {
      tau[n] = tau[pk] * tau[m];
    } else {
      int128 p11 = 1;
      for (int i = 0; i < 11; ++i) p11 *= static_cast<int128>(p);
      tau[n] = tau[p] * tau[n / p] - p11 * tau[n / p / p];
    }
  }
  return tau;
}

std::string to_string(int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                   : static_cast<unsigned __int128>(value);
  std::string digits;
  while (mag) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace reslab
