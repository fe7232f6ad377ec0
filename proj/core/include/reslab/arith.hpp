#pragma once

// Prime sieving, Hecke eigenvalue tables and multiplicative-function algebra.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace reslab {

struct PrimeList {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;  // ascending, all primes <= limit

  std::size_t size() const noexcept { return primes.size(); }
  bool empty() const noexcept { return primes.empty(); }
  auto begin() const noexcept { return primes.begin(); }
  auto end() const noexcept { return primes.end(); }

  bool contains(std::uint64_t n) const;
  // Number of listed primes <= x.
  std::size_t count_up_to(std::uint64_t x) const;
};

// Sieve of Eratosthenes. Throws Error(kEmptyDomain) for limit < 2.
PrimeList sieve_primes(std::uint64_t limit);

// Smallest-prime-factor table used to walk factorizations up to a limit.
class FactorTable {
 public:
  explicit FactorTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return spf_.empty() ? 0 : spf_.size() - 1; }
  std::uint32_t smallest_prime_factor(std::uint64_t n) const { return spf_.at(n); }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_.at(n) == n; }
  bool is_squarefree(std::uint64_t n) const;

  // Calls visit(p, k) for each p^k || n, in increasing p.
  template <class Visitor>
  void for_each_prime_power(std::uint64_t n, Visitor&& visit) const {
    while (n > 1) {
      const std::uint64_t p = spf_[n];
      unsigned k = 0;
      while (n % p == 0) {
        n /= p;
        ++k;
      }
      visit(p, k);
    }
  }

 private:
  std::vector<std::uint32_t> spf_;
};

// A real multiplicative function: a rule for its prime-power values plus a
// dense cache of f(1..limit). The rule is valid for any prime power, also
// beyond the cached range.
class MultiplicativeFunction {
 public:
  using PrimePowerRule = std::function<double(std::uint64_t p, unsigned k)>;

  // Fills the cache from the rule: f(n) = prod f(p^k).
  MultiplicativeFunction(PrimePowerRule rule, std::uint64_t limit);
  // Adopts precomputed values (index 0 ignored, values[1] must be the value at 1).
  MultiplicativeFunction(PrimePowerRule rule, std::vector<double> values);

  double operator()(std::uint64_t n) const;
  double prime_power(std::uint64_t p, unsigned k) const { return k == 0 ? 1.0 : rule_(p, k); }
  const PrimePowerRule& rule() const noexcept { return rule_; }

  std::uint64_t limit() const noexcept { return values_.size() - 1; }
  // Dense values indexed by n; element 0 is unused and set to 0.
  std::span<const double> values() const noexcept { return values_; }

 private:
  PrimePowerRule rule_;
  std::vector<double> values_;
};

// binom(omega, k) = omega (omega-1) ... (omega-k+1) / k!
double generalized_binomial(double omega, unsigned k);

// Coefficients of zeta(s)^z: d_z(p^k) = binom(z+k-1, k).
MultiplicativeFunction d_z_coefficients(double z, std::uint64_t limit);

// Dirichlet unit: 1 at n = 1, 0 elsewhere.
MultiplicativeFunction dirichlet_unit(std::uint64_t limit);

// (f * g)(n) = sum_{d | n} f(d) g(n/d), evaluated by divisor sums over the
// cached values. The prime-power rule of the result is the convolution of
// the input rules.
MultiplicativeFunction dirichlet_convolve(const MultiplicativeFunction& f,
                                          const MultiplicativeFunction& g,
                                          std::uint64_t limit);

enum class FormKind { kHolomorphicDelta, kMaassEven };

// Normalized Hecke eigenvalues lambda_f(n) for n <= limit. Immutable.
class EigenvalueTable {
 public:
  EigenvalueTable(FormKind kind, double spectral, std::vector<double> values);

  FormKind kind() const noexcept { return kind_; }
  // Spectral parameter r for Maass forms; the weight (12) for the Delta form.
  double spectral() const noexcept { return spectral_; }
  std::uint64_t limit() const noexcept { return values_.size() - 1; }

  double operator()(std::uint64_t n) const;
  // lambda_f(p^k) for any k by the Hecke recursion; p must be <= limit().
  double prime_power(std::uint64_t p, unsigned k) const;

  std::span<const double> values() const noexcept { return values_; }
  MultiplicativeFunction as_multiplicative() const;

 private:
  FormKind kind_;
  double spectral_;
  std::vector<double> values_;
};

// Eigenvalues of the weight-12 discriminant form, lambda(n) = tau(n)/n^{11/2}.
// tau(p) comes from the exact eta-product expansion; prime powers and
// composites are rebuilt by the Hecke recursion and multiplicativity.
// Throws Error(kDomain) if a Deligne bound |lambda(p)| <= 2 is violated.
EigenvalueTable build_delta_table(std::uint64_t limit);

// Maass coefficient file: '#' comments, then "r <decimal>", then "<n> <lambda_n>"
// lines. Needs lambda(p) for every prime p <= limit.
EigenvalueTable parse_maass_table(std::istream& in, std::uint64_t limit);
EigenvalueTable load_maass_table(const std::filesystem::path& path, std::uint64_t limit);

// Dispatches on kind; `source` is required for Maass forms and ignored otherwise.
EigenvalueTable build_eigenvalue_table(FormKind kind,
                                       const std::optional<std::filesystem::path>& source,
                                       std::uint64_t limit);

struct MertensSum {
  double sum = 0;       // sum_{p <= x} lambda(p)^2 / p
  double residual = 0;  // sum - log log x
};

MertensSum rankin_mertens_sum(const EigenvalueTable& table, double x);

}  // namespace reslab
