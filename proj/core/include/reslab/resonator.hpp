#pragma once

// The resonator r(n), the Dirichlet polynomials R*, A_{1/2} and R, and
// numerical checks of the Euler-product estimates built on them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reslab/arith.hpp"
#include "reslab/special.hpp"

namespace reslab {

enum class ProfileMode { kPaper, kCustom };

struct ResonatorProfile {
  double T = 0;
  double xi = 0;
  double N = 0;  // T^{1 - 3 xi}
  double L = 0;  // sqrt(log N log log N) in paper mode, user-chosen in custom mode
  double p_lo = 0;
  double p_hi = 0;
  ProfileMode mode = ProfileMode::kPaper;

  bool window_empty() const { return !(p_lo <= p_hi); }
  bool in_window(std::uint64_t p) const;
  // r(p) = L / (sqrt(p) log p) inside the window, 0 outside.
  double r_at_prime(std::uint64_t p) const;
  // Length of A_{1/2}: T^xi.
  double a_half_length() const;
};

struct CustomWindow {
  double p_lo = 0;
  double p_hi = 0;
  double L = 0;
};

// Throws Error(kDomain) for T <= e^e or xi outside (0, 1/3), and
// Error(kProfileRejected) when a custom window has r(p) > 1 for some prime.
ResonatorProfile make_profile(double T, double xi, ProfileMode mode,
                              const std::optional<CustomWindow>& custom = std::nullopt);

// Multiplicative, supported on squarefree n, r(p) as in the profile.
MultiplicativeFunction resonator_coefficients(const ResonatorProfile& profile, std::uint64_t limit);

// Finite sum of c_n n^{-s} with strictly increasing n.
class DirichletPolynomial {
 public:
  DirichletPolynomial() = default;
  // Terms are sorted; repeated n are merged. Throws Error(kDomain) for n = 0.
  explicit DirichletPolynomial(std::vector<std::pair<std::uint64_t, double>> terms);

  const std::vector<std::uint64_t>& indices() const noexcept { return n_; }
  const std::vector<double>& coefficients() const noexcept { return c_; }
  std::size_t size() const noexcept { return n_.size(); }
  std::uint64_t degree() const noexcept { return n_.empty() ? 0 : n_.back(); }
  double coefficient(std::uint64_t n) const;  // 0 when n is not an index

  cplx evaluate(cplx s) const;
  double sum_of_squares() const;

  friend DirichletPolynomial operator+(const DirichletPolynomial& a, const DirichletPolynomial& b);

 private:
  std::vector<std::uint64_t> n_;
  std::vector<double> c_;
};

struct ResonatorPolynomials {
  DirichletPolynomial R_star;  // sum_{n <= N} r(n) lambda(n) n^{-s}
  DirichletPolynomial A_half;  // sum_{n <= T^xi} d_{1/2}(n) lambda(n) n^{-s}
  DirichletPolynomial R;       // R*(s) A_{1/2}(1/2 + s), coefficients a_n
};

// Squarefree products of window primes not exceeding `bound`, ascending.
std::vector<std::uint64_t> squarefree_window_products(const ResonatorProfile& profile, double bound);

// Throws IncompleteSourceError when the table is shorter than N T^xi.
ResonatorPolynomials build_polynomials(const ResonatorProfile& profile, const EigenvalueTable& eigen);

struct AnSquaredCheck {
  double direct = 0;        // sum a_n^2
  double product_form = 0;  // (log T)^{1/4} prod(1 + r^2 lambda^2) prod(1 + r lambda^2 / sqrt p)
  double ratio = 0;
};

AnSquaredCheck sum_an_squared_check(const DirichletPolynomial& R, const ResonatorProfile& profile,
                                    const EigenvalueTable& eigen);

struct LemmaCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool satisfied = false;
  double margin = 0;      // rhs - lhs for bounds, relative error for identities
  bool advisory = false;  // parameters outside the lemma's regime; not asserted
  std::string note;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  const LemmaCheck& find(const std::string& name) const;
};

struct LemmaInputs {
  double alpha = 0;
  double Z = 0;
  std::uint64_t l = 1;
  std::function<double(std::uint64_t)> g = [](std::uint64_t) { return 1.0; };
  double g_max = 1;  // the constant m with 0 <= g(p) <= m
  std::uint64_t enumeration_budget = 20'000'000;
};

// Both sides of the Rankin-trick estimates, computed over the window primes:
//   "product-shift": log prod(1 + r^2 lambda^2 p^alpha) - log prod(1 + r^2 lambda^2)
//                    against alpha (log N - log N logloglog N / loglog N);
//   "truncated-square-sum": sum_{n < Z, (n,l)=1} r(n)^2 lambda(n)^2 against prod_{p !| l}(1 + r^2 lambda^2);
//   "half-shift": log prod (1 + r lambda^2 g p^{alpha-1/2}) / (1 + r lambda^2 g p^{-1/2})
//                 against g_max alpha L loglog L;
//   "tail-sum": sum_{n >= Z} r(n) lambda(n)^2 g(n) / sqrt(n) against exp(-log Z / (log L)^3),
//               together with the head sum against prod(1 + r lambda^2 g / sqrt p).
// Throws Error(kBudget) if the squarefree enumeration exceeds the budget.
LemmaReport lemma_product_checks(const ResonatorProfile& profile, const EigenvalueTable& eigen,
                                 const LemmaInputs& inputs);

// Key=value block with fields T, xi, mode, P_lo, P_hi, L.
std::string profile_to_key_value(const ResonatorProfile& profile);
ResonatorProfile profile_from_key_value(const std::string& text);

}  // namespace reslab
