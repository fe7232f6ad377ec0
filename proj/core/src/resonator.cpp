#include "reslab/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "reslab/error.hpp"
#include "reslab/summation.hpp"

namespace reslab {
namespace {

std::vector<std::uint64_t> window_primes(const ResonatorProfile& profile, double upper) {
  std::vector<std::uint64_t> out;
  if (profile.window_empty()) return out;
  const double top = std::min(profile.p_hi, upper);
  if (top < 2.0) return out;
  for (const auto p : sieve_primes(static_cast<std::uint64_t>(std::floor(top)))) {
    if (profile.in_window(p)) out.push_back(p);
  }
  return out;
}

// Depth-first walk over squarefree products of `primes` (ascending) below
// `bound`, accumulating the multiplicative weight w(n) = prod w_p.
class SquarefreeWalk {
 public:
  SquarefreeWalk(const std::vector<std::uint64_t>& primes, const std::vector<double>& weights,
                 double bound, std::uint64_t budget)
      : primes_(primes), weights_(weights), bound_(bound), budget_(budget) {}

  double run() {
    sum_ = CompensatedSum<double>();
    sum_ += 1.0;  // n = 1
    visit(0, 1.0, 1.0);
    return sum_.value();
  }

 private:
  void visit(std::size_t start, double n, double w) {
    for (std::size_t i = start; i < primes_.size(); ++i) {
      const double next = n * static_cast<double>(primes_[i]);
      if (!(next < bound_)) break;
      if (++visited_ > budget_) {
        throw Error(ErrorKind::kBudget, "squarefree enumeration exceeds budget; use a smaller window");
      }
      const double wn = w * weights_[i];
      sum_ += wn;
      visit(i + 1, next, wn);
    }
  }

  const std::vector<std::uint64_t>& primes_;
  const std::vector<double>& weights_;
  double bound_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  CompensatedSum<double> sum_;
};

}  // namespace

bool ResonatorProfile::in_window(std::uint64_t p) const {
  const double x = static_cast<double>(p);
  return x >= p_lo && x <= p_hi;
}

double ResonatorProfile::r_at_prime(std::uint64_t p) const {
  if (!in_window(p)) return 0.0;
  const double x = static_cast<double>(p);
  return L / (std::sqrt(x) * std::log(x));
}

double ResonatorProfile::a_half_length() const { return std::pow(T, xi); }

ResonatorProfile make_profile(double T, double xi, ProfileMode mode, const std::optional<CustomWindow>& custom) {
  if (!(T > std::exp(std::numbers::e))) throw Error(ErrorKind::kDomain, "profile needs T > e^e");
  if (!(xi > 0.0 && xi < 1.0 / 3.0)) throw Error(ErrorKind::kDomain, "profile needs 0 < xi < 1/3");
  ResonatorProfile p;
  p.T = T;
  p.xi = xi;
  p.mode = mode;
  p.N = std::pow(T, 1.0 - 3.0 * xi);
  if (mode == ProfileMode::kPaper) {
    const double log_n = std::log(p.N);
    if (!(log_n > 1.0)) throw Error(ErrorKind::kDomain, "paper profile needs N > e");
    p.L = std::sqrt(log_n * std::log(log_n));
    p.p_lo = p.L * p.L;
    const double log_l = std::log(p.L);
    p.p_hi = std::exp(log_l * log_l);
    return p;
  }
  if (!custom) throw Error(ErrorKind::kConfig, "custom profile needs a window and L");
  if (!(custom->p_lo < custom->p_hi)) throw Error(ErrorKind::kProfileRejected, "custom window needs P_lo < P_hi");
  if (!(custom->L > 0.0)) throw Error(ErrorKind::kProfileRejected, "custom profile needs L > 0");
  p.p_lo = custom->p_lo;
  p.p_hi = custom->p_hi;
  p.L = custom->L;
  // r(p) decreases in p, so the first window prime carries the maximum.
  const auto primes = window_primes(p, p.p_hi);
  if (primes.empty()) throw Error(ErrorKind::kProfileRejected, "custom window contains no primes");
  if (p.r_at_prime(primes.front()) > 1.0) {
    throw Error(ErrorKind::kProfileRejected,
                "r(" + std::to_string(primes.front()) + ") exceeds 1; lower L or raise P_lo");
  }
  return p;
}

MultiplicativeFunction resonator_coefficients(const ResonatorProfile& profile, std::uint64_t limit) {
  return MultiplicativeFunction(
      [profile](std::uint64_t p, unsigned k) { return k == 1 ? profile.r_at_prime(p) : 0.0; }, limit);
}

DirichletPolynomial::DirichletPolynomial(std::vector<std::pair<std::uint64_t, double>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [n, c] : terms) {
    if (n == 0) throw Error(ErrorKind::kDomain, "Dirichlet polynomial index must be positive");
    if (!n_.empty() && n_.back() == n) {
      c_.back() += c;
    } else {
      n_.push_back(n);
      c_.push_back(c);
    }
  }
}

double DirichletPolynomial::coefficient(std::uint64_t n) const {
  const auto it = std::lower_bound(n_.begin(), n_.end(), n);
  return it != n_.end() && *it == n ? c_[static_cast<std::size_t>(it - n_.begin())] : 0.0;
}

cplx DirichletPolynomial::evaluate(cplx s) const {
  CompensatedSum<cplx> sum;
  for (std::size_t i = 0; i < n_.size(); ++i) {
    sum += c_[i] * std::exp(-s * std::log(static_cast<double>(n_[i])));
  }
  return sum.value();
}

double DirichletPolynomial::sum_of_squares() const {
  CompensatedSum<double> sum;
  for (const double c : c_) sum += c * c;
  return sum.value();
}

DirichletPolynomial operator+(const DirichletPolynomial& a, const DirichletPolynomial& b) {
  std::vector<std::pair<std::uint64_t, double>> terms;
  for (std::size_t i = 0; i < a.size(); ++i) terms.emplace_back(a.n_[i], a.c_[i]);
  for (std::size_t i = 0; i < b.size(); ++i) terms.emplace_back(b.n_[i], b.c_[i]);
  return DirichletPolynomial(std::move(terms));
}

std::vector<std::uint64_t> squarefree_window_products(const ResonatorProfile& profile, double bound) {
  const auto primes = window_primes(profile, bound);
  std::vector<std::uint64_t> out{1};
  // Extend the set one prime at a time; products stay squarefree by construction.
  for (const auto p : primes) {
    const std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i) {
      const double next = static_cast<double>(out[i]) * static_cast<double>(p);
      if (next <= bound) out.push_back(out[i] * p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ResonatorPolynomials build_polynomials(const ResonatorProfile& profile, const EigenvalueTable& eigen) {
  const double a_len = profile.a_half_length();
  const double need = std::floor(profile.N) * std::floor(a_len);
  if (need > static_cast<double>(eigen.limit())) {
    throw IncompleteSourceError(static_cast<std::uint64_t>(need),
                                "eigenvalue table shorter than N T^xi = " + std::to_string(need));
  }
  ResonatorPolynomials out;

  std::vector<std::pair<std::uint64_t, double>> r_terms;
  for (const auto l : squarefree_window_products(profile, profile.N)) {
    double r = 1.0;
    std::uint64_t m = l;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        r *= profile.r_at_prime(p);
        m /= p;
      }
    }
    if (m > 1) r *= profile.r_at_prime(m);
    r_terms.emplace_back(l, r * eigen(l));
  }
  out.R_star = DirichletPolynomial(std::move(r_terms));

  const auto a_top = static_cast<std::uint64_t>(std::floor(a_len));
  const MultiplicativeFunction d_half = d_z_coefficients(0.5, std::max<std::uint64_t>(a_top, 1));
  std::vector<std::pair<std::uint64_t, double>> a_terms;
  for (std::uint64_t m = 1; m <= std::max<std::uint64_t>(a_top, 1); ++m) {
    a_terms.emplace_back(m, d_half(m) * eigen(m));
  }
  out.A_half = DirichletPolynomial(std::move(a_terms));

  // a_n = sum_{lm = n} r(l) lambda(l) d_{1/2}(m) lambda(m) / sqrt(m).
  std::map<std::uint64_t, CompensatedSum<double>> acc;
  const auto& ln = out.R_star.indices();
  const auto& lc = out.R_star.coefficients();
  const auto& mn = out.A_half.indices();
  const auto& mc = out.A_half.coefficients();
  for (std::size_t i = 0; i < ln.size(); ++i) {
    for (std::size_t j = 0; j < mn.size(); ++j) {
      acc[ln[i] * mn[j]] += lc[i] * mc[j] / std::sqrt(static_cast<double>(mn[j]));
    }
  }
  std::vector<std::pair<std::uint64_t, double>> terms;
  terms.reserve(acc.size());
  for (const auto& [n, s] : acc) terms.emplace_back(n, s.value());
  out.R = DirichletPolynomial(std::move(terms));
  return out;
}

AnSquaredCheck sum_an_squared_check(const DirichletPolynomial& R, const ResonatorProfile& profile,
                                    const EigenvalueTable& eigen) {
  AnSquaredCheck out;
  const double bound = std::pow(profile.T, 1.0 - 2.0 * profile.xi);
  CompensatedSum<double> direct;
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (static_cast<double>(R.indices()[i]) <= bound) direct += R.coefficients()[i] * R.coefficients()[i];
  }
  out.direct = direct.value();
  CompensatedSum<double> log_prod;
  for (const auto p : window_primes(profile, profile.p_hi)) {
    if (p > eigen.limit()) throw IncompleteSourceError(p, "window prime beyond eigenvalue table");
    const double r = profile.r_at_prime(p);
    const double l2 = eigen(p) * eigen(p);
    log_prod += std::log1p(r * r * l2) + std::log1p(r * l2 / std::sqrt(static_cast<double>(p)));
  }
  out.product_form = std::pow(std::log(profile.T), 0.25) * std::exp(log_prod.value());
  out.ratio = out.direct / out.product_form;
  return out;
}

const LemmaCheck& LemmaReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorKind::kDomain, "no lemma check named " + name);
}

LemmaReport lemma_product_checks(const ResonatorProfile& profile, const EigenvalueTable& eigen,
                                 const LemmaInputs& in) {
  const auto primes = window_primes(profile, profile.p_hi);
  if (!primes.empty() && primes.back() > eigen.limit()) {
    throw IncompleteSourceError(primes.back(), "window prime beyond eigenvalue table");
  }
  const double L = profile.L;
  const double log_l = std::log(L);
  const bool paper = profile.mode == ProfileMode::kPaper;
  const bool alpha_ok = std::abs(in.alpha) <= 1.0 / (log_l * log_l * log_l);
  const double log_n = std::log(profile.N);

  LemmaReport report;

  {
    LemmaCheck c;
    c.name = "product-shift";
    CompensatedSum<double> lhs;
    for (const auto p : primes) {
      const double w = std::pow(profile.r_at_prime(p) * eigen(p), 2);
      lhs += std::log1p(w * std::pow(static_cast<double>(p), in.alpha)) - std::log1p(w);
    }
    c.lhs = lhs.value();
    const double lll = std::log(std::log(log_n));
    c.rhs = in.alpha * (log_n - log_n * lll / std::log(log_n));
    if (!std::isfinite(c.rhs)) c.rhs = 0.0;
    c.satisfied = c.lhs <= c.rhs + 1e-15;
    c.margin = c.rhs - c.lhs;
    c.advisory = !paper || !alpha_ok || !(std::log(log_n) > 1.0);
    c.note = "o(1) term taken as 0";
    report.checks.push_back(c);
  }

  std::vector<double> sq_weights;
  std::vector<std::uint64_t> coprime;
  double log_full = 0.0;
  for (const auto p : primes) {
    if (in.l % p == 0) continue;
    const double w = std::pow(profile.r_at_prime(p) * eigen(p), 2);
    coprime.push_back(p);
    sq_weights.push_back(w);
    log_full += std::log1p(w);
  }
  {
    LemmaCheck c;
    c.name = "truncated-square-sum";
    c.lhs = SquarefreeWalk(coprime, sq_weights, in.Z, in.enumeration_budget).run();
    c.rhs = std::exp(log_full);
    c.margin = std::abs(c.lhs - c.rhs) / c.rhs;
    c.satisfied = c.lhs <= c.rhs * (1.0 + 1e-12);
    const double z_floor = profile.N * std::exp(-log_n / std::pow(std::log(log_n), 2));
    c.advisory = !paper || !(in.Z > z_floor);
    c.note = "margin is the relative error; predicted O(exp(-L^2/(log L)^5)) = " +
             std::to_string(std::exp(-L * L / std::pow(log_l, 5)));
    report.checks.push_back(c);
  }

  std::vector<double> half_weights;
  double log_half = 0.0;
  {
    LemmaCheck c;
    c.name = "half-shift";
    CompensatedSum<double> lhs;
    for (const auto p : primes) {
      const double x = static_cast<double>(p);
      const double w = profile.r_at_prime(p) * eigen(p) * eigen(p) * in.g(p) / std::sqrt(x);
      half_weights.push_back(w);
      log_half += std::log1p(w);
      lhs += std::log1p(w * std::pow(x, in.alpha)) - std::log1p(w);
    }
    c.lhs = lhs.value();
    c.rhs = in.g_max * in.alpha * L * std::log(log_l);
    c.satisfied = c.lhs <= c.rhs + 1e-15;
    c.margin = c.rhs - c.lhs;
    c.advisory = !paper || !alpha_ok || !(log_l > 1.0);
    c.note = "recorded constant " + std::to_string(in.alpha != 0.0 ? c.lhs / (in.alpha * L * std::log(log_l)) : 0.0);
    report.checks.push_back(c);
  }

  {
    const double head = SquarefreeWalk(primes, half_weights, in.Z, in.enumeration_budget).run();
    const double full = std::exp(log_half);

    LemmaCheck tail;
    tail.name = "tail-sum";
    tail.lhs = std::max(0.0, full - head);
    tail.rhs = std::exp(-std::log(in.Z) / (log_l * log_l * log_l));
    tail.satisfied = tail.lhs <= tail.rhs;
    tail.margin = tail.rhs - tail.lhs;
    tail.advisory = !paper || !(std::log(in.Z) > L * std::pow(log_l, 5));
    tail.note = "o(1) term taken as 0";
    report.checks.push_back(tail);

    LemmaCheck c;
    c.name = "head-sum";
    c.lhs = head;
    c.rhs = full;
    c.margin = std::abs(full - head) / full;
    c.satisfied = head <= full * (1.0 + 1e-12);
    c.advisory = tail.advisory;
    c.note = "margin is the relative error";
    report.checks.push_back(c);
  }
  return report;
}

std::string profile_to_key_value(const ResonatorProfile& profile) {
  std::ostringstream out;
  out.precision(17);
  out << "T=" << profile.T << "\n"
      << "xi=" << profile.xi << "\n"
      << "mode=" << (profile.mode == ProfileMode::kPaper ? "paper" : "custom") << "\n"
      << "P_lo=" << profile.p_lo << "\n"
      << "P_hi=" << profile.p_hi << "\n"
      << "L=" << profile.L << "\n";
  return out.str();
}

ResonatorProfile profile_from_key_value(const std::string& text) {
  std::map<std::string, std::string> fields;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  for (const char* key : {"T", "xi", "mode", "P_lo", "P_hi", "L"}) {
    if (!fields.count(key)) throw ParseError(lineno, std::string("missing field ") + key);
  }
  const double T = std::stod(fields["T"]);
  const double xi = std::stod(fields["xi"]);
  if (fields["mode"] == "paper") return make_profile(T, xi, ProfileMode::kPaper);
  if (fields["mode"] != "custom") throw ParseError(lineno, "mode must be paper or custom");
  return make_profile(T, xi, ProfileMode::kCustom,
                      CustomWindow{std::stod(fields["P_lo"]), std::stod(fields["P_hi"]), std::stod(fields["L"])});
}

}  // namespace reslab
