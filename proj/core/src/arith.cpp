#include "reslab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "reslab/error.hpp"
#include "reslab/tau.hpp"

namespace reslab {

bool PrimeList::contains(std::uint64_t n) const {
  return std::binary_search(primes.begin(), primes.end(), n);
}

std::size_t PrimeList::count_up_to(std::uint64_t x) const {
  return static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

PrimeList sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw Error(ErrorKind::kEmptyDomain, "no primes below " + std::to_string(limit));
  std::vector<bool> composite(limit + 1, false);
  PrimeList out;
  out.limit = limit;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

FactorTable::FactorTable(std::uint64_t limit) : spf_(limit + 1, 0) {
  if (limit > 0xFFFFFFFFull) throw Error(ErrorKind::kDomain, "factor table limit too large");
  if (limit >= 1) spf_[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

bool FactorTable::is_squarefree(std::uint64_t n) const {
  bool ok = true;
  for_each_prime_power(n, [&](std::uint64_t, unsigned k) { ok = ok && k == 1; });
  return ok;
}

namespace {

std::vector<double> fill_from_rule(const MultiplicativeFunction::PrimePowerRule& rule,
                                   std::uint64_t limit) {
  std::vector<double> values(limit + 1, 0.0);
  if (limit == 0) return values;
  values[1] = 1.0;
  const FactorTable factors(limit);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint64_t p = factors.smallest_prime_factor(n);
    std::uint64_t m = n;
    unsigned k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    values[n] = m == 1 ? rule(p, k) : values[n / m] * values[m];
  }
  return values;
}

}  // namespace

MultiplicativeFunction::MultiplicativeFunction(PrimePowerRule rule, std::uint64_t limit)
    : rule_(std::move(rule)), values_(fill_from_rule(rule_, limit)) {}

MultiplicativeFunction::MultiplicativeFunction(PrimePowerRule rule, std::vector<double> values)
    : rule_(std::move(rule)), values_(std::move(values)) {
  if (values_.empty()) values_.push_back(0.0);
  values_[0] = 0.0;
}

double MultiplicativeFunction::operator()(std::uint64_t n) const {
  if (n == 0 || n >= values_.size()) {
    throw Error(ErrorKind::kDomain, "index " + std::to_string(n) + " outside cached range");
  }
  return values_[n];
}

double generalized_binomial(double omega, unsigned k) {
  double c = 1.0;
  for (unsigned j = 1; j <= k; ++j) c *= (omega - (j - 1)) / j;
  return c;
}

MultiplicativeFunction d_z_coefficients(double z, std::uint64_t limit) {
  return MultiplicativeFunction(
      [z](std::uint64_t, unsigned k) { return generalized_binomial(z + k - 1, k); }, limit);
}

MultiplicativeFunction dirichlet_unit(std::uint64_t limit) {
  return MultiplicativeFunction([](std::uint64_t, unsigned) { return 0.0; }, limit);
}

MultiplicativeFunction dirichlet_convolve(const MultiplicativeFunction& f,
                                          const MultiplicativeFunction& g,
                                          std::uint64_t limit) {
  if (limit > f.limit() || limit > g.limit()) {
    throw Error(ErrorKind::kDomain, "convolution limit exceeds operand range");
  }
  std::vector<double> h(limit + 1, 0.0);
  const auto fv = f.values();
  const auto gv = g.values();
  for (std::uint64_t d = 1; d <= limit; ++d) {
    const double fd = fv[d];
    if (fd == 0.0) continue;
    for (std::uint64_t e = 1, n = d; n <= limit; ++e, n += d) h[n] += fd * gv[e];
  }
  auto rf = f.rule();
  auto rg = g.rule();
  auto rule = [rf, rg](std::uint64_t p, unsigned k) {
    double s = 0.0;
    for (unsigned i = 0; i <= k; ++i) {
      const double a = i == 0 ? 1.0 : rf(p, i);
      const double b = i == k ? 1.0 : rg(p, k - i);
      s += a * b;
    }
    return s;
  };
  return MultiplicativeFunction(std::move(rule), std::move(h));
}

EigenvalueTable::EigenvalueTable(FormKind kind, double spectral, std::vector<double> values)
    : kind_(kind), spectral_(spectral), values_(std::move(values)) {
  if (values_.size() < 2) throw Error(ErrorKind::kEmptyDomain, "empty eigenvalue table");
  values_[0] = 0.0;
}

double EigenvalueTable::operator()(std::uint64_t n) const {
  if (n == 0 || n >= values_.size()) {
    throw Error(ErrorKind::kDomain, "eigenvalue index " + std::to_string(n) + " outside table");
  }
  return values_[n];
}

double EigenvalueTable::prime_power(std::uint64_t p, unsigned k) const {
  if (k == 0) return 1.0;
  const double lp = (*this)(p);
  double prev = 1.0;
  double cur = lp;
  for (unsigned j = 1; j < k; ++j) {
    const double next = lp * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

MultiplicativeFunction EigenvalueTable::as_multiplicative() const {
  // The rule copies the prime values it needs so it can outlive the table.
  const std::vector<double>& v = values_;
  auto shared = std::make_shared<const std::vector<double>>(v);
  auto rule = [shared](std::uint64_t p, unsigned k) {
    if (p >= shared->size()) {
      throw Error(ErrorKind::kDomain, "eigenvalue prime " + std::to_string(p) + " outside table");
    }
    const double lp = (*shared)[p];
    double prev = 1.0;
    double cur = lp;
    for (unsigned j = 1; j < k; ++j) {
      const double next = lp * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  };
  return MultiplicativeFunction(std::move(rule), std::vector<double>(v));
}

EigenvalueTable build_delta_table(std::uint64_t limit) {
  if (limit < 2) throw Error(ErrorKind::kEmptyDomain, "eigenvalue table limit below 2");
  const auto expansion = ramanujan_tau_expansion(limit);
  const auto tau = ramanujan_tau_multiplicative(expansion, limit);
  std::vector<double> values(limit + 1, 0.0);
  const FactorTable factors(limit);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const long double nn = static_cast<long double>(n);
    const long double scale = nn * nn * nn * nn * nn * std::sqrt(nn);
    values[n] = static_cast<double>(static_cast<long double>(tau[n]) / scale);
    if (factors.is_prime(n) && std::fabs(values[n]) > 2.0) {
      throw Error(ErrorKind::kDomain, "Deligne bound violated at p = " + std::to_string(n));
    }
  }
  return EigenvalueTable(FormKind::kHolomorphicDelta, 12.0, std::move(values));
}

namespace {

bool blank_or_comment(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

EigenvalueTable parse_maass_table(std::istream& in, std::uint64_t limit) {
  if (limit < 2) throw Error(ErrorKind::kEmptyDomain, "eigenvalue table limit below 2");
  std::string line;
  std::size_t lineno = 0;
  bool have_r = false;
  double r = 0.0;
  std::map<std::uint64_t, double> entries;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    std::istringstream fields(line);
    if (!have_r) {
      std::string key;
      if (!(fields >> key >> r) || key != "r") throw ParseError(lineno, "expected 'r <value>'");
      std::string rest;
      if (fields >> rest) throw ParseError(lineno, "trailing text after spectral parameter");
      have_r = true;
      continue;
    }
    long long n = 0;
    double value = 0.0;
    if (!(fields >> n >> value)) throw ParseError(lineno, "expected '<n> <lambda_n>'");
    std::string rest;
    if (fields >> rest) throw ParseError(lineno, "trailing text after coefficient");
    if (n < 1) throw ParseError(lineno, "index must be positive");
    if (!std::isfinite(value)) throw ParseError(lineno, "non-finite coefficient");
    if (!entries.emplace(static_cast<std::uint64_t>(n), value).second) {
      throw ParseError(lineno, "duplicate index " + std::to_string(n));
    }
  }
  if (!have_r) throw ParseError(lineno, "missing spectral parameter line");

  const PrimeList primes = sieve_primes(limit);
  std::vector<double> prime_values(limit + 1, 0.0);
  for (const auto p : primes) {
    const auto it = entries.find(p);
    if (it == entries.end()) {
      throw IncompleteSourceError(p, "coefficient for prime " + std::to_string(p) + " missing");
    }
    prime_values[p] = it->second;
  }
  auto rule = [&prime_values](std::uint64_t p, unsigned k) {
    const double lp = prime_values[p];
    double prev = 1.0;
    double cur = lp;
    for (unsigned j = 1; j < k; ++j) {
      const double next = lp * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  };
  auto values = MultiplicativeFunction(rule, limit).values();
  return EigenvalueTable(FormKind::kMaassEven, r, std::vector<double>(values.begin(), values.end()));
}

EigenvalueTable load_maass_table(const std::filesystem::path& path, std::uint64_t limit) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "cannot open coefficient file " + path.string());
  return parse_maass_table(in, limit);
}

EigenvalueTable build_eigenvalue_table(FormKind kind,
                                       const std::optional<std::filesystem::path>& source,
                                       std::uint64_t limit) {
  if (kind == FormKind::kHolomorphicDelta) return build_delta_table(limit);
  if (!source) throw Error(ErrorKind::kConfig, "Maass form requires a coefficient file");
  return load_maass_table(*source, limit);
}

MertensSum rankin_mertens_sum(const EigenvalueTable& table, double x) {
  if (!(x >= 3.0)) throw Error(ErrorKind::kDomain, "Rankin-Mertens sum needs x >= 3");
  if (x > static_cast<double>(table.limit())) {
    throw Error(ErrorKind::kDomain, "Rankin-Mertens cutoff exceeds table limit");
  }
  const auto top = static_cast<std::uint64_t>(std::floor(x));
  const FactorTable factors(top);
  MertensSum out;
  for (std::uint64_t p = 2; p <= top; ++p) {
    if (!factors.is_prime(p)) continue;
    const double l = table(p);
    out.sum += l * l / static_cast<double>(p);
  }
  out.residual = out.sum - std::log(std::log(x));
  return out;
}

}  // namespace reslab
