#pragma once

#include <cmath>
#include <complex>

namespace reslab {

// Neumaier's variant of compensated summation.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (magnitude(sum_) >= magnitude(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double magnitude(double x) { return std::fabs(x); }
  static long double magnitude(long double x) { return std::fabs(x); }

  T sum_{};
  T comp_{};
};

// Componentwise compensation for complex accumulations.
template <class T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  CompensatedSum& operator+=(std::complex<T> x) {
    add(x);
    return *this;
  }
  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

}  // namespace reslab
