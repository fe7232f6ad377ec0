#include <gtest/gtest.h>

#include "reslab/error.hpp"
#include "reslab/special.hpp"
#include "reslab/summation.hpp"

namespace reslab {
namespace {

struct Reference {
  cplx z;
  cplx value;
};

// Frozen from mpmath (30 digits) loggamma / digamma.
const Reference kLogGamma[] = {
    {{3.0, 4.0}, {-1.7566267846037841105, 4.7426644380346579282}},
    {{0.25, 500.0}, {-786.03287685759916528, 2606.9113709627316958}},
    {{-2.5, 0.5}, {-0.93508562129827747868, -8.8709628852474591986}},
    {{0.5, 0.0}, {0.57236494292470008707, 0.0}},
    {{20.0, -7.0}, {38.109399750173251843, -20.938440148831686857}},
    {{0.1, 1e4}, {-15710.728465564491993, 82102.775397397776067}},
};

const Reference kDigamma[] = {
    {{0.25, 10.0}, {2.302480880694233774, 1.5958120010007441049}},
    {{-3.5, 2.0}, {1.4991208125819593084, 2.6795724806145292436}},
    {{1.0, 0.0}, {-0.57721566490153286061, 0.0}},
    {{50.0, 100.0}, {4.7147459616302610107, 1.1111540511786245514}},
};

TEST(LogGamma, MatchesReference) {
  for (const auto& ref : kLogGamma) {
    const cplx got = log_gamma(ref.z);
    const double scale = std::max(1.0, std::abs(ref.value));
    EXPECT_LT(std::abs(got - ref.value) / scale, 5e-15) << ref.z;
  }
}

TEST(LogGamma, ConjugateSymmetry) {
  for (const double t : {0.3, 17.0, 250.0}) {
    const cplx z(0.75, t);
    EXPECT_EQ(log_gamma(std::conj(z)), std::conj(log_gamma(z)));
  }
}

TEST(Digamma, MatchesReference) {
  for (const auto& ref : kDigamma) {
    EXPECT_LT(std::abs(digamma(ref.z) - ref.value), 1e-14) << ref.z;
  }
}

TEST(Digamma, DerivativeOfLogGamma) {
  const cplx z(2.5, 40.0);
  const double h = 1e-5;
  const cplx numeric = (log_gamma(z + h) - log_gamma(z - h)) / (2 * h);
  EXPECT_LT(std::abs(numeric - digamma(z)), 1e-8);
}

TEST(Special, PolesThrow) {
  for (const double x : {0.0, -1.0, -7.0}) {
    try {
      log_gamma(cplx(x, 0.0));
      FAIL() << "no pole error at " << x;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kPole);
    }
    EXPECT_THROW(digamma(cplx(x, 0.0)), Error);
  }
}

TEST(CompensatedSum, RecoversCancellation) {
  CompensatedSum<double> sum;
  sum += 1e16;
  sum += 1.0;
  sum += -1e16;
  EXPECT_EQ(sum.value(), 1.0);
  CompensatedSum<cplx> csum;
  csum += cplx(1e16, -1e16);
  csum += cplx(1.0, 2.0);
  csum += cplx(-1e16, 1e16);
  EXPECT_EQ(csum.value(), cplx(1.0, 2.0));
}

}  // namespace
}  // namespace reslab
