#include <gtest/gtest.h>

#include <random>

#include "bubble/fourier.hpp"
#include "oracles.hpp"

using namespace bubble;

TEST(Synthesize, ConstantAndCosine) {
  TrigSeries one(2);
  one.set(0, 1.0);
  for (const auto& v : synthesize(one, 8)) EXPECT_EQ(v, cplx(1.0));
  TrigSeries c(2);
  c.set(1, 0.5);
  const auto s = synthesize(c, 8);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(s[j].real(), std::cos(kTwoPi * j / 8), 1e-15);
}

TEST(Synthesize, RejectsAliasingGrid) {
  TrigSeries f(8);
  EXPECT_THROW(synthesize(f, 16), AliasingError);
  EXPECT_NO_THROW(synthesize(f, 18));
}

TEST(Analyze, SineAndShiftedCosine) {
  std::vector<double> s(32), c(32);
  for (int j = 0; j < 32; ++j) {
    s[j] = std::sin(3 * kTwoPi * j / 32);
    c[j] = 1.0 + std::cos(kTwoPi * j / 32);
  }
  const TrigSeries fs = analyze(std::span<const double>(s), 8);
  EXPECT_NEAR(std::abs(fs[3] - cplx(0, -0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(fs[-3] - cplx(0, 0.5)), 0.0, 1e-15);
  const TrigSeries fc = analyze(std::span<const double>(c), 8);
  EXPECT_NEAR(fc[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(fc[1].real(), 0.5, 1e-15);
  EXPECT_NEAR(fc[-1].real(), 0.5, 1e-15);
}

TEST(Analyze, RoundTripRandomHermitian) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const TrigSeries f = oracle::random_series(rng, 20, 1.0, false);
    const auto samples = synthesize_real(f, 64);
    const TrigSeries g = analyze(std::span<const double>(samples), 20);
    EXPECT_LE((f - g).max_abs(), 1e-13);
    const auto back = synthesize_real(g, 64);
    for (int j = 0; j < 64; ++j) EXPECT_NEAR(back[j], samples[j], 1e-13);
  }
}

TEST(Analyze, ShiftedUniformNodes) {
  std::mt19937_64 rng(5);
  const TrigSeries f = oracle::random_series(rng, 6, 1.0, false);
  const int m = 32;
  std::vector<double> nodes(m);
  std::vector<cplx> vals(m);
  for (int j = 0; j < m; ++j) {
    nodes[j] = -kPi + kTwoPi * j / m;
    vals[j] = oracle::eval(f, nodes[j]);
  }
  const TrigSeries g = analyze(std::span<const double>(nodes), std::span<const cplx>(vals), 6, true);
  EXPECT_LE((f - g).max_abs(), 1e-14);
  nodes[3] += 1e-3;
  EXPECT_THROW(analyze(std::span<const double>(nodes), std::span<const cplx>(vals), 6, true), ConfigError);
}

TEST(TrigSeriesType, HermitianSymmetryEnforced) {
  std::vector<cplx> c = {cplx(1, 2), 0.0, cplx(1, -2)};
  EXPECT_NO_THROW(TrigSeries(1, c));
  c[0] = cplx(1, 3);
  EXPECT_THROW(TrigSeries(1, c), SymmetryError);
  TrigSeries f(2);
  EXPECT_THROW(f.set(0, cplx(0, 1)), SymmetryError);
  EXPECT_THROW(f.set(3, 1.0), ConfigError);
  f.set(2, cplx(0.3, 0.4));
  EXPECT_EQ(f[-2], cplx(0.3, -0.4));
}

TEST(Derivative, CosineAndConstant) {
  TrigSeries c(3);
  c.set(1, 0.5);
  const TrigSeries d = derivative(c);
  // -sin = (i/2) e^{i a} - (i/2) e^{-i a}
  EXPECT_NEAR(std::abs(d[1] - cplx(0, 0.5)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(d[-1] - cplx(0, -0.5)), 0.0, 1e-16);
  TrigSeries k(3);
  k.set(0, 2.5);
  EXPECT_EQ(derivative(k).max_abs(), 0.0);
}

TEST(Derivative, FiniteDifferenceOrderTwo) {
  std::mt19937_64 rng(3);
  const TrigSeries f = oracle::random_series(rng, 8, 1.0, false);
  const TrigSeries df = derivative(f);
  double prev = 0.0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    double err = 0.0;
    for (int j = 0; j < 40; ++j) {
      const double x = 0.157 * j;
      const cplx fd = (oracle::eval(f, x + h) - oracle::eval(f, x - h)) / (2 * h);
      err = std::max(err, std::abs(fd - oracle::eval(df, x)));
    }
    if (prev > 0.0) { EXPECT_NEAR(prev / err, 4.0, 0.05); }
    prev = err;
  }
}

TEST(OperatorM, CosineAndConstant) {
  TrigSeries c(3);
  c.set(1, 0.5);
  const TrigSeries m = operator_M(c);
  for (double x : {0.0, 0.4, 2.0, 5.5}) EXPECT_NEAR(oracle::eval(m, x).real(), std::sin(x), 1e-15);
  TrigSeries k(3);
  k.set(0, 1.7);
  EXPECT_EQ(operator_M(k).max_abs(), 0.0);
}

TEST(OperatorM, DirectQuadrature) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const TrigSeries f = oracle::random_series(rng, 7, 1.0, false);
    const TrigSeries m = operator_M(f);
    auto fr = [&](double x) { return oracle::eval(f, x).real(); };
    const double total = oracle::gauss(fr, 0.0, kTwoPi);
    for (double a : {0.3, 1.1, 2.9, 4.4, 6.0}) {
      const double direct = oracle::gauss(fr, 0.0, a) - a / kTwoPi * total;
      EXPECT_NEAR(oracle::eval(m, a).real(), direct, 1e-12);
    }
  }
}

TEST(Cutoff, JNAndJN1) {
  TrigSeries f(5);
  for (int k : {0, 1, 2, 5}) f.set(k, 1.0 + k);
  const TrigSeries a = cutoff_JN(f, 2);
  const TrigSeries b = cutoff_JN1(f, 2);
  for (int k = 0; k <= 5; ++k) {
    EXPECT_EQ(a[k] != cplx(0.0), k <= 2) << k;
    EXPECT_EQ(b[k] != cplx(0.0), k == 0 || k == 2) << k;
  }
  EXPECT_EQ(cutoff_JN1(b, 2), b);
}

TEST(Product, CosineSquaredAndIdentity) {
  TrigSeries c(2);
  c.set(1, 0.5);
  const TrigSeries p = product(c, c, 4);
  EXPECT_NEAR(p[0].real(), 0.5, 1e-16);
  EXPECT_NEAR(p[2].real(), 0.25, 1e-16);
  EXPECT_NEAR(std::abs(p[1]), 0.0, 1e-16);
  std::mt19937_64 rng(1);
  const TrigSeries f = oracle::random_series(rng, 9, 1.0, false);
  TrigSeries one(0);
  one.set(0, 1.0);
  EXPECT_LE((product(f, one, 9) - f).max_abs(), 1e-15);
}

TEST(Product, MatchesDirectConvolution) {
  std::mt19937_64 rng(23);
  const TrigSeries f = oracle::random_series(rng, 12, 1.0, false);
  const TrigSeries g = oracle::random_series(rng, 9, 1.0, false);
  const TrigSeries p = product(f, g, 21);
  for (int k = -21; k <= 21; ++k) {
    cplx direct = 0.0;
    for (int j = -9; j <= 9; ++j) direct += f[k - j] * g[j];
    EXPECT_NEAR(std::abs(p[k] - direct), 0.0, 1e-13);
  }
  // and the pointwise product of samples
  for (double x : {0.2, 1.9, 4.0}) EXPECT_NEAR(std::abs(oracle::eval(p, x) - oracle::eval(f, x) * oracle::eval(g, x)), 0.0, 1e-12);
}

TEST(Norms, Examples) {
  TrigSeries phi(4);
  phi.set(2, 0.01);
  EXPECT_NEAR(norm_Fs1(phi, 1.0), 0.04, 1e-17);
  EXPECT_NEAR(norm_Fs1(phi, 2.0), 0.08, 1e-17);
  EXPECT_NEAR(norm_F01(phi), 0.02, 1e-17);
  TrigSeries c(1);
  c.set(0, 3.0);
  EXPECT_EQ(norm_Fs1(c, 0.0), 0.0);
  EXPECT_EQ(norm_Fs1_inclusive(c, 0.0), 3.0);
  EXPECT_NEAR(norm_Fs1(phi, 1.0, NormWeight{0.1, 1.0}), 0.04 * std::exp(0.1), 1e-16);
  EXPECT_THROW(norm_Fs1(phi, -1.0), ConfigError);
}

TEST(Norms, ProductEstimateProperty) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> band(1, 12);
  std::uniform_real_distribution<double> nu(0.0, 0.5);
  for (int trial = 0; trial < 300; ++trial) {
    const TrigSeries f = oracle::random_series(rng, band(rng), 1.0, false);
    const TrigSeries g = oracle::random_series(rng, band(rng), 1.0, false);
    const NormWeight w{nu(rng), 1e9};
    const TrigSeries p = product(f, g, f.N() + g.N());
    EXPECT_LE(norm_F01(p, w), norm_F01(f, w) * norm_F01(g, w) * (1 + 1e-13));
    EXPECT_LE(max_abs_on_grid(f, 64), norm_F01(f) * (1 + 1e-13));
  }
}

TEST(AnalyticityWeight, Values) {
  EXPECT_EQ(nu_of_t(0.1, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(nu_of_t(0.1, 1.0), 0.05);
  EXPECT_NEAR(nu_of_t(0.1, 1e12), 0.1, 1e-12);
  EXPECT_EQ(nu_of_t(0.1, INFINITY), 0.1);
  EXPECT_THROW(nu_of_t(0.1, -1.0), ConfigError);
}

TEST(Json, RoundTripBitExact) {
  std::mt19937_64 rng(8);
  const TrigSeries f = oracle::random_series(rng, 10, 1.0, false) * (1.0 / 3.0);
  const TrigSeries g = nlohmann::json::parse(nlohmann::json(f).dump()).get<TrigSeries>();
  EXPECT_TRUE(g.is_real());
  EXPECT_EQ(f, g);
  nlohmann::json bad = nlohmann::json(f);
  bad["re"].erase(0);
  EXPECT_THROW(bad.get<TrigSeries>(), ConfigError);
}
