/**
 * @file fourier.hpp
 * @brief Band-limited trigonometric series, discrete transforms, spectral operators and weighted Wiener norms.
 *
 * Grid convention: alpha_j = 2 pi j / m, j = 0..m-1. A series of band N needs m >= 2N+2 samples so
 * that no mode collides with its negative or with the Nyquist mode.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "bubble/detail/fft.hpp"
#include "bubble/error.hpp"

namespace bubble {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/**
 * @brief Fourier coefficients c_k, k = -N..N, of a 2 pi periodic function.
 *
 * Real series store exactly Hermitian data: c_{-k} == conj(c_k) bitwise and Im c_0 == 0.
 * Modes outside the band read as zero.
 */
class TrigSeries {
 public:
  TrigSeries() : N_(0), real_(true), c_(1, cplx(0.0)) {}

  explicit TrigSeries(int N, bool real = true) : N_(N), real_(real) {
    if (N < 0) throw ConfigError("TrigSeries: negative band N = " + std::to_string(N));
    c_.assign(2 * N + 1, cplx(0.0));
  }

  /// Coefficients ordered k = -N..N. Real series are checked for Hermitian symmetry.
  TrigSeries(int N, std::vector<cplx> coeffs, bool real = true) : N_(N), real_(real), c_(std::move(coeffs)) {
    if (N < 0) throw ConfigError("TrigSeries: negative band N = " + std::to_string(N));
    if (c_.size() != static_cast<std::size_t>(2 * N + 1))
      throw ConfigError("TrigSeries: expected " + std::to_string(2 * N + 1) + " coefficients, got " +
                        std::to_string(c_.size()));
    for (const auto& v : c_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ConfigError("TrigSeries: non-finite coefficient");
    if (real_) enforce_hermitian();
  }

  int N() const { return N_; }
  bool is_real() const { return real_; }

  cplx operator[](int k) const { return (k < -N_ || k > N_) ? cplx(0.0) : c_[k + N_]; }

  /// Sets mode k; for real series also sets mode -k to the conjugate.
  void set(int k, cplx v) {
    if (k < -N_ || k > N_)
      throw ConfigError("TrigSeries::set: mode " + std::to_string(k) + " outside band " + std::to_string(N_));
    if (real_) {
      if (k == 0) {
        if (v.imag() != 0.0) throw SymmetryError("TrigSeries::set: real series needs a real zero mode");
        c_[N_] = v;
        return;
      }
      c_[N_ - k] = std::conj(v);
    }
    c_[N_ + k] = v;
  }

  const std::vector<cplx>& coefficients() const { return c_; }

  /// Same function with band N2 (truncates or zero-pads).
  TrigSeries resized(int N2) const {
    TrigSeries out(N2, real_);
    const int n = std::min(N_, N2);
    for (int k = -n; k <= n; ++k) out.c_[k + N2] = c_[k + N_];
    return out;
  }

  TrigSeries as_complex() const {
    TrigSeries out = *this;
    out.real_ = false;
    return out;
  }

  TrigSeries conj() const {
    TrigSeries out(N_, real_);
    for (int k = -N_; k <= N_; ++k) out.c_[k + N_] = std::conj(c_[-k + N_]);
    return out;
  }

  TrigSeries& operator+=(const TrigSeries& o) { return axpy(1.0, o); }
  TrigSeries& operator-=(const TrigSeries& o) { return axpy(-1.0, o); }

  TrigSeries& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  /// Multiplication by a complex scalar; drops the real flag unless s is real.
  TrigSeries& operator*=(cplx s) {
    if (s.imag() != 0.0) real_ = false;
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend TrigSeries operator+(TrigSeries a, const TrigSeries& b) { return a += b; }
  friend TrigSeries operator-(TrigSeries a, const TrigSeries& b) { return a -= b; }
  friend TrigSeries operator*(double s, TrigSeries a) { return a *= s; }
  friend TrigSeries operator*(TrigSeries a, double s) { return a *= s; }
  friend TrigSeries operator*(cplx s, TrigSeries a) { return a *= s; }

  friend bool operator==(const TrigSeries& a, const TrigSeries& b) {
    return a.N_ == b.N_ && a.real_ == b.real_ && a.c_ == b.c_;
  }

  /// Largest coefficient modulus.
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  TrigSeries& axpy(double s, const TrigSeries& o) {
    if (o.N_ > N_) *this = resized(o.N_);
    for (int k = -o.N_; k <= o.N_; ++k) c_[k + N_] += s * o.c_[k + o.N_];
    real_ = real_ && o.real_;
    return *this;
  }

  void enforce_hermitian() {
    const double scale = std::max(1.0, max_abs());
    const double tol = 1e-12 * scale;
    if (std::abs(c_[N_].imag()) > tol)
      throw SymmetryError("TrigSeries: real series has complex zero mode");
    for (int k = 1; k <= N_; ++k) {
      if (std::abs(c_[N_ - k] - std::conj(c_[N_ + k])) > tol)
        throw SymmetryError("TrigSeries: coefficients at k = +-" + std::to_string(k) + " are not conjugate");
    }
    // Within tolerance: store the exactly symmetric representative.
    c_[N_] = cplx(c_[N_].real(), 0.0);
    for (int k = 1; k <= N_; ++k) {
      const cplx v = 0.5 * (c_[N_ + k] + std::conj(c_[N_ - k]));
      c_[N_ + k] = v;
      c_[N_ - k] = std::conj(v);
    }
  }

  int N_;
  bool real_;
  std::vector<cplx> c_;
};

/// Analyticity weight nu(t) = nu0 t / (1 + t).
inline double nu_of_t(double nu0, double t) {
  if (!(t >= 0.0)) throw ConfigError("nu_of_t: time must be nonnegative");
  if (!(nu0 >= 0.0)) throw ConfigError("nu_of_t: nu0 must be nonnegative");
  if (std::isinf(t)) return nu0;
  return nu0 * t / (1.0 + t);
}

struct NormWeight {
  double nu0 = 0.0;
  double t = 0.0;
  double nu() const { return nu_of_t(nu0, t); }
};

namespace detail {

inline int wrap(int k, int m) { return ((k % m) + m) % m; }

inline void require_grid(int N, int m, const char* who) {
  if (m < 2 * N + 2)
    throw AliasingError(std::string(who) + ": grid of " + std::to_string(m) + " points cannot carry band " +
                        std::to_string(N) + " (need m >= 2N+2)");
}

inline TrigSeries from_spectrum(const std::vector<cplx>& spec, int N, bool real) {
  const int m = static_cast<int>(spec.size());
  TrigSeries out(N, real);
  if (real) {
    out.set(0, cplx(spec[0].real() / m, 0.0));
    for (int k = 1; k <= N; ++k) out.set(k, 0.5 * (spec[k] + std::conj(spec[m - k])) / double(m));
  } else {
    for (int k = -N; k <= N; ++k) out.set(k, spec[wrap(k, m)] / double(m));
  }
  return out;
}

}  // namespace detail

/// Samples sum_k c_k e^{i k alpha_j} on the uniform m-point grid.
inline std::vector<cplx> synthesize(const TrigSeries& f, int m) {
  detail::require_grid(f.N(), m, "synthesize");
  std::vector<cplx> buf(m, cplx(0.0));
  for (int k = -f.N(); k <= f.N(); ++k) buf[detail::wrap(k, m)] = f[k];
  detail::fft_backward(buf);
  return buf;
}

/// Real part of synthesize(); the series must be real.
inline std::vector<double> synthesize_real(const TrigSeries& f, int m) {
  if (!f.is_real()) throw ConfigError("synthesize_real: series is not real");
  auto z = synthesize(f, m);
  std::vector<double> out(m);
  for (int j = 0; j < m; ++j) out[j] = z[j].real();
  return out;
}

/// Coefficients (1/m) sum_j f_j e^{-i k alpha_j}, |k| <= N.
inline TrigSeries analyze(std::span<const cplx> samples, int N, bool real = false) {
  const int m = static_cast<int>(samples.size());
  detail::require_grid(N, m, "analyze");
  std::vector<cplx> buf(samples.begin(), samples.end());
  if (real)
    for (auto& v : buf) v = cplx(v.real(), 0.0);
  detail::fft_forward(buf);
  return detail::from_spectrum(buf, N, real);
}

inline TrigSeries analyze(std::span<const double> samples, int N) {
  const int m = static_cast<int>(samples.size());
  detail::require_grid(N, m, "analyze");
  std::vector<cplx> buf(samples.begin(), samples.end());
  detail::fft_forward(buf);
  return detail::from_spectrum(buf, N, true);
}

/**
 * @brief Analysis with explicit nodes. Nodes must be uniformly spaced with step 2 pi/m; an offset
 * alpha_0 != 0 is compensated by a phase shift.
 */
inline TrigSeries analyze(std::span<const double> nodes, std::span<const cplx> samples, int N, bool real = false) {
  const int m = static_cast<int>(samples.size());
  if (static_cast<int>(nodes.size()) != m) throw ConfigError("analyze: node and sample counts differ");
  if (m == 0) throw ConfigError("analyze: empty grid");
  const double h = kTwoPi / m;
  for (int j = 0; j < m; ++j)
    if (std::abs(nodes[j] - (nodes[0] + j * h)) > 1e-12 * std::max(1.0, std::abs(nodes[j])))
      throw ConfigError("analyze: non-uniform grid (node " + std::to_string(j) + ")");
  TrigSeries f = analyze(samples, N, false);
  // Sample j sits at alpha_0 + j h, so the plain transform returned c_k e^{i k alpha_0}.
  TrigSeries out(N, false);
  for (int k = -N; k <= N; ++k) out.set(k, f[k] * std::polar(1.0, -k * nodes[0]));
  if (!real) return out;
  return TrigSeries(N, out.coefficients(), true);
}

inline TrigSeries derivative(const TrigSeries& f) {
  TrigSeries out(f.N(), f.is_real());
  for (int k = 1; k <= f.N(); ++k) {
    out.set(k, cplx(0.0, k) * f[k]);
    if (!f.is_real()) out.set(-k, cplx(0.0, -k) * f[-k]);
  }
  return out;
}

/**
 * @brief Mean-free antiderivative: (M f)(alpha) = int_0^alpha f - (alpha/2pi) int f.
 *
 * Modes k != 0 get -(i/k) c_k; the zero mode is fixed by (M f)(0) = 0.
 */
inline TrigSeries operator_M(const TrigSeries& f) {
  TrigSeries out(f.N(), f.is_real());
  cplx zero_mode = 0.0;
  for (int k = 1; k <= f.N(); ++k) {
    const cplx a = cplx(0.0, -1.0 / k) * f[k];
    const cplx b = cplx(0.0, 1.0 / k) * f[-k];
    out.set(k, a);
    if (!f.is_real()) out.set(-k, b);
    zero_mode -= a + b;
  }
  if (f.is_real()) zero_mode = cplx(zero_mode.real(), 0.0);
  out.set(0, zero_mode);
  return out;
}

/// Drops modes |k| > Nc.
inline TrigSeries cutoff_JN(const TrigSeries& f, int Nc) {
  if (Nc < 0) throw ConfigError("cutoff_JN: negative cutoff");
  TrigSeries out(f.N(), f.is_real());
  const int n = std::min(Nc, f.N());
  for (int k = -n; k <= n; ++k) {
    if (f.is_real() && k < 0) continue;
    out.set(k, f[k]);
  }
  return out;
}

/// Drops modes |k| > Nc and |k| = 1.
inline TrigSeries cutoff_JN1(const TrigSeries& f, int Nc) {
  TrigSeries out = cutoff_JN(f, Nc);
  if (out.N() >= 1) {
    out.set(1, 0.0);
    if (!out.is_real()) out.set(-1, 0.0);
  }
  return out;
}

/// Smallest FFT-friendly size >= n (2^a 3^b).
inline int good_fft_size(int n) {
  int best = 1;
  while (best < n) best *= 2;
  for (int p3 = 1; p3 <= best; p3 *= 3)
    for (int p = p3; p <= best; p *= 2)
      if (p >= n && p < best) best = p;
  return best;
}

/**
 * @brief Convolution (f g)_k = sum_j f_{k-j} g_j for |k| <= N_out.
 *
 * Computed on a padded grid of size > N_f + N_g + N_out, which makes the truncated
 * result alias-free.
 */
inline TrigSeries product(const TrigSeries& f, const TrigSeries& g, int N_out) {
  if (N_out < 0) throw ConfigError("product: negative output band");
  const int M = good_fft_size(std::max({f.N() + g.N() + N_out + 1, 2 * N_out + 2, 2 * std::max(f.N(), g.N()) + 2}));
  auto a = synthesize(f, M);
  auto b = synthesize(g, M);
  for (int j = 0; j < M; ++j) a[j] *= b[j];
  return analyze(a, N_out, f.is_real() && g.is_real());
}

/// sum_k e^{nu|k|} |c_k|
inline double norm_F01(const TrigSeries& f, const NormWeight& w = {}) {
  const double nu = w.nu();
  CompensatedSum s;
  for (int k = -f.N(); k <= f.N(); ++k) s.add(std::exp(nu * std::abs(k)) * std::abs(f[k]));
  return s.value();
}

/// sum_{k != 0} e^{nu|k|} |k|^s |c_k|
inline double norm_Fs1(const TrigSeries& f, double s, const NormWeight& w = {}) {
  if (!(s >= 0.0)) throw ConfigError("norm_Fs1: s must be nonnegative");
  const double nu = w.nu();
  CompensatedSum acc;
  for (int k = -f.N(); k <= f.N(); ++k) {
    if (k == 0) continue;
    const double ak = std::abs(k);
    acc.add(std::exp(nu * ak) * std::pow(ak, s) * std::abs(f[k]));
  }
  return acc.value();
}

/// sum over all k of e^{nu|k|} |k|^s |c_k| with 0^0 = 1; equals norm_Fs1 for s > 0.
inline double norm_Fs1_inclusive(const TrigSeries& f, double s, const NormWeight& w = {}) {
  const double zero = (s == 0.0) ? std::abs(f[0]) : 0.0;
  CompensatedSum acc;
  acc.add(norm_Fs1(f, s, w));
  acc.add(zero);
  return acc.value();
}

/// Maximum modulus of the samples on an m-point grid.
inline double max_abs_on_grid(const TrigSeries& f, int m) {
  double mx = 0.0;
  for (const auto& v : synthesize(f, m)) mx = std::max(mx, std::abs(v));
  return mx;
}

inline void to_json(nlohmann::json& j, const TrigSeries& f) {
  std::vector<double> re, im;
  re.reserve(2 * f.N() + 1);
  im.reserve(2 * f.N() + 1);
  for (const auto& v : f.coefficients()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j = nlohmann::json{{"N", f.N()}, {"re", re}, {"im", im}};
}

/// Loads {"N","re","im"}; the result is real iff the data are exactly Hermitian.
inline void from_json(const nlohmann::json& j, TrigSeries& f) {
  if (!j.is_object()) throw ConfigError("series: expected an object with N, re, im");
  for (const char* key : {"N", "re", "im"})
    if (!j.contains(key)) throw ConfigError(std::string("series: missing field '") + key + "'");
  if (!j["N"].is_number_integer()) throw ConfigError("series/N: expected an integer");
  const int N = j["N"].get<int>();
  if (N < 0) throw ConfigError("series/N: must be nonnegative");
  if (!j["re"].is_array() || !j["im"].is_array()) throw ConfigError("series/re, series/im: expected arrays");
  const auto& re = j["re"];
  const auto& im = j["im"];
  if (re.size() != static_cast<std::size_t>(2 * N + 1) || im.size() != re.size())
    throw ConfigError("series/re, series/im: expected " + std::to_string(2 * N + 1) + " entries each");
  std::vector<cplx> c(2 * N + 1);
  for (int i = 0; i < 2 * N + 1; ++i) {
    if (!re[i].is_number() || !im[i].is_number())
      throw ConfigError("series/re[" + std::to_string(i) + "]: expected a number");
    c[i] = cplx(re[i].get<double>(), im[i].get<double>());
  }
  bool hermitian = c[N].imag() == 0.0;
  for (int k = 1; k <= N && hermitian; ++k) hermitian = c[N - k] == std::conj(c[N + k]);
  f = TrigSeries(N, std::move(c), hermitian);
}

}  // namespace bubble
