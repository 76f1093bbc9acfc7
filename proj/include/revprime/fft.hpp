#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace revprime {

// DFT with kernel e(sign * k t / n) for n = radix^levels, radix in [2, 64].
// Cooley-Tukey decimation in time; O(n * radix * levels) complex multiplies.
// The grid sizes here are powers of the digit base, so a single small radix
// always factorizes n exactly.
class PowRadixDft {
 public:
  PowRadixDft(std::int64_t n, std::int64_t radix, int sign) : n_(n), radix_(radix) {
    if (radix < 2 || radix > 64) throw std::domain_error("PowRadixDft: radix out of range");
    std::int64_t check = 1;
    while (check < n) {
      if (check > n / radix + 1) throw std::domain_error("PowRadixDft: n not a radix power");
      check *= radix;
    }
    if (check != n) throw std::domain_error("PowRadixDft: n not a radix power");
    roots_.resize(n_);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::int64_t j = 0; j < n_; ++j) {
      double ang = two_pi * static_cast<double>(j) / static_cast<double>(n_) * sign;
      roots_[j] = {std::cos(ang), std::sin(ang)};
    }
  }

  void transform(const std::complex<double>* in, std::complex<double>* out) const {
    recurse(in, 1, out, n_);
  }

  std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& in) const {
    if (static_cast<std::int64_t>(in.size()) != n_)
      throw std::domain_error("PowRadixDft: size mismatch");
    std::vector<std::complex<double>> out(in.size());
    transform(in.data(), out.data());
    return out;
  }

 private:
  // X[k2*m + k1] = sum_v root[v*(k2*m + k1) * (n_/len)] * Y_v[k1], where Y_v is
  // the DFT of the v-th stride-decimated subsequence.
  void recurse(const std::complex<double>* in, std::int64_t stride, std::complex<double>* out,
               std::int64_t len) const {
    if (len == 1) {
      out[0] = in[0];
      return;
    }
    const std::int64_t m = len / radix_;
    for (std::int64_t v = 0; v < radix_; ++v)
      recurse(in + v * stride, stride * radix_, out + v * m, m);

    const std::int64_t scale = n_ / len;
    std::complex<double> col[64];
    for (std::int64_t k1 = 0; k1 < m; ++k1) {
      for (std::int64_t v = 0; v < radix_; ++v) col[v] = out[v * m + k1];
      for (std::int64_t k2 = 0; k2 < radix_; ++k2) {
        const std::int64_t k = k2 * m + k1;
        std::complex<double> acc = col[0];
        for (std::int64_t v = 1; v < radix_; ++v)
          acc += col[v] * roots_[(v * k) % len * scale];
        out[k] = acc;
      }
    }
  }

  std::int64_t n_;
  std::int64_t radix_;
  std::vector<std::complex<double>> roots_;
};

}  // namespace revprime
