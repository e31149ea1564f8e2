#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "wavesim/excitation.hpp"

using namespace wavesim;

namespace {

// direct O(N^2) DFT magnitude of zero-padded samples; independent of any FFT library
std::vector<double> dft_magnitude(const std::vector<double>& samples, std::size_t n_pad) {
  std::vector<double> mag(n_pad / 2 + 1, 0.0);
  for (std::size_t k = 0; k < mag.size(); ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < samples.size(); ++n) {
      const double angle = -2.0 * M_PI * static_cast<double>(k * n) / static_cast<double>(n_pad);
      acc += samples[n] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    mag[k] = std::abs(acc);
  }
  return mag;
}

}  // namespace

TEST_CASE("toneburst support and window zeros") {
  const double fc = 100e3;
  const int n = 5;
  const double t_f = n / fc;
  CHECK(hanning_toneburst_value(fc, n, -1e-9) == 0.0);
  CHECK(hanning_toneburst_value(fc, n, 0.0) == 0.0);
  CHECK(hanning_toneburst_value(fc, n, t_f) == 0.0);
  CHECK(hanning_toneburst_value(fc, n, t_f + 1e-9) == 0.0);
  CHECK(std::abs(hanning_toneburst_value(fc, n, 0.5 * t_f)) < 1e-9);  // carrier zero
  CHECK(std::abs(hanning_toneburst_value(fc, n, 0.5 * t_f + 0.25 / fc)) > 0.9);
}

TEST_CASE("sampled toneburst peaks near unit amplitude") {
  const SampledSignal burst = hanning_toneburst(100e3, 5, 0.33e-6);
  CHECK(burst.duration == doctest::Approx(5.0 / 100e3));
  CHECK(burst.samples.size() ==
        static_cast<std::size_t>(std::floor(burst.duration / burst.dt)) + 1);
  REQUIRE(burst.center_frequencies.size() == 1);
  CHECK(burst.center_frequencies[0] == 100e3);
  CHECK_FALSE(burst.undersampled);
  double peak = 0.0;
  for (double v : burst.samples) peak = std::max(peak, std::abs(v));
  CHECK(peak > 0.95);
  CHECK(peak <= 1.0);
}

TEST_CASE("toneburst spectrum is centered on the carrier") {
  const SampledSignal burst = hanning_toneburst(100e3, 5, 0.33e-6);
  const std::size_t n_pad = 2048;
  const std::vector<double> mag = dft_magnitude(burst.samples, n_pad);
  const double df = 1.0 / (static_cast<double>(n_pad) * burst.dt);

  std::size_t k_peak = 0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    if (mag[k] > mag[k_peak]) k_peak = k;
    num += static_cast<double>(k) * df * mag[k] * mag[k];
    den += mag[k] * mag[k];
  }
  CHECK(static_cast<double>(k_peak) * df == doctest::Approx(100e3).epsilon(0.1));
  CHECK(num / den == doctest::Approx(100e3).epsilon(0.05));
}

TEST_CASE("undersampled carriers are flagged") {
  CHECK(hanning_toneburst(100e3, 5, 1.0e-6).undersampled);
  CHECK_FALSE(hanning_toneburst(100e3, 5, 0.4e-6).undersampled);
}

TEST_CASE("dual burst carries both tones under the fixed window") {
  const SampledSignal burst = dual_toneburst(100e3, 200e3, 0.2e-6);
  CHECK(burst.duration == doctest::Approx(0.05e-3));
  REQUIRE(burst.center_frequencies.size() == 2);
  CHECK(burst.center_frequencies[0] == 100e3);
  CHECK(burst.center_frequencies[1] == 200e3);
  CHECK(burst.samples.front() == 0.0);
  CHECK(std::abs(burst.samples.back()) < 1e-9);

  const std::size_t n_pad = 4096;
  const std::vector<double> mag = dft_magnitude(burst.samples, n_pad);
  const double df = 1.0 / (static_cast<double>(n_pad) * burst.dt);
  const auto bin = [&](double f) { return static_cast<std::size_t>(std::lround(f / df)); };
  const double m100 = mag[bin(100e3)];
  const double m200 = mag[bin(200e3)];
  const double m150 = mag[bin(150e3)];
  const double m300 = mag[bin(300e3)];
  CHECK(m100 > 3.0 * m150);
  CHECK(m200 > 3.0 * m150);
  CHECK(m100 > 3.0 * m300);
  CHECK(m200 > 3.0 * m300);
}

TEST_CASE("sampling plan resolves spp samples per period and a power-of-two count") {
  const SamplingPlan plan = sampling_plan(150e3, 2, 0.7e-3);
  CHECK(plan.dt == doctest::Approx(1.0 / 300e3));
  CHECK(plan.N == 256);
  const SamplingPlan fine = sampling_plan(150e3, 20, 0.7e-3);
  CHECK(fine.dt == doctest::Approx(1.0 / 3e6));
  CHECK(fine.N == 4096);  // 2100 samples cover the duration
}
