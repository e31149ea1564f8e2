#ifndef WAVESIM_EXCITATION_HPP
#define WAVESIM_EXCITATION_HPP

#include <cstddef>

#include "wavesim/signal.hpp"

namespace wavesim {

/// Hanning-windowed toneburst value at time t: zero outside [0, n_cycles/fc].
double hanning_toneburst_value(double fc, int n_cycles, double t);

/// Equal-amplitude two-carrier burst under a fixed 20 kHz Hanning window
/// (support [0, 0.05 ms]).
double dual_toneburst_value(double fc1, double fc2, double t);

/// Sampled burst over its support. Warns on stderr and flags the signal when dt
/// cannot resolve the carrier (dt > 1/(20 fc)).
SampledSignal hanning_toneburst(double fc, int n_cycles, double dt);
SampledSignal dual_toneburst(double fc1, double fc2, double dt);

struct SamplingPlan {
  double dt = 0.0;
  std::size_t N = 0;
};

/// dt resolving spp samples per period of f_max; N = next power of two covering the
/// duration.
SamplingPlan sampling_plan(double f_max, int spp, double duration);

}  // namespace wavesim

#endif  // WAVESIM_EXCITATION_HPP
