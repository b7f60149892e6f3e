// Deterministic synthetic test-run generator.
//
// The signal model per gyro channel c at time t with setpoint r(t):
//
//   x_c(t) = dc_amp * d_c * r
//          + imbalance_amp  * r * sin(2*pi * (r/60)      * t + phi_c)
//          + blade_pass_amp * r * sin(2*pi * 12 * (r/60) * t + psi_c)
//          + (common_noise_floor + common_noise_gain * r) * n(t)
//          + N(0, noise_floor + noise_gain * r)
//
// n(t) is a standard-normal draw shared by all 24 channels at time t:
// common-mode frame vibration that no amount of per-channel averaging
// removes. d_c, phi_c, psi_c are drawn once per channel from the run seed, so a
// healthy and a damaged run with the same seed share phases, dc factors
// and all noise substreams; only the profile amplitudes differ.
//
// The rpm channel is r(t) + N(0, rpm_noise_floor + rpm_noise_gain * r).

#ifndef FANWATCH_SYNTHGEN_HPP
#define FANWATCH_SYNTHGEN_HPP

#include <cstdint>

#include "fanwatch/types.hpp"

namespace fanwatch {

inline constexpr int kGyroChannels = 24;
inline constexpr int kBladeCount = 12;

struct ImpellerProfile {
    double imbalance_amp = 0.02;  // once-per-revolution amplitude per unit rpm
    double blade_pass_amp = 0.01; // 12x-per-revolution amplitude per unit rpm
    double dc_amp = 0.01;         // rectified-vibration offset per unit rpm
    double noise_floor = 0.3;
    double noise_gain = 0.0005;
    double common_noise_floor = 0.6; // shared across channels per sample
    double common_noise_gain = 0.0012;
    double rpm_noise_floor = 80.0; // tach jitter: regulation wobble + quantization
    double rpm_noise_gain = 0.07;
    std::vector<double> harmonic_phase; // optional 24 per-channel phases; empty = draw from seed

    // damaged = healthy with all amplitude terms scaled
    ImpellerProfile scaled(double damage_scale) const;
};

// names g1_acc_x .. g4_rot_z, in sensor-major order
std::vector<std::string> gyro_channel_names();

// Piecewise setpoint: plateau k (k = 0..num_steps) holds k*rpm_step,
// ramps interpolate linearly, times past the schedule end return rpm_max.
double rpm_setpoint(double t_s, const ScheduleConfig& schedule);

// 0 for ramp rows and the zero-speed hold, k for the plateau at
// k*rpm_step. The ramp window is half-open: [plateau end, end + ramp_s).
int plateau_at(double t_s, const ScheduleConfig& schedule);

inline constexpr std::uint64_t kDefaultSampleBudget = 50'000'000;

// Pure function of (schedule, profile, seed). Throws std::invalid_argument
// on invariant violations and std::length_error when the total sample
// count would exceed the budget.
RawRecording generate_run(const ScheduleConfig& schedule, const ImpellerProfile& profile,
                          Impeller impeller, std::uint64_t seed,
                          std::uint64_t sample_budget = kDefaultSampleBudget);

} // namespace fanwatch

#endif
