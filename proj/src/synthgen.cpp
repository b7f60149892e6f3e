#include "fanwatch/synthgen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fanwatch/rng.hpp"

namespace fanwatch {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

void check_schedule(const ScheduleConfig& s)
{
    if (s.rpm_step <= 0.0 || s.rpm_max <= 0.0)
        throw std::invalid_argument("rpm_step and rpm_max must be positive");
    const double steps = s.rpm_max / s.rpm_step;
    if (std::fabs(steps - std::round(steps)) > 1e-9)
        throw std::invalid_argument("rpm_max must be an integer multiple of rpm_step");
    if (s.plateau_s <= 0.0 || s.ramp_s <= 0.0)
        throw std::invalid_argument("plateau_s and ramp_s must be positive");
    if (!(s.gyro_rate_hz > s.rpm_rate_hz && s.rpm_rate_hz > 0.0))
        throw std::invalid_argument("need gyro_rate_hz > rpm_rate_hz > 0");
}

void check_profile(const ImpellerProfile& p)
{
    const double vals[] = {p.imbalance_amp,     p.blade_pass_amp,    p.dc_amp,
                           p.noise_floor,       p.noise_gain,        p.common_noise_floor,
                           p.common_noise_gain, p.rpm_noise_floor,   p.rpm_noise_gain};
    for (double v : vals)
        if (!(v >= 0.0))
            throw std::invalid_argument("profile amplitudes and noise terms must be nonnegative");
    if (!p.harmonic_phase.empty() && p.harmonic_phase.size() != kGyroChannels)
        throw std::invalid_argument("harmonic_phase must have 24 entries or be empty");
}

} // namespace

ImpellerProfile ImpellerProfile::scaled(double damage_scale) const
{
    ImpellerProfile out = *this;
    out.imbalance_amp *= damage_scale;
    out.blade_pass_amp *= damage_scale;
    out.dc_amp *= damage_scale;
    return out;
}

std::vector<std::string> gyro_channel_names()
{
    std::vector<std::string> names;
    names.reserve(kGyroChannels);
    for (int sensor = 1; sensor <= 4; ++sensor)
        for (const char* kind : {"acc", "rot"})
            for (const char* axis : {"x", "y", "z"})
                names.push_back("g" + std::to_string(sensor) + "_" + kind + "_" + axis);
    return names;
}

double rpm_setpoint(double t_s, const ScheduleConfig& s)
{
    if (t_s < 0.0)
        throw std::invalid_argument("rpm_setpoint: negative time");
    const double seg = s.plateau_s + s.ramp_s;
    const int steps = s.num_steps();
    const int k = static_cast<int>(t_s / seg);
    if (k >= steps)
        return s.rpm_max;
    const double local = t_s - k * seg;
    if (local < s.plateau_s)
        return k * s.rpm_step;
    const double frac = (local - s.plateau_s) / s.ramp_s;
    return (k + frac) * s.rpm_step;
}

int plateau_at(double t_s, const ScheduleConfig& s)
{
    if (t_s < 0.0)
        return 0;
    const double seg = s.plateau_s + s.ramp_s;
    const int steps = s.num_steps();
    const int k = static_cast<int>(t_s / seg);
    if (k >= steps)
        return steps;
    const double local = t_s - k * seg;
    if (local < s.plateau_s)
        return k; // 0 for the zero-speed hold, by the k=0 case
    return 0; // ramp
}

RawRecording generate_run(const ScheduleConfig& schedule, const ImpellerProfile& profile,
                          Impeller impeller, std::uint64_t seed, std::uint64_t sample_budget)
{
    check_schedule(schedule);
    check_profile(profile);

    const double duration = schedule.total_duration_s();
    const auto n_gyro = static_cast<std::uint64_t>(std::llround(duration * schedule.gyro_rate_hz));
    const auto n_rpm = static_cast<std::uint64_t>(std::llround(duration * schedule.rpm_rate_hz));
    const std::uint64_t total = n_gyro * kGyroChannels + n_rpm;
    if (total > sample_budget)
        throw std::length_error("schedule would produce " + std::to_string(total) +
                                " samples, over the budget of " + std::to_string(sample_budget));

    // per-channel phases and dc factors, fixed by the seed alone
    std::vector<double> phi(kGyroChannels), psi(kGyroChannels), dc(kGyroChannels);
    for (int c = 0; c < kGyroChannels; ++c) {
        Rng pr(substream_seed(seed, "phase", static_cast<std::uint64_t>(c)));
        phi[c] = pr.uniform(0.0, kTwoPi);
        psi[c] = pr.uniform(0.0, kTwoPi);
        dc[c] = pr.uniform(0.5, 1.5);
    }
    if (!profile.harmonic_phase.empty())
        phi = profile.harmonic_phase;

    RawRecording rec;
    rec.schedule = schedule;
    rec.impeller = impeller;
    rec.seed = seed;
    rec.channels.reserve(kGyroChannels + 1);

    // rpm channel, substream index 0 (shared between health states)
    {
        Channel ch;
        ch.name = "rpm";
        ch.rate_hz = schedule.rpm_rate_hz;
        ch.t0_s = 0.0;
        ch.samples.resize(n_rpm);
        Rng rng(substream_seed(seed, "noise", 0));
        for (std::uint64_t i = 0; i < n_rpm; ++i) {
            const double t = static_cast<double>(i) / schedule.rpm_rate_hz;
            const double r = rpm_setpoint(t, schedule);
            const double sigma = profile.rpm_noise_floor + profile.rpm_noise_gain * r;
            ch.samples[i] = r + (sigma > 0.0 ? rng.gaussian(0.0, sigma) : 0.0);
        }
        rec.channels.push_back(std::move(ch));
    }

    // common-mode draws, substream index 25, one per gyro sample
    std::vector<double> common;
    if (profile.common_noise_floor > 0.0 || profile.common_noise_gain > 0.0) {
        common.resize(n_gyro);
        Rng rng(substream_seed(seed, "noise", kGyroChannels + 1));
        for (double& v : common)
            v = rng.gaussian();
    }

    const auto names = gyro_channel_names();
    for (int c = 0; c < kGyroChannels; ++c) {
        Channel ch;
        ch.name = names[static_cast<std::size_t>(c)];
        ch.rate_hz = schedule.gyro_rate_hz;
        ch.t0_s = 0.0;
        ch.samples.resize(n_gyro);
        Rng rng(substream_seed(seed, "noise", static_cast<std::uint64_t>(c) + 1));
        for (std::uint64_t i = 0; i < n_gyro; ++i) {
            const double t = static_cast<double>(i) / schedule.gyro_rate_hz;
            const double r = rpm_setpoint(t, schedule);
            const double rot_hz = r / 60.0;
            double x = profile.dc_amp * dc[static_cast<std::size_t>(c)] * r;
            x += profile.imbalance_amp * r *
                 std::sin(kTwoPi * rot_hz * t + phi[static_cast<std::size_t>(c)]);
            x += profile.blade_pass_amp * r *
                 std::sin(kTwoPi * kBladeCount * rot_hz * t + psi[static_cast<std::size_t>(c)]);
            if (!common.empty())
                x += (profile.common_noise_floor + profile.common_noise_gain * r) * common[i];
            const double sigma = profile.noise_floor + profile.noise_gain * r;
            if (sigma > 0.0)
                x += rng.gaussian(0.0, sigma);
            ch.samples[i] = x;
        }
        rec.channels.push_back(std::move(ch));
    }
    return rec;
}

} // namespace fanwatch
