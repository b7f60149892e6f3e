#include <doctest.h>

#include <cmath>
#include <map>

#include "fanwatch/preprocess.hpp"
#include "fanwatch/stats.hpp"
#include "fanwatch/synthgen.hpp"
#include "helpers.hpp"

using namespace fanwatch;

namespace {

ScheduleConfig desk_schedule()
{
    ScheduleConfig s;
    s.plateau_s = 1.0;
    s.ramp_s = 0.2;
    s.gyro_rate_hz = 1000.0;
    s.rpm_rate_hz = 100.0;
    return s;
}

// per-plateau standard deviations computed directly from the raw channel,
// independent of the alignment machinery
std::map<int, double> plateau_stddev(const Channel& ch, const ScheduleConfig& sched)
{
    std::map<int, std::vector<double>> buckets;
    for (std::size_t i = 0; i < ch.samples.size(); ++i) {
        const int p = plateau_at(ch.timestamp(i), sched);
        if (p > 0)
            buckets[p].push_back(ch.samples[i]);
    }
    std::map<int, double> out;
    for (auto& [p, xs] : buckets)
        out[p] = oracle::sample_std(xs);
    return out;
}

} // namespace

TEST_CASE("rpm_setpoint staircase")
{
    const ScheduleConfig s; // defaults: 10 s plateaus, 2 s ramps
    const double seg = s.plateau_s + s.ramp_s;
    CHECK(rpm_setpoint(0.5 * s.plateau_s, s) == 0.0);
    CHECK(rpm_setpoint(4 * seg + 0.5 * s.plateau_s, s) == 1480.0);
    // exact midpoint of the ramp between plateaus 7 and 8
    CHECK(rpm_setpoint(7 * seg + s.plateau_s + 0.5 * s.ramp_s, s) ==
          doctest::Approx(2775.0));
    CHECK(rpm_setpoint(1e9, s) == s.rpm_max);
}

TEST_CASE("plateau_at ramp window is half-open")
{
    const ScheduleConfig s;
    const double seg = s.plateau_s + s.ramp_s;
    CHECK(plateau_at(0.0, s) == 0); // zero-speed hold counts as transient
    CHECK(plateau_at(seg, s) == 1);
    CHECK(plateau_at(seg + s.plateau_s - 1e-9, s) == 1);
    CHECK(plateau_at(seg + s.plateau_s, s) == 0); // first ramp row
    CHECK(plateau_at(2 * seg - 1e-9, s) == 0);    // last ramp row
    CHECK(plateau_at(2 * seg, s) == 2);
    CHECK(plateau_at(8 * seg + 1.0, s) == 8);
}

TEST_CASE("zero profile yields zero gyros and the exact setpoint staircase")
{
    ImpellerProfile zero;
    zero.imbalance_amp = zero.blade_pass_amp = zero.dc_amp = 0.0;
    zero.noise_floor = zero.noise_gain = 0.0;
    zero.common_noise_floor = zero.common_noise_gain = 0.0;
    zero.rpm_noise_floor = zero.rpm_noise_gain = 0.0;
    const auto sched = desk_schedule();
    const auto rec = generate_run(sched, zero, Impeller::healthy, 1);
    for (const Channel* g : rec.gyros())
        for (double x : g->samples)
            REQUIRE(x == 0.0);
    const Channel& rpm = rec.rpm();
    for (std::size_t i = 0; i < rpm.samples.size(); ++i)
        REQUIRE(rpm.samples[i] == rpm_setpoint(rpm.timestamp(i), sched));
}

TEST_CASE("same seed reproduces the recording bit for bit")
{
    const auto sched = desk_schedule();
    const auto a = generate_run(sched, ImpellerProfile{}, Impeller::healthy, 99);
    const auto b = generate_run(sched, ImpellerProfile{}, Impeller::healthy, 99);
    REQUIRE(a.channels.size() == b.channels.size());
    for (std::size_t c = 0; c < a.channels.size(); ++c) {
        REQUIRE(a.channels[c].name == b.channels[c].name);
        REQUIRE(a.channels[c].samples == b.channels[c].samples);
    }
}

TEST_CASE("channel layout matches the recording contract")
{
    const auto rec = generate_run(desk_schedule(), ImpellerProfile{}, Impeller::healthy, 3);
    REQUIRE(rec.channels.size() == 25);
    const auto gyros = rec.gyros();
    REQUIRE(gyros.size() == 24);
    CHECK(rec.rpm().rate_hz == 100.0);
    for (const Channel* g : gyros) {
        CHECK(g->rate_hz == 1000.0);
        CHECK(g->samples.size() == gyros.front()->samples.size());
    }
}

TEST_CASE("damaged profile raises per-plateau stddev at every nonzero plateau")
{
    const auto sched = desk_schedule();
    const ImpellerProfile healthy;
    const auto rec_h = generate_run(sched, healthy, Impeller::healthy, 11);
    const auto rec_d = generate_run(sched, healthy.scaled(3.0), Impeller::damaged, 11);
    const auto gyros_h = rec_h.gyros();
    const auto gyros_d = rec_d.gyros();
    for (std::size_t c = 0; c < gyros_h.size(); ++c) {
        const auto sd_h = plateau_stddev(*gyros_h[c], sched);
        const auto sd_d = plateau_stddev(*gyros_d[c], sched);
        for (const auto& [p, sd] : sd_h) {
            INFO("channel ", c, " plateau ", p);
            CHECK(sd_d.at(p) > sd);
        }
    }
}

TEST_CASE("rpm residual variance grows with plateau index")
{
    const auto sched = desk_schedule();
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto rec = generate_run(sched, ImpellerProfile{}, Impeller::healthy, seed);
        const Channel& rpm = rec.rpm();
        std::map<int, std::vector<double>> residuals;
        for (std::size_t i = 0; i < rpm.samples.size(); ++i) {
            const double t = rpm.timestamp(i);
            const int p = plateau_at(t, sched);
            if (p > 0)
                residuals[p].push_back(rpm.samples[i] - rpm_setpoint(t, sched));
        }
        std::vector<double> plateaus;
        std::vector<double> variances;
        for (auto& [p, r] : residuals) {
            plateaus.push_back(p);
            const double sd = oracle::sample_std(r);
            variances.push_back(sd * sd);
        }
        REQUIRE(plateaus.size() == 8);
        CHECK(oracle::spearman(plateaus, variances) > 0.0);
    }
}

TEST_CASE("sample budget guards against oversized schedules")
{
    ScheduleConfig s; // paper-scale plateaus
    s.plateau_s = 900.0;
    CHECK_THROWS_AS(generate_run(s, ImpellerProfile{}, Impeller::healthy, 1, 1'000'000),
                    std::length_error);
}

TEST_CASE("invalid schedules and profiles are rejected")
{
    ScheduleConfig s = desk_schedule();
    s.rpm_max = 1000.0; // not a multiple of 370
    CHECK_THROWS_AS(generate_run(s, ImpellerProfile{}, Impeller::healthy, 1),
                    std::invalid_argument);
    ImpellerProfile p;
    p.noise_floor = -1.0;
    CHECK_THROWS_AS(generate_run(desk_schedule(), p, Impeller::healthy, 1),
                    std::invalid_argument);
}
