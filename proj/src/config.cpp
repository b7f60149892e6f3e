#include "fanwatch/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fanwatch/rng.hpp"

namespace fanwatch {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// "[section] key = value" lines; '#' starts a comment
std::map<std::string, std::string> parse_keys(const std::string& text, const std::string& origin)
{
    std::map<std::string, std::string> keys;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        keys[section.empty() ? key : section + "." + key] = value;
    }
    return keys;
}

class KeyView {
public:
    KeyView(std::map<std::string, std::string> keys, std::string origin)
        : keys_(std::move(keys)), origin_(std::move(origin))
    {
    }

    double number(const std::string& key, double fallback)
    {
        const auto it = keys_.find(key);
        if (it == keys_.end())
            return fallback;
        used_.insert(it->first);
        try {
            return std::stod(it->second);
        } catch (const std::exception&) {
            throw std::invalid_argument(origin_ + ": bad number for '" + key + "'");
        }
    }

    std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback)
    {
        const auto it = keys_.find(key);
        if (it == keys_.end())
            return fallback;
        used_.insert(it->first);
        try {
            return std::stoull(it->second);
        } catch (const std::exception&) {
            throw std::invalid_argument(origin_ + ": bad unsigned integer for '" + key + "'");
        }
    }

    std::optional<std::string> text(const std::string& key)
    {
        const auto it = keys_.find(key);
        if (it == keys_.end())
            return std::nullopt;
        used_.insert(it->first);
        return it->second;
    }

    bool has_prefix(const std::string& prefix) const
    {
        const auto it = keys_.lower_bound(prefix);
        return it != keys_.end() && it->first.rfind(prefix, 0) == 0;
    }

    void finish() const
    {
        for (const auto& [key, value] : keys_)
            if (!used_.count(key))
                throw std::invalid_argument(origin_ + ": unknown key '" + key + "'");
    }

private:
    std::map<std::string, std::string> keys_;
    std::set<std::string> used_;
    std::string origin_;
};

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty())
            out.push_back(tok);
    }
    return out;
}

ImpellerProfile parse_profile(KeyView& kv, const std::string& section, const ImpellerProfile& base)
{
    ImpellerProfile p = base;
    p.imbalance_amp = kv.number(section + ".imbalance_amp", base.imbalance_amp);
    p.blade_pass_amp = kv.number(section + ".blade_pass_amp", base.blade_pass_amp);
    p.dc_amp = kv.number(section + ".dc_amp", base.dc_amp);
    p.noise_floor = kv.number(section + ".noise_floor", base.noise_floor);
    p.noise_gain = kv.number(section + ".noise_gain", base.noise_gain);
    p.common_noise_floor = kv.number(section + ".common_noise_floor", base.common_noise_floor);
    p.common_noise_gain = kv.number(section + ".common_noise_gain", base.common_noise_gain);
    p.rpm_noise_floor = kv.number(section + ".rpm_noise_floor", base.rpm_noise_floor);
    p.rpm_noise_gain = kv.number(section + ".rpm_noise_gain", base.rpm_noise_gain);
    return p;
}

} // namespace

RunConfig parse_config(const std::string& text, const std::string& origin)
{
    KeyView kv(parse_keys(text, origin), origin);
    RunConfig cfg;

    const auto rng_id = kv.text("run.rng");
    if (rng_id && *rng_id != kRngId)
        throw std::invalid_argument(origin + ": unsupported rng '" + *rng_id + "'");

    cfg.schedule.rpm_step = kv.number("schedule.rpm_step", cfg.schedule.rpm_step);
    cfg.schedule.rpm_max = kv.number("schedule.rpm_max", cfg.schedule.rpm_max);
    cfg.schedule.plateau_s = kv.number("schedule.plateau_s", cfg.schedule.plateau_s);
    cfg.schedule.ramp_s = kv.number("schedule.ramp_s", cfg.schedule.ramp_s);
    cfg.schedule.gyro_rate_hz = kv.number("schedule.gyro_rate_hz", cfg.schedule.gyro_rate_hz);
    cfg.schedule.rpm_rate_hz = kv.number("schedule.rpm_rate_hz", cfg.schedule.rpm_rate_hz);

    cfg.healthy_profile = parse_profile(kv, "profile.healthy", ImpellerProfile{});
    cfg.damage_scale = kv.number("run.damage_scale", cfg.damage_scale);
    if (kv.has_prefix("profile.damaged."))
        cfg.damaged_override =
            parse_profile(kv, "profile.damaged", cfg.healthy_profile.scaled(cfg.damage_scale));

    cfg.grid.forest.n_trees = static_cast<int>(kv.number("forest.n_trees", cfg.grid.forest.n_trees));
    cfg.grid.forest.row_fraction = kv.number("forest.row_fraction", cfg.grid.forest.row_fraction);
    cfg.grid.forest.feature_fraction =
        kv.number("forest.feature_fraction", cfg.grid.forest.feature_fraction);
    cfg.grid.forest.min_leaf = static_cast<int>(kv.number("forest.min_leaf", cfg.grid.forest.min_leaf));
    cfg.grid.forest.max_depth =
        static_cast<int>(kv.number("forest.max_depth", cfg.grid.forest.max_depth));

    if (const auto v = kv.text("grid.fractions")) {
        cfg.grid.fractions.clear();
        for (const auto& tok : split_list(*v))
            cfg.grid.fractions.push_back(std::stod(tok));
    }
    if (const auto v = kv.text("grid.bin_sizes")) {
        cfg.grid.bin_sizes.clear();
        for (const auto& tok : split_list(*v))
            cfg.grid.bin_sizes.push_back(std::stoul(tok));
    }
    if (const auto v = kv.text("grid.feature_sets")) {
        cfg.grid.feature_sets.clear();
        for (const auto& tok : split_list(*v)) {
            if (tok == "mean")
                cfg.grid.feature_sets.push_back(FeatureSet::mean_only());
            else if (tok == "mean_std")
                cfg.grid.feature_sets.push_back(FeatureSet::mean_std());
            else if (tok == "all")
                cfg.grid.feature_sets.push_back(FeatureSet::all());
            else
                throw std::invalid_argument(origin + ": unknown feature set '" + tok + "'");
        }
    }
    if (const auto v = kv.text("grid.splits")) {
        cfg.grid.splits.clear();
        for (const auto& tok : split_list(*v)) {
            if (tok == "shuffled")
                cfg.grid.splits.push_back(SplitKind::shuffled);
            else if (tok == "partitioned")
                cfg.grid.splits.push_back(SplitKind::partitioned);
            else
                throw std::invalid_argument(origin + ": unknown split '" + tok + "'");
        }
    }
    if (const auto v = kv.text("grid.models")) {
        cfg.grid.models.clear();
        for (const auto& tok : split_list(*v)) {
            if (tok == "lr")
                cfg.grid.models.push_back(ModelKind::lr);
            else if (tok == "rf")
                cfg.grid.models.push_back(ModelKind::rf);
            else
                throw std::invalid_argument(origin + ": unknown model '" + tok + "'");
        }
    }
    cfg.grid.shuffle_ratio = kv.number("grid.shuffle_ratio", cfg.grid.shuffle_ratio);

    auto parse_steps = [&](const std::string& key, std::set<int>& into) {
        if (const auto v = kv.text(key)) {
            into.clear();
            for (const auto& tok : split_list(*v))
                into.insert(std::stoi(tok));
        }
    };
    parse_steps("partition.train_steps", cfg.grid.plan.train_steps);
    parse_steps("partition.test_steps", cfg.grid.plan.test_steps);
    parse_steps("partition.excluded_steps", cfg.grid.plan.excluded_steps);

    cfg.master_seed = kv.unsigned_int("run.master_seed", cfg.master_seed);
    cfg.sample_budget = kv.unsigned_int("run.sample_budget", cfg.sample_budget);

    kv.finish();
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string emit_default_config()
{
    std::ostringstream out;
    out << "# fanwatch-format v1\n"
           "# Default configuration. Every key is optional; the values below are\n"
           "# the built-in defaults.\n"
           "\n"
           "[schedule]\n"
           "rpm_step = 370          # rpm increment per step\n"
           "rpm_max = 2960          # final plateau speed; must be a multiple of rpm_step\n"
           "plateau_s = 10          # hold time per plateau (desk scale; 900 mirrors a full run)\n"
           "ramp_s = 2              # ascend duration between plateaus\n"
           "gyro_rate_hz = 1000     # gyro sampling rate, also the master grid rate\n"
           "rpm_rate_hz = 100       # tachometer sampling rate\n"
           "\n"
           "[profile.healthy]\n"
           "imbalance_amp = 0.02    # once-per-revolution amplitude per unit rpm\n"
           "blade_pass_amp = 0.01   # 12x-per-revolution amplitude per unit rpm\n"
           "dc_amp = 0.01           # rectified-vibration offset per unit rpm\n"
           "noise_floor = 0.3      # gyro noise stddev at standstill\n"
           "noise_gain = 0.0005    # gyro noise growth per unit rpm\n"
           "common_noise_floor = 0.6   # frame vibration shared by all channels\n"
           "common_noise_gain = 0.0012 # its growth per unit rpm\n"
           "rpm_noise_floor = 80.0 # tach jitter: regulation wobble + quantization\n"
           "rpm_noise_gain = 0.07  # tach jitter growth per unit rpm\n"
           "\n"
           "# The damaged profile defaults to the healthy profile with all\n"
           "# amplitude terms scaled by run.damage_scale. Add a\n"
           "# [profile.damaged] section with the same keys to override it.\n"
           "\n"
           "[forest]\n"
           "n_trees = 50\n"
           "row_fraction = 1.0      # bootstrap fraction, sampled with replacement\n"
           "feature_fraction = 0.33 # per-split feature subset, at least 1\n"
           "min_leaf = 1\n"
           "max_depth = 0           # 0 = unlimited\n"
           "\n"
           "[grid]\n"
           "fractions = 0.5, 0.25, 0.1, 0.01, 0.001, 0.0001\n"
           "bin_sizes = 100, 500, 1000, 2500, 5000, 10000, 50000\n"
           "feature_sets = mean, mean_std, all\n"
           "splits = shuffled, partitioned\n"
           "models = lr, rf\n"
           "shuffle_ratio = 0.67    # train share of the shuffled split\n"
           "\n"
           "[partition]\n"
           "train_steps = 1, 3, 5, 7\n"
           "test_steps = 2, 4, 6\n"
           "excluded_steps = 8\n"
           "\n"
           "[run]\n"
           "master_seed = 1\n"
           "damage_scale = 3        # amplitude scaling of the damaged impeller\n"
           "sample_budget = 50000000 # generation guard against full-scale runs\n"
           "rng = mt19937_64/boxmuller-v1 # pinned generator identity\n";
    return out.str();
}

} // namespace fanwatch
