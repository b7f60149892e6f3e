#include "fanwatch/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fanwatch/synthgen.hpp"

namespace fanwatch::csv {

namespace {

std::string fmt_full(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_time(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_nmse(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << kFormatHeader << '\n';
    return out;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kFormatHeader)
        throw std::runtime_error("'" + path + "' is not a fanwatch-format v1 file");
    return in;
}

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string tok;
    std::stringstream ss(line);
    while (std::getline(ss, tok, ','))
        out.push_back(tok);
    return out;
}

double parse_double(const std::string& s, const std::string& path)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("bad numeric value '" + s + "' in " + path);
    }
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns; // column-major
};

Table read_numeric_csv(const std::string& path)
{
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("'" + path + "' has no header row");
    Table table;
    table.header = split_line(line);
    table.columns.resize(table.header.size());
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto cells = split_line(line);
        if (cells.size() != table.header.size())
            throw std::runtime_error("ragged row in " + path);
        for (std::size_t c = 0; c < cells.size(); ++c)
            table.columns[c].push_back(parse_double(cells[c], path));
    }
    return table;
}

} // namespace

void write_aligned_recording(const std::string& path, const AlignedTable& table)
{
    auto out = open_out(path);
    out << "t_s,rpm";
    for (const auto& name : table.column_names)
        out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
        out << fmt_time(table.timestamps_s[i]) << ',' << fmt_full(table.target[i]);
        for (const auto& col : table.columns)
            out << ',' << fmt_full(col[i]);
        out << '\n';
    }
}

AlignedTable read_aligned_recording(const std::string& path, const ScheduleConfig& schedule)
{
    Table raw = read_numeric_csv(path);
    if (raw.header.size() < 3 || raw.header[0] != "t_s" || raw.header[1] != "rpm")
        throw std::runtime_error("'" + path + "' is not an aligned recording file");
    if (raw.columns[0].empty())
        throw std::runtime_error("'" + path + "' has no data rows");

    AlignedTable table;
    table.timestamps_s = std::move(raw.columns[0]);
    table.target = std::move(raw.columns[1]);
    table.column_names.assign(raw.header.begin() + 2, raw.header.end());
    table.columns.assign(raw.columns.begin() + 2, raw.columns.end());
    table.master_rate_hz =
        table.timestamps_s.size() > 1
            ? 1.0 / (table.timestamps_s[1] - table.timestamps_s[0])
            : schedule.gyro_rate_hz;
    table.plateau_index.resize(table.rows());
    for (std::size_t i = 0; i < table.rows(); ++i)
        table.plateau_index[i] = plateau_at(table.timestamps_s[i], schedule);
    return table;
}

void write_multirate(const std::string& rpm_path, const std::string& gyro_path,
                     const RawRecording& rec)
{
    {
        const Channel& rpm = rec.rpm();
        auto out = open_out(rpm_path);
        out << "t_s,rpm\n";
        for (std::size_t i = 0; i < rpm.samples.size(); ++i)
            out << fmt_time(rpm.timestamp(i)) << ',' << fmt_full(rpm.samples[i]) << '\n';
    }
    {
        const auto gyros = rec.gyros();
        auto out = open_out(gyro_path);
        out << "t_s";
        for (const Channel* g : gyros)
            out << ',' << g->name;
        out << '\n';
        const std::size_t n = gyros.front()->samples.size();
        for (std::size_t i = 0; i < n; ++i) {
            out << fmt_time(gyros.front()->timestamp(i));
            for (const Channel* g : gyros)
                out << ',' << fmt_full(g->samples[i]);
            out << '\n';
        }
    }
}

RawRecording read_multirate(const std::string& rpm_path, const std::string& gyro_path,
                            const ScheduleConfig& schedule)
{
    RawRecording rec;
    rec.schedule = schedule;

    Table rpm = read_numeric_csv(rpm_path);
    if (rpm.header.size() != 2 || rpm.header[1] != "rpm")
        throw std::runtime_error("'" + rpm_path + "' is not an rpm file");
    Channel rpm_ch;
    rpm_ch.name = "rpm";
    rpm_ch.rate_hz = schedule.rpm_rate_hz;
    rpm_ch.t0_s = rpm.columns[0].empty() ? 0.0 : rpm.columns[0][0];
    rpm_ch.samples = std::move(rpm.columns[1]);
    rec.channels.push_back(std::move(rpm_ch));

    Table gyro = read_numeric_csv(gyro_path);
    if (gyro.header.size() < 2 || gyro.header[0] != "t_s")
        throw std::runtime_error("'" + gyro_path + "' is not a gyro file");
    for (std::size_t c = 1; c < gyro.header.size(); ++c) {
        Channel ch;
        ch.name = gyro.header[c];
        ch.rate_hz = schedule.gyro_rate_hz;
        ch.t0_s = gyro.columns[0].empty() ? 0.0 : gyro.columns[0][0];
        ch.samples = std::move(gyro.columns[c]);
        rec.channels.push_back(std::move(ch));
    }
    return rec;
}

void write_dataset(const std::string& path, const Dataset& ds)
{
    auto out = open_out(path);
    out << "provenance,target";
    for (const auto& name : ds.column_names)
        out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        out << ds.row_provenance[i] << ',' << fmt_full(ds.target[i]);
        for (const auto& col : ds.features)
            out << ',' << fmt_full(col[i]);
        out << '\n';
    }
}

Dataset read_dataset(const std::string& path)
{
    Table raw = read_numeric_csv(path);
    if (raw.header.size() < 2 || raw.header[0] != "provenance" || raw.header[1] != "target")
        throw std::runtime_error("'" + path + "' is not a dataset file");
    Dataset ds;
    ds.row_provenance.reserve(raw.columns[0].size());
    for (double v : raw.columns[0])
        ds.row_provenance.push_back(static_cast<std::int64_t>(std::llround(v)));
    ds.target = std::move(raw.columns[1]);
    ds.column_names.assign(raw.header.begin() + 2, raw.header.end());
    ds.features.assign(raw.columns.begin() + 2, raw.columns.end());
    return ds;
}

std::string serialize_report(const ExperimentReport& report)
{
    std::ostringstream out;
    out << kFormatHeader << '\n';
    out << "config_id,reduction,split,model,status,nmse_train,nmse_test,n_train,n_test,seed\n";
    for (const auto& row : report.rows) {
        std::string status = row.status;
        for (char& c : status)
            if (c == ',' || c == '\n')
                c = ';';
        out << row.config_id << ',' << row.reduction << ',' << row.split << ',' << row.model
            << ',' << status << ',';
        if (row.ok())
            out << fmt_nmse(row.nmse_train) << ',' << fmt_nmse(row.nmse_test);
        else
            out << ',';
        out << ',' << row.n_train << ',' << row.n_test << ',' << row.seed << '\n';
    }
    return out.str();
}

void write_report(const std::string& path, const ExperimentReport& report)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << serialize_report(report);
}

void write_figure_bundle(const std::string& out_dir, const ExperimentReport& report)
{
    auto fig2 = open_out(out_dir + "/fig2_downsampling.csv");
    fig2 << "fraction,split,model,nmse_train,nmse_test\n";
    auto fig3 = open_out(out_dir + "/fig3_binning_shuffled.csv");
    fig3 << "bin_size,features,model,nmse_train,nmse_test\n";
    auto fig4 = open_out(out_dir + "/fig4_binning_partitioned.csv");
    fig4 << "bin_size,features,model,nmse_train,nmse_test\n";

    for (const auto& row : report.rows) {
        if (!row.ok())
            continue;
        if (row.reduction.rfind("ds_", 0) == 0) {
            fig2 << row.reduction.substr(3) << ',' << row.split << ',' << row.model << ','
                 << fmt_nmse(row.nmse_train) << ',' << fmt_nmse(row.nmse_test) << '\n';
        } else if (row.reduction.rfind("bin_", 0) == 0) {
            const std::string rest = row.reduction.substr(4); // "<size>_<features>"
            const auto us = rest.find('_');
            auto& fig = row.split == "shuffled" ? fig3 : fig4;
            fig << rest.substr(0, us) << ',' << rest.substr(us + 1) << ',' << row.model << ','
                << fmt_nmse(row.nmse_train) << ',' << fmt_nmse(row.nmse_test) << '\n';
        }
    }
}

void write_health(const std::string& report_path, const std::string& scatter_path,
                  const HealthReport& health)
{
    {
        auto out = open_out(report_path);
        out << "config_id,model,nmse_healthy,nmse_damaged,ratio\n";
        out << health.config_id << ',' << health.model << ',' << fmt_nmse(health.nmse_healthy)
            << ',' << fmt_nmse(health.nmse_damaged) << ',' << fmt_nmse(health.ratio) << '\n';
    }
    {
        auto out = open_out(scatter_path);
        out << "dataset,row,actual,predicted\n";
        for (std::size_t i = 0; i < health.healthy_points.size(); ++i)
            out << "healthy," << i << ',' << fmt_full(health.healthy_points[i].first) << ','
                << fmt_full(health.healthy_points[i].second) << '\n';
        for (std::size_t i = 0; i < health.damaged_points.size(); ++i)
            out << "damaged," << i << ',' << fmt_full(health.damaged_points[i].first) << ','
                << fmt_full(health.damaged_points[i].second) << '\n';
    }
}

} // namespace fanwatch::csv
