// On-disk CSV formats. Every file starts with the version comment line
// "# fanwatch-format v1". Data files use full round-trip precision;
// report NMSE values are printed with 4 decimal places.

#ifndef FANWATCH_CSV_HPP
#define FANWATCH_CSV_HPP

#include <string>

#include "fanwatch/eval.hpp"
#include "fanwatch/types.hpp"

namespace fanwatch::csv {

inline constexpr const char* kFormatHeader = "# fanwatch-format v1";

// Aligned recording: t_s (6 decimals), rpm, then the 24 gyro columns.
void write_aligned_recording(const std::string& path, const AlignedTable& table);

// Reads an aligned recording back; plateau_index is recomputed from the
// schedule and the master rate from the timestamp spacing.
AlignedTable read_aligned_recording(const std::string& path, const ScheduleConfig& schedule);

// Multi-rate emission: rpm file (t_s, rpm) and gyro file (t_s, 24 columns),
// each at its native rate.
void write_multirate(const std::string& rpm_path, const std::string& gyro_path,
                     const RawRecording& rec);
RawRecording read_multirate(const std::string& rpm_path, const std::string& gyro_path,
                            const ScheduleConfig& schedule);

// Dataset: provenance, target, then the feature columns.
void write_dataset(const std::string& path, const Dataset& ds);
Dataset read_dataset(const std::string& path);

void write_report(const std::string& path, const ExperimentReport& report);

// Figure-data bundle derived from a grid report: downsampling curves,
// binning curves per split.
void write_figure_bundle(const std::string& out_dir, const ExperimentReport& report);

// Single-row health report plus the prediction/actual scatter file.
void write_health(const std::string& report_path, const std::string& scatter_path,
                  const HealthReport& health);

std::string serialize_report(const ExperimentReport& report);

} // namespace fanwatch::csv

#endif
