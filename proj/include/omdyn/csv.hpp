// Byte-stable CSV serialization: locale-independent, 17 significant digits,
// header always present, deterministic row order.
#pragma once

#include <string>
#include <vector>

#include "omdyn/analysis.hpp"
#include "omdyn/steady_state.hpp"
#include "omdyn/sweep.hpp"

namespace omdyn {

// shortest-round-trip style general format, 17 significant digits
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

CsvTable trajectory_table(const Trajectory& traj);
CsvTable fixed_points_table(const FixedPointSearch& fps);
CsvTable map_table(const GridSpec& grid, const std::vector<SweepRecord>& recs);
CsvTable peaks_table(const std::vector<HysteresisPoint>& pts, SweepDirection dir,
                     int variable);
CsvTable lyapunov_table(const LyapunovResult& r);
CsvTable bistability_table(const BistabilityReport& r);
CsvTable convergence_table(const ConvergenceReport& r);

// Throws std::runtime_error with the path in the message on I/O failure.
void write_csv(const CsvTable& table, const std::string& path);
CsvTable read_csv(const std::string& path);

// best-effort gnuplot companion script for a CSV written by this module
std::string plot_script_for(const std::string& csv_path, const CsvTable& table);

}  // namespace omdyn
