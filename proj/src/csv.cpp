#include "omdyn/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace omdyn {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string CsvTable::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

CsvTable trajectory_table(const Trajectory& traj) {
    CsvTable t;
    t.header = {"t", "ar", "ai", "b1r", "b1i", "b2r", "b2i"};
    t.rows.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<std::string> row;
        row.reserve(7);
        row.push_back(format_double(traj.times[i]));
        for (int k = 0; k < 6; ++k) row.push_back(format_double(traj.states[i][k]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable fixed_points_table(const FixedPointSearch& fps) {
    CsvTable t;
    t.header = {"ar", "ai", "b1r", "b1i", "b2r", "b2i",
                "residual", "max_real_part", "stable"};
    for (const FixedPoint& fp : fps.points) {
        std::vector<std::string> row;
        for (int k = 0; k < 6; ++k) row.push_back(format_double(fp.state[k]));
        row.push_back(format_double(fp.residual_norm));
        row.push_back(format_double(fp.max_real_part));
        row.push_back(fp.stable ? "1" : "0");
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable map_table(const GridSpec& grid, const std::vector<SweepRecord>& recs) {
    CsvTable t;
    const std::string p1 = grid.task == SweepTask::Basin
                               ? "ic" + std::to_string(grid.basin_var_x)
                               : to_string(grid.x.param);
    const std::string p2 = grid.task == SweepTask::Basin
                               ? "ic" + std::to_string(grid.basin_var_y)
                               : to_string(grid.y.param);
    switch (grid.task) {
        case SweepTask::Count:
            t.header = {p1, p2, "count", "newton_count"};
            break;
        case SweepTask::Stability:
            t.header = {p1, p2, "count", "newton_count", "stable1", "stable2"};
            break;
        case SweepTask::Attractor:
            t.header = {p1, p2, "class", "lambda_max", "hidden", "newton_count",
                        "class_second"};
            break;
        case SweepTask::Basin:
            t.header = {p1, p2, "class", "lambda_max", "attractor_id"};
            break;
    }
    for (const SweepRecord& r : recs) {
        std::vector<std::string> row{format_double(r.x), format_double(r.y)};
        switch (grid.task) {
            case SweepTask::Count:
                row.push_back(std::to_string(r.closed_form_count));
                row.push_back(std::to_string(r.newton_count));
                break;
            case SweepTask::Stability:
                row.push_back(std::to_string(r.closed_form_count));
                row.push_back(std::to_string(r.newton_count));
                row.push_back(r.stable1 < 0 ? "" : std::to_string(r.stable1));
                row.push_back(r.stable2 < 0 ? "" : std::to_string(r.stable2));
                break;
            case SweepTask::Attractor:
                row.push_back(to_string(r.cls));
                row.push_back(format_double(r.lambda_max));
                row.push_back(r.hidden ? "1" : "0");
                row.push_back(std::to_string(r.newton_count));
                row.push_back(r.has_second ? to_string(r.cls_second) : "");
                break;
            case SweepTask::Basin:
                row.push_back(to_string(r.cls));
                row.push_back(format_double(r.lambda_max));
                row.push_back(std::to_string(r.attractor_id));
                break;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable peaks_table(const std::vector<HysteresisPoint>& pts, SweepDirection dir,
                     int variable) {
    CsvTable t;
    t.header = {"param_value", "direction", "variable", "peak_value"};
    const std::string d = dir == SweepDirection::Up ? "up" : "down";
    static const char* names[6] = {"ar", "ai", "b1r", "b1i", "b2r", "b2i"};
    for (const HysteresisPoint& hp : pts) {
        const PeakSet& pk = variable == 2 ? hp.peaks_b1r : hp.peaks;
        for (double v : pk.values)
            t.rows.push_back({format_double(hp.value), d, names[variable],
                              format_double(v)});
    }
    return t;
}

CsvTable lyapunov_table(const LyapunovResult& r) {
    CsvTable t;
    t.header = {"lambda_max", "stderr", "converged"};
    t.rows.push_back({format_double(r.lambda_max), format_double(r.stderr_),
                      r.converged ? "1" : "0"});
    return t;
}

CsvTable bistability_table(const BistabilityReport& r) {
    CsvTable t;
    t.header = {"class_a", "class_b", "hausdorff_optical", "hausdorff_mech",
                "diameter_optical", "diameter_mech", "same_attractor"};
    t.rows.push_back({to_string(r.class_a), to_string(r.class_b),
                      format_double(r.hausdorff_optical), format_double(r.hausdorff_mech),
                      format_double(r.diameter_optical), format_double(r.diameter_mech),
                      r.same_attractor ? "1" : "0"});
    return t;
}

CsvTable convergence_table(const ConvergenceReport& r) {
    CsvTable t;
    t.header = {"max_rel_deviation", "mean_nphot_dev", "peaks_ar_dev", "peaks_b1r_dev",
                "same_attractor_fallback", "diverged"};
    t.rows.push_back({format_double(r.max_rel_deviation), format_double(r.mean_nphot_dev),
                      format_double(r.peaks_ar_dev), format_double(r.peaks_b1r_dev),
                      r.same_attractor_fallback ? "1" : "0",
                      (r.diverged_full || r.diverged_half) ? "1" : "0"});
    return t;
}

void write_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << table.to_string();
    if (!out) throw std::runtime_error("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else cur.push_back(c);
        }
        out.push_back(cur);
        return out;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            t.header = split(line);
            first = false;
        } else if (!line.empty()) {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

std::string plot_script_for(const std::string& csv_path, const CsvTable& table) {
    // best-effort gnuplot companion; column meanings depend on the command
    std::ostringstream out;
    out << "# best-effort gnuplot script for " << csv_path << "\n";
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    if (!table.header.empty() && table.header[0] == "t")
        out << "plot '" << csv_path << "' using 1:2 with lines\n";
    else if (table.header.size() >= 4 && table.header[3] == "peak_value")
        out << "plot '" << csv_path << "' using 1:4 with dots\n";
    else if (table.header.size() >= 3)
        out << "plot '" << csv_path << "' using 1:2:3 with points palette\n";
    else
        out << "plot '" << csv_path << "'\n";
    out << "pause -1\n";
    return out.str();
}

}  // namespace omdyn
