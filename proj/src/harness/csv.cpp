#include "mec/harness/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "mec/error.hpp"

namespace mec::harness {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

template <class T>
T cell_as(const std::string& cell, std::size_t line_no) {
    T v{};
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), last, v);
    if (ec != std::errc() || ptr != last || cell.empty())
        throw Error(ErrorCode::io, "bad csv cell '" + cell + "' on line " + std::to_string(line_no));
    return v;
}

// Yields the cells of each data row after checking the header.
template <class F>
void for_each_row(std::istream& in, F&& f) {
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != kCsvHeader) throw Error(ErrorCode::io, "unexpected csv header: " + line);
            header = true;
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != 8)
            throw Error(ErrorCode::io, "expected 8 csv columns on line " + std::to_string(line_no));
        f(cells, line_no);
    }
    if (!header) throw Error(ErrorCode::io, "csv has no header");
}

}  // namespace

void write_metrics_csv(std::ostream& out, const std::vector<RunMetrics>& rows) {
    out << kCsvHeader << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const RunMetrics& m = rows[i];
        out << i << ',' << fmt(m.total_reward) << ',' << m.completed_tasks << ',' << fmt(m.completion_ratio) << ','
            << fmt(m.energy_total_j) << ',' << fmt(m.energy_per_task_j) << ',' << fmt(m.avg_time_cost_s) << ','
            << m.steps_survived << '\n';
    }
}

std::vector<RunMetrics> read_metrics_csv(std::istream& in) {
    std::vector<RunMetrics> rows;
    for_each_row(in, [&](const std::vector<std::string>& c, std::size_t n) {
        RunMetrics m;
        m.total_reward = cell_as<double>(c[1], n);
        m.completed_tasks = cell_as<long>(c[2], n);
        m.completion_ratio = cell_as<double>(c[3], n);
        m.energy_total_j = cell_as<double>(c[4], n);
        m.energy_per_task_j = cell_as<double>(c[5], n);
        m.avg_time_cost_s = cell_as<double>(c[6], n);
        m.steps_survived = cell_as<long>(c[7], n);
        rows.push_back(m);
    });
    return rows;
}

void write_mean_csv(std::ostream& out, const std::vector<MeanRow>& rows, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) out << "# warning: " << w << '\n';
    out << kCsvHeader << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const MeanRow& m = rows[i];
        out << i << ',' << fmt(m.total_reward) << ',' << fmt(m.completed_tasks) << ',' << fmt(m.completion_ratio)
            << ',' << fmt(m.energy_total_j) << ',' << fmt(m.energy_per_task_j) << ',' << fmt(m.avg_time_cost_s)
            << ',' << fmt(m.steps_survived) << '\n';
    }
}

std::vector<MeanRow> read_mean_csv(std::istream& in) {
    std::vector<MeanRow> rows;
    for_each_row(in, [&](const std::vector<std::string>& c, std::size_t n) {
        rows.push_back({cell_as<double>(c[1], n), cell_as<double>(c[2], n), cell_as<double>(c[3], n),
                        cell_as<double>(c[4], n), cell_as<double>(c[5], n), cell_as<double>(c[6], n),
                        cell_as<double>(c[7], n)});
    });
    return rows;
}

std::vector<MeanRow> mean_across_runs(const std::vector<std::vector<RunMetrics>>& runs) {
    if (runs.empty()) return {};
    const std::size_t n = runs.front().size();
    for (const auto& r : runs)
        if (r.size() != n) throw Error(ErrorCode::invalid_argument, "runs differ in episode count");
    std::vector<MeanRow> mean(n);
    const double count = static_cast<double>(runs.size());
    for (std::size_t i = 0; i < n; ++i) {
        MeanRow& m = mean[i];
        for (const auto& r : runs) {
            m.total_reward += r[i].total_reward;
            m.completed_tasks += static_cast<double>(r[i].completed_tasks);
            m.completion_ratio += r[i].completion_ratio;
            m.energy_total_j += r[i].energy_total_j;
            m.energy_per_task_j += r[i].energy_per_task_j;
            m.avg_time_cost_s += r[i].avg_time_cost_s;
            m.steps_survived += static_cast<double>(r[i].steps_survived);
        }
        m.total_reward /= count;
        m.completed_tasks /= count;
        m.completion_ratio /= count;
        m.energy_total_j /= count;
        m.energy_per_task_j /= count;
        m.avg_time_cost_s /= count;
        m.steps_survived /= count;
    }
    return mean;
}

}  // namespace mec::harness
