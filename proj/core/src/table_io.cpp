#include "ewb/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ewb::cli {

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

double quantize_fixed(double v) {
    return std::round(v * 1e6) / 1e6;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    return file;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, context + ": bad number '" + s + "'");
    }
}

} // namespace

void write_events_csv(const std::filesystem::path& path,
                      const std::vector<nucleation::BubbleEvent>& events,
                      double total_duration) {
    auto file = open_out(path);
    file << "id,A,B,C,D,E,r0,critical\n";

    // Quantize the primary fields first so the derived D/E columns are exact
    // at the emitted precision.
    std::vector<nucleation::BubbleEvent> q = events;
    for (auto& ev : q) {
        ev.t_form = quantize_fixed(ev.t_form);
        ev.x = quantize_fixed(ev.x);
        ev.y = quantize_fixed(ev.y);
        ev.r0 = quantize_fixed(ev.r0);
    }

    // E spans the critical subsequence only.
    std::vector<double> next_gap(q.size(), 0.0);
    int prev_critical = -1;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!q[i].critical) continue;
        if (prev_critical >= 0) {
            next_gap[static_cast<std::size_t>(prev_critical)] =
                q[i].t_form - q[static_cast<std::size_t>(prev_critical)].t_form;
        }
        prev_critical = static_cast<int>(i);
    }

    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto& ev = q[i];
        file << ev.id << ',' << format_fixed(ev.t_form) << ','
             << format_fixed(ev.x) << ',' << format_fixed(ev.y) << ','
             << format_fixed(total_duration - ev.t_form) << ','
             << format_fixed(next_gap[i]) << ',' << format_fixed(ev.r0) << ','
             << (ev.critical ? 1 : 0) << '\n';
    }
    if (!file) {
        throw Error(ErrorCode::IoFailure, "short write to " + path.string());
    }
}

std::vector<nucleation::BubbleEvent> read_events_csv(
    const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(file, line) || line != "id,A,B,C,D,E,r0,critical") {
        throw Error(ErrorCode::ParseError,
                    path.string() + ": expected header id,A,B,C,D,E,r0,critical");
    }
    std::vector<nucleation::BubbleEvent> events;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 8) {
            throw Error(ErrorCode::ParseError,
                        path.string() + ":" + std::to_string(line_no) +
                            ": expected 8 fields");
        }
        const std::string ctx = path.string() + ":" + std::to_string(line_no);
        nucleation::BubbleEvent ev;
        ev.id = static_cast<int>(parse_double(fields[0], ctx));
        ev.t_form = parse_double(fields[1], ctx);
        ev.x = parse_double(fields[2], ctx);
        ev.y = parse_double(fields[3], ctx);
        ev.r0 = parse_double(fields[6], ctx);
        const double critical = parse_double(fields[7], ctx);
        ev.critical = critical != 0.0;
        events.push_back(ev);
    }
    return events;
}

void write_coverage_csv(const std::filesystem::path& path,
                        const nucleation::CoverageCurve& curve) {
    auto file = open_out(path);
    file << "t,broken_fraction\n";
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        file << format_fixed(curve.times[i]) << ','
             << format_fixed(curve.broken_fraction[i]) << '\n';
    }
    if (!file) {
        throw Error(ErrorCode::IoFailure, "short write to " + path.string());
    }
}

nucleation::CoverageCurve read_coverage_csv(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(file, line) || line != "t,broken_fraction") {
        throw Error(ErrorCode::ParseError,
                    path.string() + ": expected header t,broken_fraction");
    }
    nucleation::CoverageCurve curve;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw Error(ErrorCode::ParseError,
                        path.string() + ":" + std::to_string(line_no) +
                            ": expected 2 fields");
        }
        const std::string ctx = path.string() + ":" + std::to_string(line_no);
        curve.times.push_back(parse_double(fields[0], ctx));
        curve.broken_fraction.push_back(parse_double(fields[1], ctx));
    }
    curve.physical = nucleation::is_physical(curve);
    return curve;
}

void write_summary_json(const std::filesystem::path& path,
                        const RunSummary& summary) {
    nlohmann::ordered_json j;
    j["seed"] = summary.seed;
    j["t_c_gev"] = summary.t_c;
    j["sigma_gev3"] = summary.sigma;
    j["wall_velocity_c"] = summary.wall_velocity_c;
    j["r_c_grid_start"] = summary.r_c_grid_start;
    j["r_c_grid_end"] = summary.r_c_grid_end;
    j["bubble_count"] = summary.bubble_count;
    j["critical_count"] = summary.critical_count;
    if (summary.mean_spacing) {
        j["mean_nn_spacing"] = *summary.mean_spacing;
    } else {
        j["mean_nn_spacing"] = nullptr;
    }
    j["physical"] = summary.physical;
    j["placement_exhausted"] = summary.placement_exhausted;

    auto file = open_out(path);
    file << j.dump(2) << '\n';
}

void write_events_json(const std::filesystem::path& path,
                       const std::vector<nucleation::BubbleEvent>& events,
                       const nucleation::SimConfig& sim) {
    nlohmann::ordered_json j;
    j["domain_size"] = sim.domain_size;
    j["wall_speed"] = sim.wall_speed;
    j["total_duration"] = sim.total_duration;
    j["events"] = nlohmann::ordered_json::array();
    for (const auto& ev : events) {
        nlohmann::ordered_json e;
        e["id"] = ev.id;
        e["t_form"] = ev.t_form;
        e["x"] = ev.x;
        e["y"] = ev.y;
        e["r0"] = ev.r0;
        e["critical"] = ev.critical;
        j["events"].push_back(e);
    }
    auto file = open_out(path);
    file << j.dump(2) << '\n';
}

} // namespace ewb::cli
