#include "fedlora/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fedlora/errors.hpp"

namespace fedlora {

namespace {

// Shortest representation that round-trips exactly.
std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string cell_value(const std::optional<double>& v) {
    return v ? format_double(*v) : "-";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    fields.push_back(field);
    return fields;
}

// Fixed-precision display for the text tables; full precision stays in the CSV.
std::string display_double(double v) {
    std::ostringstream os;
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        os.precision(2);
        os << std::fixed << v;
    } else {
        os.precision(6);
        os << std::defaultfloat << v;
    }
    return os.str();
}

}  // namespace

std::string report_to_csv(const ProtocolReport& report) {
    std::ostringstream os;
    os << "protocol,axis,group,method,metric,value,delta,rank\n";
    for (const auto& row : report.rows) {
        for (std::size_t m = 0; m < report.metrics.size(); ++m) {
            const ReportCell& cell =
                m < row.cells.size() ? row.cells[m] : ReportCell{};
            os << report.protocol << ',' << report.axis << ',' << row.group << ','
               << row.method << ',' << report.metrics[m] << ',' << cell_value(cell.value) << ','
               << cell_value(cell.delta) << ','
               << (cell.rank ? std::to_string(*cell.rank) : "-") << "\n";
        }
    }
    return os.str();
}

ProtocolReport report_from_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line != "protocol,axis,group,method,metric,value,delta,rank")
        throw IoError("report CSV: missing or unexpected header");
    ProtocolReport report;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 8) throw IoError("report CSV: malformed line: " + line);
        if (report.rows.empty()) {
            report.protocol = f[0];
            report.axis = f[1];
        }
        if (std::find(report.metrics.begin(), report.metrics.end(), f[4]) ==
            report.metrics.end())
            report.metrics.push_back(f[4]);
        ProtocolReport::Row* row = nullptr;
        for (auto& r : report.rows)
            if (r.group == f[2] && r.method == f[3]) row = &r;
        if (!row) {
            report.rows.push_back({f[2], f[3], {}});
            row = &report.rows.back();
        }
        ReportCell cell;
        if (f[5] != "-") cell.value = std::stod(f[5]);
        if (f[6] != "-") cell.delta = std::stod(f[6]);
        if (f[7] != "-") cell.rank = std::stoi(f[7]);
        row->cells.push_back(cell);
    }
    return report;
}

std::string report_to_text(const ProtocolReport& report) {
    // Column layout: group | method | per metric "value (delta)" and "rank".
    std::vector<std::string> groups;
    for (const auto& row : report.rows)
        if (std::find(groups.begin(), groups.end(), row.group) == groups.end())
            groups.push_back(row.group);

    // a rank column only appears beside metrics that actually carry ranks
    std::vector<bool> ranked(report.metrics.size(), false);
    for (const auto& row : report.rows)
        for (std::size_t m = 0; m < row.cells.size() && m < ranked.size(); ++m)
            if (row.cells[m].rank) ranked[m] = true;

    std::ostringstream os;
    os << "protocol " << report.protocol;
    if (!report.axis.empty()) os << " [" << report.axis << "]";
    os << "\n";
    for (const auto& group : groups) {
        if (!group.empty()) os << "-- " << group << "\n";
        std::vector<std::vector<std::string>> table;
        std::vector<std::string> head{"method"};
        for (std::size_t m = 0; m < report.metrics.size(); ++m) {
            head.push_back(report.metrics[m]);
            if (ranked[m]) head.push_back("rank");
        }
        table.push_back(head);
        for (const auto& row : report.rows) {
            if (row.group != group) continue;
            std::vector<std::string> line{row.method};
            for (std::size_t m = 0; m < report.metrics.size(); ++m) {
                const ReportCell& cell = m < row.cells.size() ? row.cells[m] : ReportCell{};
                std::string v = cell.value ? display_double(*cell.value) : "-";
                if (cell.delta) v += " (" + display_double(*cell.delta) + ")";
                line.push_back(v);
                if (ranked[m]) line.push_back(cell.rank ? std::to_string(*cell.rank) : "-");
            }
            table.push_back(std::move(line));
        }
        std::vector<std::size_t> widths(table.front().size(), 0);
        for (const auto& line : table)
            for (std::size_t i = 0; i < line.size(); ++i)
                widths[i] = std::max(widths[i], line[i].size());
        for (const auto& line : table) {
            for (std::size_t i = 0; i < line.size(); ++i) {
                os << line[i];
                if (i + 1 < line.size())
                    os << std::string(widths[i] - line[i].size() + 2, ' ');
            }
            os << "\n";
        }
    }
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failure: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string curves_csv(const Trace& trace) {
    std::ostringstream os;
    os << "wall_clock_hours,train_loss\n";
    for (const auto& r : trace.records) {
        if (!r.eval) continue;
        os << format_double(r.cum_wall_clock_hours) << ',' << format_double(r.train_loss)
           << "\n";
    }
    return os.str();
}

}  // namespace fedlora
