#include "fedlora/trace.hpp"

#include <json.hpp>

#include "fedlora/errors.hpp"

namespace fedlora {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json header_to_json(const TraceHeader& h) {
    ordered_json j;
    j["type"] = "header";
    j["schema_version"] = h.schema_version;
    j["scenario"] = h.scenario;
    j["method"] = h.method;
    j["config_hash"] = h.config_hash;
    j["seed"] = h.seed;
    return j;
}

ordered_json record_to_json(const RoundRecord& r) {
    ordered_json j;
    j["type"] = "round";
    j["round"] = r.round;
    j["selected"] = r.selected;
    ordered_json clients = ordered_json::array();
    for (const auto& c : r.clients) {
        ordered_json cj;
        cj["id"] = c.client_id;
        cj["train_s"] = c.train_seconds;
        cj["comm_s"] = c.comm_seconds;
        cj["down_bytes"] = c.down_bytes;
        cj["up_bytes"] = c.up_bytes;
        if (c.activation_bytes_up || c.gradient_bytes_down) {
            cj["activation_bytes_up"] = c.activation_bytes_up;
            cj["gradient_bytes_down"] = c.gradient_bytes_down;
        }
        cj["energy_kj"] = c.energy_kj;
        cj["peak_memory_mb"] = c.peak_memory_mb;
        cj["dropped"] = c.dropped;
        clients.push_back(std::move(cj));
    }
    j["clients"] = std::move(clients);
    j["wall_clock_s"] = r.wall_clock_seconds;
    j["train_loss"] = r.train_loss;
    j["adapters_hash"] = r.adapters_hash;
    if (r.eval) {
        j["eval"] = {{"loss", r.eval->loss}, {"accuracy", r.eval->accuracy}};
    }
    j["cum"] = {{"wall_clock_h", r.cum_wall_clock_hours},
                {"comm_bytes", r.cum_comm_bytes},
                {"energy_kj", r.cum_energy_kj}};
    return j;
}

RoundRecord record_from_json(const ordered_json& j) {
    RoundRecord r;
    r.round = j.at("round").get<std::size_t>();
    r.selected = j.at("selected").get<std::vector<std::size_t>>();
    for (const auto& cj : j.at("clients")) {
        PerClientRecord c;
        c.client_id = cj.at("id").get<std::size_t>();
        c.train_seconds = cj.at("train_s").get<double>();
        c.comm_seconds = cj.at("comm_s").get<double>();
        c.down_bytes = cj.at("down_bytes").get<std::uint64_t>();
        c.up_bytes = cj.at("up_bytes").get<std::uint64_t>();
        if (cj.contains("activation_bytes_up")) {
            c.activation_bytes_up = cj.at("activation_bytes_up").get<std::uint64_t>();
            c.gradient_bytes_down = cj.at("gradient_bytes_down").get<std::uint64_t>();
        }
        c.energy_kj = cj.at("energy_kj").get<double>();
        c.peak_memory_mb = cj.at("peak_memory_mb").get<double>();
        c.dropped = cj.at("dropped").get<bool>();
        r.clients.push_back(std::move(c));
    }
    r.wall_clock_seconds = j.at("wall_clock_s").get<double>();
    r.train_loss = j.at("train_loss").get<double>();
    r.adapters_hash = j.at("adapters_hash").get<std::uint64_t>();
    if (j.contains("eval")) {
        EvalSnapshot e;
        e.loss = j.at("eval").at("loss").get<double>();
        e.accuracy = j.at("eval").at("accuracy").get<double>();
        r.eval = e;
    }
    r.cum_wall_clock_hours = j.at("cum").at("wall_clock_h").get<double>();
    r.cum_comm_bytes = j.at("cum").at("comm_bytes").get<std::uint64_t>();
    r.cum_energy_kj = j.at("cum").at("energy_kj").get<double>();
    return r;
}

}  // namespace

TraceWriter::TraceWriter(const std::filesystem::path& path, const TraceHeader& header) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot open trace file for writing: " + path.string());
    out_ << header_to_json(header).dump() << "\n";
    if (!out_) throw IoError("write failure on trace file: " + path.string());
}

void TraceWriter::write_record(const RoundRecord& record) {
    if (record.round != next_round_)
        throw IoError("trace records must arrive in round order (expected " +
                      std::to_string(next_round_) + ", got " + std::to_string(record.round) + ")");
    double max_client_seconds = 0.0;
    for (const auto& c : record.clients)
        max_client_seconds = std::max(max_client_seconds, c.train_seconds + c.comm_seconds);
    if (record.wall_clock_seconds < max_client_seconds)
        throw IoError("round wall clock below straggler duration");
    ++next_round_;
    out_ << record_to_json(record).dump() << "\n";
    if (!out_) throw IoError("write failure on trace file");
}

void TraceWriter::write_infeasibility_marker(const std::string& reason) {
    ordered_json j;
    j["type"] = "infeasible";
    j["reason"] = reason;
    out_ << j.dump() << "\n";
    if (!out_) throw IoError("write failure on trace file");
}

void TraceWriter::close() {
    out_.flush();
    out_.close();
}

std::string Trace::serialize_record(const RoundRecord& record) {
    return record_to_json(record).dump();
}

RoundRecord Trace::parse_record(const std::string& line) {
    return record_from_json(ordered_json::parse(line));
}

Trace Trace::read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open trace file: " + path.string());
    Trace trace;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line);
        const std::string type = j.at("type").get<std::string>();
        if (type == "header") {
            trace.header.schema_version = j.at("schema_version").get<int>();
            if (trace.header.schema_version != kTraceSchemaVersion)
                throw VersionError("trace schema version " +
                                   std::to_string(trace.header.schema_version) +
                                   " != expected " + std::to_string(kTraceSchemaVersion));
            trace.header.scenario = j.at("scenario").get<std::string>();
            trace.header.method = j.at("method").get<std::string>();
            trace.header.config_hash = j.at("config_hash").get<std::uint64_t>();
            trace.header.seed = j.at("seed").get<std::uint64_t>();
            saw_header = true;
        } else if (type == "round") {
            trace.records.push_back(record_from_json(j));
        } else if (type == "infeasible") {
            trace.infeasible = true;
            trace.infeasible_reason = j.at("reason").get<std::string>();
        } else {
            throw IoError("unknown trace record type '" + type + "'");
        }
    }
    if (!saw_header) throw IoError("trace has no header: " + path.string());
    return trace;
}

}  // namespace fedlora
