#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace fedlora {

inline constexpr int kTraceSchemaVersion = 1;

struct PerClientRecord {
    std::size_t client_id = 0;
    double train_seconds = 0.0;
    double comm_seconds = 0.0;
    std::uint64_t down_bytes = 0;
    std::uint64_t up_bytes = 0;
    std::uint64_t activation_bytes_up = 0;
    std::uint64_t gradient_bytes_down = 0;
    double energy_kj = 0.0;
    double peak_memory_mb = 0.0;
    bool dropped = false;
};

struct EvalSnapshot {
    double loss = 0.0;
    double accuracy = 0.0;
};

struct RoundRecord {
    std::size_t round = 0;
    std::vector<std::size_t> selected;
    std::vector<PerClientRecord> clients;
    double wall_clock_seconds = 0.0;
    double train_loss = 0.0;
    std::uint64_t adapters_hash = 0;
    std::optional<EvalSnapshot> eval;
    // Ledger snapshot after this round:
    double cum_wall_clock_hours = 0.0;
    std::uint64_t cum_comm_bytes = 0;
    double cum_energy_kj = 0.0;
};

struct TraceHeader {
    int schema_version = kTraceSchemaVersion;
    std::string scenario;
    std::string method;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

// Line-delimited: one header object, then one record object per round, in
// strictly increasing round order. Floats are serialized with full
// round-trip precision, so determinism is byte-testable. An infeasible run
// contains only the header and one infeasibility marker line.
class TraceWriter {
public:
    TraceWriter(const std::filesystem::path& path, const TraceHeader& header);
    void write_record(const RoundRecord& record);
    void write_infeasibility_marker(const std::string& reason);
    void close();

private:
    std::ofstream out_;
    std::size_t next_round_ = 0;
};

struct Trace {
    TraceHeader header;
    std::vector<RoundRecord> records;
    bool infeasible = false;
    std::string infeasible_reason;

    static Trace read(const std::filesystem::path& path);
    // Parse helpers exposed for round-trip tests.
    static std::string serialize_record(const RoundRecord& record);
    static RoundRecord parse_record(const std::string& line);
};

}  // namespace fedlora
