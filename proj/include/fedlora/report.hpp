#pragma once

#include <filesystem>
#include <string>

#include "fedlora/protocols.hpp"

namespace fedlora {

// Machine-readable form: one line per cell,
//   protocol,axis,group,method,metric,value,delta,rank
// with "-" for absent values (the sole infeasibility marker).
std::string report_to_csv(const ProtocolReport& report);
ProtocolReport report_from_csv(const std::string& csv_text);

// Human-readable aligned table, one block per group.
std::string report_to_text(const ProtocolReport& report);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Loss-vs-wall-clock series: one "wall_clock_hours,train_loss" row per round
// that carries an eval snapshot.
std::string curves_csv(const Trace& trace);

}  // namespace fedlora
