#pragma once

#include <string>

#include <json.hpp>

#include "gagliardo/limits.hpp"
#include "gagliardo/optimizer.hpp"
#include "gagliardo/quadrature.hpp"
#include "gagliardo/variations.hpp"

namespace gagliardo {

// Parallelism cap: GAGLIARDO_THREADS if set, hardware concurrency otherwise.
int thread_cap();

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

nlohmann::json energy_report_json(const EnergyReport& rep);
nlohmann::json variation_report_json(const VariationReport& rep);
nlohmann::json sweep_json(const SweepTable& table);
nlohmann::json trace_summary_json(const DescentTrace& trace);

// CSV with header `param,raw,scaled,extrapolant,target`, LF endings.
std::string sweep_csv(const SweepTable& table);

// JSONL, one object per iterate: {"iter":..,"energy":..,"grad_inf":..,"points":[..]}.
std::string trace_jsonl(const DescentTrace& trace);

// Writes text to path byte-for-byte; throws IOError on failure.
void write_text_file(const std::string& path, const std::string& content);

// format is "csv" or "json"; anything else throws InvalidConfiguration.
void emit_table(const SweepTable& table, const std::string& format,
                const std::string& path);
void emit_trace(const DescentTrace& trace, const std::string& path);

}  // namespace gagliardo
