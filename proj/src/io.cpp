#include "gagliardo/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace gagliardo {

int thread_cap() {
  if (const char* env = std::getenv("GAGLIARDO_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::json energy_report_json(const EnergyReport& rep) {
  return {{"value", rep.value},
          {"tail_lower", rep.tail_lower},
          {"tail_upper", rep.tail_upper},
          {"abs_err_est", rep.abs_err_est},
          {"nodes", rep.nodes}};
}

nlohmann::json variation_report_json(const VariationReport& rep) {
  nlohmann::json j;
  j["gradient"] = std::vector<double>(rep.gradient.data(),
                                      rep.gradient.data() + rep.gradient.size());
  if (rep.hessian) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < rep.hessian->rows(); ++i) {
      std::vector<double> row(rep.hessian->cols());
      for (Eigen::Index k = 0; k < rep.hessian->cols(); ++k)
        row[k] = (*rep.hessian)(i, k);
      rows.push_back(row);
    }
    j["hessian"] = rows;
    j["row_sum_residual"] = rep.row_sum_residual;
  }
  return j;
}

nlohmann::json sweep_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows)
    rows.push_back({{"param", r.param},
                    {"raw", r.raw},
                    {"scaled", r.scaled},
                    {"extrapolant", r.extrapolant}});
  nlohmann::json j{{"rows", rows},
                   {"metadata",
                    {{"p", table.p},
                     {"T", table.T},
                     {"d", table.d},
                     {"label", table.label},
                     {"err_certified", table.err_certified}}}};
  if (table.target)
    j["target"] = *table.target;
  else
    j["target"] = nullptr;
  if (table.label == "critical") {
    j["metadata"]["bounded_below"] = table.bounded_below;
    j["metadata"]["fitted_slope"] = table.fitted_slope;
  }
  return j;
}

nlohmann::json trace_summary_json(const DescentTrace& trace) {
  nlohmann::json j{{"iterations", trace.energies.size() - 1},
                   {"termination", trace.termination},
                   {"final_energy", trace.energies.back()},
                   {"final_grad_inf", trace.grad_norms.back()},
                   {"jensen_ok", trace.jensen_ok}};
  const auto& x = trace.iterates.back();
  j["final_points"] = std::vector<double>(x.data(), x.data() + x.size());
  return j;
}

std::string sweep_csv(const SweepTable& table) {
  std::string out = "param,raw,scaled,extrapolant,target\n";
  const std::string target =
      table.target ? format_double(*table.target) : std::string();
  for (const auto& r : table.rows) {
    out += format_double(r.param) + ',' + format_double(r.raw) + ',' +
           format_double(r.scaled) + ',' + format_double(r.extrapolant) + ',' +
           target + '\n';
  }
  return out;
}

std::string trace_jsonl(const DescentTrace& trace) {
  std::string out;
  for (size_t i = 0; i < trace.energies.size(); ++i) {
    nlohmann::json j{{"iter", i},
                     {"energy", trace.energies[i]},
                     {"grad_inf", trace.grad_norms[i]}};
    const auto& x = trace.iterates[i];
    j["points"] = std::vector<double>(x.data(), x.data() + x.size());
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IOError("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.flush();
  if (!f) throw IOError("write failed: " + path);
}

void emit_table(const SweepTable& table, const std::string& format,
                const std::string& path) {
  if (format == "csv")
    write_text_file(path, sweep_csv(table));
  else if (format == "json")
    write_text_file(path, sweep_json(table).dump(2) + "\n");
  else
    throw InvalidConfiguration("unknown output format: " + format);
}

void emit_trace(const DescentTrace& trace, const std::string& path) {
  write_text_file(path, trace_jsonl(trace));
}

}  // namespace gagliardo
