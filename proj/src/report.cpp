#include "qcf/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "qcf/errors.hpp"

namespace qcf {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string join_labels(const OutcomeRow& row, char sep) {
  std::string out;
  for (const auto& [label, symbol] : row.labels) {
    if (!out.empty()) out += sep;
    out += label + "=" + symbol;
  }
  return out;
}

Json protocol_json(const ProtocolReport& report) {
  Json j;
  j["protocol"] = report.protocol;
  if (report.r) j["r"] = *report.r;
  if (report.detector) j["detector"] = *report.detector;
  j["mode"] = std::string(to_string(report.mode));
  j["seed"] = report.seed;
  if (report.stages) j["N"] = *report.stages;
  if (report.epsilon) j["epsilon"] = round_sig12(*report.epsilon);
  if (report.duration) j["T"] = round_sig12(*report.duration);
  if (report.trials) j["trials"] = *report.trials;
  if (report.p_keep_all) j["p_keep_all"] = round_sig12(*report.p_keep_all);

  Json outcomes = Json::array();
  for (const auto& row : report.outcomes) {
    Json o;
    Json labels = Json::object();
    for (const auto& [label, symbol] : row.labels) labels[label] = symbol;
    o["labels"] = std::move(labels);
    if (report.mode == RunMode::Exact) {
      o["probability"] = round_sig12(row.probability);
    } else {
      o["count"] = row.count;
    }
    if (row.outcome_class) {
      o["class"] = std::string(to_string(*row.outcome_class));
      o["computation_ran"] = row.computation_ran;
    }
    if (row.discarded) o["discarded"] = true;
    outcomes.push_back(std::move(o));
  }
  j["outcomes"] = std::move(outcomes);

  if (!report.marginals.empty()) {
    Json marginals = Json::object();
    for (const auto& m : report.marginals) {
      Json values = Json::object();
      for (const auto& [symbol, p] : m.values) values[symbol] = round_sig12(p);
      marginals[m.label] = std::move(values);
    }
    j["marginals"] = std::move(marginals);
  }
  j["counterfactual_free_probability"] = round_sig12(report.counterfactual_free_probability);
  if (report.restarts) j["restarts"] = *report.restarts;
  if (report.gave_up) j["gave_up"] = *report.gave_up;
  if (report.discarded_attempt_ran) j["discarded_attempt_ran"] = *report.discarded_attempt_ran;
  if (report.would_have_exploded) j["would_have_exploded"] = round_sig12(*report.would_have_exploded);
  return j;
}

std::string protocol_csv(const ProtocolReport& report) {
  std::string out(kProtocolCsvHeader);
  out += "\n";
  for (const auto& row : report.outcomes) {
    out += join_labels(row, ';') + ",";
    out += fmt12(round_sig12(row.probability)) + ",";
    out += (report.mode == RunMode::Sampled ? std::to_string(row.count) : std::string()) + ",";
    out += (row.outcome_class ? std::string(to_string(*row.outcome_class)) : std::string()) + ",";
    out += (row.outcome_class ? (row.computation_ran ? "true" : "false") : "") + std::string(",");
    out += row.discarded ? "true" : "false";
    out += "\n";
  }
  return out;
}

std::string protocol_text(const ProtocolReport& report) {
  std::ostringstream os;
  os << "protocol: " << report.protocol;
  if (report.r) os << "  r=" << *report.r;
  if (report.detector) os << "  detector=" << (*report.detector ? "yes" : "no");
  if (report.stages) os << "  N=" << *report.stages;
  os << "  mode=" << to_string(report.mode) << "  seed=" << report.seed << "\n";
  if (report.trials) os << "trials: " << *report.trials << "\n";
  for (const auto& row : report.outcomes) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-14s", report.mode == RunMode::Exact ? fmt12(round_sig12(row.probability)).c_str()
                                                                        : std::to_string(row.count).c_str());
    os << "  " << buf << " " << join_labels(row, ' ');
    if (row.outcome_class) os << "  [" << to_string(*row.outcome_class) << (row.computation_ran ? ", ran" : "") << "]";
    if (row.discarded) os << "  (discarded)";
    os << "\n";
  }
  for (const auto& m : report.marginals) {
    os << "marginal " << m.label << ":";
    for (const auto& [symbol, p] : m.values) os << " " << symbol << "=" << fmt12(round_sig12(p));
    os << "\n";
  }
  if (report.p_keep_all) os << "p_keep_all: " << fmt12(round_sig12(*report.p_keep_all)) << "\n";
  os << "counterfactual_free_probability: " << fmt12(round_sig12(report.counterfactual_free_probability)) << "\n";
  if (report.restarts) os << "restarts: " << *report.restarts << "  gave_up: " << report.gave_up.value_or(0) << "\n";
  if (report.would_have_exploded) os << "would_have_exploded: " << fmt12(round_sig12(*report.would_have_exploded)) << "\n";
  return os.str();
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw UsageError("unsupported report format '" + std::string(name) + "'");
}

double round_sig12(double value) { return std::strtod(fmt12(value).c_str(), nullptr); }

std::string emit_report(const ProtocolReport& report, Format format) {
  switch (format) {
    case Format::Json: return dump(protocol_json(report));
    case Format::Csv: return protocol_csv(report);
    case Format::Text: return protocol_text(report);
  }
  throw UsageError("unsupported report format");
}

std::string emit_report(const BenchReport& report, Format format) {
  const auto ratios = report.ratios();
  switch (format) {
    case Format::Json: {
      Json j;
      j["command"] = "bench";
      j["seed"] = report.seed;
      j["timed"] = report.timed;
      Json rows = Json::array();
      for (const auto& row : report.rows) {
        Json r;
        r["n"] = row.n;
        r["k"] = row.k;
        r["method"] = std::string(to_string(row.method));
        if (row.skipped) {
          r["skipped"] = true;
        } else {
          r["complex_mults"] = row.complex_mults;
          r["wall_nanos"] = row.wall_nanos;
          r["reps"] = row.reps;
        }
        rows.push_back(std::move(r));
      }
      j["rows"] = std::move(rows);
      Json ratio_rows = Json::array();
      for (const auto& ratio : ratios) {
        ratio_rows.push_back(Json{{"n", ratio.n}, {"k", ratio.k}, {"ratio", round_sig12(ratio.ratio)}});
      }
      j["ratios"] = std::move(ratio_rows);
      return dump(j);
    }
    case Format::Csv: {
      std::string out(kBenchCsvHeader);
      out += "\n";
      for (const auto& row : report.rows) {
        if (row.skipped) continue;
        out += std::to_string(row.n) + "," + std::to_string(row.k) + "," + std::string(to_string(row.method)) + "," +
               std::to_string(row.complex_mults) + "," + std::to_string(row.wall_nanos) + "," +
               std::to_string(row.reps) + "\n";
      }
      return out;
    }
    case Format::Text: {
      std::ostringstream os;
      os << "seed: " << report.seed << "\n";
      char buf[160];
      std::snprintf(buf, sizeof buf, "%4s %4s %-6s %16s %14s %12s\n", "n", "k", "method", "complex_mults",
                    "wall_nanos", "local/dense");
      os << buf;
      for (const auto& row : report.rows) {
        std::string ratio;
        for (const auto& r : ratios) {
          if (r.n == row.n && r.k == row.k && row.method == BenchMethod::Dense) ratio = fmt12(round_sig12(r.ratio));
        }
        if (row.skipped) {
          std::snprintf(buf, sizeof buf, "%4d %4d %-6s %16s\n", row.n, row.k, std::string(to_string(row.method)).c_str(),
                        "skipped");
        } else {
          std::snprintf(buf, sizeof buf, "%4d %4d %-6s %16llu %14llu %12s\n", row.n, row.k,
                        std::string(to_string(row.method)).c_str(), static_cast<unsigned long long>(row.complex_mults),
                        static_cast<unsigned long long>(row.wall_nanos), ratio.c_str());
        }
        os << buf;
      }
      return os.str();
    }
  }
  throw UsageError("unsupported report format");
}

std::string emit_report(const QftReport& report, Format format) {
  switch (format) {
    case Format::Json: {
      Json j;
      j["command"] = "qft-verify";
      j["n"] = report.n;
      j["trials"] = report.trials;
      j["seed"] = report.seed;
      j["max_error"] = round_sig12(report.max_error);
      j["gate_count"] = report.gate_count;
      j["expected_gate_count"] = qft_gate_count(report.n);
      Json rows = Json::array();
      for (const auto& row : report.scaling) {
        rows.push_back(Json{{"n", row.n}, {"qft_gates", row.qft_gates}, {"fft_complex_mults", row.fft_complex_mults}});
      }
      j["scaling"] = std::move(rows);
      return dump(j);
    }
    case Format::Csv: {
      std::string out(kQftCsvHeader);
      out += "\n";
      for (const auto& row : report.scaling) {
        out += std::to_string(row.n) + "," + std::to_string(row.qft_gates) + "," +
               std::to_string(row.fft_complex_mults) + "\n";
      }
      return out;
    }
    case Format::Text: {
      std::ostringstream os;
      os << "qft n=" << report.n << " trials=" << report.trials << " seed=" << report.seed << "\n";
      os << "max_error: " << fmt12(round_sig12(report.max_error)) << "\n";
      os << "gate_count: " << report.gate_count << " (expected " << qft_gate_count(report.n) << ")\n";
      char buf[96];
      std::snprintf(buf, sizeof buf, "%4s %10s %18s\n", "n", "qft_gates", "fft_complex_mults");
      os << buf;
      for (const auto& row : report.scaling) {
        std::snprintf(buf, sizeof buf, "%4d %10llu %18llu\n", row.n, static_cast<unsigned long long>(row.qft_gates),
                      static_cast<unsigned long long>(row.fft_complex_mults));
        os << buf;
      }
      return os.str();
    }
  }
  throw UsageError("unsupported report format");
}

}  // namespace qcf
