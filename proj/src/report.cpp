#include "repsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "repsim/errors.hpp"

namespace repsim {

void MetricMoments::add(double x) {
  n += 1;
  const double d = x - mean;
  mean += d / double(n);
  m2 += d * (x - mean);
}

void MetricMoments::merge(const MetricMoments& o) {
  if (o.n == 0) return;
  if (n == 0) {
    *this = o;
    return;
  }
  const double d = o.mean - mean;
  const std::uint64_t total = n + o.n;
  mean += d * (double(o.n) / double(total));
  m2 += o.m2 + d * d * (double(n) * double(o.n) / double(total));
  n = total;
}

double MetricMoments::stddev() const {
  if (n < 2) return 0.0;
  return std::sqrt(m2 / double(n - 1));
}

void merge_summary(SummaryMap& into, const SummaryMap& from) {
  for (const auto& [key, g] : from) {
    GroupMoments& dst = into[key];
    dst.bw.merge(g.bw);
    dst.delay.merge(g.delay);
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_perslot_csv(const std::vector<PerSlotRow>& rows, std::ostream& out) {
  out << "topology_seed,strategy,r,slot,owner,avg_bw_kbps,avg_delay_ms,"
         "unavailable,online_replicas\n";
  for (const PerSlotRow& r : rows) {
    out << r.seed << ',' << strategy_name(r.strategy) << ',' << r.degree << ','
        << r.slot << ',' << r.owner << ',';
    if (r.has_avg) {
      out << format_double(r.avg_bw_kbps) << ',' << format_double(r.avg_delay_ms);
    } else {
      out << ',';
    }
    out << ',' << r.unavailable << ',' << r.online_replicas << '\n';
  }
}

namespace {

void summary_row(std::ostream& out, const char* strategy, std::uint32_t r,
                 const char* metric, const MetricMoments& m) {
  out << strategy << ',' << r << ',' << metric << ',';
  if (m.n > 0) out << format_double(m.mean) << ',' << format_double(m.stddev());
  else out << ',';
  out << ',' << m.n << '\n';
}

}  // namespace

void write_summary_csv(const SummaryMap& summary, std::ostream& out) {
  out << "strategy,r,metric,mean,stddev,n_samples\n";
  for (const auto& [key, g] : summary) {
    const char* name = strategy_name(static_cast<Strategy>(key.first));
    summary_row(out, name, key.second, "utility_kbps", g.bw);
    summary_row(out, name, key.second, "delay_ms", g.delay);
  }
}

void write_summary_json(const SummaryMap& summary, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  auto push = [&arr](const char* name, std::uint32_t r, const char* metric,
                     const MetricMoments& m) {
    nlohmann::ordered_json row;
    row["strategy"] = name;
    row["r"] = r;
    row["metric"] = metric;
    if (m.n > 0) {
      row["mean"] = m.mean;
      row["stddev"] = m.stddev();
    } else {
      row["mean"] = nullptr;
      row["stddev"] = nullptr;
    }
    row["n_samples"] = m.n;
    arr.push_back(std::move(row));
  };
  for (const auto& [key, g] : summary) {
    const char* name = strategy_name(static_cast<Strategy>(key.first));
    push(name, key.second, "utility_kbps", g.bw);
    push(name, key.second, "delay_ms", g.delay);
  }
  out << arr.dump(2) << '\n';
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void aggregate_perslot_csv(std::istream& in, SummaryMap& into) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty per-slot file");
  if (line.rfind("topology_seed,", 0) != 0) {
    throw ConfigError("unrecognized per-slot header: " + line);
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 9) {
      throw ConfigError("per-slot row " + std::to_string(lineno) +
                        ": expected 9 fields");
    }
    const auto strategy = strategy_from_name(f[1]);
    if (!strategy) {
      throw ConfigError("per-slot row " + std::to_string(lineno) +
                        ": unknown strategy " + f[1]);
    }
    if (f[5].empty() != f[6].empty()) {
      throw ConfigError("per-slot row " + std::to_string(lineno) +
                        ": half-empty averages");
    }
    if (f[5].empty()) continue;  // unavailable slot: no sample
    try {
      const std::uint32_t r = static_cast<std::uint32_t>(std::stoul(f[2]));
      GroupMoments& g = into[{static_cast<int>(*strategy), r}];
      g.bw.add(std::stod(f[5]));
      g.delay.add(std::stod(f[6]));
    } catch (const std::exception&) {
      throw ConfigError("per-slot row " + std::to_string(lineno) +
                        ": malformed number");
    }
  }
}

}  // namespace repsim
