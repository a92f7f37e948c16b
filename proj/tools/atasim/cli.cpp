#include "atasim/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "atasim/generator.hpp"
#include "atasim/locality.hpp"
#include "atasim/report.hpp"
#include "atasim/simulator.hpp"
#include "atasim/trace.hpp"

namespace atasim::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string config_path;
  std::string trace_path;
  std::string format = "json";
  std::string out_path;
  Cycle max_cycles = 100'000'000;
};

struct GenFlags {
  GenParams params;
  bool seed_given = false;
};

void add_gen_flags(CLI::App* cmd, GenFlags& g) {
  GenParams& p = g.params;
  cmd->add_option("--cores", p.cores, "Cores in the generated trace")->capture_default_str();
  cmd->add_option("--lines-private", p.lines_private, "Private lines per core")
      ->capture_default_str();
  cmd->add_option("--lines-shared", p.lines_shared, "Lines in the shared region")
      ->capture_default_str();
  cmd->add_option("--shared-prob", p.shared_prob, "Probability an instruction targets shared data")
      ->capture_default_str();
  cmd->add_option("--requests-per-core", p.requests_per_core, "Requests per core")
      ->capture_default_str();
  cmd->add_option("--zipf-s", p.zipf_s, "Zipf exponent of shared line popularity")
      ->capture_default_str();
  cmd->add_option("--stride", p.stride, "Private walk stride in lines")->capture_default_str();
  cmd->add_option("--store-prob", p.store_prob, "Probability a private instruction stores")
      ->capture_default_str();
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&g](const std::uint64_t& s) {
        g.params.seed = s;
        g.seed_given = true;
      },
      "Generator seed (default: ATASIM_SEED, else 1)");
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("ATASIM_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const std::uint64_t s = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return s;
  } catch (const std::exception&) {
    throw ConfigError({std::string("ATASIM_SEED is not an unsigned integer: ") + v});
  }
}

SimConfig load_effective_config(const std::string& path) {
  SimConfig cfg = path.empty() ? SimConfig{} : load_config(path);
  if (auto s = env_seed()) cfg.seed = *s;
  return validate_config(cfg);
}

void apply_gen_seed(GenFlags& g, const SimConfig* cfg) {
  if (g.seed_given) return;
  if (cfg != nullptr) {
    g.params.seed = cfg->seed;
  } else if (auto s = env_seed()) {
    g.params.seed = *s;
  }
}

std::vector<Architecture> parse_arch_list(const std::string& list, std::ostream& err) {
  std::vector<Architecture> out;
  std::vector<std::string> unknown;
  std::stringstream ss(list);
  for (std::string name; std::getline(ss, name, ',');) {
    if (name.empty()) continue;
    auto a = parse_architecture(name);
    if (!a) {
      unknown.push_back(name);
      continue;
    }
    if (std::find(out.begin(), out.end(), *a) != out.end()) {
      err << "warning: duplicate architecture " << name << " ignored\n";
      continue;
    }
    out.push_back(*a);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown architecture";
    for (const auto& u : unknown) msg += " " + u;
    msg += " (expected private, remote, decoupled, ata)";
    throw UsageError(msg);
  }
  if (out.empty()) throw UsageError("no architectures given");
  return out;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  f.close();
  if (!f) throw std::runtime_error("cannot write " + path);
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw UsageError("unknown format " + format + " (expected json or csv)");
  }
}

std::vector<double> parse_values(const std::string& list, std::vector<std::string>& labels) {
  std::vector<double> out;
  std::stringstream ss(list);
  for (std::string v; std::getline(ss, v, ',');) {
    if (v.empty()) continue;
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size()) throw UsageError("sweep value is not a number: " + v);
    out.push_back(d);
    labels.push_back(v);
  }
  if (out.empty()) throw UsageError("no sweep values given");
  return out;
}

// ------------------------------------------------------------------------------------

int cmd_run(const CommonFlags& f, const std::string& arch_name, const std::string& event_log,
            std::ostream& out) {
  check_format(f.format);
  SimConfig cfg = load_effective_config(f.config_path);
  if (!arch_name.empty()) {
    auto a = parse_architecture(arch_name);
    if (!a) throw UsageError("unknown architecture " + arch_name);
    cfg.architecture = *a;
  }
  const auto trace = load_trace(f.trace_path);
  std::ofstream log_file;
  EventLog log;
  if (!event_log.empty()) {
    log_file.open(event_log, std::ios::binary);
    if (!log_file) throw std::runtime_error("cannot write " + event_log);
    log = EventLog(&log_file);
  }
  const SimReport rep = simulate(cfg, trace, {f.max_cycles, event_log.empty() ? nullptr : &log});
  write_output(f.out_path, f.format == "json" ? to_json(rep) : report_to_csv(rep), out);
  return kExitOk;
}

Comparison compare(const SimConfig& base, std::span<const TraceRecord> trace,
                   const std::vector<Architecture>& archs, Cycle max_cycles) {
  std::vector<Architecture> order{Architecture::Private};
  for (Architecture a : archs) {
    if (a != Architecture::Private) order.push_back(a);
  }
  Comparison c;
  std::map<std::string, SimReport> by_name;
  for (Architecture a : order) {
    SimConfig cfg = base;
    cfg.architecture = a;
    c.reports.push_back(simulate(cfg, trace, {max_cycles, nullptr}));
    by_name[c.reports.back().architecture] = c.reports.back();
  }
  c.normalized = normalize(by_name);
  return c;
}

int cmd_compare(const CommonFlags& f, const std::string& archs, std::ostream& out,
                std::ostream& err) {
  check_format(f.format);
  const auto list = parse_arch_list(archs, err);
  const SimConfig cfg = load_effective_config(f.config_path);
  const auto trace = load_trace(f.trace_path);
  const Comparison c = compare(cfg, trace, list, f.max_cycles);
  write_output(f.out_path, f.format == "json" ? comparison_to_json(c) : comparison_to_csv(c), out);
  return kExitOk;
}

int cmd_gen(GenFlags& g, const std::string& out_path, std::ostream& out) {
  apply_gen_seed(g, nullptr);
  const auto trace = generate(g.params);
  if (out_path.empty()) {
    write_trace(out, trace);
  } else {
    save_trace(out_path, trace);
  }
  return kExitOk;
}

int cmd_analyze(const CommonFlags& f, double threshold, std::uint32_t line_size,
                std::ostream& out) {
  check_format(f.format);
  const auto trace = load_trace(f.trace_path);
  const LocalityProfile p = analyze_locality(trace, line_size);
  std::string text;
  if (f.format == "json") {
    std::ostringstream j;
    j << "{\n  \"records\": " << trace.size() << ",\n  \"distinct_lines\": " << p.distinct_lines
      << ",\n  \"replicated_lines\": " << p.replicated_lines
      << ",\n  \"replication_ratio\": " << fixed6(p.replication_ratio)
      << ",\n  \"threshold\": " << fixed6(threshold) << ",\n  \"class\": \""
      << locality_class(p, threshold) << "\",\n  \"sharing_histogram\": {";
    bool first = true;
    for (const auto& [k, n] : p.sharing_histogram) {
      j << (first ? "" : ", ") << "\"" << k << "\": " << n;
      first = false;
    }
    j << "},\n  \"footprint\": {";
    first = true;
    for (const auto& [c, n] : p.footprint) {
      j << (first ? "" : ", ") << "\"" << c << "\": " << n;
      first = false;
    }
    j << "}\n}\n";
    text = j.str();
  } else {
    std::ostringstream c;
    c << "records,distinct_lines,replicated_lines,replication_ratio,threshold,class\n"
      << trace.size() << "," << p.distinct_lines << "," << p.replicated_lines << ","
      << fixed6(p.replication_ratio) << "," << fixed6(threshold) << ","
      << locality_class(p, threshold) << "\n";
    text = c.str();
  }
  write_output(f.out_path, text, out);
  return kExitOk;
}

struct SweepCell {
  std::size_t value_index;
  Architecture arch;
  SimReport report;
  std::exception_ptr error;
};

int cmd_sweep(const CommonFlags& f, GenFlags& g, const std::string& param,
              const std::string& values, const std::string& archs, unsigned jobs,
              std::ostream& out, std::ostream& err) {
  const bool gen_param = is_gen_parameter(param);
  if (!gen_param && !is_config_parameter(param)) {
    throw UsageError("unknown sweep parameter " + param);
  }
  std::vector<std::string> labels;
  const std::vector<double> vals = parse_values(values, labels);
  const auto arch_list = parse_arch_list(archs, err);
  const SimConfig base = load_effective_config(f.config_path);
  apply_gen_seed(g, &base);

  // Inputs per value, built up front and read-only afterwards.
  std::vector<SimConfig> configs;
  std::vector<std::vector<TraceRecord>> traces;
  std::vector<TraceRecord> shared_trace;
  const bool fixed_trace = !gen_param && !f.trace_path.empty();
  if (fixed_trace) shared_trace = load_trace(f.trace_path);
  for (double v : vals) {
    SimConfig cfg = base;
    if (!gen_param) set_config_parameter(cfg, param, v);
    configs.push_back(validate_config(cfg));
    if (fixed_trace) continue;
    GenParams p = g.params;
    if (gen_param) set_gen_parameter(p, param, v);
    traces.push_back(generate(p));
  }

  std::vector<SweepCell> cells;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (Architecture a : arch_list) cells.push_back({i, a, {}, nullptr});
  }
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(cells.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < cells.size();) {
      SweepCell& cell = cells[k];
      try {
        SimConfig cfg = configs[cell.value_index];
        cfg.architecture = cell.arch;
        const auto& trace = fixed_trace ? shared_trace : traces[cell.value_index];
        cell.report = simulate(cfg, trace, {f.max_cycles, nullptr});
      } catch (...) {
        cell.error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& cell : cells) {
    if (cell.error) std::rethrow_exception(cell.error);
  }

  auto arch_rank = [](Architecture a) {
    return std::find(std::begin(kAllArchitectures), std::end(kAllArchitectures), a) -
           std::begin(kAllArchitectures);
  };
  std::sort(cells.begin(), cells.end(), [&](const SweepCell& a, const SweepCell& b) {
    if (vals[a.value_index] != vals[b.value_index]) {
      return vals[a.value_index] < vals[b.value_index];
    }
    if (a.value_index != b.value_index) return a.value_index < b.value_index;
    return arch_rank(a.arch) < arch_rank(b.arch);
  });

  std::string text = "parameter,value";
  for (const auto& c : csv_columns()) text += "," + c;
  text += "\n";
  for (const auto& cell : cells) {
    std::optional<double> ratio;
    for (const auto& other : cells) {
      if (other.value_index == cell.value_index && other.arch == Architecture::Private) {
        ratio = normalize({{"private", other.report}, {cell.report.architecture, cell.report}})
                    .at(cell.report.architecture);
      }
    }
    std::vector<std::string> row = csv_row(cell.report, ratio.value_or(0.0));
    if (!ratio) row[3] = "";
    text += param + "," + labels[cell.value_index];
    for (const auto& c : row) text += "," + c;
    text += "\n";
  }
  write_output(f.out_path, text, out);
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace-driven simulator of clustered GPU L1 caches and the shared L2", "atasim"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "atasim " + std::string(library_version()));

  CommonFlags common;
  auto add_common = [&common](CLI::App* cmd, bool trace_required) {
    cmd->add_option("--config", common.config_path, "JSON configuration file");
    auto* t = cmd->add_option("--trace", common.trace_path, "Trace file (.gz accepted)");
    if (trace_required) t->required();
    cmd->add_option("--format", common.format, "json or csv")->capture_default_str();
    cmd->add_option("--out", common.out_path, "Output file (default: stdout)");
    cmd->add_option("--max-cycles", common.max_cycles, "Cycle ceiling")->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "Simulate one architecture");
  std::string arch;
  std::string event_log;
  add_common(run, true);
  run->add_option("--arch", arch, "private, remote, decoupled or ata (default: config)");
  run->add_option("--event-log", event_log, "Write one line per simulation event");

  auto* cmp = app.add_subcommand("compare", "Run several architectures on one trace");
  std::string archs = "private,remote,decoupled,ata";
  add_common(cmp, true);
  cmp->add_option("--archs", archs, "Comma-separated architectures")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Generate a synthetic trace");
  GenFlags gen_flags;
  std::string gen_out;
  add_gen_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "Trace file (.gz compresses; default: stdout)");

  auto* analyze = app.add_subcommand("analyze", "Inter-core locality of a trace");
  double threshold = 0.5;
  std::uint32_t line_size = 128;
  add_common(analyze, true);
  analyze->add_option("--threshold", threshold, "Replication ratio labelled high")
      ->capture_default_str();
  analyze->add_option("--line-size", line_size, "Line size in bytes")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Parameter x architecture cross product (CSV)");
  std::string param;
  std::string values;
  std::string sweep_archs = "private,ata";
  unsigned jobs = 0;
  GenFlags sweep_gen;
  add_common(sweep, false);
  sweep->add_option("--param", param, "Config or generator parameter")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--archs", sweep_archs, "Comma-separated architectures")
      ->capture_default_str();
  sweep->add_option("--jobs", jobs, "Worker threads (0: hardware threads)")
      ->capture_default_str();
  add_gen_flags(sweep, sweep_gen);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run) return cmd_run(common, arch, event_log, out);
    if (*cmp) return cmd_compare(common, archs, out, err);
    if (*gen) return cmd_gen(gen_flags, gen_out, out);
    if (*analyze) return cmd_analyze(common, threshold, line_size, out);
    if (*sweep) {
      return cmd_sweep(common, sweep_gen, param, values, sweep_archs, jobs, out, err);
    }
  } catch (const SimulationAborted& e) {
    err << "error: " << e.what() << "\n";
    return kExitAborted;
  } catch (const ConfigError& e) {
    err << "error: invalid configuration\n";
    for (const auto& p : e.problems()) err << "  " << p << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace atasim::cli
