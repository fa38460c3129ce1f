#include "a11y/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "a11y/config.hpp"
#include "a11y/dom.hpp"
#include "a11y/exemplars.hpp"
#include "a11y/gateway.hpp"
#include "a11y/ingest.hpp"
#include "a11y/live_backend.hpp"
#include "a11y/manifest.hpp"
#include "a11y/metrics.hpp"
#include "a11y/oracle.hpp"
#include "a11y/prompts.hpp"
#include "a11y/refine.hpp"
#include "a11y/rules.hpp"
#include "a11y/segmenter.hpp"
#include "a11y/style_resolver.hpp"
#include "a11y/text_util.hpp"

namespace a11y::cli {

namespace {

namespace fs = std::filesystem;

#ifndef A11Y_DEFAULT_DATA_DIR
#define A11Y_DEFAULT_DATA_DIR "data"
#endif

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

rules::Ruleset ruleset_arg(const std::string& name) {
  auto rs = rules::parse_ruleset(name);
  if (!rs) throw ConfigError("unknown ruleset: " + name + " (use A or Q)");
  return *rs;
}

bool css_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".css") == 0;
}

bool code_path(const std::string& path) {
  for (const char* ext : {".html", ".htm", ".css"}) {
    std::string_view e(ext);
    if (path.size() >= e.size() &&
        path.compare(path.size() - e.size(), e.size(), e) == 0)
      return true;
  }
  return false;
}

rules::AccessibilityReport scan_file(const std::string& path, rules::Ruleset rs) {
  if (css_path(path))
    return rules::evaluate(rules::css_document(read_file(path), path), rs);
  return rules::evaluate(dom::load_document(path), rs);
}

std::string rendered_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += " ";
    out += argv[i];
  }
  return out;
}

// Owns whichever backend stack the flags selected.
struct BackendStack {
  std::unique_ptr<gateway::TextBackend> primary;
  std::unique_ptr<gateway::TextBackend> recorder;  // wraps primary when recording
  gateway::TextBackend* use = nullptr;
};

BackendStack make_backend(const std::string& kind, const Config& config,
                          const std::string& transcript, const std::string& record) {
  BackendStack stack;
  if (kind == "oracle") {
    stack.primary = std::make_unique<gateway::OracleBackend>();
  } else if (kind == "replay") {
    if (transcript.empty())
      throw ConfigError("the replay backend needs --transcript <file>");
    stack.primary = std::make_unique<gateway::ReplayBackend>(
        gateway::ReplayBackend::from_file(transcript));
  } else if (kind == "live") {
    gateway::LiveConfig live;
    live.endpoint = config.get("endpoint");
    if (live.endpoint.empty())
      throw ConfigError("the live backend needs an endpoint (config key or "
                        "A11Y_ENDPOINT)");
    live.model = config.get("model", live.model);
    live.max_retries = static_cast<int>(config.get_long("max_retries", live.max_retries));
    live.max_in_flight =
        static_cast<int>(config.get_long("max_in_flight", live.max_in_flight));
    live.timeout_seconds =
        static_cast<int>(config.get_long("timeout_seconds", live.timeout_seconds));
    stack.primary = std::make_unique<gateway::LiveBackend>(live);
  } else {
    throw ConfigError("unknown backend: " + kind + " (use oracle, replay or live)");
  }
  stack.use = stack.primary.get();
  if (!record.empty()) {
    if (kind == "replay") throw ConfigError("--record makes no sense with replay");
    stack.recorder = std::make_unique<gateway::RecordingBackend>(*stack.primary, record);
    stack.use = stack.recorder.get();
  }
  return stack;
}

nlohmann::json rate_json(const metrics::RateSummary& rate) {
  nlohmann::json j{{"numerator", rate.numerator}, {"denominator", rate.denominator}};
  if (auto r = rate.rate())
    j["rate"] = *r;
  else
    j["rate"] = nullptr;
  auto per_rule = nlohmann::json::object();
  for (const auto& [rule, count] : rate.per_rule)
    per_rule[rule] = {{"violating", count.violating}, {"applicable", count.applicable}};
  j["per_rule"] = std::move(per_rule);
  return j;
}

std::string format_rate(const std::optional<double>& rate) {
  if (!rate) return "-";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.3f", *rate);
  return buf;
}

// Runs f(i) for i in [0, n) on up to `jobs` worker threads. Exceptions from
// workers are rethrown (first one wins) after all threads join.
template <typename F>
void parallel_for(size_t n, long jobs, F&& f) {
  auto limit = static_cast<size_t>(std::max<long>(jobs, 1));
  size_t workers = std::min(limit, n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---- scan ----------------------------------------------------------------

int cmd_scan(const std::vector<std::string>& paths, const std::string& ruleset,
             const std::string& format, const std::string& out_dir, long jobs,
             const std::string& command_line) {
  auto rs = ruleset_arg(ruleset);
  auto results = nlohmann::json::array();
  std::string human;
  size_t failures = 0;
  size_t counted = 0;

  RunManifest manifest;
  manifest.command = command_line;
  manifest.stamp_start();

  // evaluation runs file-parallel; everything downstream (output assembly,
  // manifest writes) stays on this thread in input order
  struct Outcome {
    std::optional<rules::AccessibilityReport> report;
    std::string error;
  };
  std::vector<Outcome> outcomes(paths.size());
  parallel_for(paths.size(), jobs, [&](size_t i) {
    try {
      outcomes[i].report = scan_file(paths[i], rs);
    } catch (const Error& e) {
      outcomes[i].error = e.what();
    }
  });

  for (size_t i = 0; i < paths.size(); ++i) {
    const auto& path = paths[i];
    if (outcomes[i].report) {
      const auto& report = *outcomes[i].report;
      counted += report.violating_keys().size();
      manifest.add_input(path);
      if (format == "csv")
        human += rules::report_to_csv(report);
      else if (format == "table")
        human += rules::report_to_table(report) + "\n";
      results.push_back(rules::report_to_json(report));
    } else {
      ++failures;
      results.push_back({{"file", path}, {"error", outcomes[i].error}});
      human += path + ": error: " + outcomes[i].error + "\n";
    }
  }

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    size_t i = 0;
    for (const auto& path : paths) {
      auto name = fs::path(path).stem().string() + ".report.json";
      auto file = (fs::path(out_dir) / name).string();
      write_file(file, results[i++].dump(2) + "\n");
      manifest.add_output(file);
    }
    manifest.stamp_finish();
    write_manifest((fs::path(out_dir) / "manifest.json").string(), manifest);
  }

  if (format == "json")
    std::cout << results.dump(2) << "\n";
  else
    std::cout << human;

  if (failures == paths.size()) return 2;
  return counted > 0 ? 1 : 0;
}

// ---- rate ----------------------------------------------------------------

int cmd_rate(const std::vector<std::string>& paths, const std::string& ruleset,
             bool pooled, const std::string& format, long jobs) {
  auto rs = ruleset_arg(ruleset);
  std::vector<rules::AccessibilityReport> reports(paths.size());
  parallel_for(paths.size(), jobs,
               [&](size_t i) { reports[i] = scan_file(paths[i], rs); });

  auto agg = metrics::aggregate(reports);
  nlohmann::json j;
  auto files = nlohmann::json::array();
  for (const auto& report : reports) {
    auto rate = metrics::summarize(report);
    auto row = rate_json(rate);
    row["file"] = report.file;
    files.push_back(std::move(row));
  }
  j["files"] = std::move(files);
  j["mean"] = agg.mean() ? nlohmann::json(*agg.mean()) : nlohmann::json(nullptr);
  j["pooled"] = rate_json(agg.pooled);

  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& report : reports) {
      auto rate = metrics::summarize(report);
      std::cout << report.file << "  " << rate.numerator << "/" << rate.denominator
                << "  " << format_rate(rate.rate()) << "\n";
    }
    std::cout << "mean  " << format_rate(agg.mean()) << "\n";
    if (pooled)
      std::cout << "pooled  " << agg.pooled.numerator << "/" << agg.pooled.denominator
                << "  " << format_rate(agg.pooled.rate()) << "\n";
  }
  return 0;
}

// ---- segment / styles ----------------------------------------------------

int cmd_segment(const std::string& path) {
  auto content = read_file(path);
  auto blocks = seg::segment(path, content);
  auto arr = nlohmann::json::array();
  for (const auto& block : blocks) {
    arr.push_back({{"id", block.id},
                   {"ordinal", block.ordinal},
                   {"kind", block.kind},
                   {"span", {{"start", block.span.start}, {"end", block.span.end}}},
                   {"content", block.content}});
  }
  std::cout << arr.dump(2) << "\n";
  return 0;
}

int cmd_styles(const std::string& path) {
  auto doc = dom::load_document(path);
  style::StyleResolver resolver(doc);
  for (const auto& el : doc.elements) {
    if (el.synthetic) continue;
    const auto& resolved = resolver.resolve(el.doc_index);
    if (resolved.properties.empty()) continue;
    std::string label = el.tag;
    if (auto id = el.attr("id"); id && !id->empty()) label += "#" + std::string(*id);
    if (auto cls = el.attr("class"))
      for (const auto& token : split_ws(*cls)) label += "." + token;
    std::cout << label << ":";
    bool first = true;
    for (const auto& [prop, pv] : resolved.properties) {
      std::cout << (first ? " " : "; ") << prop << ": " << pv.value;
      if (pv.inherited) std::cout << " (inherited)";
      first = false;
    }
    std::cout << "\n";
  }
  return 0;
}

// ---- prompts render --------------------------------------------------------

int cmd_prompts_render(const std::string& strategy_name, const std::string& summary_file,
                       const std::string& exemplar_dir, const std::string& exemplar_ruleset) {
  auto strategy = prompts::parse_strategy(strategy_name);
  if (!strategy) throw ConfigError("unknown strategy: " + strategy_name);
  auto summary = read_file(summary_file);

  std::optional<prompts::ExemplarLibrary> library;
  const prompts::ExemplarLibrary* lib_ptr = nullptr;
  if (*strategy == prompts::Strategy::kFewShot) {
    library = prompts::ExemplarLibrary::load(exemplar_dir, ruleset_arg(exemplar_ruleset));
    lib_ptr = &*library;
  }
  auto messages = prompts::build_prompt(*strategy, summary, {}, lib_ptr);
  std::cout << prompts::render_messages(messages);
  return 0;
}

// ---- ingest ----------------------------------------------------------------

int cmd_ingest(const std::string& root, const std::string& out_file, bool sample,
               uint64_t seed, const std::string& command_line) {
  IngestOptions options;
  options.sample = sample;
  options.seed = seed;
  auto index = ingest_tree(root, options);
  if (index.files.empty())
    std::cerr << "warning: no files under " << root << "\n";

  auto j = index_to_json(index);
  write_file(out_file, j.dump(2) + "\n");

  RunManifest manifest;
  manifest.command = command_line;
  manifest.stamp_start();
  manifest.stamp_finish();
  manifest.add_output(out_file);
  write_manifest((fs::path(out_file).parent_path() / "manifest.json").string(), manifest);

  std::cout << index.ui_files().size() << " UI files of " << index.files.size()
            << " total";
  if (sample) std::cout << ", sampled " << index.sample.size();
  std::cout << "\n";
  return 0;
}

// ---- refine ----------------------------------------------------------------

// `storage` must outlive the returned config, which points into it.
refine::SessionConfig session_config(const std::string& optimize_rs,
                                     const std::string& eval_rs, int max_rounds,
                                     bool allow_same, const std::string& input_path,
                                     const std::string& exemplar_dir,
                                     std::optional<prompts::ExemplarLibrary>& storage) {
  refine::SessionConfig config;
  config.optimize_ruleset = ruleset_arg(optimize_rs);
  config.eval_ruleset = ruleset_arg(eval_rs);
  config.max_rounds = max_rounds;
  config.allow_same_ruleset = allow_same;
  config.path = css_path(input_path) ? "refined.css" : "refined.html";
  if (!exemplar_dir.empty()) {
    if (!storage)
      storage = prompts::ExemplarLibrary::load(exemplar_dir, config.optimize_ruleset);
    config.exemplars = &*storage;
  }
  return config;
}

int cmd_refine(const std::string& input_path, const std::string& strategy_name,
               const std::string& optimize_rs, const std::string& eval_rs,
               const std::string& backend_kind, const Config& config,
               const std::string& transcript, const std::string& record,
               int max_rounds, bool allow_same, const std::string& out_dir,
               const std::string& exemplar_dir, const std::string& command_line) {
  auto strategy = prompts::parse_strategy(strategy_name);
  if (!strategy) throw ConfigError("unknown strategy: " + strategy_name);

  RunManifest manifest;
  manifest.command = command_line;
  manifest.config_snapshot = config;
  manifest.stamp_start();
  manifest.add_input(input_path);
  fs::create_directories(out_dir);

  auto stack = make_backend(backend_kind, config, transcript, record);
  auto content = read_file(input_path);

  int exit_code = 0;
  if (*strategy == prompts::Strategy::kFeedA11y) {
    std::optional<prompts::ExemplarLibrary> library;
    auto session_cfg = session_config(optimize_rs, eval_rs, max_rounds, allow_same,
                                      input_path, exemplar_dir, library);
    refine::SessionInput input;
    if (code_path(input_path))
      input.code = content;
    else
      input.summary = content;
    auto session = refine::run(input, *stack.use, *stack.use, session_cfg);

    auto session_file = (fs::path(out_dir) / "session.json").string();
    write_file(session_file, refine::session_to_json(session).dump(2) + "\n");
    auto code_file = (fs::path(out_dir) / session_cfg.path).string();
    write_file(code_file, session.final_code);
    manifest.add_output(session_file);
    manifest.add_output(code_file);

    std::cout << "status: " << refine::status_name(session.status)
              << "  rounds: " << session.rounds.size()
              << "  rate: " << format_rate(session.initial_rate.rate()) << " -> "
              << format_rate(session.final_rate.rate()) << "\n";
    if (session.status == refine::SessionStatus::kError) {
      std::cerr << "error: " << session.error << "\n";
      exit_code = 2;
    }
  } else {
    if (code_path(input_path))
      throw ConfigError("baseline strategies generate from a summary file, not code");
    const prompts::ExemplarLibrary* counterpart = nullptr;
    std::optional<prompts::ExemplarLibrary> library;
    if (*strategy == prompts::Strategy::kFewShot) {
      auto eval = ruleset_arg(eval_rs);
      auto other = eval == rules::Ruleset::kA ? rules::Ruleset::kQ : rules::Ruleset::kA;
      library = prompts::ExemplarLibrary::load(exemplar_dir, other);
      counterpart = &*library;
    }
    auto result = refine::run_strategy(content, *strategy, *stack.use,
                                       ruleset_arg(eval_rs), counterpart);
    auto code_file = (fs::path(out_dir) / "generated.html").string();
    write_file(code_file, result.code);
    auto result_json = rate_json(result.rate);
    result_json["strategy"] = strategy_name;
    result_json["eval_ruleset"] = eval_rs;
    auto result_file = (fs::path(out_dir) / "result.json").string();
    write_file(result_file, result_json.dump(2) + "\n");
    manifest.add_output(code_file);
    manifest.add_output(result_file);
    std::cout << "rate: " << format_rate(result.rate.rate()) << "\n";
  }

  manifest.stamp_finish();
  write_manifest((fs::path(out_dir) / "manifest.json").string(), manifest);
  return exit_code;
}

// ---- compare ----------------------------------------------------------------

int cmd_compare(const std::vector<std::string>& summary_files,
                const std::string& optimize_rs, const std::string& eval_rs,
                const std::string& backend_kind, const std::string& optimizer_kind,
                const Config& config, const std::string& transcript,
                const std::string& record, int max_rounds,
                const std::string& out_dir, const std::string& exemplar_dir,
                const std::string& command_line) {
  auto eval = ruleset_arg(eval_rs);
  auto stack = make_backend(backend_kind, config, transcript, record);
  auto optimizer_stack =
      optimizer_kind.empty() || optimizer_kind == backend_kind
          ? BackendStack{}
          : make_backend(optimizer_kind, config, transcript, record);
  gateway::TextBackend* optimizer =
      optimizer_stack.use ? optimizer_stack.use : stack.use;

  auto counterpart_rs =
      eval == rules::Ruleset::kA ? rules::Ruleset::kQ : rules::Ruleset::kA;
  auto counterpart = prompts::ExemplarLibrary::load(exemplar_dir, counterpart_rs);

  RunManifest manifest;
  manifest.command = command_line;
  manifest.config_snapshot = config;
  manifest.stamp_start();
  fs::create_directories(out_dir);

  const prompts::Strategy kStrategies[] = {
      prompts::Strategy::kNaive, prompts::Strategy::kZeroShot,
      prompts::Strategy::kFewShot, prompts::Strategy::kSelfCriticism,
      prompts::Strategy::kFeedA11y};

  auto rows = nlohmann::json::array();
  std::optional<prompts::ExemplarLibrary> loop_library;
  for (const auto& file : summary_files) {
    manifest.add_input(file);
    auto summary = read_file(file);
    for (auto strategy : kStrategies) {
      metrics::RateSummary rate;
      if (strategy == prompts::Strategy::kFeedA11y) {
        auto session_cfg =
            session_config(optimize_rs, eval_rs, max_rounds,
                           /*allow_same=*/false, file, exemplar_dir, loop_library);
        refine::SessionInput input;
        input.summary = summary;
        auto session = refine::run(input, *stack.use, *optimizer, session_cfg);
        if (session.status == refine::SessionStatus::kError)
          throw BackendError("feeda11y session failed on " + file + ": " +
                             session.error);
        rate = session.final_rate;
      } else {
        auto result = refine::run_strategy(
            summary, strategy, *stack.use, eval,
            strategy == prompts::Strategy::kFewShot ? &counterpart : nullptr);
        rate = result.rate;
      }
      auto row = rate_json(rate);
      row["file"] = file;
      row["strategy"] = prompts::strategy_name(strategy);
      row["eval_ruleset"] = rules::ruleset_name(eval);
      rows.push_back(std::move(row));
    }
  }

  nlohmann::json results{{"eval_ruleset", rules::ruleset_name(eval)},
                         {"rows", std::move(rows)}};
  auto results_file = (fs::path(out_dir) / "results.json").string();
  write_file(results_file, results.dump(2) + "\n");
  manifest.add_output(results_file);
  manifest.stamp_finish();
  write_manifest((fs::path(out_dir) / "manifest.json").string(), manifest);
  std::cout << "wrote " << results_file << "\n";
  return 0;
}

// ---- report -----------------------------------------------------------------

struct ComparisonTable {
  std::string eval_ruleset;
  std::vector<std::string> strategies;  // column order
  std::vector<std::string> files;       // row order
  std::map<std::pair<std::string, std::string>, nlohmann::json> cells;  // (file, strategy)
};

ComparisonTable merge_results(const std::vector<std::string>& result_files) {
  ComparisonTable table;
  const char* kCanonical[] = {"naive", "zero-shot", "few-shot", "self-criticism",
                              "feeda11y"};
  std::set<std::string> strategies;
  std::set<std::string> files;
  for (const auto& path : result_files) {
    auto j = nlohmann::json::parse(read_file(path));
    auto rs = j.at("eval_ruleset").get<std::string>();
    if (table.eval_ruleset.empty())
      table.eval_ruleset = rs;
    else if (table.eval_ruleset != rs)
      throw ConfigError("cannot mix evaluation rulesets in one table: " +
                        table.eval_ruleset + " vs " + rs + " in " + path);
    for (const auto& row : j.at("rows")) {
      auto file = row.at("file").get<std::string>();
      auto strategy = row.at("strategy").get<std::string>();
      files.insert(file);
      strategies.insert(strategy);
      table.cells[{file, strategy}] = row;
    }
  }
  for (const char* s : kCanonical)
    if (strategies.count(s)) {
      table.strategies.push_back(s);
      strategies.erase(s);
    }
  table.strategies.insert(table.strategies.end(), strategies.begin(), strategies.end());
  table.files.assign(files.begin(), files.end());
  return table;
}

std::optional<double> cell_rate(const nlohmann::json& cell) {
  if (cell.is_null() || !cell.contains("rate") || cell["rate"].is_null())
    return std::nullopt;
  return cell["rate"].get<double>();
}

int cmd_report(const std::vector<std::string>& result_files, const std::string& format) {
  auto table = merge_results(result_files);

  // column averages over defined per-file rates
  std::map<std::string, std::optional<double>> avg;
  for (const auto& strategy : table.strategies) {
    double sum = 0;
    int n = 0;
    for (const auto& file : table.files) {
      auto it = table.cells.find({file, strategy});
      if (it == table.cells.end()) continue;
      if (auto r = cell_rate(it->second)) {
        sum += *r;
        ++n;
      }
    }
    avg[strategy] = n ? std::optional<double>(sum / n) : std::nullopt;
  }

  if (format == "json") {
    nlohmann::json j{{"eval_ruleset", table.eval_ruleset}};
    auto rows = nlohmann::json::array();
    for (const auto& file : table.files) {
      nlohmann::json row{{"file", file}};
      for (const auto& strategy : table.strategies) {
        auto it = table.cells.find({file, strategy});
        row[strategy] = it == table.cells.end() ? nlohmann::json(nullptr)
                        : cell_rate(it->second)
                            ? nlohmann::json(*cell_rate(it->second))
                            : nlohmann::json(nullptr);
      }
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    nlohmann::json avg_row;
    for (const auto& strategy : table.strategies)
      avg_row[strategy] =
          avg[strategy] ? nlohmann::json(*avg[strategy]) : nlohmann::json(nullptr);
    j["avg"] = std::move(avg_row);
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  const char* sep = format == "csv" ? "," : "  ";
  std::cout << "file";
  for (const auto& strategy : table.strategies) std::cout << sep << strategy;
  std::cout << "\n";
  for (const auto& file : table.files) {
    std::cout << file;
    for (const auto& strategy : table.strategies) {
      auto it = table.cells.find({file, strategy});
      std::cout << sep
                << (it == table.cells.end() ? "-" : format_rate(cell_rate(it->second)));
    }
    std::cout << "\n";
  }
  std::cout << "AVG";
  for (const auto& strategy : table.strategies) std::cout << sep << format_rate(avg[strategy]);
  std::cout << "\n";

  // per-rule appendix: percent change of total violations vs the first column
  if (table.strategies.size() > 1) {
    std::map<std::pair<std::string, std::string>, long> totals;  // (strategy, rule)
    std::set<std::string> rule_ids;
    for (const auto& [key, cell] : table.cells) {
      if (!cell.contains("per_rule")) continue;
      for (const auto& [rule, counts] : cell["per_rule"].items()) {
        totals[{key.second, rule}] += counts.value("violating", 0L);
        rule_ids.insert(rule);
      }
    }
    const auto& baseline = table.strategies.front();
    std::cout << "\nper-rule change vs " << baseline << " (%)\n";
    for (const auto& rule : rule_ids) {
      std::cout << rule;
      for (size_t i = 1; i < table.strategies.size(); ++i) {
        const auto& strategy = table.strategies[i];
        auto base = static_cast<double>(totals[{baseline, rule}]);
        auto curr = static_cast<double>(totals[{strategy, rule}]);
        auto change = metrics::percent_change(base, curr);
        std::cout << sep;
        if (change) {
          char buf[16];
          std::snprintf(buf, sizeof buf, "%+.1f", *change);
          std::cout << buf;
        } else {
          std::cout << "-";
        }
      }
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"static WCAG evaluation and feedback-driven refinement"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value settings file");

  // scan
  auto* scan = app.add_subcommand("scan", "evaluate files against a ruleset");
  std::vector<std::string> scan_paths;
  std::string scan_ruleset = "A", scan_format = "json", scan_out;
  long scan_jobs = 0;
  scan->add_option("paths", scan_paths, "HTML or CSS files")->required();
  scan->add_option("--ruleset", scan_ruleset, "A or Q");
  scan->add_option("--format", scan_format, "json, table or csv");
  scan->add_option("--out", scan_out, "directory for per-file reports");
  scan->add_option("--jobs", scan_jobs, "parallel evaluation workers");

  // rate
  auto* rate = app.add_subcommand("rate", "inaccessibility rates and corpus mean");
  std::vector<std::string> rate_paths;
  std::string rate_ruleset = "A", rate_format = "table";
  bool rate_pooled = false;
  long rate_jobs = 0;
  rate->add_option("paths", rate_paths, "HTML or CSS files")->required();
  rate->add_option("--ruleset", rate_ruleset, "A or Q");
  rate->add_option("--format", rate_format, "table or json");
  rate->add_flag("--pooled", rate_pooled, "also print the pooled rate");
  rate->add_option("--jobs", rate_jobs, "parallel evaluation workers");

  // segment
  auto* segment = app.add_subcommand("segment", "split a file into refinable blocks");
  std::string segment_path;
  segment->add_option("file", segment_path)->required();

  // styles
  auto* styles = app.add_subcommand("styles", "resolved style properties per element");
  std::string styles_path;
  styles->add_option("file", styles_path)->required();

  // prompts render
  auto* prompts_cmd = app.add_subcommand("prompts", "prompt utilities");
  auto* render = prompts_cmd->add_subcommand("render", "print an assembled prompt");
  std::string render_strategy = "naive", render_summary,
              render_exemplars = A11Y_DEFAULT_DATA_DIR "/exemplars",
              render_ruleset = "A";
  render->add_option("--strategy", render_strategy,
                     "naive, zero-shot, few-shot or self-criticism");
  render->add_option("--summary-file", render_summary, "file description text")
      ->required();
  render->add_option("--exemplar-dir", render_exemplars, "exemplar corpus root");
  render->add_option("--exemplar-ruleset", render_ruleset, "catalog for few-shot");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "index UI files under a tree");
  std::string ingest_root, ingest_out = "corpus-index.json";
  bool ingest_sample = false;
  uint64_t ingest_seed = 0;
  ingest->add_option("root", ingest_root)->required();
  ingest->add_option("--out", ingest_out, "index file to write");
  ingest->add_flag("--sample", ingest_sample, "draw the Cochran-sized sample");
  ingest->add_option("--seed", ingest_seed, "sampling seed");

  // refine
  auto* refine_cmd = app.add_subcommand("refine", "run a strategy or the feedback loop");
  std::string refine_input, refine_strategy = "feeda11y", refine_optimize = "Q",
              refine_eval = "A", refine_backend = "oracle", refine_transcript,
              refine_record, refine_out = "refine-out",
              refine_exemplars = A11Y_DEFAULT_DATA_DIR "/exemplars";
  int refine_max_rounds = 3;
  bool refine_allow_same = false;
  refine_cmd->add_option("input", refine_input, "summary file or code file")->required();
  refine_cmd->add_option("--strategy", refine_strategy,
                         "naive, zero-shot, few-shot, self-criticism or feeda11y");
  refine_cmd->add_option("--optimize-ruleset", refine_optimize, "A or Q");
  refine_cmd->add_option("--eval-ruleset", refine_eval, "A or Q");
  refine_cmd->add_option("--backend", refine_backend, "oracle, replay or live");
  refine_cmd->add_option("--transcript", refine_transcript, "transcript for replay");
  refine_cmd->add_option("--record", refine_record, "record exchanges to this file");
  refine_cmd->add_option("--max-rounds", refine_max_rounds, "refinement round cap");
  refine_cmd->add_flag("--allow-same-ruleset", refine_allow_same,
                       "permit optimization == evaluation");
  refine_cmd->add_option("--out", refine_out, "output directory");
  refine_cmd->add_option("--exemplar-dir", refine_exemplars, "exemplar corpus root");

  // compare
  auto* compare = app.add_subcommand("compare", "run every strategy over summaries");
  std::vector<std::string> compare_inputs;
  std::string compare_optimize = "Q", compare_eval = "A", compare_backend = "replay",
              compare_optimizer, compare_transcript, compare_record,
              compare_out = "compare-out",
              compare_exemplars = A11Y_DEFAULT_DATA_DIR "/exemplars";
  int compare_max_rounds = 3;
  compare->add_option("summaries", compare_inputs, "summary files")->required();
  compare->add_option("--optimize-ruleset", compare_optimize, "A or Q");
  compare->add_option("--eval-ruleset", compare_eval, "A or Q");
  compare->add_option("--backend", compare_backend, "generation backend");
  compare->add_option("--optimizer", compare_optimizer,
                      "separate backend for the feedback loop");
  compare->add_option("--transcript", compare_transcript, "transcript for replay");
  compare->add_option("--record", compare_record, "record exchanges to this file");
  compare->add_option("--max-rounds", compare_max_rounds, "feedback loop round cap");
  compare->add_option("--out", compare_out, "output directory");
  compare->add_option("--exemplar-dir", compare_exemplars, "exemplar corpus root");

  // report
  auto* report = app.add_subcommand("report", "merge results into a comparison table");
  std::vector<std::string> report_inputs;
  std::string report_format = "table";
  report->add_option("results", report_inputs, "results.json files")->required();
  report->add_option("--format", report_format, "table, csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Config config;
    if (!config_path.empty()) config = load_config(config_path);
    apply_env_overrides(config);
    auto command_line = rendered_command(argc, argv);

    // flag beats config beats the sequential default
    auto jobs_for = [&config](long flag_value) {
      return flag_value > 0 ? flag_value : config.get_long("jobs", 1);
    };
    if (scan->parsed())
      return cmd_scan(scan_paths, scan_ruleset, scan_format, scan_out,
                      jobs_for(scan_jobs), command_line);
    if (rate->parsed())
      return cmd_rate(rate_paths, rate_ruleset, rate_pooled, rate_format,
                      jobs_for(rate_jobs));
    if (segment->parsed()) return cmd_segment(segment_path);
    if (styles->parsed()) return cmd_styles(styles_path);
    if (prompts_cmd->parsed() && render->parsed())
      return cmd_prompts_render(render_strategy, render_summary, render_exemplars,
                                render_ruleset);
    if (ingest->parsed())
      return cmd_ingest(ingest_root, ingest_out, ingest_sample, ingest_seed,
                        command_line);
    if (refine_cmd->parsed())
      return cmd_refine(refine_input, refine_strategy, refine_optimize, refine_eval,
                        refine_backend, config, refine_transcript, refine_record,
                        refine_max_rounds, refine_allow_same, refine_out,
                        refine_exemplars, command_line);
    if (compare->parsed())
      return cmd_compare(compare_inputs, compare_optimize, compare_eval,
                         compare_backend, compare_optimizer, config,
                         compare_transcript, compare_record, compare_max_rounds,
                         compare_out, compare_exemplars, command_line);
    if (report->parsed()) return cmd_report(report_inputs, report_format);
    std::cerr << "error: no command\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace a11y::cli
