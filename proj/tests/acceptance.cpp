// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit code = number
// of failures. Each criterion body returns an empty string on success or a
// short failure detail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "a11y/color.hpp"
#include "a11y/core.hpp"
#include "a11y/exemplars.hpp"
#include "a11y/gateway.hpp"
#include "a11y/metrics.hpp"
#include "a11y/oracle.hpp"
#include "a11y/prompts.hpp"
#include "a11y/refine.hpp"
#include "a11y/rules.hpp"
#include "a11y/segmenter.hpp"
#include "a11y/text_util.hpp"

namespace fs = std::filesystem;
using namespace a11y;

namespace {

const std::string kDataDir = A11Y_DATA_DIR;
const std::string kExemplarDir = kDataDir + "/exemplars";

struct Gate {
  int failures = 0;

  // budget <= 0 means untimed
  void criterion(const std::string& name, double budget_seconds,
                 const std::function<std::string()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (detail.empty() && budget_seconds > 0 && elapsed > budget_seconds) {
      std::ostringstream msg;
      msg << "took " << elapsed << "s, budget " << budget_seconds << "s";
      detail = msg.str();
    }
    if (detail.empty()) {
      std::printf("[PASS] %s (%.2fs)\n", name.c_str(), elapsed);
    } else {
      std::printf("[FAIL] %s: %s\n", name.c_str(), detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
};

// backend that counts calls and replies with a fixed fenced page
class CountingBackend : public gateway::TextBackend {
 public:
  explicit CountingBackend(std::string reply) : reply_(std::move(reply)) {}
  std::string generate(const gateway::GenerationRequest& request) override {
    requests.push_back(request);
    return reply_;
  }
  std::string id() const override { return "counting"; }

  std::vector<gateway::GenerationRequest> requests;

 private:
  std::string reply_;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

// ---- criterion 1 -----------------------------------------------------------

std::string check_exemplar_duality() {
  size_t checked = 0;
  for (auto rs : {rules::Ruleset::kA, rules::Ruleset::kQ}) {
    auto library = prompts::ExemplarLibrary::load(kExemplarDir, rs);
    for (const auto& rule_id : rules::implemented_rule_ids(rs)) {
      const auto* ex = library.find(rule_id);
      if (!ex) return rules::ruleset_name(rs) + "/" + rule_id + ": no exemplar pair";
      int correct = prompts::fixture_findings(ex->correct_path, rs, rule_id);
      int counter = prompts::fixture_findings(ex->counter_path, rs, rule_id);
      if (correct != 0)
        return rule_id + ": correct snippet yields " + std::to_string(correct) +
               " findings of its own rule";
      if (counter < 1) return rule_id + ": counter snippet yields no finding";
      ++checked;
    }
  }
  // at least the documented per-catalog counts must be covered
  if (rules::implemented_rule_ids(rules::Ruleset::kA).size() < 24)
    return "fewer than 24 implemented catalog-A rules";
  if (rules::implemented_rule_ids(rules::Ruleset::kQ).size() < 16)
    return "fewer than 16 implemented catalog-Q rules";
  if (checked < 40) return "only " + std::to_string(checked) + " pairs checked";
  return "";
}

// ---- criterion 2 -----------------------------------------------------------

std::string check_contrast_math() {
  using style::contrast_ratio;
  using style::Rgba;
  std::vector<std::string> problems;

  Rgba black{0, 0, 0, 1.0};
  Rgba white{255, 255, 255, 1.0};
  if (std::abs(contrast_ratio(black, white) - 21.0) > 1e-6)
    problems.push_back("black on white is not 21.0");

  std::mt19937_64 rng(20260816);
  auto random_color = [&rng]() {
    return Rgba{static_cast<uint8_t>(rng() % 256), static_cast<uint8_t>(rng() % 256),
                static_cast<uint8_t>(rng() % 256), 1.0};
  };
  for (int i = 0; i < 1000; ++i) {
    auto c = random_color();
    if (std::abs(contrast_ratio(c, c) - 1.0) > 1e-9) {
      problems.push_back("self-contrast is not 1.0");
      break;
    }
  }
  for (int i = 0; i < 10000; ++i) {
    auto a = random_color();
    auto b = random_color();
    double ab = contrast_ratio(a, b);
    double ba = contrast_ratio(b, a);
    if (std::abs(ab - ba) > 1e-9) {
      problems.push_back("contrast is not symmetric");
      break;
    }
    if (ab < 1.0 || ab > 21.0 + 1e-9) {
      problems.push_back("contrast left the [1, 21] range");
      break;
    }
  }

  auto grey_77 = *style::parse_color("#777777");
  auto grey_76 = *style::parse_color("#767676");
  auto grey_75 = *style::parse_color("#757575");
  double r77 = contrast_ratio(grey_77, white);
  double r76 = contrast_ratio(grey_76, white);
  double r75 = contrast_ratio(grey_75, white);
  if (r76 < 4.5) {
    std::ostringstream msg;
    msg << "#767676 on white computes to " << r76 << ", expected to pass 4.5";
    problems.push_back(msg.str());
  }
  // supplementary boundary check: one step lighter than #767676 does fail
  if (!(r77 < 4.5)) {
    std::ostringstream msg;
    msg << "supplementary: #777777 on white computes to " << r77
        << ", expected below 4.5";
    problems.push_back(msg.str());
  }
  // the required expectation is that #757575 on white falls below 4.5; a
  // darker gray on white has higher contrast, so the relative-luminance
  // formula puts it above. report the computed value rather than papering
  // over the discrepancy
  if (!(r75 < 4.5)) {
    std::ostringstream msg;
    msg << "#757575 on white computes to " << r75
        << ", which is not below the 4.5 threshold";
    problems.push_back(msg.str());
  }
  return join(problems);
}

// ---- criterion 3 -----------------------------------------------------------

rules::AccessibilityReport fraction_report(long violating, long applicable) {
  rules::AccessibilityReport r;
  r.ruleset = rules::Ruleset::kA;
  for (long k = 0; k < applicable; ++k) r.census["audit"].insert(k);
  for (long k = 0; k < violating; ++k) {
    rules::Finding f;
    f.rule_id = "audit";
    f.level = rules::Level::kViolation;
    f.key = k;
    r.findings.push_back(f);
  }
  return r;
}

std::string check_rate_arithmetic() {
  // reference audit counts whose per-file rates must average to 0.425
  const std::pair<long, long> kAuditCounts[] = {
      {61, 125}, {76, 85}, {14, 130}, {90, 160}, {46, 125},
      {43, 110}, {11, 200}, {70, 85},  {31, 100}, {51, 200}};
  std::vector<rules::AccessibilityReport> reports;
  for (auto [violating, applicable] : kAuditCounts)
    reports.push_back(fraction_report(violating, applicable));
  auto agg = metrics::aggregate(reports);
  if (!agg.mean()) return "mean undefined";
  if (std::abs(*agg.mean() - 0.425) > 0.0005) {
    std::ostringstream msg;
    msg << "mean of the reference audit counts is " << *agg.mean()
        << ", expected 0.425 +/- 0.0005";
    return msg.str();
  }

  // distinct-element counting against a brute-force set-union oracle
  std::mt19937_64 rng(31337);
  const rules::Level counted_a[] = {rules::Level::kViolation};
  const rules::Level uncounted_a[] = {rules::Level::kPotentialViolation,
                                      rules::Level::kManual,
                                      rules::Level::kRecommendation};
  const rules::Level counted_q[] = {rules::Level::kFailed};
  const rules::Level uncounted_q[] = {rules::Level::kWarning, rules::Level::kPassed,
                                      rules::Level::kInapplicable};
  for (int trial = 0; trial < 100; ++trial) {
    bool use_a = rng() % 2 == 0;
    rules::AccessibilityReport r;
    r.ruleset = use_a ? rules::Ruleset::kA : rules::Ruleset::kQ;
    size_t n_rules = 1 + rng() % 5;
    for (size_t i = 0; i < n_rules; ++i) {
      auto rule = "r" + std::to_string(i);
      size_t n_keys = rng() % 8;
      for (size_t k = 0; k < n_keys; ++k) {
        // census keys span elements (>= 0) and declaration blocks (< 0)
        long key = static_cast<long>(rng() % 25) - 5;
        r.census[rule].insert(key);
        if (rng() % 3 == 0) {
          rules::Finding f;
          f.rule_id = rule;
          f.key = key;
          bool counted = rng() % 2 == 0;
          if (use_a)
            f.level = counted ? counted_a[0] : uncounted_a[rng() % 3];
          else
            f.level = counted ? counted_q[0] : uncounted_q[rng() % 3];
          r.findings.push_back(f);
        }
      }
    }

    std::set<long> union_applicable;
    std::set<long> union_violating;
    std::map<std::string, std::set<long>> per_rule_violating;
    for (const auto& [rule, keys] : r.census)
      union_applicable.insert(keys.begin(), keys.end());
    for (const auto& f : r.findings)
      if (r.counted(f)) {
        union_violating.insert(f.key);
        per_rule_violating[f.rule_id].insert(f.key);
      }

    auto s = metrics::summarize(r);
    if (s.numerator != static_cast<long>(union_violating.size()))
      return "trial " + std::to_string(trial) + ": numerator diverges from brute force";
    if (s.denominator != static_cast<long>(union_applicable.size()))
      return "trial " + std::to_string(trial) + ": denominator diverges from brute force";
    for (const auto& [rule, keys] : r.census) {
      auto it = s.per_rule.find(rule);
      if (it == s.per_rule.end())
        return "trial " + std::to_string(trial) + ": missing per-rule entry " + rule;
      if (it->second.applicable != static_cast<long>(keys.size()))
        return "trial " + std::to_string(trial) + ": per-rule applicable diverges";
      long expect = static_cast<long>(per_rule_violating[rule].size());
      if (it->second.violating != expect)
        return "trial " + std::to_string(trial) + ": per-rule violating diverges";
    }
  }
  return "";
}

// ---- criterion 4 -----------------------------------------------------------

std::string check_segmentation_round_trip() {
  std::vector<std::pair<std::string, std::string>> corpus;  // (path, content)
  for (const auto& entry : fs::recursive_directory_iterator(kExemplarDir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext != ".html" && ext != ".css" && ext != ".js") continue;
    corpus.emplace_back(entry.path().string(), slurp(entry.path()));
  }
  // malformed and awkward inputs stay byte-exact too
  const char* kNasty[] = {
      "<div><p>unclosed everywhere",
      "</div> stray close <b>then<i>interleaved</b></i>",
      "<html><body><p>a<p>b<table><tr><td>c</body>",
      "text only, no markup at all\nsecond line\n",
      "<!-- comment only -->",
      "<p>less than < inside text & raw amp</p>",
      "<style>p { color: red;</style><p>after unclosed brace",
      "",
  };
  int nasty_index = 0;
  for (const char* content : kNasty)
    corpus.emplace_back("nasty" + std::to_string(nasty_index++) + ".html", content);
  corpus.emplace_back("broken.css", "p { color: red; \n@media screen {\n.a{x:1}");
  corpus.emplace_back("snippet.js", "function f(){return 1}\nclass C{}\n");

  if (corpus.size() < 50)
    return "corpus has only " + std::to_string(corpus.size()) + " files, need 50";

  for (const auto& [path, content] : corpus) {
    auto blocks = seg::segment(path, content);
    if (seg::reassemble(blocks) != content) return "round trip broke on " + path;
  }

  // single-block replacement touches only that block's byte range
  std::vector<size_t> multi_block;
  for (size_t i = 0; i < corpus.size(); ++i)
    if (seg::segment(corpus[i].first, corpus[i].second).size() >= 2)
      multi_block.push_back(i);
  if (multi_block.empty()) return "no multi-block files to patch";

  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& [path, content] = corpus[multi_block[rng() % multi_block.size()]];
    auto blocks = seg::segment(path, content);
    size_t target = rng() % blocks.size();
    auto span = blocks[target].span;
    std::string replacement = "<!-- patch " + std::to_string(trial) + " -->";
    blocks[target].content = replacement;
    auto patched = seg::reassemble(blocks);
    auto expected = content.substr(0, span.start) + replacement + content.substr(span.end);
    if (patched != expected)
      return "trial " + std::to_string(trial) + ": patch leaked outside its block in " +
             path;
  }
  return "";
}

// ---- criterion 5 -----------------------------------------------------------

struct SeededFile {
  std::string path;
  std::string code;
  rules::Ruleset ruleset;
};

std::string make_defective_page(std::mt19937_64& rng) {
  bool no_lang = rng() % 2 == 0;
  bool no_title = rng() % 2 == 0;
  bool bare_img = rng() % 2 == 0;
  bool bare_frame = rng() % 2 == 0;
  bool bare_input = rng() % 2 == 0;
  bool weak_contrast = rng() % 2 == 0;
  if (!no_lang && !no_title && !bare_img && !bare_frame && !bare_input &&
      !weak_contrast)
    no_lang = no_title = true;

  std::string html = "<html";
  if (!no_lang) html += " lang=\"en\"";
  html += "><head>";
  if (!no_title) html += "<title>Seeded page</title>";
  html += "</head><body><a href=\"#m\">Skip to content</a><main id=\"m\">";
  if (bare_img)
    html += "<img src=\"hero-banner.png\">";
  else
    html += "<img src=\"office.png\" alt=\"office interior\">";
  if (bare_frame)
    html += "<iframe src=\"map.html\"></iframe>";
  else
    html += "<iframe src=\"map.html\" title=\"Embedded map\"></iframe>";
  if (bare_input)
    html += "<form action=\"/s\"><input type=\"text\" name=\"city\">"
            "<button type=\"submit\">Go</button></form>";
  else
    html += "<form action=\"/s\"><label for=\"city\">City</label>"
            "<input id=\"city\" type=\"text\" name=\"city\">"
            "<button type=\"submit\">Go</button></form>";
  if (weak_contrast)
    html += "<p style=\"color: #777777; background-color: #ffffff\">Quiet text.</p>";
  else
    html += "<p>Plain text.</p>";
  html += "</main></body></html>";
  return html;
}

std::set<std::pair<std::string, std::string>> counted_pairs(
    const rules::AccessibilityReport& report) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& f : report.findings)
    if (report.counted(f)) out.insert({f.rule_id, f.path});
  return out;
}

std::string check_feedback_loop_corpus() {
  std::mt19937_64 rng(2026);
  std::vector<SeededFile> corpus;
  for (int i = 0; i < 24; ++i)
    corpus.push_back({"seeded_a" + std::to_string(i) + ".html",
                      make_defective_page(rng), rules::Ruleset::kA});
  for (int i = 0; i < 4; ++i)
    corpus.push_back(
        {"seeded_q" + std::to_string(i) + ".html",
         "<html lang=\"en\"><head><title>Seeded form</title></head><body>"
         "<a href=\"#m\">Skip to content</a><main id=\"m\"><h1>Contact</h1>"
         "<form action=\"/send\"><label for=\"e\">Email</label>"
         "<input id=\"e\" type=\"email\" name=\"email\"></form></main></body></html>",
         rules::Ruleset::kQ});
  for (int i = 4; i < 6; ++i)
    corpus.push_back({"seeded_q" + std::to_string(i) + ".css",
                      "p { font-size: 12px; }\nh1 { font-size: 18pt; }\n",
                      rules::Ruleset::kQ});

  const auto& supported = gateway::oracle_supported_rules();
  gateway::OracleBackend oracle;

  for (const auto& file : corpus) {
    auto initial = refine::evaluate_code(file.code, file.path, file.ruleset);
    auto pairs = counted_pairs(initial);
    if (pairs.empty()) return file.path + ": seeded no violations";
    for (const auto& [rule, path] : pairs)
      if (!supported.count(rule))
        return file.path + ": seeded unsupported rule " + rule;

    refine::SessionConfig config;
    config.optimize_ruleset = file.ruleset;
    config.eval_ruleset = file.ruleset;
    config.allow_same_ruleset = true;
    config.max_rounds = 3;
    config.path = file.path;

    refine::SessionInput input;
    input.code = file.code;
    auto session = refine::run(input, oracle, oracle, config);

    if (session.status != refine::SessionStatus::kConverged)
      return file.path + ": status " + refine::status_name(session.status) +
             (session.error.empty() ? "" : " (" + session.error + ")");
    if (session.rounds.size() > 3)
      return file.path + ": took " + std::to_string(session.rounds.size()) + " rounds";
    if (!session.initial_rate.rate() || !session.final_rate.rate())
      return file.path + ": rate undefined";
    if (!(*session.final_rate.rate() < *session.initial_rate.rate()))
      return file.path + ": final rate did not drop";

    auto previous = counted_pairs(session.rounds.front().report);
    for (size_t i = 1; i < session.rounds.size(); ++i) {
      auto current = counted_pairs(session.rounds[i].report);
      if (!std::includes(previous.begin(), previous.end(), current.begin(),
                         current.end()))
        return file.path + ": round " + std::to_string(i + 1) +
               " gained a violation";
      previous = std::move(current);
    }
  }
  return "";
}

// ---- criterion 6 -----------------------------------------------------------

std::string check_same_ruleset_guard() {
  CountingBackend backend("```html\n<html></html>\n```\n");
  refine::SessionConfig config;
  config.optimize_ruleset = rules::Ruleset::kA;
  config.eval_ruleset = rules::Ruleset::kA;
  config.allow_same_ruleset = false;

  refine::SessionInput code_input;
  code_input.code = "<html><body><p>x</p></body></html>";
  bool threw = false;
  try {
    refine::run(code_input, backend, backend, config);
  } catch (const ConfigError&) {
    threw = true;
  }
  if (!threw) return "code input: no configuration error raised";

  refine::SessionInput summary_input;
  summary_input.summary = "a page";
  threw = false;
  try {
    refine::run(summary_input, backend, backend, config);
  } catch (const ConfigError&) {
    threw = true;
  }
  if (!threw) return "summary input: no configuration error raised";
  if (!backend.requests.empty())
    return std::to_string(backend.requests.size()) +
           " backend calls happened before the guard";
  return "";
}

// ---- criterion 7 -----------------------------------------------------------

std::string check_replay_determinism() {
  auto dir = fs::temp_directory_path() / "a11y_acceptance";
  fs::create_directories(dir);
  auto transcript = dir / "session.jsonl";
  fs::remove(transcript);

  refine::SessionConfig config;  // defaults: optimize Q, evaluate A
  config.path = "page.html";
  refine::SessionInput input;
  input.code =
      "<html lang=\"en\"><head><title>T</title></head><body>"
      "<a href=\"#m\">Skip to content</a><main id=\"m\">"
      "<form action=\"/s\"><label for=\"q\">Q</label>"
      "<input id=\"q\" type=\"text\" name=\"q\"></form></main></body></html>";

  gateway::OracleBackend oracle;
  gateway::RecordingBackend recorder(oracle, transcript);
  auto recorded = refine::run(input, recorder, recorder, config);
  if (recorded.status == refine::SessionStatus::kError)
    return "recording run failed: " + recorded.error;

  auto replay_once = [&]() {
    auto backend = gateway::ReplayBackend::from_file(transcript);
    return refine::session_to_json(refine::run(input, backend, backend, config))
        .dump(2);
  };
  auto first = replay_once();
  auto second = replay_once();
  fs::remove(transcript);
  if (first != second) return "two replay runs produced different session manifests";
  return "";
}

// ---- criterion 8 -----------------------------------------------------------

std::string check_prompt_contracts() {
  std::string summary = "A product gallery with filter controls.";

  auto naive = prompts::render_messages(
      prompts::build_prompt(prompts::Strategy::kNaive, summary, {}, nullptr));
  if (naive.find("Act as a software developer") == std::string::npos)
    return "naive prompt lost its persona";
  auto lowered = to_lower_ascii(naive);
  for (const char* word : {"accessib", "wcag", "aria", "contrast", "complian"})
    if (lowered.find(word) != std::string::npos)
      return std::string("naive prompt mentions '") + word + "'";

  auto zero = prompts::render_messages(
      prompts::build_prompt(prompts::Strategy::kZeroShot, summary, {}, nullptr));
  if (collapse_ws(zero).find(collapse_ws(naive)) == std::string::npos)
    return "zero-shot does not extend the naive prompt";
  if (collapse_ws(zero) == collapse_ws(naive))
    return "zero-shot added nothing over naive";

  auto library = prompts::ExemplarLibrary::load(kExemplarDir, rules::Ruleset::kA);
  auto few = prompts::render_messages(
      prompts::build_prompt(prompts::Strategy::kFewShot, summary, {}, &library));
  size_t entries = 0;
  for (size_t pos = few.find("### "); pos != std::string::npos;
       pos = few.find("### ", pos + 1))
    if (pos == 0 || few[pos - 1] == '\n') ++entries;
  if (entries != 34)
    return "few-shot over catalog A embeds " + std::to_string(entries) +
           " exemplar entries, expected 34";

  CountingBackend backend("```html\n<html lang=\"en\"><head><title>G</title></head>"
                          "<body><main id=\"m\"><p>hello</p></main></body></html>\n```\n");
  auto result = refine::run_strategy(summary, prompts::Strategy::kSelfCriticism,
                                     backend, rules::Ruleset::kA, nullptr);
  if (backend.requests.size() != 2)
    return "self-criticism made " + std::to_string(backend.requests.size()) +
           " calls, expected generation plus exactly one review";
  auto expected_review = prompts::build_review_prompt(result.code);
  if (gateway::fingerprint(backend.requests[1].messages) !=
      gateway::fingerprint(expected_review))
    return "second call is not the review prompt for the generated code";
  return "";
}

// ---- criterion 9 -----------------------------------------------------------

prompts::ReactContext ablation_context() {
  prompts::ReactContext ctx;
  ctx.summary = "Team page with a photo grid.";
  ctx.language = "html";
  ctx.code = "<img src=\"team.png\">";
  rules::Finding f;
  f.rule_id = "img_alt_valid";
  f.level = rules::Level::kViolation;
  f.key = 3;
  f.path = "html > body > img";
  f.span = {0, 20};
  f.message = "image has no accessible name";
  ctx.findings = {f};
  ctx.guideline_descriptions = {"img_alt_valid: images carry a text alternative"};
  static auto library =
      prompts::ExemplarLibrary::load(kExemplarDir, rules::Ruleset::kA);
  ctx.examples = {library.entries().front()};
  ctx.testing_rules = {"re-check the block after the edit"};
  ctx.style_properties = "img: display: block";
  return ctx;
}

std::string check_feature_switches() {
  auto ctx = ablation_context();
  prompts::PromptOptions all;
  auto full = prompts::build_react_prompt(ctx, all)[1].content;

  struct Case {
    const char* marker;
    prompts::PromptOptions options;
  };
  std::vector<Case> cases(5);
  cases[0].options.accessibility_instructions = false;
  cases[0].marker = "Make code compliant with WCAG accessibility rules";
  cases[1].options.guideline_descriptions = false;
  cases[1].marker = "## Guideline descriptions";
  cases[2].options.code_examples = false;
  cases[2].marker = "## Rule examples";
  cases[3].options.testing_rules = false;
  cases[3].marker = "## Testing rules";
  cases[4].options.style_properties = false;
  cases[4].marker = "## Style properties";

  for (const auto& c : cases) {
    auto variant = prompts::build_react_prompt(ctx, c.options)[1].content;
    auto begin = full.find(c.marker);
    if (begin == std::string::npos)
      return std::string("full prompt lacks section '") + c.marker + "'";
    if (variant.find(c.marker) != std::string::npos)
      return std::string("switch left its section '") + c.marker + "' in place";
    // removing the section's lines from the full prompt must reproduce the
    // variant exactly: the switch touches nothing else
    auto line_start = full.rfind('\n', begin);
    line_start = line_start == std::string::npos ? 0 : line_start + 1;
    auto end = full.find("\n## ", begin);
    if (end == std::string::npos)
      return std::string("section '") + c.marker + "' has no following heading";
    auto excised = full.substr(0, line_start) + full.substr(end + 1);
    if (variant != excised)
      return std::string("switch for '") + c.marker +
             "' changed bytes outside its section";
  }
  return "";
}

// ---- criterion 10 ----------------------------------------------------------

std::string check_sampling_math() {
  if (seg::sample_size(86) != 39)
    return "sample_size(86) = " + std::to_string(seg::sample_size(86)) +
           ", expected 39";
  if (seg::sample_size(1) != 1)
    return "sample_size(1) = " + std::to_string(seg::sample_size(1)) + ", expected 1";

  auto first = seg::seeded_sample(500, 39, 7);
  auto second = seg::seeded_sample(500, 39, 7);
  if (first != second) return "same seed drew different samples";
  if (first.size() != 39) return "sample has wrong size";
  std::set<size_t> distinct(first.begin(), first.end());
  if (distinct.size() != first.size()) return "sample repeats an index";
  for (auto index : first)
    if (index >= 500) return "sample index out of range";
  if (seg::seeded_sample(500, 39, 8) == first)
    return "different seeds drew identical samples";
  return "";
}

}  // namespace

int main() {
  Gate gate;
  auto a_count = rules::implemented_rule_ids(rules::Ruleset::kA).size();
  auto q_count = rules::implemented_rule_ids(rules::Ruleset::kQ).size();
  gate.criterion("1. exemplar duality holds for every implemented rule (" +
                     std::to_string(a_count) + " catalog-A, " +
                     std::to_string(q_count) + " catalog-Q)",
                 5.0, check_exemplar_duality);
  gate.criterion("2. contrast ratio arithmetic", 0, check_contrast_math);
  gate.criterion("3. inaccessibility rate arithmetic", 0, check_rate_arithmetic);
  gate.criterion("4. segmentation round-trip and patch locality", 0,
                 check_segmentation_round_trip);
  gate.criterion("5. feedback loop repairs a seeded corpus", 30.0,
                 check_feedback_loop_corpus);
  gate.criterion("6. same-ruleset sessions are rejected before any backend call", 0,
                 check_same_ruleset_guard);
  gate.criterion("7. replayed sessions are byte-identical", 0,
                 check_replay_determinism);
  gate.criterion("8. generation strategy prompt contracts", 0, check_prompt_contracts);
  gate.criterion("9. refinement prompt feature switches are independent", 0,
                 check_feature_switches);
  gate.criterion("10. corpus sampling math", 0, check_sampling_math);

  if (gate.failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", gate.failures);
  return gate.failures;
}
