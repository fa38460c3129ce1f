#include "a11y/exemplars.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "a11y/core.hpp"
#include "a11y/dom.hpp"

namespace a11y::prompts {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read fixture " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// correct.html / correct.css, whichever exists
std::filesystem::path fixture_file(const std::filesystem::path& dir,
                                   const std::string& stem) {
  for (const char* ext : {".html", ".css"}) {
    auto p = dir / (stem + ext);
    if (std::filesystem::exists(p)) return p;
  }
  throw ConfigError("missing fixture " + (dir / (stem + ".html|css")).string());
}

}  // namespace

int fixture_findings(const std::filesystem::path& file, rules::Ruleset rs,
                     std::string_view rule_id) {
  auto source = read_file(file);
  auto doc = file.extension() == ".css"
                 ? rules::css_document(source, file.string())
                 : dom::parse_html(source, file.string());
  auto report = rules::evaluate(doc, rs);
  return static_cast<int>(std::count_if(
      report.findings.begin(), report.findings.end(),
      [&](const rules::Finding& f) { return f.rule_id == rule_id; }));
}

ExemplarLibrary ExemplarLibrary::load(const std::filesystem::path& dir,
                                      rules::Ruleset rs) {
  ExemplarLibrary lib;
  lib.ruleset_ = rs;
  auto root = dir / rules::ruleset_name(rs);
  if (!std::filesystem::is_directory(root))
    throw ConfigError("exemplar directory not found: " + root.string());

  for (const auto& rule : rules::catalog(rs)) {
    auto rule_dir = root / rule.id;
    if (!std::filesystem::is_directory(rule_dir)) {
      if (rule.implemented)
        throw ConfigError("implemented rule " + rule.id + " has no exemplar in " +
                          root.string());
      continue;  // unimplemented rules may ship without fixtures
    }
    Exemplar ex;
    ex.rule_id = rule.id;
    ex.description = rule.description;
    auto correct = fixture_file(rule_dir, "correct");
    auto counter = fixture_file(rule_dir, "counter");
    ex.correct_path = correct.string();
    ex.counter_path = counter.string();
    ex.correct_code = read_file(correct);
    ex.counter_code = read_file(counter);

    if (rule.implemented) {
      int on_correct = fixture_findings(correct, rs, rule.id);
      int on_counter = fixture_findings(counter, rs, rule.id);
      if (on_correct != 0)
        throw ConfigError("false exemplar: " + ex.correct_path + " triggers " +
                          rule.id);
      if (on_counter == 0)
        throw ConfigError("false exemplar: " + ex.counter_path +
                          " does not trigger " + rule.id);
      ex.verified = true;
    }
    lib.entries_.push_back(std::move(ex));
  }
  return lib;
}

const Exemplar* ExemplarLibrary::find(std::string_view rule_id) const {
  for (const auto& ex : entries_)
    if (ex.rule_id == rule_id) return &ex;
  return nullptr;
}

}  // namespace a11y::prompts
