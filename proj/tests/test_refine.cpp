#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <set>

#include "a11y/core.hpp"
#include "a11y/exemplars.hpp"
#include "a11y/gateway.hpp"
#include "a11y/oracle.hpp"
#include "a11y/refine.hpp"
#include "a11y/rules.hpp"
#include "a11y/text_util.hpp"
#include "doctest.h"

using namespace a11y;
using namespace a11y::refine;

namespace {

const std::string kDataDir = A11Y_DATA_DIR;

// scripted backend that records every request it sees
class ScriptBackend : public gateway::TextBackend {
 public:
  explicit ScriptBackend(std::vector<std::string> replies)
      : replies_(std::move(replies)) {}
  std::string generate(const gateway::GenerationRequest& request) override {
    requests.push_back(request);
    if (next_ >= replies_.size()) {
      if (replies_.empty()) throw BackendError("script exhausted");
      return replies_.back();  // repeat the last reply forever
    }
    return replies_[next_++];
  }
  std::string id() const override { return "script"; }

  std::vector<gateway::GenerationRequest> requests;

 private:
  std::vector<std::string> replies_;
  size_t next_ = 0;
};

std::string prompt_text(const gateway::GenerationRequest& request) {
  std::string out;
  for (const auto& m : request.messages) out += m.content + "\n";
  return out;
}

// page with oracle-fixable defects: no lang, no title, bare img, bare input
const std::string kDefectivePage =
    "<html><head></head><body>\n"
    "<a href=\"#m\">Skip to content</a>\n"
    "<main id=\"m\">\n"
    "<img src=\"hero-banner.png\">\n"
    "<form action=\"/s\"><input type=\"text\" name=\"city\">"
    "<button type=\"submit\">Go</button></form>\n"
    "</main>\n"
    "</body></html>\n";

SessionConfig oracle_config(rules::Ruleset opt, rules::Ruleset eval) {
  SessionConfig config;
  config.optimize_ruleset = opt;
  config.eval_ruleset = eval;
  config.allow_same_ruleset = opt == eval;
  config.path = "page.html";
  return config;
}

std::set<std::pair<std::string, long>> counted_set(const rules::AccessibilityReport& report) {
  std::set<std::pair<std::string, long>> out;
  for (const auto& f : report.findings)
    if (report.counted(f)) out.insert({f.rule_id, f.key});
  return out;
}

}  // namespace

TEST_CASE("evaluate_code dispatches on the file extension") {
  auto html = evaluate_code("<html><body><p>x</p></body></html>", "a.html",
                            rules::Ruleset::kA);
  CHECK(html.ruleset == rules::Ruleset::kA);
  CHECK(!html.findings.empty());

  auto css = evaluate_code("p { font-size: 10px; }", "a.css", rules::Ruleset::kQ);
  bool saw_font_rule = false;
  for (const auto& f : css.findings)
    if (f.rule_id == "FontSizeCSS") saw_font_rule = true;
  CHECK(saw_font_rule);
}

TEST_CASE("extract_code_reply peels fenced replies") {
  CHECK(extract_code_reply("```html\n<p>x</p>\n```") == "<p>x</p>");
  CHECK(extract_code_reply("chat\n```css\na{color:red}\n```\nbye") == "a{color:red}");
  CHECK(extract_code_reply("```\nbare\n```") == "bare");
  CHECK(extract_code_reply("  plain answer \n") == "plain answer");
  CHECK(extract_code_reply("```json\n{}\n```\n```html\n<p>y</p>\n```") == "<p>y</p>");
}

TEST_CASE("initial generation uses the clean naive prompt") {
  ScriptBackend generator({"```html\n<html><body>hi</body></html>\n```"});
  auto code = initial_generate("A greeting page.", generator);
  CHECK(code == "<html><body>hi</body></html>");
  REQUIRE(generator.requests.size() == 1);
  auto sent = to_lower_ascii(prompt_text(generator.requests[0]));
  CHECK(sent.find("wcag") == std::string::npos);
  CHECK(sent.find("accessib") == std::string::npos);
  CHECK(sent.find("a greeting page.") != std::string::npos);

  CHECK_THROWS_AS(initial_generate("", generator), ConfigError);
}

TEST_CASE("optimize_round with no findings makes no edits and no calls") {
  std::string clean =
      "<html lang=\"en\"><head><title>ok</title></head><body>\n"
      "<a href=\"#m\">Skip</a><main id=\"m\"><p>fine</p></main>\n"
      "</body></html>\n";
  // confirm the fixture really is clean under ruleset A
  REQUIRE(counted_set(evaluate_code(clean, "page.html", rules::Ruleset::kA)).empty());

  ScriptBackend optimizer({});
  RefinementSession session;
  session.config = oracle_config(rules::Ruleset::kA, rules::Ruleset::kQ);
  auto round = optimize_round(clean, session, optimizer);
  CHECK(round.post_code == clean);
  CHECK(round.blocks.empty());
  CHECK(optimizer.requests.empty());
}

TEST_CASE("patches stay inside the blocks that carry findings") {
  // two top-level sections; only the second has a violation
  std::string page =
      "<html lang=\"en\"><head><title>t</title></head><body>\n"
      "<a href=\"#m\">Skip</a>\n"
      "<main id=\"m\">\n"
      "<div><p>clean text block</p></div>\n"
      "<div><img src=\"logo.png\"></div>\n"
      "</main>\n"
      "</body></html>\n";
  gateway::OracleBackend oracle;
  RefinementSession session;
  session.config = oracle_config(rules::Ruleset::kA, rules::Ruleset::kQ);
  auto round = optimize_round(page, session, oracle);

  REQUIRE(round.blocks.size() >= 1);
  CHECK(round.post_code != page);
  CHECK(round.post_code.find("<div><p>clean text block</p></div>") != std::string::npos);
  CHECK(round.post_code.find("alt=\"logo\"") != std::string::npos);

  // everything before the defective div is untouched
  auto cut = page.find("<div><img");
  CHECK(round.post_code.compare(0, cut, page, 0, cut) == 0);
}

TEST_CASE("malformed replies get one retry then keep the previous content") {
  std::string page = kDefectivePage;

  SUBCASE("two malformed replies leave the block alone") {
    ScriptBackend optimizer({"no fence here", "still prose, no code"});
    RefinementSession session;
    session.config = oracle_config(rules::Ruleset::kA, rules::Ruleset::kQ);
    auto round = optimize_round(page, session, optimizer);
    REQUIRE(!round.blocks.empty());
    CHECK(round.blocks[0].patched == false);
    CHECK(round.blocks[0].resolved == false);
    CHECK(round.blocks[0].attempts == 2);
    CHECK(round.post_code == page);
  }
  SUBCASE("a good reply on the retry is accepted") {
    // single-block css file keeps the scenario to one call
    std::string css = "p { font-size: 12px; }";
    ScriptBackend optimizer({"garbage", "```css\np { font-size: 0.75rem; }\n```"});
    RefinementSession session;
    session.config = oracle_config(rules::Ruleset::kQ, rules::Ruleset::kA);
    session.config.path = "styles.css";
    auto round = optimize_round(css, session, optimizer);
    REQUIRE(round.blocks.size() == 1);
    CHECK(round.blocks[0].attempts == 2);
    CHECK(round.blocks[0].patched == true);
    CHECK(round.post_code == "p { font-size: 0.75rem; }");
  }
  SUBCASE("an html reply cannot replace a css block") {
    std::string css = "p { font-size: 12px; }";
    ScriptBackend optimizer({"```css\n<p>not css</p>\n```"});
    RefinementSession session;
    session.config = oracle_config(rules::Ruleset::kQ, rules::Ruleset::kA);
    session.config.path = "styles.css";
    auto round = optimize_round(css, session, optimizer);
    REQUIRE(round.blocks.size() == 1);
    CHECK(round.blocks[0].patched == false);
    CHECK(round.post_code == css);
  }
}

TEST_CASE("run rejects same-ruleset sessions before any backend call") {
  ScriptBackend generator({"```html\n<p>x</p>\n```"});
  ScriptBackend optimizer({});
  SessionConfig config = oracle_config(rules::Ruleset::kA, rules::Ruleset::kA);
  config.allow_same_ruleset = false;

  SessionInput input;
  input.summary = "A page.";
  CHECK_THROWS_AS(run(input, generator, optimizer, config), ConfigError);
  CHECK(generator.requests.empty());
  CHECK(optimizer.requests.empty());

  SUBCASE("the override flag makes it legal and gets recorded") {
    config.allow_same_ruleset = true;
    gateway::OracleBackend oracle;
    SessionInput code_input;
    code_input.code = kDefectivePage;
    auto session = run(code_input, oracle, oracle, config);
    CHECK(session.status == SessionStatus::kConverged);
    CHECK(session_to_json(session)["allow_same_ruleset"] == true);
  }
}

TEST_CASE("oracle session converges and strictly improves the rate") {
  gateway::OracleBackend oracle;
  SessionInput input;
  input.code = kDefectivePage;
  auto session = run(input, oracle, oracle,
                     oracle_config(rules::Ruleset::kA, rules::Ruleset::kA));

  CHECK(session.status == SessionStatus::kConverged);
  CHECK(session.rounds.size() <= 3);
  REQUIRE(session.initial_rate.rate());
  REQUIRE(session.final_rate.rate());
  CHECK(*session.final_rate.rate() < *session.initial_rate.rate());
  CHECK(session.final_rate.numerator == 0);

  SUBCASE("counted violations shrink monotonically across rounds") {
    for (size_t i = 1; i < session.rounds.size(); ++i) {
      auto prev = counted_set(session.rounds[i - 1].report);
      auto curr = counted_set(session.rounds[i].report);
      CHECK(std::includes(prev.begin(), prev.end(), curr.begin(), curr.end()));
    }
  }
  SUBCASE("all touched blocks resolved") {
    for (const auto& round : session.rounds)
      for (const auto& rec : round.blocks) {
        CHECK(rec.patched);
        CHECK(rec.resolved);
      }
  }
  SUBCASE("the last round is the fixed point") {
    REQUIRE(session.rounds.size() >= 2);
    const auto& last = session.rounds.back();
    CHECK(last.post_code == last.code);
  }
}

TEST_CASE("already-clean code converges after one round") {
  std::string clean =
      "<html lang=\"en\"><head><title>ok</title></head><body>\n"
      "<a href=\"#m\">Skip</a><main id=\"m\"><p>fine</p></main>\n"
      "</body></html>\n";
  gateway::OracleBackend oracle;
  SessionInput input;
  input.code = clean;
  auto session = run(input, oracle, oracle,
                     oracle_config(rules::Ruleset::kA, rules::Ruleset::kQ));
  CHECK(session.status == SessionStatus::kConverged);
  CHECK(session.rounds.size() == 1);
  CHECK(session.final_code == clean);
}

TEST_CASE("a backend that keeps churning stops at max rounds") {
  // every reply is valid html but unique, so no fixed point can form
  class ChurnBackend : public gateway::TextBackend {
   public:
    std::string generate(const gateway::GenerationRequest&) override {
      ++calls;
      return "```html\n<html><body><p>v" + std::to_string(calls) +
             "</p></body></html>\n```";
    }
    std::string id() const override { return "churn"; }
    int calls = 0;
  };
  ChurnBackend optimizer;
  SessionInput input;
  input.code = kDefectivePage;
  auto config = oracle_config(rules::Ruleset::kA, rules::Ruleset::kQ);
  ScriptBackend generator({});
  auto session = run(input, generator, optimizer, config);
  CHECK(session.status == SessionStatus::kMaxRounds);
  CHECK(session.rounds.size() == 3);
}

TEST_CASE("backend failures surface as an error session") {
  class FailingBackend : public gateway::TextBackend {
   public:
    std::string generate(const gateway::GenerationRequest&) override {
      throw BackendError("boom");
    }
    std::string id() const override { return "failing"; }
  };
  FailingBackend failing;
  SessionInput input;
  input.summary = "A page.";
  auto session = run(input, failing, failing,
                     oracle_config(rules::Ruleset::kA, rules::Ruleset::kQ));
  CHECK(session.status == SessionStatus::kError);
  CHECK(session.error.find("boom") != std::string::npos);
}

TEST_CASE("sessions are deterministic and replayable") {
  namespace fs = std::filesystem;
  auto transcript = fs::temp_directory_path() / "a11y_refine_tests" / "session.jsonl";
  fs::create_directories(transcript.parent_path());
  fs::remove(transcript);

  SessionInput input;
  input.code = kDefectivePage;
  auto config = oracle_config(rules::Ruleset::kA, rules::Ruleset::kA);

  gateway::OracleBackend oracle;
  auto direct = run(input, oracle, oracle, config);
  auto direct_again = run(input, oracle, oracle, config);
  CHECK(session_to_json(direct).dump(2) == session_to_json(direct_again).dump(2));

  // record the oracle run, then replay it twice; manifests must match bytes
  gateway::RecordingBackend recorder(oracle, transcript);
  auto recorded = run(input, recorder, recorder, config);

  auto replay1 = gateway::ReplayBackend::from_file(transcript);
  auto replayed1 = run(input, replay1, replay1, config);
  auto replay2 = gateway::ReplayBackend::from_file(transcript);
  auto replayed2 = run(input, replay2, replay2, config);

  auto j1 = session_to_json(replayed1);
  auto j2 = session_to_json(replayed2);
  CHECK(j1.dump(2) == j2.dump(2));

  // backend ids differ between oracle and replay runs; everything else matches
  j1.erase("generator");
  j1.erase("optimizer");
  auto jd = session_to_json(direct);
  jd.erase("generator");
  jd.erase("optimizer");
  CHECK(j1.dump(2) == jd.dump(2));

  fs::remove_all(transcript.parent_path());
}

TEST_CASE("session manifest carries rounds, rates and fingerprints") {
  gateway::OracleBackend oracle;
  SessionInput input;
  input.code = kDefectivePage;
  auto session = run(input, oracle, oracle,
                     oracle_config(rules::Ruleset::kQ, rules::Ruleset::kA));
  auto j = session_to_json(session);

  CHECK(j["optimize_ruleset"] == "Q");
  CHECK(j["eval_ruleset"] == "A");
  CHECK(j["status"] == "converged");
  CHECK(j["initial_rate"].contains("numerator"));
  CHECK(j["final_rate"].contains("rate"));
  CHECK(j["template_hash"].get<std::string>().size() == 16);
  REQUIRE(j["rounds"].is_array());
  REQUIRE(!j["rounds"].empty());
  for (const auto& round : j["rounds"]) {
    CHECK(round.contains("code"));
    CHECK(round.contains("report"));
    CHECK(round["post_hash"].get<std::string>().size() == 16);
    for (const auto& block : round["blocks"])
      CHECK(block["prompt_fingerprint"].get<std::string>().size() == 16);
  }
  // no wall-clock state anywhere in the manifest
  auto flat = j.dump();
  CHECK(flat.find("time") == std::string::npos);
  CHECK(flat.find("date") == std::string::npos);
}

TEST_CASE("run generates from a summary when no code is given") {
  ScriptBackend generator(
      {"```html\n<html><head></head><body><img src=\"cat.png\"></body></html>\n```"});
  gateway::OracleBackend oracle;
  SessionInput input;
  input.summary = "A cat picture page.";
  auto config = oracle_config(rules::Ruleset::kA, rules::Ruleset::kQ);
  auto session = run(input, generator, oracle, config);

  CHECK(session.status == SessionStatus::kConverged);
  CHECK(session.initial_code.find("cat.png") != std::string::npos);
  CHECK(session.final_code.find("alt=\"cat\"") != std::string::npos);
  CHECK(session.generator_id == "script");
  CHECK(session.optimizer_id == "oracle");

  SUBCASE("missing both summary and code is rejected") {
    SessionInput empty;
    CHECK_THROWS_AS(run(empty, generator, oracle, config), ConfigError);
  }
}

TEST_CASE("run_strategy baselines") {
  const auto page = "```html\n<html lang=\"en\"><head><title>t</title></head>"
                    "<body><a href=\"#m\">Skip</a><main id=\"m\">"
                    "<img src=\"dog.png\"></main></body></html>\n```";

  SUBCASE("naive and zero-shot differ only by the compliance instruction") {
    ScriptBackend naive_backend({page});
    ScriptBackend zero_backend({page});
    run_strategy("A dog page.", prompts::Strategy::kNaive, naive_backend,
                 rules::Ruleset::kA, nullptr);
    run_strategy("A dog page.", prompts::Strategy::kZeroShot, zero_backend,
                 rules::Ruleset::kA, nullptr);
    REQUIRE(naive_backend.requests.size() == 1);
    REQUIRE(zero_backend.requests.size() == 1);
    auto naive_sent = collapse_ws(prompt_text(naive_backend.requests[0]));
    auto zero_sent = collapse_ws(prompt_text(zero_backend.requests[0]));
    REQUIRE(zero_sent.find(naive_sent.substr(0, naive_sent.size() - 1)) == 0);
    CHECK(zero_sent.find("Make code compliant with WCAG accessibility rules.") !=
          std::string::npos);
  }
  SUBCASE("the result is scanned under the evaluation ruleset") {
    ScriptBackend backend({page});
    auto result = run_strategy("A dog page.", prompts::Strategy::kNaive, backend,
                               rules::Ruleset::kA, nullptr);
    CHECK(result.code.find("<img") != std::string::npos);
    CHECK(result.rate.numerator == 1);  // the bare img
    CHECK(result.rate.denominator >= 1);
  }
  SUBCASE("few-shot embeds the counterpart catalog exemplars") {
    auto counterpart =
        prompts::ExemplarLibrary::load(kDataDir + "/exemplars", rules::Ruleset::kQ);
    ScriptBackend backend({page});
    run_strategy("A dog page.", prompts::Strategy::kFewShot, backend,
                 rules::Ruleset::kA, &counterpart);
    auto sent = prompt_text(backend.requests[0]);
    CHECK(sent.find("### SubmitBtn") != std::string::npos);
    CHECK(sent.find("### FontSizeCSS") != std::string::npos);

    CHECK_THROWS_AS(run_strategy("A dog page.", prompts::Strategy::kFewShot, backend,
                                 rules::Ruleset::kA, nullptr),
                    ConfigError);
  }
  SUBCASE("self-criticism sends exactly one review round") {
    ScriptBackend backend({page, page});
    auto result = run_strategy("A dog page.", prompts::Strategy::kSelfCriticism,
                               backend, rules::Ruleset::kA, nullptr);
    REQUIRE(backend.requests.size() == 2);
    auto review_sent = prompt_text(backend.requests[1]);
    CHECK(review_sent.find("Review code for WCAG compliance.") != std::string::npos);
    // reviewer returned the code unchanged, so output equals generator output
    CHECK(result.code.find("dog.png") != std::string::npos);
  }
  SUBCASE("feeda11y must go through the loop") {
    ScriptBackend backend({page});
    CHECK_THROWS_AS(run_strategy("A dog page.", prompts::Strategy::kFeedA11y, backend,
                                 rules::Ruleset::kA, nullptr),
                    ConfigError);
  }
}

TEST_CASE("css files refine end to end") {
  std::string css = "p { font-size: 12px; }\n.big { font-size: 24pt; }\n";
  gateway::OracleBackend oracle;
  SessionInput input;
  input.code = css;
  SessionConfig config = oracle_config(rules::Ruleset::kQ, rules::Ruleset::kQ);
  config.path = "styles.css";
  auto session = run(input, oracle, oracle, config);

  CHECK(session.status == SessionStatus::kConverged);
  CHECK(session.final_code.find("px") == std::string::npos);
  CHECK(session.final_code.find("pt") == std::string::npos);
  CHECK(session.final_code.find("rem") != std::string::npos);
  REQUIRE(session.final_rate.rate());
  CHECK(*session.final_rate.rate() == 0.0);
}
