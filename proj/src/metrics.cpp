#include "a11y/metrics.hpp"

#include <set>

namespace a11y::metrics {

RateSummary summarize(const rules::AccessibilityReport& report) {
  RateSummary summary;
  summary.numerator = static_cast<long>(report.violating_keys().size());
  summary.denominator = static_cast<long>(report.applicable_keys().size());

  std::map<std::string, std::set<long>> violating_by_rule;
  for (const auto& f : report.findings) {
    if (report.counted(f)) violating_by_rule[f.rule_id].insert(f.key);
  }
  for (const auto& [rule_id, keys] : report.census) {
    auto& count = summary.per_rule[rule_id];
    count.applicable = static_cast<long>(keys.size());
    auto hit = violating_by_rule.find(rule_id);
    count.violating = hit == violating_by_rule.end() ? 0 : static_cast<long>(hit->second.size());
  }
  return summary;
}

Aggregate aggregate(const std::vector<rules::AccessibilityReport>& reports) {
  Aggregate out;
  for (const auto& report : reports) {
    ++out.files;
    RateSummary summary = summarize(report);
    out.pooled.numerator += summary.numerator;
    out.pooled.denominator += summary.denominator;
    for (const auto& [rule_id, count] : summary.per_rule) {
      out.pooled.per_rule[rule_id].violating += count.violating;
      out.pooled.per_rule[rule_id].applicable += count.applicable;
    }
    if (auto rate = summary.rate()) {
      ++out.rated_files;
      out.rate_sum += *rate;
    }
  }
  return out;
}

std::optional<double> percent_change(double baseline, double current) {
  if (baseline == 0) return std::nullopt;
  return (current - baseline) / baseline * 100.0;
}

}  // namespace a11y::metrics
