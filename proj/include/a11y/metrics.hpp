#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "a11y/rules.hpp"

namespace a11y::metrics {

struct RuleCount {
  long violating = 0;
  long applicable = 0;
};

// Inaccessibility rate of one document: distinct elements with at least one
// counted finding over distinct elements any rule applied to.
struct RateSummary {
  long numerator = 0;
  long denominator = 0;
  std::map<std::string, RuleCount> per_rule;

  std::optional<double> rate() const {
    if (denominator == 0) return std::nullopt;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

RateSummary summarize(const rules::AccessibilityReport& report);

// Corpus roll-up. mean() averages the defined per-file rates; pooled sums
// numerators and denominators across files.
struct Aggregate {
  int files = 0;
  int rated_files = 0;
  double rate_sum = 0;
  RateSummary pooled;

  std::optional<double> mean() const {
    if (rated_files == 0) return std::nullopt;
    return rate_sum / rated_files;
  }
};

Aggregate aggregate(const std::vector<rules::AccessibilityReport>& reports);

// (current - baseline) / baseline * 100; undefined for a zero baseline.
std::optional<double> percent_change(double baseline, double current);

}  // namespace a11y::metrics
