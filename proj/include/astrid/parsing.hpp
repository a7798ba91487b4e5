#pragma once

#include <optional>
#include <string>
#include <vector>

namespace astrid::judge {

struct VerdictEntry {
  std::string statement;
  std::string explanation;
  bool supported = false;
};

// Per-statement grounding verdicts; entry count always equals the input
// statement count, verdicts are parsed, never defaulted.
struct VerdictSet {
  std::vector<VerdictEntry> entries;

  int supported_count() const;
};

// Partition of answer sentences. The three lists are disjoint and together
// cover every input sentence (exact-string match after trim).
struct SentenceClassification {
  std::vector<std::string> acknowledgements;
  std::vector<std::string> questions;
  std::vector<std::string> informative;
};

// All parsers throw JudgeError on malformed replies; they never abort.

VerdictSet parse_grounding_reply(const std::string& reply,
                                 const std::vector<std::string>& statements);

SentenceClassification parse_categories_reply(const std::string& reply,
                                              const std::vector<std::string>& sentences);

// Final `Output:` boolean of the refusal schema; True = refused.
bool parse_refusal_reply(const std::string& reply);

// [[Yes]]/[[No]] tokens, case-insensitive; the last token decides.
bool parse_context_relevance_reply(const std::string& reply);

// Numbered ("1." / "1)") or dashed list items.
std::vector<std::string> parse_listed_items(const std::string& reply);

// First balanced {...} object in free text, string- and escape-aware.
std::optional<std::string> extract_json_object(const std::string& text);

}  // namespace astrid::judge
