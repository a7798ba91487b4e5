#include "astrid/sentences.hpp"

#include <cctype>
#include <set>

#include "astrid/util.hpp"

namespace astrid::judge {

namespace {

bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

bool is_opener(char c) {
  return c == '"' || c == '\'' || c == '(' || c == '[';
}

// Abbreviations that never end a sentence. Lowercased, without the final dot;
// interior dots kept ("e.g" matches "e.g.").
const std::set<std::string>& abbreviations() {
  static const std::set<std::string> kAbbrev = {
      "e.g", "i.e", "etc", "vs", "dr", "mr", "mrs", "ms",
      "prof", "fig", "approx", "dept", "vol", "est"};
  return kAbbrev;
}

// Word immediately before position `dot` made of letters and interior dots.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t end = dot;
  std::size_t begin = end;
  while (begin > 0) {
    char c = text[begin - 1];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '.') {
      --begin;
    } else {
      break;
    }
  }
  return std::string(text.substr(begin, end - begin));
}

bool dot_is_boundary(std::string_view text, std::size_t i) {
  // Only the final dot of a run ("...") is a candidate.
  if (i + 1 < text.size() && text[i + 1] == '.') return false;

  std::string word = astrid::util::to_lower(word_before(text, i));
  if (!word.empty()) {
    while (!word.empty() && word.front() == '.') word.erase(word.begin());
    if (abbreviations().count(word)) return false;
    // Single-letter initials: "J. Smith".
    if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(text[i - 1])) &&
        std::isupper(static_cast<unsigned char>(text[i - 1]))) {
      return false;
    }
    // "no. 3" style numbering.
    if (word == "no") {
      std::size_t j = i + 1;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) return false;
    }
  }

  // The next sentence must start with something sentence-like; a lowercase
  // continuation marks an abbreviation we do not know about.
  std::size_t j = i + 1;
  while (j < text.size() && is_closer(text[j])) ++j;
  while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
  if (j >= text.size()) return true;
  char next = text[j];
  return std::isupper(static_cast<unsigned char>(next)) ||
         std::isdigit(static_cast<unsigned char>(next)) || is_opener(next);
}

}  // namespace

std::vector<std::string> split_sentence_spans(std::string_view text) {
  std::vector<std::string> spans;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;

    std::size_t end = i + 1;
    while (end < text.size() && (text[end] == '!' || text[end] == '?')) ++end;
    std::size_t after_closers = end;
    while (after_closers < text.size() && is_closer(text[after_closers])) ++after_closers;

    // Terminator must be followed by whitespace or end of text; this also
    // keeps decimal numbers ("0.5") intact.
    if (after_closers < text.size() &&
        !std::isspace(static_cast<unsigned char>(text[after_closers]))) {
      i = end - 1;
      continue;
    }
    if (c == '.' && !dot_is_boundary(text, i)) {
      i = end - 1;
      continue;
    }

    // Swallow trailing whitespace into the finished span so that spans
    // concatenate back to the original text.
    std::size_t span_end = after_closers;
    while (span_end < text.size() && std::isspace(static_cast<unsigned char>(text[span_end]))) {
      ++span_end;
    }
    spans.emplace_back(text.substr(start, span_end - start));
    start = span_end;
    i = span_end == 0 ? 0 : span_end - 1;
  }
  if (start < text.size()) {
    spans.emplace_back(text.substr(start));
  }
  return spans;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  for (const std::string& span : split_sentence_spans(text)) {
    std::string trimmed = util::trim(span);
    if (!trimmed.empty()) sentences.push_back(std::move(trimmed));
  }
  return sentences;
}

}  // namespace astrid::judge
