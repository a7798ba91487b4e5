#include "astrid/parsing.hpp"

#include <cctype>
#include <map>
#include <regex>

#include "json.hpp"

#include "astrid/error.hpp"
#include "astrid/util.hpp"

namespace astrid::judge {

namespace {

using nlohmann::json;

// "Yes." / "NO," / "true" -> boolean; anything else -> nullopt.
std::optional<bool> parse_bool_token(std::string token) {
  while (!token.empty() &&
         (std::ispunct(static_cast<unsigned char>(token.back())) ||
          std::isspace(static_cast<unsigned char>(token.back())))) {
    token.pop_back();
  }
  token = util::to_lower(util::trim(token));
  if (token == "yes" || token == "true") return true;
  if (token == "no" || token == "false") return false;
  return std::nullopt;
}

const std::regex& verdict_line_re() {
  static const std::regex re(R"(^\s*(?:\d+[.):]\s*)?verdict\s*:\s*(.*)$)",
                             std::regex::icase);
  return re;
}

const std::regex& explanation_line_re() {
  static const std::regex re(R"(^\s*explanation\s*:\s*(.*)$)", std::regex::icase);
  return re;
}

const std::regex& output_line_re() {
  static const std::regex re(R"(^\s*output\s*:\s*(.*)$)", std::regex::icase);
  return re;
}

}  // namespace

int VerdictSet::supported_count() const {
  int n = 0;
  for (const VerdictEntry& e : entries) n += e.supported ? 1 : 0;
  return n;
}

VerdictSet parse_grounding_reply(const std::string& reply,
                                 const std::vector<std::string>& statements) {
  std::vector<bool> verdicts;
  std::vector<std::string> explanations;
  std::string pending_explanation;

  for (const std::string& line : util::split_lines(reply)) {
    std::smatch m;
    if (std::regex_match(line, m, verdict_line_re())) {
      auto v = parse_bool_token(m[1].str());
      if (!v) {
        throw JudgeError("unparseable verdict token '" + util::trim(m[1].str()) +
                         "' at statement " + std::to_string(verdicts.size() + 1));
      }
      verdicts.push_back(*v);
      explanations.push_back(util::trim(pending_explanation));
      pending_explanation.clear();
    } else if (std::regex_match(line, m, explanation_line_re())) {
      pending_explanation = m[1].str();
    } else if (!pending_explanation.empty() && !util::trim(line).empty()) {
      // Continuation of a multi-line explanation.
      pending_explanation += " " + util::trim(line);
    }
  }

  if (verdicts.size() != statements.size()) {
    throw JudgeError("expected " + std::to_string(statements.size()) +
                     " verdicts, parsed " + std::to_string(verdicts.size()));
  }
  VerdictSet set;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    set.entries.push_back({statements[i], explanations[i], verdicts[i]});
  }
  return set;
}

std::optional<std::string> extract_json_object(const std::string& text) {
  std::size_t start = text.find('{');
  if (start == std::string::npos) return std::nullopt;
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
    } else if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      --depth;
      if (depth == 0) return text.substr(start, i - start + 1);
    }
  }
  return std::nullopt;
}

SentenceClassification parse_categories_reply(const std::string& reply,
                                              const std::vector<std::string>& sentences) {
  auto object_text = extract_json_object(reply);
  if (!object_text) throw JudgeError("no JSON object found in reply");
  json j;
  try {
    j = json::parse(*object_text);
  } catch (const json::exception& e) {
    throw JudgeError(std::string("malformed JSON in reply: ") + e.what());
  }

  static const char* kKeys[] = {"ACKNOWLEDGEMENTS", "QUESTIONS", "CONTAINING_INFORMATION"};
  for (const char* key : kKeys) {
    if (!j.contains(key) || !j.at(key).is_array()) {
      throw JudgeError(std::string("reply object is missing list key '") + key + "'");
    }
  }

  // Every input sentence must land in exactly one category.
  std::map<std::string, int> remaining;
  for (const std::string& s : sentences) remaining[util::trim(s)] += 1;

  SentenceClassification out;
  auto take = [&](const json& arr, std::vector<std::string>& dest, const char* key) {
    for (const auto& item : arr) {
      if (!item.is_string()) {
        throw JudgeError(std::string("non-string entry under '") + key + "'");
      }
      std::string s = util::trim(item.get<std::string>());
      auto it = remaining.find(s);
      if (it == remaining.end() || it->second == 0) {
        throw JudgeError("sentence not in input (or listed twice): \"" + s + "\"");
      }
      it->second -= 1;
      dest.push_back(s);
    }
  };
  take(j.at("ACKNOWLEDGEMENTS"), out.acknowledgements, "ACKNOWLEDGEMENTS");
  take(j.at("QUESTIONS"), out.questions, "QUESTIONS");
  take(j.at("CONTAINING_INFORMATION"), out.informative, "CONTAINING_INFORMATION");

  for (const auto& [sentence, count] : remaining) {
    if (count > 0) {
      throw JudgeError("sentence missing from all categories: \"" + sentence + "\"");
    }
  }
  return out;
}

bool parse_refusal_reply(const std::string& reply) {
  std::optional<bool> last;
  for (const std::string& line : util::split_lines(reply)) {
    std::smatch m;
    if (std::regex_match(line, m, output_line_re())) {
      auto v = parse_bool_token(m[1].str());
      if (v) last = v;
    }
  }
  if (!last) throw JudgeError("no parseable 'Output:' boolean in reply");
  return *last;
}

bool parse_context_relevance_reply(const std::string& reply) {
  std::string lower = util::to_lower(reply);
  std::size_t yes = lower.rfind("[[yes]]");
  std::size_t no = lower.rfind("[[no]]");
  if (yes == std::string::npos && no == std::string::npos) {
    throw JudgeError("neither [[Yes]] nor [[No]] found in reply");
  }
  if (yes == std::string::npos) return false;
  if (no == std::string::npos) return true;
  return yes > no;
}

std::vector<std::string> parse_listed_items(const std::string& reply) {
  static const std::regex item_re(R"(^\s*(?:\d+[.)]|-)\s+(.*\S)\s*$)");
  std::vector<std::string> items;
  for (const std::string& line : util::split_lines(reply)) {
    std::smatch m;
    if (std::regex_match(line, m, item_re)) {
      items.push_back(m[1].str());
    }
  }
  return items;
}

}  // namespace astrid::judge
