#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace astrid::judge {

// Contiguous spans over the input; concatenating them reproduces the input
// byte for byte. Abbreviations ("e.g.", "Dr.") and decimal numbers do not
// end a span.
std::vector<std::string> split_sentence_spans(std::string_view text);

// Trimmed non-empty sentences, in order. Whitespace-only input -> empty.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace astrid::judge
