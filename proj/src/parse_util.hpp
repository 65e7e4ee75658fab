// Helpers shared by the formula parser and the JSON file formats.
#pragma once

#include <string>
#include <string_view>

#include "sortlogic/parser.hpp"

namespace sortlogic::detail {

inline SourceSpan span_at(std::string_view text, std::size_t start, std::size_t end) {
  start = std::min(start, text.size());
  end = std::max(start, std::min(end, text.size()));
  SourceSpan s{start, end, 1, 1};
  for (std::size_t i = 0; i < start; ++i) {
    if (text[i] == '\n') {
      ++s.line;
      s.column = 1;
    } else {
      ++s.column;
    }
  }
  return s;
}

inline ParseError make_error(std::string_view text, std::size_t start, std::size_t end, ParseError::Kind kind,
                             std::string message) {
  return ParseError{span_at(text, start, end), kind, std::move(message)};
}

/// Parses a formula located at `offset` inside a larger `text`; spans in
/// errors refer to `text`.
ParseResult<Formula> parse_formula_at(std::string_view text, std::size_t offset, std::size_t length,
                                      const Vocabulary& voc);

}  // namespace sortlogic::detail
