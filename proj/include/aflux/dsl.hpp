#pragma once

#include <string>

#include "aflux/filter.hpp"

namespace aflux {

// Parses the CLI's infix filter language into a FilterExpr.
//
//   expr  := and ('|' and)*
//   and   := unary ('&' unary)*
//   unary := '~' unary | '(' expr ')' | NAME op operand
//   op    := '>' | '<' | '==' | '%'
//
// Numbers are written bare, strings double-quoted. Syntax problems raise
// ParseError with the byte offset of the offending token.
FilterExpr parse_filter_dsl(const std::string& text);

}  // namespace aflux
