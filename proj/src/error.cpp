#include "cqa/error.hpp"

namespace cqa {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
      line_(line),
      column_(column) {}

}  // namespace cqa
