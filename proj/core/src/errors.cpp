#include "rankstat/errors.hpp"

#include <utility>

namespace rankstat {

DuplicateIdError::DuplicateIdError(std::string id, std::size_t line)
    : Error(line == 0 ? "duplicate institution id '" + id + "'"
                      : "line " + std::to_string(line) + ": duplicate institution id '" + id + "'"),
      id_(std::move(id)),
      line_(line) {}

ParseError::ParseError(std::size_t line, std::string field, const std::string& what)
    : Error("line " + std::to_string(line) + ", field '" + field + "': " + what),
      line_(line),
      field_(std::move(field)) {}

}  // namespace rankstat
