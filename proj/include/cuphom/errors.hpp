#pragma once

#include <stdexcept>
#include <string>

namespace cuphom {

// Exit-code contract used by the CLI: 2 = parse, 3 = semantic, 4 = relation.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SemanticError : std::runtime_error {
    explicit SemanticError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RelationError : std::runtime_error {
    explicit RelationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cuphom
