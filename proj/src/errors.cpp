#include "finsler/errors.hpp"

namespace finsler {

SyntaxError::SyntaxError(const std::string& what, std::size_t offset)
    : Error("syntax error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

UnknownIdentifier::UnknownIdentifier(const std::string& name, std::size_t offset)
    : Error("unknown identifier '" + name + "' at byte " + std::to_string(offset)),
      name_(name),
      offset_(offset) {}

}  // namespace finsler
