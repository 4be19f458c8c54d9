#pragma once

#include <stdexcept>
#include <string>

namespace pocketgrip {

/// A parameter object violates one of its invariants. `field()` names the
/// offending member so loaders can point at the right configuration key.
class InvalidParameter : public std::invalid_argument {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace pocketgrip
