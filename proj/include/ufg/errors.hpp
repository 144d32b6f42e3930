#pragma once

#include <stdexcept>
#include <string>

namespace ufg {

/// Base class for every error raised by the generator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable tag, used in HTTP error bodies.
  [[nodiscard]] virtual const char* kind() const noexcept { return "error"; }
};

#define UFG_DEFINE_ERROR(Name, Tag)                                     \
  class Name : public Error {                                           \
   public:                                                              \
    using Error::Error;                                                 \
    [[nodiscard]] const char* kind() const noexcept override { return Tag; } \
  };

// Genome has the wrong length, a gene is outside [0,1], or a level file is malformed.
UFG_DEFINE_ERROR(EncodingError, "encoding")
// Selected candidate ids are duplicated or out of range.
UFG_DEFINE_ERROR(SelectionError, "selection")
UFG_DEFINE_ERROR(TrainingError, "training")
// Ray cast or cover query from a non-walkable cell.
UFG_DEFINE_ERROR(DomainError, "domain")
UFG_DEFINE_ERROR(ConfigError, "config")
// Mutation attempted on a finished session.
UFG_DEFINE_ERROR(StateError, "state")
// Human submission on a round owned by the intent agent.
UFG_DEFINE_ERROR(WrongTurnError, "wrong_turn")
UFG_DEFINE_ERROR(NotFoundError, "not_found")

#undef UFG_DEFINE_ERROR

}  // namespace ufg
