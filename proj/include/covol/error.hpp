#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covol {

enum class Errc {
  DomainError,
  EvenDiscriminant,
  NotSquarefree,
  Degenerate,
  FieldMismatch,
  ParseError,
  InvariantViolation,
  ZeroElement,
  OddSymplecticRank,
  IndexNotRelevant,
  NotSignature1N,
  RationalityViolation,
  ExampleMismatch,
  UndecidedComparison,
};

std::string_view errc_name(Errc code);

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace covol
