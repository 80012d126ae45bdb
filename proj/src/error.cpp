#include "covol/error.hpp"

namespace covol {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DomainError: return "DOMAIN_ERROR";
    case Errc::EvenDiscriminant: return "EVEN_DISCRIMINANT";
    case Errc::NotSquarefree: return "NOT_SQUAREFREE";
    case Errc::Degenerate: return "DEGENERATE";
    case Errc::FieldMismatch: return "FIELD_MISMATCH";
    case Errc::ParseError: return "PARSE_ERROR";
    case Errc::InvariantViolation: return "INVARIANT_VIOLATION";
    case Errc::ZeroElement: return "ZERO_ELEMENT";
    case Errc::OddSymplecticRank: return "ODD_SYMPLECTIC_RANK";
    case Errc::IndexNotRelevant: return "INDEX_NOT_RELEVANT";
    case Errc::NotSignature1N: return "NOT_SIGNATURE_1N";
    case Errc::RationalityViolation: return "RATIONALITY_VIOLATION";
    case Errc::ExampleMismatch: return "EXAMPLE_MISMATCH";
    case Errc::UndecidedComparison: return "UNDECIDED_COMPARISON";
  }
  return "UNKNOWN";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace covol
