#include "permsel/error.hpp"

namespace permsel {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingReflexive: return "missing-reflexive";
    case ErrorKind::UnknownElement: return "unknown-element";
    case ErrorKind::DuplicateEntry: return "duplicate-entry";
    case ErrorKind::MissingEntry: return "missing-entry";
    case ErrorKind::DuplicateElement: return "duplicate-element";
    case ErrorKind::GroundMismatch: return "ground-mismatch";
    case ErrorKind::NotSymmetric: return "not-symmetric";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::NotBijective: return "not-bijective";
    case ErrorKind::InvalidBase: return "invalid-base";
    case ErrorKind::NotEquivalence: return "not-equivalence";
    case ErrorKind::ParseError: return "parse-error";
  }
  return "unknown";
}

}  // namespace permsel
