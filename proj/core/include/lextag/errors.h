#ifndef LEXTAG_ERRORS_H_
#define LEXTAG_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lextag {

// Base class for every fault raised by the library. Unification failure is
// not a fault and never travels through exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable resource file.
class LoadError : public Error {
 public:
  using Error::Error;
};

// A feature structure nested deeper than the configured limit.
class DepthLimitError : public Error {
 public:
  using Error::Error;
};

// subsumes() called on a structure that still contains variables.
class NonGroundError : public Error {
 public:
  using Error::Error;
};

// Gorn address that does not name a node.
class AddressError : public Error {
 public:
  using Error::Error;
};

// A tree operation applied where the grammar does not allow it (wrong node
// kind, category mismatch, double adjunction, unfilled slot, ...).
class OperationError : public Error {
 public:
  using Error::Error;
};

// Lexicon-level inconsistency discovered while anchoring.
class AnchorError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class UnknownTokenError : public Error {
 public:
  UnknownTokenError(std::size_t position, std::string token)
      : Error("unknown token '" + token + "' at position " +
              std::to_string(position)),
        position_(position),
        token_(std::move(token)) {}

  std::size_t position() const { return position_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t position_;
  std::string token_;
};

// Transfer table cannot map a derivation (missing link, unknown lemma,
// empty candidate set).
class TransferError : public Error {
 public:
  using Error::Error;
};

// Candidate expansion would exceed the configured cap.
class ExpansionLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace lextag

#endif  // LEXTAG_ERRORS_H_
