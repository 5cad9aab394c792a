#ifndef CBC_ERRORS_HPP
#define CBC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cbc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPrime : Error {
  using Error::Error;
};
struct NotAPGroup : Error {
  using Error::Error;
};
struct OrderCapExceeded : Error {
  using Error::Error;
};
struct NotNormal : Error {
  using Error::Error;
};
struct NotContained : Error {
  using Error::Error;
};
struct NotElementaryAbelian : Error {
  using Error::Error;
};
struct EnumerationCapExceeded : Error {
  using Error::Error;
};
struct PreconditionViolated : Error {
  using Error::Error;
};
struct SelectionExhausted : Error {
  using Error::Error;
};
struct InternalContradiction : Error {
  using Error::Error;
};
struct ClFDiverged : Error {
  using Error::Error;
};
struct TrivialGroup : Error {
  using Error::Error;
};
struct NotUnitriangular : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& reason)
      : Error("parse error at line " + std::to_string(line_) + ": " + reason),
        line(line_) {}
};

}  // namespace cbc

#endif
