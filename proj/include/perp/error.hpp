#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perp {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed ring, module or polynomial text. `position` is a 0-based column.
class ParseError : public Error
{
public:
  ParseError(std::string const &message, std::size_t position)
      : Error(message + " (at column " + std::to_string(position + 1) + ")"), position_(position)
  {
  }
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Well-formed input that names an invalid object (composite characteristic, reducible modulus, ...).
class SpecError : public Error
{
public:
  using Error::Error;
};

class GuardExceeded : public Error
{
public:
  using Error::Error;
};

class Timeout : public GuardExceeded
{
public:
  using GuardExceeded::GuardExceeded;
};

class PreconditionError : public Error
{
public:
  using Error::Error;
};

/// Operands belong to different modules or sides.
class MismatchError : public Error
{
public:
  using Error::Error;
};

/// A computed identity that must hold unconditionally did not.
class InternalError : public Error
{
public:
  using Error::Error;
};

} // namespace perp
