#pragma once

#include "gsm/core/error.hpp"

namespace gsm {

/// Base for malformed file contents. Messages carry the line or byte position.
class FormatError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class MagicMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Header count disagrees with the records present.
class CountMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

class NonFiniteValue : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedPayload : public FormatError {
 public:
  using FormatError::FormatError;
};

class TrailingData : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Unparseable token, unknown key or bad header field.
class ParseError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// File could not be opened, read or written.
class IoError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

}  // namespace gsm
