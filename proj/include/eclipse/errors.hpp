#pragma once

#include <stdexcept>
#include <string>

namespace eclipse {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad parameters or shape mismatches.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// File reading/writing problems.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// PNG/JPEG encode or decode failure.
class CodecError : public Error {
 public:
  explicit CodecError(const std::string& what) : Error(what) {}
};

// Remote oracle could not be reached (connection, timeout).
class TransportError : public Error {
 public:
  explicit TransportError(const std::string& what) : Error(what) {}
};

// Remote oracle answered with a non-success HTTP status.
class HttpStatusError : public TransportError {
 public:
  HttpStatusError(int status, const std::string& what)
      : TransportError(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Remote oracle answered but the payload violates the wire contract.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(what) {}
};

}  // namespace eclipse
