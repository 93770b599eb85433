#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgp {

// Every failure raised by the toolkit carries the name of the module that
// produced it. The CLI turns this into "error[<module>]: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

class ParseError : public Error {
 public:
  ParseError(std::string module, std::size_t line, const std::string& message)
      : Error(std::move(module), "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Invalid UTF-8 or unreadable input during ingestion.
class IngestError : public Error {
 public:
  IngestError(const std::string& message, std::size_t byte_offset)
      : Error("ingest", message + " at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Raised when writing records fails part-way; reports how many records made it.
class EmitError : public Error {
 public:
  EmitError(const std::string& message, std::size_t written)
      : Error("masker", message + " (" + std::to_string(written) +
                            " records written before failure)"),
        written_(written) {}

  std::size_t written() const noexcept { return written_; }

 private:
  std::size_t written_;
};

}  // namespace lgp
