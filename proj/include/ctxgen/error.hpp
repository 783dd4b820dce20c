#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctxgen {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed resource or input file. `location` is a 1-based line number or a
// byte offset, depending on the format; see location_kind().
class ParseError : public Error {
 public:
  enum class Where { Line, ByteOffset };

  ParseError(std::string path, Where where, std::size_t location, const std::string& what)
      : Error(path + (where == Where::Line ? ":" : ":@") + std::to_string(location) + ": " + what),
        path_(std::move(path)),
        where_(where),
        location_(location) {}

  const std::string& path() const noexcept { return path_; }
  Where location_kind() const noexcept { return where_; }
  std::size_t location() const noexcept { return location_; }

 private:
  std::string path_;
  Where where_;
  std::size_t location_;
};

// A resource could not be opened or is semantically incomplete.
class ResourceError : public Error {
 public:
  ResourceError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Caller handed in a value outside an operation's domain.
class InputError : public Error {
 public:
  using Error::Error;
};

// Summarizer backend unreachable or failing after retries.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, int attempts)
      : Error(what + " (after " + std::to_string(attempts) + " attempt" + (attempts == 1 ? "" : "s") + ")"),
        attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

// Summarizer answered, but the answer breaks the wire contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxgen
