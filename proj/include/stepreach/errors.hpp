#pragma once

#include <stdexcept>
#include <string>

namespace stepreach {

// Malformed JSON input.
class SyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a model or configuration rule.  The
// message starts with the document path of the offending element.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class UnboundedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by postC when the initial set misses the location invariant.
class EmptyInitialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Explicit product construction refused because it would exceed the cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stepreach
