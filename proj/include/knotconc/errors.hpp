#pragma once

#include <stdexcept>
#include <string>

namespace knotconc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonSymmetricInput : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class InvalidSeifertMatrix : public Error {
 public:
  using Error::Error;
};

// lt_signature evaluated at a root of the Alexander polynomial.
class AtRootOfAlexander : public Error {
 public:
  using Error::Error;
};

// lt_signature evaluated at omega = 1.
class AtOne : public Error {
 public:
  using Error::Error;
};

class NotSquareFree : public Error {
 public:
  using Error::Error;
};

class NotCyclic : public Error {
 public:
  using Error::Error;
};

class MissingSite : public Error {
 public:
  using Error::Error;
};

class UnknownSite : public Error {
 public:
  using Error::Error;
};

class SiteNotSeifertDisjoint : public Error {
 public:
  using Error::Error;
};

class UnsupportedGenus : public Error {
 public:
  using Error::Error;
};

class HypothesisFailed : public Error {
 public:
  HypothesisFailed(std::string which, const std::string& detail)
      : Error("hypothesis failed (" + which + "): " + detail),
        which_(std::move(which)) {}

  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string name, const std::string& reason)
      : Error("validation error for '" + name + "': " + reason),
        name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace knotconc
