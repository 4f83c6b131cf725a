#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace overrank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  /// Printed sub-expression that was being evaluated, when raised from expression evaluation.
  const std::string& context() const noexcept { return context_; }
  void set_context(std::string c) { context_ = std::move(c); }

 private:
  std::string context_;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in cyclotomic field") {}
};

/// A combined cyclotomic level exceeded the configured cap.
class LevelOverflow : public Error {
 public:
  LevelOverflow(long level, long cap)
      : Error("cyclotomic level " + std::to_string(level) + " exceeds cap " + std::to_string(cap)),
        level_(level) {}
  long level() const noexcept { return level_; }

 private:
  long level_;
};

class ExponentOverflow : public Error {
 public:
  ExponentOverflow() : Error("q-exponent arithmetic overflowed") {}
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A theta factor or an Appell-Lerch denominator vanishes identically.
class PoleError : public Error {
 public:
  explicit PoleError(std::string factor) : Error("pole: " + factor), factor_(std::move(factor)) {}
  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

class GenericSearchExhausted : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Enumeration and closed-form series disagree on the certified range.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::string message, std::size_t offset, int line, int column, std::vector<std::string> expected)
      : Error(format(message, line, column, expected)),
        offset_(offset),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(const std::string& message, int line, int column,
                            const std::vector<std::string>& expected) {
    std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
      s += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) s += ", ";
        s += expected[i];
      }
      s += ")";
    }
    return s;
  }

  std::size_t offset_;
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace overrank
