#pragma once

#include <stdexcept>
#include <string>

namespace juniper {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A prime table was asked about numbers beyond its limit.
class TableTooSmall : public Error {
 public:
  using Error::Error;
};

class IllegalMove : public Error {
 public:
  explicit IllegalMove(int number)
      : Error("illegal move: " + std::to_string(number)), number_(number) {}
  int number() const noexcept { return number_; }

 private:
  int number_;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

// JG-1 has no legal (even) first move, so it has no G/P value.
class UndefinedGame : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace juniper
