// lpmln/error.hpp - exception types shared by the library and the CLI.

#ifndef LPMLN_ERROR_HPP
#define LPMLN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpmln {

/// Positioned syntax error from the .lpmln reader. Lines and columns are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Raised when an exhaustive check would have to enumerate more than the
/// configured number of atoms.
class SignatureTooLarge : public std::runtime_error {
 public:
  SignatureTooLarge(std::size_t size, std::size_t cap, const std::string& what)
      : std::runtime_error(what + ": signature has " + std::to_string(size) +
                           " atoms, limit is " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

/// The probability distribution of a program without soft stable models is undefined.
class NoSoftStableModel : public std::runtime_error {
 public:
  NoSoftStableModel() : std::runtime_error("program has no soft stable model") {}
};

/// An interpretation mentions an atom outside the signature it is used with.
class UnknownAtom : public std::runtime_error {
 public:
  explicit UnknownAtom(const std::string& atom)
      : std::runtime_error("unknown atom '" + atom + "'"), atom_(atom) {}

  const std::string& atom() const noexcept { return atom_; }

 private:
  std::string atom_;
};

}  // namespace lpmln

#endif  // LPMLN_ERROR_HPP
