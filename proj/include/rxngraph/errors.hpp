#ifndef RXNGRAPH_ERRORS_HPP
#define RXNGRAPH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rxn {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// SMILES / record text that does not match the grammar. `offset` is the byte
// position in the input where parsing failed.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string &msg, std::size_t offset)
      : Error(msg + " (offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// Grammar we recognise but refuse to interpret (stereo markers, isotopes).
class UnsupportedFeature : public Error {
public:
  UnsupportedFeature(const std::string &msg, const std::string &token)
      : Error(msg + ": '" + token + "'"), token_(token) {}
  const std::string &token() const { return token_; }

private:
  std::string token_;
};

class NoMappingError : public Error {
public:
  explicit NoMappingError(const std::string &msg) : Error(msg) {}
};

class RadiusTooLarge : public Error {
public:
  explicit RadiusTooLarge(const std::string &msg) : Error(msg) {}
};

class VariantMismatch : public Error {
public:
  explicit VariantMismatch(const std::string &msg) : Error(msg) {}
};

class UnknownNode : public Error {
public:
  explicit UnknownNode(const std::string &msg) : Error(msg) {}
};

class UnknownMolecule : public Error {
public:
  explicit UnknownMolecule(const std::string &msg) : Error(msg) {}
};

class EmptyInput : public Error {
public:
  explicit EmptyInput(const std::string &msg) : Error(msg) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string &msg) : Error(msg) {}
};

class FormatVersionError : public Error {
public:
  explicit FormatVersionError(const std::string &msg) : Error(msg) {}
};

class ChecksumError : public Error {
public:
  explicit ChecksumError(const std::string &msg) : Error(msg) {}
};

class OddLength : public Error {
public:
  explicit OddLength(const std::string &msg) : Error(msg) {}
};

class NotAReactant : public Error {
public:
  explicit NotAReactant(const std::string &msg) : Error(msg) {}
};

class NotBinary : public Error {
public:
  explicit NotBinary(const std::string &msg) : Error(msg) {}
};

class NotComplementary : public Error {
public:
  explicit NotComplementary(const std::string &msg) : Error(msg) {}
};

class ValenceOverflow : public Error {
public:
  explicit ValenceOverflow(const std::string &msg) : Error(msg) {}
};

} // namespace rxn

#endif
