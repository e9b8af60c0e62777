#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace locvar {

/// Base class of everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& what)
        : Error("syntax error at " + std::to_string(position) + ": " + what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(char symbol)
        : Error(std::string("symbol '") + symbol + "' is not in the alphabet"), symbol_(symbol) {}
    char symbol() const noexcept { return symbol_; }

private:
    char symbol_;
};

class ResourceExceeded : public Error {
public:
    using Error::Error;
};

class TagMismatch : public Error {
public:
    using Error::Error;
};

/// A dual map could not be formed because the input morphism is not a homomorphism.
class NonFunctional : public Error {
public:
    using Error::Error;
};

class NotReachable : public Error {
public:
    using Error::Error;
};

class NotRqcClosed : public Error {
public:
    using Error::Error;
};

/// Resource caps shared by every construction. Exceeding one throws ResourceExceeded.
struct Limits {
    std::size_t max_states = 10'000;   // DFA states during compilation and products
    std::size_t max_carrier = 4096;    // elements of any finite algebra or monoid
};

}  // namespace locvar
