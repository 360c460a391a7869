#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace flametemp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied values was violated.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Malformed thermo text. `line()` is 1-based, 0 when no line applies.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    int line() const noexcept { return line_; }

private:
    int line_;
};

class DuplicateSpecies : public ParseError {
public:
    DuplicateSpecies(const std::string& name, int line)
        : ParseError("duplicate species '" + name + "'", line), name_(name)
    {
    }
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class SerializeError : public Error {
public:
    using Error::Error;
};

class PatchError : public Error {
public:
    using Error::Error;
};

/// Thermodynamic evaluation at a non-physical temperature.
class DomainError : public Error {
public:
    using Error::Error;
};

class UnknownSpecies : public Error {
public:
    explicit UnknownSpecies(const std::string& name)
        : Error("unknown species '" + name + "'"), name_(name)
    {
    }
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class UnsupportedFuel : public Error {
public:
    using Error::Error;
};

class RichMixtureError : public Error {
public:
    using Error::Error;
};

/// Root solver could not find a sign change on its bracket.
class NoBracket : public Error {
public:
    NoBracket(const std::string& what, double lo, double hi) : Error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

class NoConvergence : public Error {
public:
    struct Diagnostics {
        int iterations = 0;
        double worst_residual = 0.0;
        std::string worst_item;
        double bracket_lo = 0.0;
        double bracket_hi = 0.0;
    };

    NoConvergence(const std::string& what, Diagnostics diag) : Error(what), diag_(std::move(diag)) {}
    const Diagnostics& diagnostics() const noexcept { return diag_; }

private:
    Diagnostics diag_;
};

class NoCandidates : public Error {
public:
    using Error::Error;
};

/// The element/species matrix of an equilibrium problem is rank deficient.
class SingularSystem : public Error {
public:
    SingularSystem(const std::string& what, std::vector<std::string> elements)
        : Error(what), elements_(std::move(elements))
    {
    }
    const std::vector<std::string>& elements() const noexcept { return elements_; }

private:
    std::vector<std::string> elements_;
};

} // namespace flametemp
