#pragma once

#include <stdexcept>
#include <string>

namespace augequiv {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (CSV rows, config files).
class ParseError : public Error {
public:
    using Error::Error;
};

// Valid syntax but unusable data: unknown fixture, missing rows, too few points.
class DataError : public Error {
public:
    using Error::Error;
};

// Bad configuration value or unknown key.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Numerical failure: singular design matrix, diverged optimization.
class FitError : public Error {
public:
    using Error::Error;
};

// Root solving failed structurally (non-monotone surface over the bracket).
class SolveError : public Error {
public:
    using Error::Error;
};

// Unrenderable drawing request (empty contours, degenerate axes).
class RenderError : public Error {
public:
    using Error::Error;
};

}  // namespace augequiv
