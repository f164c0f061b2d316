#pragma once

#include <stdexcept>
#include <string>

namespace chiral {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// det has a zero away from t = 0; carries the offending determinant as text.
struct DetNotUnit : Error {
    std::string det;
    explicit DetNotUnit(std::string d)
        : Error("matrix determinant is not of the form c*t^m: " + d), det(std::move(d)) {}
};

struct NotDualizable : Error {
    std::string det;
    explicit NotDualizable(std::string d)
        : Error("quadratic datum is not dualizable, det = " + d), det(std::move(d)) {}
};

// condition 1: the inner derivation leaks outside the quadratic dual span;
// condition 2: the square of the distinguished section does.
struct NotQlsDualizable : Error {
    int condition;
    explicit NotQlsDualizable(int c, const std::string& detail)
        : Error("QLS datum fails dualizability condition (" + std::to_string(c) + "): " + detail),
          condition(c) {}
};

struct CutoffExceeded : Error {
    explicit CutoffExceeded(const std::string& msg) : Error("weight cutoff exceeded: " + msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

struct InvalidLieData : Error {
    explicit InvalidLieData(const std::string& msg) : Error("invalid Lie data: " + msg) {}
};

struct InvalidPairing : Error {
    explicit InvalidPairing(const std::string& msg) : Error("invalid symplectic pairing: " + msg) {}
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(int l, int c, const std::string& msg)
        : Error("parse error at " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l), column(c) {}
};

}  // namespace chiral
