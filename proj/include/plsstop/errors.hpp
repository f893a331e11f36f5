#ifndef PLSSTOP_ERRORS_HPP
#define PLSSTOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plsstop {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad caller input: out-of-range sizes, incompatible options, etc.
struct InvalidArgs : Error {
    explicit InvalidArgs(const std::string& msg) : Error(msg) {}
};

// Mismatched matrix/vector dimensions between model and data.
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// A column has (numerically) zero variance and cannot be standardized.
struct ZeroVarianceColumn : Error {
    int column;  // 0-based column index
    explicit ZeroVarianceColumn(int col)
        : Error("column " + std::to_string(col) + " has zero variance"),
          column(col) {}
};

// Design matrix is rank deficient where a unique solve is required.
struct SingularDesign : Error {
    explicit SingularDesign(const std::string& msg) : Error(msg) {}
};

// A cross-validation training fold cannot support the requested k.
struct FoldTooSmall : Error {
    explicit FoldTooSmall(const std::string& msg) : Error(msg) {}
};

// Normalizing constant of a ratio is zero (e.g. constant response).
struct ZeroDenominator : Error {
    explicit ZeroDenominator(const std::string& msg) : Error(msg) {}
};

// Both samples of a two-sample test are constant: no test possible.
struct DegenerateVariances : Error {
    explicit DegenerateVariances(const std::string& msg) : Error(msg) {}
};

// Malformed input file; carries the 1-based line number when known.
struct ParseError : Error {
    int line;  // 1-based; 0 when not line-specific
    ParseError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg
                            : msg),
          line(line_no) {}
};

}  // namespace plsstop

#endif
