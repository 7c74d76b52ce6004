#pragma once

#include <stdexcept>
#include <string>

namespace orefrac {

enum class errc {
    division_by_zero,
    both_zero,
    zero_argument,
    zero_denominator,
    inverse_of_zero,
    shape_mismatch,
    not_square,
    degenerate_matrix,
    not_invertible,
    not_same_fraction,
    non_exact_division,
    invalid_kernel_vector,
    syntax_error,
    undefined_symbol,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::division_by_zero: return "DivisionByZero";
        case errc::both_zero: return "BothZero";
        case errc::zero_argument: return "ZeroArgument";
        case errc::zero_denominator: return "ZeroDenominator";
        case errc::inverse_of_zero: return "InverseOfZero";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::not_square: return "NotSquare";
        case errc::degenerate_matrix: return "DegenerateMatrix";
        case errc::not_invertible: return "NotInvertible";
        case errc::not_same_fraction: return "NotSameFraction";
        case errc::non_exact_division: return "NonExactDivision";
        case errc::invalid_kernel_vector: return "InvalidKernelVector";
        case errc::syntax_error: return "SyntaxError";
        case errc::undefined_symbol: return "UndefinedSymbol";
    }
    return "UnknownError";
}

/// Domain error thrown by library operations. `module_name` names the
/// component the error originated in so the CLI can report it.
class OreError : public std::runtime_error {
public:
    OreError(errc code, std::string module_name, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + " in " + module_name + ": " + what),
          code_(code),
          module_(std::move(module_name)) {}

    errc code() const noexcept { return code_; }
    const std::string& module_name() const noexcept { return module_; }

private:
    errc code_;
    std::string module_;
};

/// Parse error with source position (1-based line/column).
class SyntaxError : public OreError {
public:
    SyntaxError(errc code, int line, int column, const std::string& what)
        : OreError(code, "cli",
                   "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace orefrac
