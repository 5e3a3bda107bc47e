#pragma once

#include <stdexcept>
#include <string>

namespace compoly {

// Every domain failure the library can signal. CLI maps these to exit code 1
// (UsageError to exit code 2); tests match on the code rather than the text.
enum class Errc {
    NoSuchRoot,
    BadFieldMismatch,
    ZeroInput,
    NotFiniteField,
    InseparableInput,
    NotInMh,
    RootOutsideField,
    CharTooSmall,
    ZeroRoot,
    SearchBudgetExceeded,
    NotCoprime,
    DegreeBoundExceeded,
    NotMember,
    ConstantTermNonzero,
    NonpositiveValuation,
    CharDividesDenominator,
    BadRootOrder,
    SyntaxError,
    NonPolynomial,
    ZeroElement,
    UsageError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NoSuchRoot: return "NoSuchRoot";
        case Errc::BadFieldMismatch: return "BadFieldMismatch";
        case Errc::ZeroInput: return "ZeroInput";
        case Errc::NotFiniteField: return "NotFiniteField";
        case Errc::InseparableInput: return "InseparableInput";
        case Errc::NotInMh: return "NotInMh";
        case Errc::RootOutsideField: return "RootOutsideField";
        case Errc::CharTooSmall: return "CharTooSmall";
        case Errc::ZeroRoot: return "ZeroRoot";
        case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::DegreeBoundExceeded: return "DegreeBoundExceeded";
        case Errc::NotMember: return "NotMember";
        case Errc::ConstantTermNonzero: return "ConstantTermNonzero";
        case Errc::NonpositiveValuation: return "NonpositiveValuation";
        case Errc::CharDividesDenominator: return "CharDividesDenominator";
        case Errc::BadRootOrder: return "BadRootOrder";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::NonPolynomial: return "NonPolynomial";
        case Errc::ZeroElement: return "ZeroElement";
        case Errc::UsageError: return "UsageError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace compoly
