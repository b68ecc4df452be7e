#ifndef AUTOLOOP_ERRORS_HPP
#define AUTOLOOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace autoloop {

// Stable machine-readable error codes; the CLI prints them verbatim on stderr.
enum class errc {
    non_prime,
    division_by_zero,
    singular,
    not_irreducible,
    not_latin,
    no_identity,
    not_commuting,
    not_invertible,
    trivial_intersection,
    invalid_param,
    too_large,
    not_tame,
    not_in_s,
    not_iso,
    scalar_matrix,
    not_anisotropic,
    budget_exceeded,
    format_version_unsupported,
    validation_failed,
    usage,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::non_prime: return "NonPrime";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::singular: return "Singular";
        case errc::not_irreducible: return "NotIrreducible";
        case errc::not_latin: return "NotLatin";
        case errc::no_identity: return "NoIdentity";
        case errc::not_commuting: return "NotCommuting";
        case errc::not_invertible: return "NotInvertible";
        case errc::trivial_intersection: return "TrivialIntersection";
        case errc::invalid_param: return "InvalidParam";
        case errc::too_large: return "TooLarge";
        case errc::not_tame: return "NotTame";
        case errc::not_in_s: return "NotInS";
        case errc::not_iso: return "NotIso";
        case errc::scalar_matrix: return "ScalarMatrix";
        case errc::not_anisotropic: return "NotAnisotropic";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::format_version_unsupported: return "FormatVersionUnsupported";
        case errc::validation_failed: return "ValidationFailed";
        case errc::usage: return "Usage";
    }
    return "Unknown";
}

class loop_error : public std::runtime_error {
public:
    loop_error(errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code), detail_(detail) {}

    errc code() const { return code_; }
    const char* code_name() const { return errc_name(code_); }
    const std::string& detail() const { return detail_; }

private:
    errc code_;
    std::string detail_;
};

} // namespace autoloop

#endif
