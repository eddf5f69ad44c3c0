#ifndef DRINFELD_ERROR_HPP
#define DRINFELD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace drinfeld {

enum class Errc {
    NonPrimeP,
    UnsupportedSize,
    ZeroArgument,
    DivideByZeroPoly,
    ZeroPolynomial,
    NoIrreducibleFound,
    NotIrreducible,
    BoxTooLarge,
    QTooSmall,
    BadReduction,
    EllEqualsP,
    SplittingFieldTooLarge,
    GroupTooLarge,
    NoGoodPrimes,
    RangeTooLarge,
    FieldTooLarge,
    ParseError,
    ConfigError,
};

inline const char* errc_name(Errc c) noexcept {
    switch (c) {
    case Errc::NonPrimeP: return "NonPrimeP";
    case Errc::UnsupportedSize: return "UnsupportedSize";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::DivideByZeroPoly: return "DivideByZeroPoly";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NoIrreducibleFound: return "NoIrreducibleFound";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::BoxTooLarge: return "BoxTooLarge";
    case Errc::QTooSmall: return "QTooSmall";
    case Errc::BadReduction: return "BadReduction";
    case Errc::EllEqualsP: return "EllEqualsP";
    case Errc::SplittingFieldTooLarge: return "SplittingFieldTooLarge";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::NoGoodPrimes: return "NoGoodPrimes";
    case Errc::RangeTooLarge: return "RangeTooLarge";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Resource limits exit the CLI with code 3, everything else user-facing with 2.
inline bool is_resource_limit(Errc c) noexcept {
    switch (c) {
    case Errc::BoxTooLarge:
    case Errc::SplittingFieldTooLarge:
    case Errc::GroupTooLarge:
    case Errc::RangeTooLarge:
    case Errc::FieldTooLarge:
        return true;
    default:
        return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace drinfeld

#endif // DRINFELD_ERROR_HPP
