#ifndef GID_ERRORS_HPP
#define GID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gid {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define GID_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                        \
    public:                                                             \
        explicit Name(const std::string& msg) : Error(msg) {}           \
    }

GID_DEFINE_ERROR(DimensionMismatch);
GID_DEFINE_ERROR(FieldMismatch);
GID_DEFINE_ERROR(ZeroInverse);
GID_DEFINE_ERROR(NotPrime);
GID_DEFINE_ERROR(NotFullRank);
GID_DEFINE_ERROR(RetryExhausted);
GID_DEFINE_ERROR(CapExceeded);
GID_DEFINE_ERROR(ZeroSyndrome);
GID_DEFINE_ERROR(ZeroVector);
GID_DEFINE_ERROR(NotAGI);
GID_DEFINE_ERROR(WrongField);
GID_DEFINE_ERROR(TooManyVars);
GID_DEFINE_ERROR(TooLarge);
GID_DEFINE_ERROR(Inconsistent);
GID_DEFINE_ERROR(ConfigError);
GID_DEFINE_ERROR(ParseError);

#undef GID_DEFINE_ERROR

} // namespace gid

#endif
