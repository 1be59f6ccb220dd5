#ifndef EVMF_ERRORS_HPP_
#define EVMF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace evmf {

// Base for all engine errors. `kind()` is a stable machine-readable tag
// (the CLI reports it in its error JSON).
class Error : public std::runtime_error {
public:
    Error(const char* kind, const std::string& msg)
        : std::runtime_error(std::string(kind) + ": " + msg), kind_(kind) {}

    const char* kind() const noexcept { return kind_; }

private:
    const char* kind_;
};

#define EVMF_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}   \
    }

EVMF_DEFINE_ERROR(ZeroNormToken);
EVMF_DEFINE_ERROR(InvalidTarget);
EVMF_DEFINE_ERROR(InvalidGrid);
EVMF_DEFINE_ERROR(ShapeMismatch);
EVMF_DEFINE_ERROR(NonMonotonicTime);
EVMF_DEFINE_ERROR(InvalidQueryTime);
EVMF_DEFINE_ERROR(SingleRoot);
EVMF_DEFINE_ERROR(InvalidSpec);
EVMF_DEFINE_ERROR(BadMagic);
EVMF_DEFINE_ERROR(TruncatedFile);
EVMF_DEFINE_ERROR(MismatchedStream);
EVMF_DEFINE_ERROR(ConfigError);
EVMF_DEFINE_ERROR(IoError);

#undef EVMF_DEFINE_ERROR

}  // namespace evmf

#endif  // EVMF_ERRORS_HPP_
