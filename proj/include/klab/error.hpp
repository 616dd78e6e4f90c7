#ifndef KLAB_ERROR_HPP
#define KLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace klab {

// Process-level error classes, mapped to CLI exit codes.
enum class ErrClass {
    Parse = 2,     // syntax / usage
    Limit = 3,     // desk-scale guardrail exceeded
    Degenerate = 4 // mathematically degenerate or out-of-domain input
};

class Error : public std::runtime_error {
public:
    Error(ErrClass cls, std::string kind, const std::string& msg)
        : std::runtime_error(msg), cls_(cls), kind_(std::move(kind)) {}
    ErrClass cls() const { return cls_; }
    const std::string& kind() const { return kind_; }

private:
    ErrClass cls_;
    std::string kind_;
};

inline Error parse_error(const std::string& msg) { return Error(ErrClass::Parse, "SyntaxError", msg); }
inline Error limit_error(const std::string& msg) { return Error(ErrClass::Limit, "LimitExceeded", msg); }
inline Error degenerate_error(const std::string& kind, const std::string& msg) {
    return Error(ErrClass::Degenerate, kind, msg);
}

} // namespace klab

#endif
