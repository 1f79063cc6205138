#ifndef POLEST_ERROR_HPP
#define POLEST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace polest {

/// Thrown when an argument violates an operation's precondition.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a request exceeds a configured resource cap.
class cap_exceeded : public invalid_input {
public:
    using invalid_input::invalid_input;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw invalid_input(message);
}

} // namespace detail
} // namespace polest

#endif
