#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twosq {

/// Caller supplied something outside an operation's domain (CLI exit code 2).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A modulus of zero was passed to a modular kernel.
class invalid_modulus : public invalid_input {
public:
    invalid_modulus() : invalid_input("modulus must be nonzero") {}
};

enum class validation_failure {
    not_prime,       // 0 and 1
    composite,
    even_prime,      // p = 2
    three_mod_four,
};

/// Rejection of a candidate for PrimeOneMod4; `kind()` distinguishes the reason.
class validation_error : public invalid_input {
public:
    validation_error(validation_failure kind, std::uint64_t n, const std::string& what)
        : invalid_input(what), kind_(kind), n_(n) {}

    validation_failure kind() const noexcept { return kind_; }
    std::uint64_t value() const noexcept { return n_; }

private:
    validation_failure kind_;
    std::uint64_t n_;
};

/// A computation was refused because it would exceed a configured size bound (exit code 3).
class bound_exceeded : public std::runtime_error {
public:
    bound_exceeded(const std::string& what, std::uint64_t bound)
        : std::runtime_error(what), bound_(bound) {}

    std::uint64_t bound() const noexcept { return bound_; }

private:
    std::uint64_t bound_;
};

/// An internal consistency check failed. For valid inputs this indicates a defect (exit code 1).
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void check(bool condition, const char* what) {
    if (!condition) throw invariant_violation(what);
}

inline void check(bool condition, const std::string& what) {
    if (!condition) throw invariant_violation(what);
}

}  // namespace detail

}  // namespace twosq
