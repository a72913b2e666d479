#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polylim {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the operation.
class domain_error : public error {
public:
    using error::error;
};

/// Harmonic index whose parity does not match the derivative order.
class invalid_harmonic_error : public error {
public:
    using error::error;
};

/// Harmonic index beyond the highest harmonic of the expansion.
class out_of_range_error : public error {
public:
    using error::error;
};

/// Request exceeds a precomputed table.
class capacity_error : public error {
public:
    using error::error;
};

/// Evaluation too close to a singularity.
class pole_error : public error {
public:
    pole_error(const std::string& what, std::int64_t pole)
        : error(what), pole_(pole) {}

    /// Integer location of the offending pole (a multiple of pi for the
    /// cotangent, a non-positive integer for polygamma).
    [[nodiscard]] std::int64_t pole() const noexcept { return pole_; }

private:
    std::int64_t pole_;
};

/// A sample of a limit probe could not be evaluated.
class probe_failure : public error {
public:
    probe_failure(const std::string& what, double z)
        : error(what), z_(z) {}

    [[nodiscard]] double z() const noexcept { return z_; }

private:
    double z_;
};

} // namespace polylim
