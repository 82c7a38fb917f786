// Exception types. Precondition violations and malformed inputs raise
// std::invalid_argument; the classes below cover numerical breakdown and
// failed verification.

#ifndef HVMS_ERRORS_HPP
#define HVMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hvms
{

/// A computation could not be completed to the requested accuracy
/// (singular solve, ill-conditioned design matrix, inconsistent routes).
class numerical_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Input data failed a mathematical membership test (e.g. not a Hankel pair).
class verification_error : public std::runtime_error
{
public:
    verification_error(const std::string& what, std::string failed_condition)
        : std::runtime_error(what), failed_(std::move(failed_condition))
    {
    }

    const std::string& failed_condition() const noexcept { return failed_; }

private:
    std::string failed_;
};

} // namespace hvms

#endif // HVMS_ERRORS_HPP
