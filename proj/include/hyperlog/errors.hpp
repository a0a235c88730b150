#ifndef HYPERLOG_ERRORS_HPP
#define HYPERLOG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlog
{

// Base class of every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input (words, rationals, polynomials, configs).
class parse_error : public error
{
public:
    using error::error;
};

// Two pole-localized rationals built over different singularity sets.
class pole_set_mismatch : public error
{
public:
    pole_set_mismatch() : error("pole-set mismatch") {}
};

// Evaluation at a pole, an endpoint inside the safety margin, or a path
// that cannot be routed around the singularities.
class geometry_error : public error
{
public:
    using error::error;
};

// The rational function has nonzero simple-pole residues, so its primitive
// is logarithmic and lies outside the pole-localized field.
class residue_obstruction : public error
{
public:
    explicit residue_obstruction(std::vector<std::size_t> poles);

    const std::vector<std::size_t> &poles() const noexcept
    {
        return m_poles;
    }

private:
    std::vector<std::size_t> m_poles;
};

// A pairing needed a coefficient the oracle does not hold.
class unresolvable_word : public error
{
public:
    using error::error;
};

// Adaptive integration could not meet the tolerance.
class step_size_underflow : public error
{
public:
    using error::error;
};

} // namespace hyperlog

#endif
