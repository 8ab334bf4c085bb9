#ifndef BRJUNO_ERROR_HPP
#define BRJUNO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace brjuno
{

// Machine-readable failure categories. The CLI prints these verbatim.
enum class error_code {
    invalid_argument,
    dimension_mismatch,
    degree_out_of_range,
    unsupported_combination,
    no_nonresonant_coordinate,
    resonances_present,
    insufficient_precision,
    not_diagonalizable,
    linear_part_mismatch,
    precondition_failed,
    capacity_exceeded,
    obstructed,
    parse_error,
};

constexpr std::string_view to_string(error_code c) noexcept
{
    switch (c) {
        case error_code::invalid_argument:
            return "invalid-argument";
        case error_code::dimension_mismatch:
            return "dimension-mismatch";
        case error_code::degree_out_of_range:
            return "degree-out-of-range";
        case error_code::unsupported_combination:
            return "unsupported-combination";
        case error_code::no_nonresonant_coordinate:
            return "no-nonresonant-coordinate";
        case error_code::resonances_present:
            return "resonances-present";
        case error_code::insufficient_precision:
            return "insufficient-precision";
        case error_code::not_diagonalizable:
            return "not-diagonalizable";
        case error_code::linear_part_mismatch:
            return "linear-part-mismatch";
        case error_code::precondition_failed:
            return "precondition-failed";
        case error_code::capacity_exceeded:
            return "capacity-exceeded";
        case error_code::obstructed:
            return "obstructed";
        case error_code::parse_error:
            return "parse-error";
    }
    return "unknown";
}

class error : public std::runtime_error
{
public:
    error(error_code code, const std::string &what) : std::runtime_error(what), m_code(code) {}

    error_code code() const noexcept
    {
        return m_code;
    }

private:
    error_code m_code;
};

} // namespace brjuno

#endif
