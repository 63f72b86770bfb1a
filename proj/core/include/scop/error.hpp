#pragma once

#include <stdexcept>
#include <string>

namespace scop {

// Failure categories raised by the library. Checks that produce reports
// (validate, cascade/morphism verification, ...) do not throw on semantic
// findings; errors are reserved for misuse of an operation's contract.
enum class errc {
    empty_subset,
    out_of_unit_interval,
    unknown_id,
    duplicate_id,
    empty_factor_list,
    non_singleton_probability,
    dead_end,
    not_an_experiment,
    outcome_not_possible,
    no_spectrum,
    outcome_clash,
    cap_exceeded,
    covariance_violation,
    not_composable,
    domain_mismatch,
    not_complete,
    empty_region,
    zero_probability_region,
    not_nested,
    partition_invalid,
    too_many_blocks,
    duplicate_position,
    not_normalized,
    parse_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

} // namespace scop
