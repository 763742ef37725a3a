// errors.hpp: exception types shared by all modules

#pragma once

#include <stdexcept>
#include <string>

namespace qchan {

// bad shapes, out-of-range parameters, malformed input
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct not_psd : std::domain_error {
    double min_eig;
    not_psd(const std::string& what, double m) : std::domain_error(what), min_eig(m) {}
};

struct singular_matrix : std::domain_error {
    using std::domain_error::domain_error;
};

struct no_real_log : std::domain_error {
    using std::domain_error::domain_error;
};

struct degenerate_spectrum : std::domain_error {
    using std::domain_error::domain_error;
};

// names the violated channel invariant ("trace preservation", "complete positivity", ...)
struct invalid_channel : std::domain_error {
    std::string invariant;
    double value;
    invalid_channel(const std::string& inv, double v)
        : std::domain_error("invalid channel: " + inv + " violated (" + std::to_string(v) + ")"),
          invariant(inv), value(v) {}
};

} // namespace qchan
