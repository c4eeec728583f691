#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

// Bad parameters, bad grid points, bad arguments. Maps to CLI exit code 2.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed or truncated input file. Maps to CLI exit code 2.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Request exceeds the configured memory/size budget. Maps to CLI exit code 3.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration refused because the auxiliary coloring does not keep the
// companion points of a same-class pair inside the grid. Exit code 3.
class closure_refusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Packed f-class key does not fit in 64 bits.
class encoding_error : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

} // namespace rainbow
