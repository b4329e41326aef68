#pragma once

#include <stdexcept>
#include <string>

namespace minmod {

// Computation errors carry the failing quantity in the message.
struct TailNotConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CutoffTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MixedSignZeros : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParameterOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CannotDecideConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateGrowth : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoCandidates : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidInstance : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadAngle : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BelowFixedPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse errors for the spec file format; line is 1-based.
struct SpecParseError : std::runtime_error {
    SpecParseError(int line_no, const std::string& what_arg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what_arg),
          line(line_no) {}
    int line;
};

} // namespace minmod
