#pragma once

#include <stdexcept>
#include <string>

namespace tsrsr {

// Exit-code mapping used by the CLI: InvalidArgument -> 1, NumericalFailure -> 2, IoError -> 3.

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Every candidate has zero posterior spread, so no ratio-based choice exists.
struct DegeneratePosterior : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct IoError : std::runtime_error {
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(what + ": " + path), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace tsrsr
