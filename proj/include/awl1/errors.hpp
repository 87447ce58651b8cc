#pragma once

#include <stdexcept>
#include <string>

namespace awl1 {

/// Filesystem and file-format failures. Validation problems (bad
/// arguments, inconsistent parameters) use std::invalid_argument; the
/// CLI maps the two categories to different exit codes.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace awl1
