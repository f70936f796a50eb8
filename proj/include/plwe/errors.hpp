#pragma once

#include <stdexcept>
#include <string>

namespace plwe {

/// Raised when the smallness region covers all of F_q (|Sigma| >= q),
/// in which case the lookup test carries no information.
class attack_inapplicable : public std::runtime_error {
public:
    explicit attack_inapplicable(const std::string& what) : std::runtime_error(what) {}
};

/// File-level failures (unreadable input, unwritable output, malformed sample sets).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace plwe
