#pragma once

#include <stdexcept>
#include <string>

namespace tpbd {

// Base of every error raised by the library. `code()` gives the short
// machine-readable kind used by the CLI when choosing an exit status.
class error : public std::runtime_error {
public:
    error(const char* code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    const char* code() const noexcept { return code_; }

private:
    const char* code_;
};

#define TPBD_DEFINE_ERROR(name)                                               \
    class name : public error {                                               \
    public:                                                                   \
        explicit name(const std::string& what) : error(#name, what) {}        \
    };

TPBD_DEFINE_ERROR(range_error)
TPBD_DEFINE_ERROR(no_convergence)
TPBD_DEFINE_ERROR(singular_matrix)
TPBD_DEFINE_ERROR(too_large)
TPBD_DEFINE_ERROR(not_totally_positive)
TPBD_DEFINE_ERROR(dimension_mismatch)
TPBD_DEFINE_ERROR(invalid_nodes)
TPBD_DEFINE_ERROR(non_real_spectrum)
TPBD_DEFINE_ERROR(division_by_zero)
TPBD_DEFINE_ERROR(parse_error)

#undef TPBD_DEFINE_ERROR

} // namespace tpbd
