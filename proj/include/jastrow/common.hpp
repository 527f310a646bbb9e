#ifndef JASTROW_COMMON_HPP
#define JASTROW_COMMON_HPP

#include <stdexcept>
#include <string>

namespace jastrow {

/// Thrown when a special function or potential is evaluated at (or too
/// close to) one of its singular points.
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace jastrow

#endif
