#ifndef BIOOPT_VERSION_HPP
#define BIOOPT_VERSION_HPP

namespace bioopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bioopt

#endif  // BIOOPT_VERSION_HPP
