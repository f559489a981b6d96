//! Plain key=value run-config files.
//!
//! Format: one `key=value` per line, `#` starts a comment, blank lines
//! ignored. Keys match the CLI long flag names without the leading dashes.
//! A genome layout can be embedded as ordered lines
//!   field.<i>.kind=continuous|discrete-multiple
//!   field.<i>.bits=<w>
//!   field.<i>.lower=<lo>    field.<i>.upper=<hi>        (continuous)
//!   field.<i>.step=<s>      field.<i>.offset=<k>        (discrete-multiple)
//! with indices contiguous from 0.

#ifndef BIOOPT_CONFIG_FILE_HPP
#define BIOOPT_CONFIG_FILE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bioopt/encoding.hpp"

namespace bioopt {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigFile {
  // Non-field keys in file order.
  std::vector<std::pair<std::string, std::string>> entries;
  // Layout assembled from field.<i>.* lines; empty when absent.
  std::optional<GenomeLayout> layout;
};

ConfigFile load_config_file(const std::filesystem::path& path);

}  // namespace bioopt

#endif  // BIOOPT_CONFIG_FILE_HPP
