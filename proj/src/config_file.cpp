#include "bioopt/config_file.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <map>

namespace bioopt {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(
        fmt::format("config key '{}': '{}' is not a number", key, value));
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  long long v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw ConfigError(
        fmt::format("config key '{}': '{}' is not an integer", key, value));
  }
  return v;
}

GenomeLayout build_layout(
    const std::map<int, std::map<std::string, std::string>>& raw_fields) {
  GenomeLayout layout;
  for (int i = 0; i < static_cast<int>(raw_fields.size()); ++i) {
    const auto it = raw_fields.find(i);
    if (it == raw_fields.end()) {
      throw ConfigError(fmt::format(
          "config layout: field indices must be contiguous from 0; missing "
          "field.{}",
          i));
    }
    const auto& kv = it->second;
    auto get = [&](const char* key) -> const std::string& {
      const auto f = kv.find(key);
      if (f == kv.end()) {
        throw ConfigError(
            fmt::format("config layout: field.{} lacks '{}'", i, key));
      }
      return f->second;
    };
    for (const auto& [key, value] : kv) {
      static const char* known[] = {"kind", "bits",   "lower",
                                    "upper", "step", "offset"};
      if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
            return key == k;
          }) == std::end(known)) {
        throw ConfigError(fmt::format(
            "unknown config key 'field.{}.{}'", i, key));
      }
    }
    const std::string& kind = get("kind");
    const std::string bits_key = fmt::format("field.{}.bits", i);
    const int bits =
        static_cast<int>(parse_int(bits_key, get("bits")));
    if (kind == "continuous") {
      layout.fields.push_back(FieldSpec::continuous_field(
          bits, parse_real(fmt::format("field.{}.lower", i), get("lower")),
          parse_real(fmt::format("field.{}.upper", i), get("upper"))));
    } else if (kind == "discrete-multiple") {
      layout.fields.push_back(FieldSpec::discrete_field(
          bits, parse_real(fmt::format("field.{}.step", i), get("step")),
          parse_int(fmt::format("field.{}.offset", i), get("offset"))));
    } else {
      throw ConfigError(fmt::format(
          "config layout: field.{}.kind must be continuous or "
          "discrete-multiple, got '{}'",
          i, kind));
    }
  }
  return layout;
}

}  // namespace

ConfigFile load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  }

  ConfigFile cfg;
  std::map<int, std::map<std::string, std::string>> raw_fields;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("{}:{}: expected key=value, got '{}'",
                                    path.string(), line_no, line));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(
          fmt::format("{}:{}: empty key", path.string(), line_no));
    }

    if (key.starts_with("field.")) {
      const auto rest = key.substr(6);
      const auto dot = rest.find('.');
      if (dot == std::string::npos) {
        throw ConfigError(fmt::format(
            "{}:{}: layout keys look like field.<i>.<name>, got '{}'",
            path.string(), line_no, key));
      }
      const int index =
          static_cast<int>(parse_int(key, rest.substr(0, dot)));
      raw_fields[index][rest.substr(dot + 1)] = value;
    } else {
      cfg.entries.emplace_back(key, value);
    }
  }

  if (!raw_fields.empty()) cfg.layout = build_layout(raw_fields);
  return cfg;
}

}  // namespace bioopt
