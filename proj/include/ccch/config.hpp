#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace ccch {

/// Configuration rejection with the offending key path in the message.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A validated run configuration: the accepted command plus the effective
/// parameter map with every default filled in (the JSON echo embedded in
/// reports round-trips this object).
struct RunConfig {
    std::string command;
    nlohmann::json echo;
};

/// Parses and validates a configuration document. Rejects malformed JSON,
/// duplicate keys (naming the key), unknown keys, type mismatches, and
/// constraint violations, each with the key path in the message.
RunConfig parse_config(const std::string& text);

}  // namespace ccch
