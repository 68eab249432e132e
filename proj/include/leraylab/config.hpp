#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace leray {

/// key = value configuration with command-line overrides. Lines starting
/// with '#' are comments.
class RunConfig {
public:
    void load_file(const std::string& path);
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::optional<std::string> get(const std::string& key) const;
    double get_double(const std::string& key, std::optional<double> fallback = std::nullopt) const;
    long get_long(const std::string& key, std::optional<long> fallback = std::nullopt) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, std::string>& items() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace leray
