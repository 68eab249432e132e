#include "leraylab/config.hpp"

#include <fstream>
#include <stdexcept>

namespace leray {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("config: malformed line '" + t + "'");
        values_[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
}

std::optional<std::string> RunConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

double RunConfig::get_double(const std::string& key, std::optional<double> fallback) const {
    auto v = get(key);
    if (!v) {
        if (fallback) return *fallback;
        throw ConfigError("config: missing required key '" + key + "'");
    }
    try {
        std::size_t pos = 0;
        const double d = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' is not a number: '" + *v + "'");
    }
}

long RunConfig::get_long(const std::string& key, std::optional<long> fallback) const {
    auto v = get(key);
    if (!v) {
        if (fallback) return *fallback;
        throw ConfigError("config: missing required key '" + key + "'");
    }
    try {
        std::size_t pos = 0;
        const long l = std::stol(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return l;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' is not an integer: '" + *v + "'");
    }
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto v = get(key);
    return v ? *v : fallback;
}

}  // namespace leray
