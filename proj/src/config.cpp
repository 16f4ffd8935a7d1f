#include "motrng/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace motrng {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value: '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key on line " + std::to_string(lineno));
        cfg.kv_[key] = val;
    }
    return cfg;
}

Config Config::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_string(ss.str());
}

void Config::merge_overrides(const Config& overrides) {
    for (const auto& [k, v] : overrides.kv_) kv_[k] = v;
}

std::string Config::get_string(const std::string& key, const std::string& def) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

double Config::get_double(const std::string& key, double def) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not a number: '" +
                                    it->second + "'");
    }
}

std::int64_t Config::get_int(const std::string& key, std::int64_t def) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not an integer: '" +
                                    it->second + "'");
    }
}

std::uint64_t Config::get_uint64(const std::string& key, std::uint64_t def) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not an unsigned integer: '" +
                                    it->second + "'");
    }
}

void Config::require_known_keys(const std::set<std::string>& known) const {
    for (const auto& [k, v] : kv_) {
        (void)v;
        if (!known.count(k))
            throw std::invalid_argument("config: unknown key '" + k + "'");
    }
}

} // namespace motrng
