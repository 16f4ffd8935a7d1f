#pragma once
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace motrng {

/// Flat key=value configuration. One pair per line, `#` starts a comment,
/// blank lines ignored. Keys are namespaced per module (sim., chain., tl.,
/// nist., nlfsr., dp.). Later assignments win, so a config file can be
/// layered under command-line overrides.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    void merge_overrides(const Config& overrides);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& def) const;
    double      get_double(const std::string& key, double def) const;
    std::int64_t get_int(const std::string& key, std::int64_t def) const;
    std::uint64_t get_uint64(const std::string& key, std::uint64_t def) const;

    /// Every key must be a member of `known`; throws std::invalid_argument
    /// naming the first offender otherwise.
    void require_known_keys(const std::set<std::string>& known) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace motrng
