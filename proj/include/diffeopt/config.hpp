#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diffeopt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value run configuration: UTF-8 lines `key.path = value`, `#`
/// comments. Getters mark keys consumed; finish() rejects anything left over,
/// naming the offending key path.
class Config {
public:
    static Config parse_file(const std::filesystem::path& file);
    static Config parse_string(const std::string& text, std::filesystem::path base_dir = ".");

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key);
    std::string get_string_or(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double_or(const std::string& key, double fallback);
    int get_int(const std::string& key);
    int get_int_or(const std::string& key, int fallback);
    std::vector<double> get_doubles(const std::string& key);  // whitespace-separated
    std::optional<std::vector<double>> try_get_doubles(const std::string& key);

    /// Path value resolved against the config file's directory.
    std::filesystem::path get_path(const std::string& key);

    /// Keys starting with `prefix.` (consumption untouched).
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    /// Throws ConfigError naming the first unconsumed key.
    void finish() const;

    const std::filesystem::path& base_dir() const { return base_dir_; }

private:
    std::string raw(const std::string& key);
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> consumed_;
    std::filesystem::path base_dir_ = ".";
};

}  // namespace diffeopt
