#include "diffeopt/config.hpp"

#include <fstream>
#include <sstream>

namespace diffeopt {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::parse_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("config: cannot open " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), file.has_parent_path() ? file.parent_path() : ".");
}

Config Config::parse_string(const std::string& text, std::filesystem::path base_dir) {
    Config cfg;
    cfg.base_dir_ = std::move(base_dir);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config: empty key on line " + std::to_string(line_no));
        if (cfg.values_.count(key)) throw ConfigError("config: duplicate key '" + key + "'");
        cfg.values_[key] = value;
        cfg.consumed_[key] = false;
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::raw(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing required key '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

std::string Config::get_string(const std::string& key) { return raw(key); }

std::string Config::get_string_or(const std::string& key, const std::string& fallback) {
    return has(key) ? raw(key) : fallback;
}

double Config::get_double(const std::string& key) {
    const std::string v = raw(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not a number: '" + v + "'");
    }
}

double Config::get_double_or(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) {
    const std::string v = raw(key);
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not an integer: '" + v + "'");
    }
}

int Config::get_int_or(const std::string& key, int fallback) { return has(key) ? get_int(key) : fallback; }

std::vector<double> Config::get_doubles(const std::string& key) {
    const std::string v = raw(key);
    std::istringstream ss(v);
    std::vector<double> out;
    double x = 0.0;
    while (ss >> x) out.push_back(x);
    if (!ss.eof()) throw ConfigError("config: key '" + key + "' is not a list of numbers: '" + v + "'");
    if (out.empty()) throw ConfigError("config: key '" + key + "' is empty");
    return out;
}

std::optional<std::vector<double>> Config::try_get_doubles(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return get_doubles(key);
}

std::filesystem::path Config::get_path(const std::string& key) {
    const std::filesystem::path p = raw(key);
    return p.is_absolute() ? p : base_dir_ / p;
}

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> keys;
    for (const auto& [k, v] : values_) {
        if (k.rfind(prefix + ".", 0) == 0) keys.push_back(k);
    }
    return keys;
}

void Config::finish() const {
    for (const auto& [key, used] : consumed_) {
        if (!used) throw ConfigError("config: unknown key '" + key + "'");
    }
}

}  // namespace diffeopt
