#include "fgb/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include "fgb/errors.hpp"

namespace fgb {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        throw ConfigError(key + ": expected a nonnegative integer, got '" + value + "'");
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a real number, got '" + value + "'");
    }
}

std::vector<double> parse_schedule(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key + ": empty entry in '" + value + "'");
        out.push_back(parse_real(key, item));
    }
    if (out.empty()) throw ConfigError(key + ": expected a comma-separated list");
    return out;
}

}  // namespace

double tolerance_or(const ExperimentConfig& cfg, const std::string& name, double fallback) {
    auto it = cfg.tolerances.find(name);
    return it == cfg.tolerances.end() ? fallback : it->second;
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "k")
        cfg.k = parse_int(key, value);
    else if (key == "t")
        cfg.t = parse_real(key, value);
    else if (key == "depth")
        cfg.depth = parse_int(key, value);
    else if (key == "nobs")
        cfg.n_obs = parse_int(key, value);
    else if (key == "nmax")
        cfg.n_max = parse_int(key, value);
    else if (key == "eps_schedule")
        cfg.eps_schedule = parse_schedule(key, value);
    else if (key == "seed")
        cfg.seed = parse_u64(key, value);
    else if (key == "workers")
        cfg.workers = parse_int(key, value);
    else if (key == "out")
        cfg.out = value;
    else if (key.rfind("tol.", 0) == 0) {
        std::string name = key.substr(4);
        if (name.empty()) throw ConfigError("tol.: missing tolerance name");
        cfg.tolerances[name] = parse_real(key, value);
    } else {
        throw ConfigError(key + ": unknown configuration key");
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" +
                              line + "'");
        apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.k < 2 || cfg.k > 4) throw ConfigError("k: must lie in [2, 4]");
    if (!(cfg.t > 0.0) || !(cfg.t < 1.0)) throw ConfigError("t: must lie in (0, 1)");
    if (cfg.depth < 1 || cfg.depth > 6) throw ConfigError("depth: must lie in [1, 6]");
    if (cfg.n_obs < 1 || cfg.n_obs > cfg.depth)
        throw ConfigError("nobs: must lie in [1, depth]");
    if (cfg.n_max < 1 || cfg.n_max > 12) throw ConfigError("nmax: must lie in [1, 12]");
    if (cfg.eps_schedule.empty()) throw ConfigError("eps_schedule: must be nonempty");
    double prev = 1.0;
    for (double e : cfg.eps_schedule) {
        if (!(e > 0.0) || !(e < 1.0))
            throw ConfigError("eps_schedule: entries must lie in (0, 1)");
        if (!(e < prev)) throw ConfigError("eps_schedule: entries must be strictly decreasing");
        prev = e;
    }
    for (const auto& [name, tol] : cfg.tolerances)
        if (!(tol > 0.0)) throw ConfigError("tol." + name + ": must be positive");
    if (cfg.workers < 0) throw ConfigError("workers: must be nonnegative");
    if (cfg.out.empty()) throw ConfigError("out: must be nonempty");
}

int effective_workers(const ExperimentConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace fgb
