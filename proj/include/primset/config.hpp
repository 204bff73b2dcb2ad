/// @file config.hpp
/// Resolved experiment configuration: every run is fully described by one of
/// these, it round-trips losslessly through its text form, and each output
/// file embeds it as a comment header.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "primset/common.hpp"
#include "primset/slow_variation.hpp"

namespace primset {

struct ExperimentConfig {
    std::string subcommand;
    std::string format = "csv";  // csv | json
    std::string out = "-";
    unsigned threads = 1;
    u64 segment_size = u64(1) << 22;
    u64 seed = 0;

    u64 x = 0;
    int jmax = 0;
    u64 terms = 10000;      // K, sequence prefix length
    u64 budget_k0 = 100000;
    int blocks = 0;
    std::string extract;    // "", "greedy-ascending", "dyadic-block"
    u64 sample_verify = 0;

    std::string l_kind = "power-of-log";
    int l_ell = 4;
    double l_epsilon = 1.0;
    std::string l_table_path;

    std::string primes_override;  // comma-separated fixture sequence
    u64 inject_composite = 0;     // testing hook for the negative control
    std::string input_file;

    bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

inline std::string lossless(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::vector<std::pair<std::string, std::string>> config_kv(const ExperimentConfig& c) {
    return {
        {"subcommand", c.subcommand},
        {"format", c.format},
        {"out", c.out},
        {"threads", std::to_string(c.threads)},
        {"segment_size", std::to_string(c.segment_size)},
        {"seed", std::to_string(c.seed)},
        {"x", std::to_string(c.x)},
        {"jmax", std::to_string(c.jmax)},
        {"K", std::to_string(c.terms)},
        {"budget_k0", std::to_string(c.budget_k0)},
        {"blocks", std::to_string(c.blocks)},
        {"extract", c.extract},
        {"sample_verify", std::to_string(c.sample_verify)},
        {"L.kind", c.l_kind},
        {"L.ell", std::to_string(c.l_ell)},
        {"L.epsilon", detail::lossless(c.l_epsilon)},
        {"L.table_path", c.l_table_path},
        {"primes", c.primes_override},
        {"inject_composite", std::to_string(c.inject_composite)},
        {"input_file", c.input_file},
    };
}

/// One "key=value" line per field, each prefixed (comment marker for CSV).
inline std::string serialize_config(const ExperimentConfig& c, const std::string& prefix) {
    std::ostringstream out;
    for (const auto& [k, v] : config_kv(c)) out << prefix << k << '=' << v << '\n';
    return out.str();
}

inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig c;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.front() == '#' || line.front() == ' '))
            line.erase(line.begin());
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string k = line.substr(0, eq), v = line.substr(eq + 1);
        if (k == "subcommand") c.subcommand = v;
        else if (k == "format") c.format = v;
        else if (k == "out") c.out = v;
        else if (k == "threads") c.threads = unsigned(std::stoul(v));
        else if (k == "segment_size") c.segment_size = std::stoull(v);
        else if (k == "seed") c.seed = std::stoull(v);
        else if (k == "x") c.x = std::stoull(v);
        else if (k == "jmax") c.jmax = std::stoi(v);
        else if (k == "K") c.terms = std::stoull(v);
        else if (k == "budget_k0") c.budget_k0 = std::stoull(v);
        else if (k == "blocks") c.blocks = std::stoi(v);
        else if (k == "extract") c.extract = v;
        else if (k == "sample_verify") c.sample_verify = std::stoull(v);
        else if (k == "L.kind") c.l_kind = v;
        else if (k == "L.ell") c.l_ell = std::stoi(v);
        else if (k == "L.epsilon") c.l_epsilon = std::stod(v);
        else if (k == "L.table_path") c.l_table_path = v;
        else if (k == "primes") c.primes_override = v;
        else if (k == "inject_composite") c.inject_composite = std::stoull(v);
        else if (k == "input_file") c.input_file = v;
    }
    return c;
}

inline ExperimentConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

/// CSV table of x,L(x) nodes for custom-table specs.
inline std::vector<std::pair<double, double>> load_l_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open L table: " + path);
    std::vector<std::pair<double, double>> nodes;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("L table: expected x,L per line");
        nodes.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return nodes;
}

/// Builds the LSpec described by a config.
inline LSpec lspec_from_config(const ExperimentConfig& c) {
    LKind kind = lkind_from_string(c.l_kind);
    switch (kind) {
        case LKind::power_of_log: return LSpec::power_of_log(c.l_epsilon);
        case LKind::iterated_log_product: return LSpec::iterated(c.l_ell, c.l_epsilon);
        case LKind::custom_table: return LSpec::custom(load_l_table(c.l_table_path));
    }
    throw std::logic_error("lspec_from_config: bad kind");
}

/// Newline-delimited decimal integers; blank lines and # comments skipped.
inline std::vector<u64> load_integer_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open set file: " + path);
    std::vector<u64> values;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        values.push_back(std::stoull(line.substr(a, b - a + 1)));
    }
    return values;
}

}  // namespace primset
