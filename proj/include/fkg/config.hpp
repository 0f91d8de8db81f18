#pragma once

#include "fkg/dilation.hpp"
#include "fkg/epsnet.hpp"
#include "fkg/grid.hpp"
#include "fkg/mass.hpp"
#include "fkg/netsweep.hpp"
#include "fkg/symbol.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fkg {

/// Sectioned key-value configuration text: `[section]` headers,
/// `key = value` lines, `#` comments, arrays in brackets, strings in
/// double quotes. Errors carry file:line.
class ConfigTable {
public:
    ConfigTable() = default;

    static ConfigTable parse_file(const std::string& path);
    static ConfigTable parse_text(const std::string& text,
                                  const std::string& origin = "<inline>");

    /// Applies a command-line override "section.key=value"; the value uses
    /// the same literal syntax as a file entry.
    void set(const std::string& dotted);

    bool has(const std::string& sec, const std::string& key) const;

    std::string get_string(const std::string& sec, const std::string& key) const;
    std::string get_string(const std::string& sec, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& sec, const std::string& key) const;
    double get_double(const std::string& sec, const std::string& key, double fallback) const;
    long long get_int(const std::string& sec, const std::string& key) const;
    long long get_int(const std::string& sec, const std::string& key,
                      long long fallback) const;
    bool get_bool(const std::string& sec, const std::string& key, bool fallback) const;

    std::vector<std::string> get_strings(const std::string& sec, const std::string& key) const;
    std::vector<double> get_doubles(const std::string& sec, const std::string& key) const;
    std::vector<long long> get_ints(const std::string& sec, const std::string& key) const;

    /// Sections and keys sorted, values as written; the echo format that
    /// reproduces this table when parsed back.
    std::string canonical_dump() const;
    /// FNV-1a over the canonical dump, sixteen hex digits.
    std::string hash_hex() const;

private:
    struct Entry {
        std::vector<std::string> items; // raw tokens, quotes preserved
        bool is_array = false;
        int line = 0;
        std::string origin;
    };

    const Entry& require(const std::string& sec, const std::string& key) const;
    const Entry* find(const std::string& sec, const std::string& key) const;
    std::string where(const std::string& sec, const std::string& key) const;

    std::map<std::string, std::map<std::string, Entry>> sections_;
};

/// A fully validated experiment: structure, discretization, operator,
/// mass model, data, net and per-subcommand knobs.
struct ExperimentConfig {
    ExperimentConfig(DilationStructure structure_, RocklandSymbol symbol_, EpsilonNet net_)
        : structure(std::move(structure_)), symbol(std::move(symbol_)), net(std::move(net_)) {}

    DilationStructure structure;
    RocklandSymbol symbol;
    EpsilonNet net;

    GridPtr grid;
    double s = 1.0;
    MassSpec mass;
    PerturbationKind perturbation = PerturbationKind::ExpShift;
    DataSpec data;
    SolverConfig solver;

    double solve_eps = 0.25;
    std::vector<double> mollifier_ps; // norm-table exponents; inf allowed

    int ref_space = 2;
    int ref_time = 4;
    double floor_mult = 10.0;

    std::string out_dir = "out";
    std::string prefix = "run";

    std::string echo;     // canonical config text
    std::string hash;     // config hash, hex

    LabSetup lab() const { return LabSetup{grid, symbol, s}; }
};

/// Parses, validates and cross-checks a table into a runnable experiment.
/// Violations raise ConfigError with the offending location.
ExperimentConfig build_config(const ConfigTable& table);

} // namespace fkg
