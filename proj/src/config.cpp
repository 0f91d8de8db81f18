#include "fkg/config.hpp"

#include "fkg/errors.hpp"
#include "fkg/presets.hpp"
#include "fkg/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

namespace fkg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

std::string unquote(const std::string& raw) {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"')
        return raw.substr(1, raw.size() - 2);
    return raw;
}

// Splits a bracketless array body on commas, leaving quoted segments whole.
std::vector<std::string> split_items(const std::string& body, const std::string& origin,
                                     int line) {
    std::vector<std::string> out;
    std::string cur;
    bool inq = false;
    for (char c : body) {
        if (c == '"') inq = !inq;
        if (c == ',' && !inq) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (inq) fail(origin, line, "unterminated string in array");
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
    for (const auto& item : out)
        if (item.empty()) fail(origin, line, "empty array element");
    return out;
}

double parse_double_token(const std::string& tok, const std::string& where) {
    const std::string s = unquote(tok);
    if (s == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + s + "'");
    }
}

long long parse_int_token(const std::string& tok, const std::string& where) {
    const std::string s = unquote(tok);
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not an integer: '" + s + "'");
    }
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

ConfigTable ConfigTable::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

ConfigTable ConfigTable::parse_text(const std::string& text, const std::string& origin) {
    ConfigTable t;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s;
        bool inq = false;
        for (char c : line) {
            if (c == '"') inq = !inq;
            if (c == '#' && !inq) break;
            s += c;
        }
        if (inq) fail(origin, lineno, "unterminated string");
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(origin, lineno, "malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!valid_name(section)) fail(origin, lineno, "bad section name");
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
        if (section.empty()) fail(origin, lineno, "key before any [section]");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (!valid_name(key)) fail(origin, lineno, "bad key name");
        if (val.empty()) fail(origin, lineno, "missing value for '" + key + "'");
        Entry e;
        e.line = lineno;
        e.origin = origin;
        if (val.front() == '[') {
            if (val.back() != ']') fail(origin, lineno, "unterminated array");
            e.is_array = true;
            e.items = split_items(val.substr(1, val.size() - 2), origin, lineno);
        } else {
            e.is_array = false;
            e.items = {val};
        }
        auto& sec = t.sections_[section];
        if (sec.count(key)) fail(origin, lineno, "duplicate key '" + key + "'");
        sec.emplace(key, std::move(e));
    }
    return t;
}

void ConfigTable::set(const std::string& dotted) {
    auto eq = dotted.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must be section.key=value: " + dotted);
    std::string path = trim(dotted.substr(0, eq));
    std::string val = trim(dotted.substr(eq + 1));
    auto dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override must be section.key=value: " + dotted);
    std::string sec = trim(path.substr(0, dot));
    std::string key = trim(path.substr(dot + 1));
    if (!valid_name(sec) || !valid_name(key))
        throw ConfigError("bad override path: " + dotted);
    if (val.empty()) throw ConfigError("empty override value: " + dotted);
    Entry e;
    e.origin = "<set>";
    e.line = 0;
    if (val.front() == '[') {
        if (val.back() != ']') throw ConfigError("unterminated array in override: " + dotted);
        e.is_array = true;
        e.items = split_items(val.substr(1, val.size() - 2), e.origin, 0);
    } else {
        e.is_array = false;
        e.items = {val};
    }
    sections_[sec][key] = std::move(e);
}

const ConfigTable::Entry* ConfigTable::find(const std::string& sec,
                                            const std::string& key) const {
    auto si = sections_.find(sec);
    if (si == sections_.end()) return nullptr;
    auto ki = si->second.find(key);
    return ki == si->second.end() ? nullptr : &ki->second;
}

bool ConfigTable::has(const std::string& sec, const std::string& key) const {
    return find(sec, key) != nullptr;
}

std::string ConfigTable::where(const std::string& sec, const std::string& key) const {
    const Entry* e = find(sec, key);
    std::ostringstream os;
    if (e)
        os << e->origin << ":" << e->line << ": [" << sec << "]." << key;
    else
        os << "[" << sec << "]." << key;
    return os.str();
}

const ConfigTable::Entry& ConfigTable::require(const std::string& sec,
                                               const std::string& key) const {
    const Entry* e = find(sec, key);
    if (!e) throw ConfigError("missing required key [" + sec + "]." + key);
    return *e;
}

std::string ConfigTable::get_string(const std::string& sec, const std::string& key) const {
    const Entry& e = require(sec, key);
    if (e.is_array) throw ConfigError(where(sec, key) + ": expected a scalar");
    return unquote(e.items[0]);
}

std::string ConfigTable::get_string(const std::string& sec, const std::string& key,
                                    const std::string& fallback) const {
    return has(sec, key) ? get_string(sec, key) : fallback;
}

double ConfigTable::get_double(const std::string& sec, const std::string& key) const {
    const Entry& e = require(sec, key);
    if (e.is_array) throw ConfigError(where(sec, key) + ": expected a scalar");
    return parse_double_token(e.items[0], where(sec, key));
}

double ConfigTable::get_double(const std::string& sec, const std::string& key,
                               double fallback) const {
    return has(sec, key) ? get_double(sec, key) : fallback;
}

long long ConfigTable::get_int(const std::string& sec, const std::string& key) const {
    const Entry& e = require(sec, key);
    if (e.is_array) throw ConfigError(where(sec, key) + ": expected a scalar");
    return parse_int_token(e.items[0], where(sec, key));
}

long long ConfigTable::get_int(const std::string& sec, const std::string& key,
                               long long fallback) const {
    return has(sec, key) ? get_int(sec, key) : fallback;
}

bool ConfigTable::get_bool(const std::string& sec, const std::string& key,
                           bool fallback) const {
    if (!has(sec, key)) return fallback;
    std::string v = get_string(sec, key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(where(sec, key) + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> ConfigTable::get_strings(const std::string& sec,
                                                  const std::string& key) const {
    const Entry& e = require(sec, key);
    std::vector<std::string> out;
    out.reserve(e.items.size());
    for (const auto& item : e.items) out.push_back(unquote(item));
    return out;
}

std::vector<double> ConfigTable::get_doubles(const std::string& sec,
                                             const std::string& key) const {
    const Entry& e = require(sec, key);
    std::vector<double> out;
    out.reserve(e.items.size());
    for (const auto& item : e.items) out.push_back(parse_double_token(item, where(sec, key)));
    return out;
}

std::vector<long long> ConfigTable::get_ints(const std::string& sec,
                                             const std::string& key) const {
    const Entry& e = require(sec, key);
    std::vector<long long> out;
    out.reserve(e.items.size());
    for (const auto& item : e.items) out.push_back(parse_int_token(item, where(sec, key)));
    return out;
}

std::string ConfigTable::canonical_dump() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [sec, keys] : sections_) {
        if (!first) os << "\n";
        first = false;
        os << "[" << sec << "]\n";
        for (const auto& [key, e] : keys) {
            os << key << " = ";
            if (e.is_array) {
                os << "[";
                for (std::size_t i = 0; i < e.items.size(); ++i)
                    os << (i ? ", " : "") << e.items[i];
                os << "]";
            } else {
                os << e.items[0];
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string ConfigTable::hash_hex() const {
    std::uint64_t h = fnv1a(canonical_dump());
    std::ostringstream os;
    os << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xF);
    return os.str();
}

namespace {

std::vector<int> to_int_vec(const std::vector<long long>& in, const std::string& where) {
    std::vector<int> out;
    out.reserve(in.size());
    for (long long v : in) {
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
            throw ConfigError(where + ": value out of range");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

DilationStructure read_structure(const ConfigTable& t) {
    auto toks = t.get_strings("structure", "weights");
    std::vector<Rational> w;
    w.reserve(toks.size());
    for (const auto& tok : toks) {
        try {
            w.push_back(parse_rational(tok));
        } catch (const std::exception& e) {
            throw ConfigError("[structure].weights: " + std::string(e.what()));
        }
    }
    return DilationStructure(w);
}

MassSpec read_mass(const ConfigTable& t, const GridPtr& grid) {
    const std::string kind = t.get_string("mass", "kind", "zero");
    MassSpec spec;
    if (kind == "zero") {
        spec = MassSpec::zero();
    } else if (kind == "dirac_delta") {
        spec = MassSpec::dirac_delta(t.get_double("mass", "weight", 1.0));
    } else if (kind == "delta_squared") {
        spec = MassSpec::delta_squared();
    } else if (kind == "inverse_power") {
        spec = MassSpec::inverse_power(t.get_double("mass", "gamma", 1.0),
                                       t.get_double("mass", "cap_radius", 0.1));
    } else if (kind == "bounded") {
        const std::string profile = t.get_string("mass", "profile", "gaussian");
        const std::string regs = t.get_string("mass", "regularity", "c0");
        MassSpec::Regularity reg;
        if (regs == "c0")
            reg = MassSpec::Regularity::C0;
        else if (regs == "linf")
            reg = MassSpec::Regularity::LInf;
        else
            throw ConfigError("[mass].regularity: expected c0 or linf, got '" + regs + "'");
        const double amplitude = t.get_double("mass", "amplitude", 1.0);
        if (profile == "gaussian") {
            std::vector<double> center(grid->dim(), 0.0);
            if (t.has("mass", "center")) center = t.get_doubles("mass", "center");
            if (static_cast<int>(center.size()) != grid->dim())
                throw ConfigError("[mass].center: dimension mismatch");
            const double width = t.get_double("mass", "width", 1.0);
            if (!(width > 0.0)) throw ConfigError("[mass].width: must be positive");
            spec = MassSpec::bounded(gaussian_bump(center, width, amplitude), reg,
                                     "gaussian_bump");
        } else if (profile == "cosine") {
            // Band-limited bump: amplitude * prod_j (1 + cos(2 pi x_j / L_j)) / 2.
            std::vector<double> L = grid->extents();
            spec = MassSpec::bounded(
                [L, amplitude](std::span<const double> x) {
                    double v = amplitude;
                    for (std::size_t j = 0; j < L.size(); ++j)
                        v *= 0.5 * (1.0 + std::cos(2.0 * M_PI * x[j] / L[j]));
                    return v;
                },
                reg, "cosine_bump");
        } else {
            throw ConfigError("[mass].profile: expected gaussian or cosine, got '" + profile +
                              "'");
        }
    } else {
        throw ConfigError("[mass].kind: unknown kind '" + kind + "'");
    }
    return spec;
}

FieldFactory read_field_preset(const ConfigTable& t, const std::string& key,
                               const GridPtr& grid, std::string& label_out) {
    const std::string name = t.get_string("data", key, "zero");
    const std::string prefix = key + "_";
    auto dkey = [&](const char* suffix) { return prefix + suffix; };
    label_out = name;
    if (name == "zero") return zero_preset();
    if (name == "gaussian") {
        std::vector<double> center(grid->dim(), 0.0);
        if (t.has("data", dkey("center"))) center = t.get_doubles("data", dkey("center"));
        if (static_cast<int>(center.size()) != grid->dim())
            throw ConfigError("[data]." + dkey("center") + ": dimension mismatch");
        const double width = t.get_double("data", dkey("width"), 1.0);
        if (!(width > 0.0)) throw ConfigError("[data]." + dkey("width") + ": must be positive");
        const double amp = t.get_double("data", dkey("amplitude"), 1.0);
        return gaussian_preset(center, width, amp);
    }
    if (name == "plane_wave") {
        std::vector<int> mode(grid->dim(), 0);
        mode[0] = 1;
        if (t.has("data", dkey("mode")))
            mode = to_int_vec(t.get_ints("data", dkey("mode")), "[data]." + dkey("mode"));
        if (static_cast<int>(mode.size()) != grid->dim())
            throw ConfigError("[data]." + dkey("mode") + ": dimension mismatch");
        for (int j = 0; j < grid->dim(); ++j)
            if (std::abs(mode[j]) > grid->counts()[j] / 2)
                throw ConfigError("[data]." + dkey("mode") + ": mode exceeds the grid Nyquist");
        return plane_wave_preset(mode, grid->extents());
    }
    if (name == "random") {
        const auto seed = static_cast<std::uint64_t>(t.get_int("data", dkey("seed"), 1));
        std::vector<int> band(grid->dim(), 2);
        if (t.has("data", dkey("band")))
            band = to_int_vec(t.get_ints("data", dkey("band")), "[data]." + dkey("band"));
        if (static_cast<int>(band.size()) != grid->dim())
            throw ConfigError("[data]." + dkey("band") + ": dimension mismatch");
        for (int j = 0; j < grid->dim(); ++j) {
            if (band[j] < 0) throw ConfigError("[data]." + dkey("band") + ": negative band");
            if (band[j] > grid->counts()[j] / 4)
                throw ConfigError("[data]." + dkey("band") +
                                  ": band exceeds a quarter of the grid counts");
        }
        return random_bandlimited_preset(seed, band, grid->extents());
    }
    throw ConfigError("[data]." + key + ": unknown preset '" + name + "'");
}

} // namespace

ExperimentConfig build_config(const ConfigTable& t) {
    DilationStructure structure = read_structure(t);

    auto extents = t.get_doubles("grid", "extents");
    auto counts = to_int_vec(t.get_ints("grid", "counts"), "[grid].counts");
    GridPtr grid = make_grid(structure, extents, counts);

    auto exps = to_int_vec(t.get_ints("operator", "exponents"), "[operator].exponents");
    RocklandSymbol symbol(structure, exps);
    const double s = t.get_double("operator", "s", 1.0);
    if (!(s > 0.0 && s <= 1.0)) throw ConfigError("[operator].s: must lie in (0, 1]");

    const double eps0 = t.get_double("net", "eps0", 0.5);
    const double rho = t.get_double("net", "rho", std::pow(2.0, -0.5));
    const auto count = static_cast<int>(t.get_int("net", "count", 12));
    EpsilonNet net(eps0, rho, count);

    ExperimentConfig cfg(std::move(structure), std::move(symbol), std::move(net));
    cfg.grid = grid;
    cfg.s = s;

    cfg.mass = read_mass(t, grid);

    const std::string pert = t.get_string("uniqueness", "perturbation", "exp_shift");
    if (pert == "exp_shift")
        cfg.perturbation = PerturbationKind::ExpShift;
    else if (pert == "none")
        cfg.perturbation = PerturbationKind::None;
    else
        throw ConfigError("[uniqueness].perturbation: expected exp_shift or none, got '" +
                          pert + "'");

    std::string l0, l1;
    cfg.data.u0 = read_field_preset(t, "u0", grid, l0);
    cfg.data.u1 = read_field_preset(t, "u1", grid, l1);
    cfg.data.label = l0 + "+" + l1;

    cfg.solver.T = t.get_double("time", "T", 1.0);
    if (!(cfg.solver.T > 0.0)) throw ConfigError("[time].T: must be positive");
    const std::string dts = t.get_string("time", "dt", "auto");
    if (dts == "auto") {
        cfg.solver.dt = 0.0;
    } else {
        cfg.solver.dt = parse_double_token(dts, "[time].dt");
        if (!(cfg.solver.dt > 0.0)) throw ConfigError("[time].dt: must be positive or auto");
    }
    cfg.solver.snapshot_stride = static_cast<int>(t.get_int("time", "snapshot_stride", 10));
    if (cfg.solver.snapshot_stride < 1)
        throw ConfigError("[time].snapshot_stride: must be >= 1");
    cfg.solver.threads = static_cast<int>(t.get_int("time", "threads", 1));

    cfg.solver.refine_limit = static_cast<int>(t.get_int("net", "refine_limit", 8));
    if (cfg.solver.refine_limit < 1) throw ConfigError("[net].refine_limit: must be >= 1");
    cfg.solver.k_max = static_cast<int>(t.get_int("net", "k_max", 10));
    if (cfg.solver.k_max < 1) throw ConfigError("[net].k_max: must be >= 1");
    cfg.solver.residual_ceiling = t.get_double("net", "residual_ceiling", 0.1);
    if (!(cfg.solver.residual_ceiling > 0.0))
        throw ConfigError("[net].residual_ceiling: must be positive");

    cfg.solver.crossval_tol = t.get_double("uniqueness", "crossval_tol", 1e-6);
    const std::string cdts = t.get_string("uniqueness", "crossval_dt", "auto");
    cfg.solver.crossval_dt = cdts == "auto" ? 0.0
                                            : parse_double_token(cdts,
                                                                 "[uniqueness].crossval_dt");

    cfg.solve_eps = t.get_double("solve", "eps", 0.25);
    if (!(cfg.solve_eps > 0.0 && cfg.solve_eps <= 1.0))
        throw ConfigError("[solve].eps: must lie in (0, 1]");

    if (t.has("mollifier", "p")) {
        for (const auto& tok : t.get_strings("mollifier", "p"))
            cfg.mollifier_ps.push_back(parse_double_token(tok, "[mollifier].p"));
    } else {
        cfg.mollifier_ps = {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()};
    }
    for (double p : cfg.mollifier_ps)
        if (!(p >= 1.0)) throw ConfigError("[mollifier].p: exponents must be >= 1");

    cfg.ref_space = static_cast<int>(t.get_int("consistency", "ref_space", 2));
    cfg.ref_time = static_cast<int>(t.get_int("consistency", "ref_time", 4));
    cfg.floor_mult = t.get_double("consistency", "floor_mult", 10.0);
    if (cfg.ref_space < 2) throw ConfigError("[consistency].ref_space: must be >= 2");
    if (cfg.ref_time < 1) throw ConfigError("[consistency].ref_time: must be >= 1");
    if (!(cfg.floor_mult >= 1.0)) throw ConfigError("[consistency].floor_mult: must be >= 1");

    cfg.out_dir = t.get_string("output", "dir", "out");
    if (cfg.out_dir.empty()) throw ConfigError("[output].dir: must not be empty");
    cfg.prefix = t.get_string("output", "prefix", "run");
    if (!valid_name(cfg.prefix)) throw ConfigError("[output].prefix: letters, digits, _ only");

    cfg.echo = t.canonical_dump();
    cfg.hash = t.hash_hex();
    return cfg;
}

} // namespace fkg
