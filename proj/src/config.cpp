#include "fanocav/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "fanocav/errors.hpp"

namespace fanocav {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Value {
    std::string_view raw;
    int line = 0;
    std::string key;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("line " + std::to_string(line) + ": " + key + ": " + why, line);
    }

    double number() const {
        double v = 0.0;
        const auto* end = raw.data() + raw.size();
        const auto res = std::from_chars(raw.data(), end, v);
        if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) fail("expected a number, got '" + std::string(raw) + "'");
        return v;
    }

    double positive() const {
        const double v = number();
        if (!(v > 0.0)) fail("must be positive");
        return v;
    }

    double non_negative() const {
        const double v = number();
        if (!(v >= 0.0)) fail("must be non-negative");
        return v;
    }

    int integer(int min_value) const {
        int v = 0;
        const auto* end = raw.data() + raw.size();
        const auto res = std::from_chars(raw.data(), end, v);
        if (res.ec != std::errc() || res.ptr != end) fail("expected an integer, got '" + std::string(raw) + "'");
        if (v < min_value) fail("must be at least " + std::to_string(min_value));
        return v;
    }

    std::string text() const {
        std::string_view s = raw;
        if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
            s = s.substr(1, s.size() - 2);
        }
        return std::string(s);
    }

    std::vector<double> list() const {
        if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') fail("expected a list like [0.0, 0.6]");
        std::vector<double> out;
        std::string_view body = trim(raw.substr(1, raw.size() - 2));
        while (!body.empty()) {
            const auto comma = body.find(',');
            Value item{trim(body.substr(0, comma)), line, key};
            out.push_back(item.number());
            if (comma == std::string_view::npos) break;
            body = trim(body.substr(comma + 1));
            if (body.empty()) fail("trailing comma in list");
        }
        return out;
    }
};

using Handler = std::function<void(RunConfig&, const Value&)>;

struct Deferred {
    std::optional<double> delta1_over_om;
    std::optional<double> delta2_over_om;
    bool probe_power_set = false;
};

}  // namespace

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys{
        "m1_kg", "m2_kg", "Omega_m_Hz", "gamma_Hz", "G1_Hz_per_nm", "G2_Hz_per_nm", "kappa_Hz", "eta",
        "P_c_W", "P_p_W", "lambda_c_m", "Delta1_over_Om", "Delta2_over_Om", "topology", "g_over_Om",
        "grid_min", "grid_max", "grid_points", "prominence", "scale_xbar", "fig5_grid_min", "fig5_grid_max",
        "fig5_grid_points", "fig5_g_min", "fig5_g_max", "fig5_n_g"};
    return keys;
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    Deferred deferred;
    const double nm = 1e9;  // per nm -> per m

    const std::map<std::string, Handler, std::less<>> handlers{
        {"m1_kg", [](RunConfig& c, const Value& v) { c.params.mass1 = v.positive(); }},
        {"m2_kg", [](RunConfig& c, const Value& v) { c.params.mass2 = v.positive(); }},
        {"Omega_m_Hz", [](RunConfig& c, const Value& v) { c.params.mech_freq1 = c.params.mech_freq2 = kTwoPi * v.positive(); }},
        {"gamma_Hz", [](RunConfig& c, const Value& v) { c.params.damping1 = c.params.damping2 = kTwoPi * v.non_negative(); }},
        {"G1_Hz_per_nm", [nm](RunConfig& c, const Value& v) { c.params.pull1 = kTwoPi * v.number() * nm; }},
        {"G2_Hz_per_nm", [nm](RunConfig& c, const Value& v) { c.params.pull2 = kTwoPi * v.number() * nm; }},
        {"kappa_Hz", [](RunConfig& c, const Value& v) { c.params.kappa = kTwoPi * v.positive(); }},
        {"eta", [](RunConfig& c, const Value& v) {
             const double e = v.number();
             if (!(e > 0.0 && e <= 1.0)) v.fail("must lie in (0, 1]");
             c.params.eta = e;
         }},
        {"P_c_W", [](RunConfig& c, const Value& v) { c.params.pump_power = v.positive(); }},
        {"P_p_W", [&deferred](RunConfig& c, const Value& v) {
             c.params.probe_power = v.positive();
             deferred.probe_power_set = true;
         }},
        {"lambda_c_m", [](RunConfig& c, const Value& v) { c.params.pump_wavelength = v.positive(); }},
        {"Delta1_over_Om", [&deferred](RunConfig&, const Value& v) { deferred.delta1_over_om = v.number(); }},
        {"Delta2_over_Om", [&deferred](RunConfig&, const Value& v) { deferred.delta2_over_om = v.number(); }},
        {"topology", [](RunConfig& c, const Value& v) {
             try {
                 c.topology = parse_topology(v.text());
             } catch (const DomainError& e) {
                 v.fail(e.what());
             }
         }},
        {"g_over_Om", [](RunConfig& c, const Value& v) {
             auto list = v.list();
             if (list.empty()) v.fail("list must not be empty");
             for (double g : list) {
                 if (!(g >= 0.0)) v.fail("entries must be non-negative");
             }
             c.g_over_om = std::move(list);
         }},
        {"grid_min", [](RunConfig& c, const Value& v) { c.grid.omega_min_over_om = v.number(); }},
        {"grid_max", [](RunConfig& c, const Value& v) { c.grid.omega_max_over_om = v.number(); }},
        {"grid_points", [](RunConfig& c, const Value& v) { c.grid.n_points = v.integer(2); }},
        {"prominence", [](RunConfig& c, const Value& v) { c.prominence = v.non_negative(); }},
        {"scale_xbar", [](RunConfig& c, const Value& v) { c.scale_xbar = v.number(); }},
        {"fig5_grid_min", [](RunConfig& c, const Value& v) { c.separation.grid.omega_min_over_om = v.number(); }},
        {"fig5_grid_max", [](RunConfig& c, const Value& v) { c.separation.grid.omega_max_over_om = v.number(); }},
        {"fig5_grid_points", [](RunConfig& c, const Value& v) { c.separation.grid.n_points = v.integer(2); }},
        {"fig5_g_min", [](RunConfig& c, const Value& v) { c.separation.g_min = v.non_negative(); }},
        {"fig5_g_max", [](RunConfig& c, const Value& v) { c.separation.g_max = v.positive(); }},
        {"fig5_n_g", [](RunConfig& c, const Value& v) { c.separation.n_g = v.integer(2); }},
    };

    std::set<std::string, std::less<>> seen;
    std::istringstream in{std::string(text)};
    std::string raw_line;
    int line_no = 0;
    int grid_line = 0;
    int fig5_line = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        }
        const std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (const auto hash = value.find('#'); hash != std::string_view::npos && value.front() != '"') {
            value = trim(value.substr(0, hash));
        }
        const auto it = handlers.find(key);
        if (it == handlers.end()) {
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", line_no);
        }
        if (!seen.insert(key).second) {
            throw ParseError("line " + std::to_string(line_no) + ": repeated key '" + key + "'", line_no);
        }
        if (value.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": " + key + ": missing value", line_no);
        }
        if (key.starts_with("grid_")) grid_line = line_no;
        if (key.starts_with("fig5_")) fig5_line = line_no;
        it->second(cfg, Value{value, line_no, key});
    }

    const double omega_m = cfg.params.mech_freq1;
    cfg.params.detuning1 = deferred.delta1_over_om.value_or(-1.0) * omega_m;
    cfg.params.detuning2 = deferred.delta2_over_om.value_or(-1.0) * omega_m;
    if (!deferred.probe_power_set) cfg.params.probe_power = cfg.params.pump_power / 100.0;

    try {
        cfg.grid.validate();
    } catch (const DomainError& e) {
        throw ParseError(std::string("grid_min/grid_max/grid_points: ") + e.what(), grid_line);
    }
    try {
        cfg.separation.grid.validate();
        if (!(cfg.separation.g_min < cfg.separation.g_max)) throw DomainError("need fig5_g_min < fig5_g_max");
    } catch (const DomainError& e) {
        throw ParseError(std::string("fig5 settings: ") + e.what(), fig5_line);
    }
    try {
        cfg.params.validate();
    } catch (const DomainError& e) {
        throw ParseError(std::string("parameters: ") + e.what(), 0);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace fanocav
