#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "polya/cli.hpp"
#include "polya/errors.hpp"

namespace polya::cli {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) fail(path + "." + it.key(), "unknown key");
}

double get_number(const json& j, const char* key, const std::string& path, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path + "." + key, "expected a finite number");
    return d;
}

long long get_integer(const json& j, const char* key, const std::string& path, long long fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    fail(path + "." + key, "expected an integer");
}

std::string get_string(const json& j, const char* key, const std::string& path, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_numbers(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) return {};
    const json& v = j.at(key);
    if (!v.is_array()) fail(path + "." + key, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_number()) fail(path + "." + key + "[" + std::to_string(k) + "]", "expected a number");
        out.push_back(v[k].get<double>());
    }
    return out;
}

Space parse_space(const std::string& s, const std::string& path) {
    if (s == "H2") return Space::H2;
    if (s == "M") return Space::M;
    fail(path, "space must be \"H2\" or \"M\"");
}

Family parse_family(const std::string& s, const std::string& path) {
    for (Family f : {Family::gaussian, Family::laguerre_h2, Family::laguerre_m, Family::polya_product, Family::polya_product_m})
        if (to_string(f) == s) return f;
    fail(path, "unknown family \"" + s + "\"");
}

struct Inherited {
    std::optional<Space> space;
    std::optional<int> n;
    std::optional<double> nu;
};

EnsembleConfig ensemble_from(const json& j, const std::string& path, const Inherited& parent);

WeightSpec weight_from(const json& j, const std::string& path, Space space, int n, double nu) {
    if (!j.is_object()) fail(path, "expected an object");
    if (!j.contains("family")) fail(path + ".family", "missing");
    const Family f = parse_family(get_string(j, "family", path, ""), path + ".family");
    WeightSpec w;
    switch (f) {
        case Family::gaussian:
            only_keys(j, path, {"family", "variance"});
            w = WeightSpec::gaussian(n, get_number(j, "variance", path, 1.0));
            break;
        case Family::laguerre_h2:
            only_keys(j, path, {"family", "nu"});
            w = WeightSpec::laguerre_h2(n, get_number(j, "nu", path, 0.0));
            break;
        case Family::laguerre_m:
            only_keys(j, path, {"family", "scale"});
            w = WeightSpec::laguerre_m(n, nu, get_number(j, "scale", path, 1.0));
            break;
        case Family::polya_product: {
            only_keys(j, path, {"family", "gamma", "deltas", "support"});
            const std::string sup = get_string(j, "support", path, "real");
            if (sup != "real" && sup != "positive") fail(path + ".support", "support must be \"real\" or \"positive\"");
            w = WeightSpec::polya_product(n, get_number(j, "gamma", path, 0.0), get_numbers(j, "deltas", path),
                                          sup == "real" ? Support::real : Support::positive);
            break;
        }
        case Family::polya_product_m:
            only_keys(j, path, {"family", "deltas", "shift"});
            w = WeightSpec::polya_product_m(n, nu, get_numbers(j, "deltas", path), get_number(j, "shift", path, 0.0));
            break;
    }
    w.space = space;
    return w;
}

EnsembleConfig ensemble_from(const json& j, const std::string& path, const Inherited& parent) {
    if (!j.is_object()) fail(path, "expected an object");
    Space space;
    if (j.contains("space"))
        space = parse_space(get_string(j, "space", path, ""), path + ".space");
    else if (parent.space)
        space = *parent.space;
    else
        fail(path + ".space", "missing");
    long long n = 0;
    if (j.contains("n"))
        n = get_integer(j, "n", path, 0);
    else if (parent.n)
        n = *parent.n;
    else
        fail(path + ".n", "missing");
    if (n < 1 || n > 64) fail(path + ".n", "n must be in [1, 64]");
    const double nu = get_number(j, "nu", path, parent.nu.value_or(0.0));
    if (space == Space::H2 && nu != 0.0) fail(path + ".nu", "nu applies to M only (laguerre_h2 takes weight.nu)");
    if (!j.contains("weight")) fail(path + ".weight", "missing");

    EnsembleConfig cfg;
    try {
        cfg.weight = weight_from(j.at("weight"), path + ".weight", space, static_cast<int>(n), nu);
    } catch (const UsageError& e) {
        fail(path + ".weight", e.what());
    }
    if (j.contains("shift") && !j.at("shift").is_null()) {
        const json& s = j.at("shift");
        const std::string sp = path + ".shift";
        if (!s.is_object()) fail(sp, "expected null or an object");
        const std::string type = get_string(s, "type", sp, "");
        if (type == "none") {
            only_keys(s, sp, {"type"});
        } else if (type == "fixed") {
            only_keys(s, sp, {"type", "x"});
            if (!s.contains("x")) fail(sp + ".x", "missing");
            cfg.shift = ShiftConfig::fixed(get_numbers(s, "x", sp));
        } else if (type == "ensemble") {
            only_keys(s, sp, {"type", "ensemble"});
            if (!s.contains("ensemble")) fail(sp + ".ensemble", "missing");
            cfg.shift = ShiftConfig::ensemble(
                ensemble_from(s.at("ensemble"), sp + ".ensemble", {space, static_cast<int>(n), nu}));
        } else {
            fail(sp + ".type", "type must be \"none\", \"fixed\" or \"ensemble\"");
        }
    }
    only_keys(j, path, {"space", "n", "nu", "weight", "shift", "run"});
    if (path != "$" && j.contains("run")) fail(path + ".run", "unknown key");
    try {
        validate(cfg);
    } catch (const UsageError& e) {
        fail(path, e.what());
    }
    return cfg;
}

json weight_json(const WeightSpec& w) {
    json j;
    j["family"] = to_string(w.family);
    switch (w.family) {
        case Family::gaussian: j["variance"] = w.variance; break;
        case Family::laguerre_h2: j["nu"] = w.nu; break;
        case Family::laguerre_m: j["scale"] = w.scale; break;
        case Family::polya_product:
            j["gamma"] = w.gamma;
            j["deltas"] = w.deltas;
            j["support"] = to_string(w.support);
            break;
        case Family::polya_product_m:
            j["deltas"] = w.deltas;
            j["shift"] = w.shift;
            break;
    }
    return j;
}

json ensemble_json(const EnsembleConfig& cfg) {
    json j;
    j["space"] = to_string(cfg.space());
    j["n"] = cfg.n();
    if (cfg.space() == Space::M) j["nu"] = cfg.nu();
    j["weight"] = weight_json(cfg.weight);
    switch (cfg.shift.mode) {
        case ShiftConfig::Mode::none: j["shift"] = nullptr; break;
        case ShiftConfig::Mode::fixed: j["shift"] = {{"type", "fixed"}, {"x", cfg.shift.x}}; break;
        case ShiftConfig::Mode::ensemble:
            j["shift"] = {{"type", "ensemble"}, {"ensemble", ensemble_json(*cfg.shift.second)}};
            break;
    }
    return j;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Grid parse_grid(const std::string& text) {
    Grid g;
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("grid \"" + text + "\": expected a:b:m");
    auto num = [&](const std::string& s, double& out) {
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, out);
        return ec == std::errc() && p == end;
    };
    double m = 0.0;
    if (!num(text.substr(0, c1), g.a) || !num(text.substr(c1 + 1, c2 - c1 - 1), g.b) || !num(text.substr(c2 + 1), m))
        throw ConfigError("grid \"" + text + "\": expected a:b:m with numbers");
    if (m != std::floor(m) || m < 2 || m > 1e7) throw ConfigError("grid \"" + text + "\": m must be an integer >= 2");
    if (!(g.a < g.b)) throw ConfigError("grid \"" + text + "\": need a < b");
    g.m = static_cast<int>(m);
    return g;
}

std::string to_string(const Grid& g) {
    return csv_number(g.a) + ":" + csv_number(g.b) + ":" + std::to_string(g.m);
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

EnsembleConfig parse_ensemble_json(const std::string& json_text) { return ensemble_from(parse_text(json_text), "$", {}); }

std::string serialize(const EnsembleConfig& cfg) { return ensemble_json(cfg).dump(2); }

RunConfig parse_config_json(const std::string& json_text) {
    const json j = parse_text(json_text);
    if (!j.is_object()) fail("$", "expected an object");
    RunConfig cfg;
    const bool has_ensemble = j.contains("space") || j.contains("n") || j.contains("weight") || j.contains("shift") || j.contains("nu");
    if (has_ensemble) cfg.ensemble = ensemble_from(j, "$", {});
    only_keys(j, "$", {"space", "n", "nu", "weight", "shift", "run"});
    if (!j.contains("run")) return cfg;
    const json& r = j.at("run");
    const std::string p = "$.run";
    only_keys(r, p, {"grid", "tolerance", "seed", "count", "bins", "range", "route", "toeplitz", "out"});
    if (r.contains("grid")) {
        try {
            cfg.grid = parse_grid(get_string(r, "grid", p, ""));
        } catch (const ConfigError& e) {
            fail(p + ".grid", e.what());
        }
    }
    if (r.contains("tolerance")) {
        cfg.tolerance = get_number(r, "tolerance", p, 0.0);
        if (!(*cfg.tolerance > 0.0)) fail(p + ".tolerance", "tolerance must be > 0");
    }
    if (r.contains("seed")) {
        const json& s = r.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            fail(p + ".seed", "expected a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    cfg.count = static_cast<int>(get_integer(r, "count", p, cfg.count));
    if (cfg.count < 1) fail(p + ".count", "count must be >= 1");
    cfg.bins = static_cast<int>(get_integer(r, "bins", p, cfg.bins));
    if (cfg.bins < 10) fail(p + ".bins", "bins must be >= 10");
    if (r.contains("range")) {
        const auto v = get_numbers(r, "range", p);
        if (v.size() != 2 || !(v[0] < v[1])) fail(p + ".range", "expected [lo, hi] with lo < hi");
        cfg.range = std::pair{v[0], v[1]};
    }
    const std::string route = get_string(r, "route", p, "series");
    if (route != "series" && route != "contour") fail(p + ".route", "route must be \"series\" or \"contour\"");
    cfg.route = route == "series" ? Strategy::series : Strategy::contour;
    if (r.contains("toeplitz")) {
        const json& t = r.at("toeplitz");
        const std::string tp = p + ".toeplitz";
        only_keys(t, tp, {"n", "L", "trials"});
        cfg.toeplitz_n = static_cast<int>(get_integer(t, "n", tp, cfg.toeplitz_n));
        cfg.toeplitz_L = static_cast<int>(get_integer(t, "L", tp, cfg.toeplitz_L));
        cfg.trials = static_cast<int>(get_integer(t, "trials", tp, cfg.trials));
        if (cfg.toeplitz_n != 0 && cfg.toeplitz_n < 2) fail(tp + ".n", "n must be >= 2 (or 0 for random)");
        if (cfg.toeplitz_L < 0 || (cfg.toeplitz_n > 0 && cfg.toeplitz_L > cfg.toeplitz_n - 1))
            fail(tp + ".L", "L must satisfy 1 <= L <= n-1 (or 0 for all)");
        if (cfg.trials < 1) fail(tp + ".trials", "trials must be >= 1");
    }
    cfg.out = get_string(r, "out", p, "");
    return cfg;
}

RunConfig parse_config(const std::string& path_or_json) {
    std::size_t k = path_or_json.find_first_not_of(" \t\r\n");
    if (k != std::string::npos && path_or_json[k] == '{') return parse_config_json(path_or_json);
    std::ifstream in(path_or_json);
    if (!in) throw IoError("cannot read config file " + path_or_json);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

std::string serialize(const RunConfig& cfg) {
    json j = cfg.ensemble ? ensemble_json(*cfg.ensemble) : json::object();
    json r;
    r["grid"] = to_string(cfg.grid);
    if (cfg.tolerance) r["tolerance"] = *cfg.tolerance;
    r["seed"] = cfg.seed;
    r["count"] = cfg.count;
    r["bins"] = cfg.bins;
    if (cfg.range) r["range"] = {cfg.range->first, cfg.range->second};
    r["route"] = cfg.route == Strategy::series ? "series" : "contour";
    r["toeplitz"] = {{"n", cfg.toeplitz_n}, {"L", cfg.toeplitz_L}, {"trials", cfg.trials}};
    r["out"] = cfg.out;
    j["run"] = r;
    return j.dump(2);
}

}  // namespace polya::cli
