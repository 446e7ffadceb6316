#include "ccch/config.hpp"

#include "ccch/grid.hpp"

#include <cmath>
#include <set>
#include <vector>

namespace ccch {

namespace {

using nlohmann::json;

json parse_rejecting_duplicates(const std::string& text) {
    std::vector<std::set<std::string>> scopes;
    json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start:
                scopes.emplace_back();
                break;
            case json::parse_event_t::object_end:
                scopes.pop_back();
                break;
            case json::parse_event_t::key: {
                const std::string key = parsed.get<std::string>();
                if (!scopes.back().insert(key).second)
                    throw ConfigError("duplicate key '" + key + "' in configuration");
                break;
            }
            default:
                break;
        }
        return true;
    };
    try {
        return json::parse(text, cb);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("configuration is not valid JSON: ") + err.what());
    }
}

// Pulls typed values out of one JSON object, tracks which keys were
// consumed, and records the effective value (default or given) in the echo.
class Reader {
  public:
    Reader(const json& source, json& echo, std::string path)
        : src_(source), echo_(echo), path_(std::move(path)) {
        if (!src_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    bool has(const std::string& key) const { return src_.contains(key); }

    double number(const std::string& key, double fallback) {
        return fetch_number(key, &fallback);
    }
    double number(const std::string& key) { return fetch_number(key, nullptr); }

    long long integer(const std::string& key, long long fallback) {
        return fetch_integer(key, &fallback);
    }
    long long integer(const std::string& key) { return fetch_integer(key, nullptr); }

    bool boolean(const std::string& key, bool fallback) {
        seen_.insert(key);
        if (!src_.contains(key)) {
            echo_[key] = fallback;
            return fallback;
        }
        if (!src_[key].is_boolean()) throw ConfigError(at(key) + ": expected a boolean");
        echo_[key] = src_[key];
        return src_[key].get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        seen_.insert(key);
        if (!src_.contains(key)) {
            echo_[key] = fallback;
            return fallback;
        }
        if (!src_[key].is_string()) throw ConfigError(at(key) + ": expected a string");
        echo_[key] = src_[key];
        return src_[key].get<std::string>();
    }

    std::vector<double> number_list(const std::string& key, std::vector<double> fallback) {
        seen_.insert(key);
        if (!src_.contains(key)) {
            echo_[key] = fallback;
            return fallback;
        }
        if (!src_[key].is_array()) throw ConfigError(at(key) + ": expected an array of numbers");
        std::vector<double> out;
        for (const auto& item : src_[key]) {
            if (!item.is_number()) throw ConfigError(at(key) + ": expected an array of numbers");
            out.push_back(item.get<double>());
        }
        echo_[key] = out;
        return out;
    }

    const json* object(const std::string& key) {
        seen_.insert(key);
        if (!src_.contains(key)) return nullptr;
        if (!src_[key].is_object()) throw ConfigError(at(key) + ": expected an object");
        return &src_[key];
    }

    json& echo_slot(const std::string& key) { return echo_[key]; }

    void mark_seen(const std::string& key) { seen_.insert(key); }

    void reject_unknown() const {
        for (const auto& [key, value] : src_.items())
            if (!seen_.count(key)) throw ConfigError("unknown key '" + at(key) + "'");
    }

    std::string at(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

  private:
    double fetch_number(const std::string& key, const double* fallback) {
        seen_.insert(key);
        if (!src_.contains(key)) {
            if (!fallback) throw ConfigError(at(key) + ": required key is missing");
            echo_[key] = *fallback;
            return *fallback;
        }
        if (!src_[key].is_number()) throw ConfigError(at(key) + ": expected a number");
        echo_[key] = src_[key];
        return src_[key].get<double>();
    }

    long long fetch_integer(const std::string& key, const long long* fallback) {
        seen_.insert(key);
        if (!src_.contains(key)) {
            if (!fallback) throw ConfigError(at(key) + ": required key is missing");
            echo_[key] = *fallback;
            return *fallback;
        }
        if (!src_[key].is_number_integer())
            throw ConfigError(at(key) + ": expected an integer");
        echo_[key] = src_[key];
        return src_[key].get<long long>();
    }

    const json& src_;
    json& echo_;
    std::string path_;
    std::set<std::string> seen_;
};

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

bool power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

void read_pde_block(Reader& r, int default_p = 1, int default_q = 1, double default_a = 2.0,
                    double default_b = 2.0) {
    const long long p = r.integer("p", default_p);
    const long long q = r.integer("q", default_q);
    check(p >= 1, "p must be >= 1");
    check(q >= 1, "q must be >= 1");
    r.number("a", default_a);
    r.number("b", default_b);
}

void read_grid_block(Reader& r, long long default_n = 1024) {
    const long long n = r.integer("n", default_n);
    check(power_of_two(n) && n >= 8, "n must be a power of two >= 8");
    const double length = r.number("length", kTwoPi);
    check(length > 0.0, "length must be positive");
}

double step_block(Reader& r, double default_dt = 1e-3) {
    const double dt = r.number("dt", default_dt);
    check(dt > 0.0, "dt must be positive");
    const double cfl = r.number("cfl", 0.5);
    check(cfl > 0.0 && cfl <= 1.0, "cfl must lie in (0, 1]");
    return dt;
}

void validate_datum(const json& datum, const std::string& path, json& echo) {
    Reader r(datum, echo, path);
    const std::string type = r.text("type", "zero");
    if (type == "zero") {
    } else if (type == "cosine_modes") {
        if (!datum.contains("modes") || !datum["modes"].is_array())
            throw ConfigError(path + ".modes: expected an array of {k, cos, sin} objects");
        json echoed_modes = json::array();
        for (const auto& mode : datum["modes"]) {
            json mode_echo;
            Reader mr(mode, mode_echo, path + ".modes");
            const long long k = mr.integer("k");
            check(k >= 1, path + ".modes.k must be >= 1");
            mr.number("cos", 0.0);
            mr.number("sin", 0.0);
            mr.reject_unknown();
            echoed_modes.push_back(mode_echo);
        }
        r.mark_seen("modes");
        r.echo_slot("modes") = echoed_modes;
    } else if (type == "gaussian" || type == "bump_momentum") {
        const double amp = r.number("amplitude", 1.0);
        check(std::isfinite(amp), path + ".amplitude must be finite");
        const double width = r.number("width", 1.0);
        check(width > 0.0, path + ".width must be positive");
        r.number("center", -1.0);  // -1 sentinel: box midpoint
    } else if (type == "random_band") {
        const long long kmax = r.integer("kmax", 8);
        check(kmax >= 1, path + ".kmax must be >= 1");
        r.number("amplitude", 0.25);
    } else {
        throw ConfigError(path + ".type: unknown initial-datum type '" + type + "'");
    }
    r.reject_unknown();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    const json root = parse_rejecting_duplicates(text);
    if (!root.is_object()) throw ConfigError("configuration must be a JSON object");
    if (!root.contains("command") || !root["command"].is_string())
        throw ConfigError("command: required string key is missing");

    RunConfig cfg;
    cfg.command = root["command"].get<std::string>();
    cfg.echo["command"] = cfg.command;

    Reader r(root, cfg.echo, "");
    r.text("command", cfg.command);

    if (cfg.command == "simulate") {
        read_pde_block(r);
        read_grid_block(r);
        step_block(r);
        const double t_final = r.number("t_final", 1.0);
        check(t_final > 0.0, "t_final must be positive");
        const long long monitor = r.integer("monitor_every", 10);
        check(monitor >= 1, "monitor_every must be >= 1");
        const long long dealias = r.integer("dealias_degree", 0);
        check(dealias == 0 || dealias >= 2, "dealias_degree must be >= max{p,q}+1 (or 0 for auto)");
        const std::string form = r.text("formulation", "velocity");
        check(form == "velocity" || form == "momentum",
              "formulation must be 'velocity' or 'momentum'");
        const double ms = r.number("monitor_s", 3.0);
        check(std::isfinite(ms), "monitor_s must be finite");
        r.boolean("check_support", false);
        const double thr = r.number("support_threshold", 1e-10);
        check(thr > 0.0, "support_threshold must be positive");
        if (const json* u0 = r.object("u0"))
            validate_datum(*u0, "u0", r.echo_slot("u0"));
        else
            r.echo_slot("u0") = json{{"type", "zero"}};
        if (const json* v0 = r.object("v0"))
            validate_datum(*v0, "v0", r.echo_slot("v0"));
        else
            r.echo_slot("v0") = json{{"type", "zero"}};
    } else if (cfg.command == "peakon") {
        read_pde_block(r);
        const std::string domain = r.text("domain", "line");
        check(domain == "line" || domain == "circle", "domain must be 'line' or 'circle'");
        const double t_final = r.number("t_final", 1.0);
        check(t_final > 0.0, "t_final must be positive");
        const double dt = r.number("dt", 1e-3);
        check(dt > 0.0, "dt must be positive");
        if (r.has("c")) {
            const double c = r.number("c");
            check(c > 0.0, "c must be positive");
            r.number("x0", 0.0);
        } else {
            const auto f = r.number_list("f", {});
            const auto g = r.number_list("g", {});
            const auto h = r.number_list("h", {});
            const auto k = r.number_list("k", {});
            check(!f.empty() && f.size() == g.size(), "f and g must pair up and be nonempty");
            check(!h.empty() && h.size() == k.size(), "h and k must pair up and be nonempty");
        }
    } else if (cfg.command == "norms") {
        read_grid_block(r);
        r.number_list("s_list", {0.0, 1.0, 2.5, 3.0});
        const auto rlist = r.number_list("besov_r", {1.0, 2.0});
        for (double rr : rlist) check(rr >= 1.0, "besov_r entries must be >= 1");
        const auto plist = r.number_list("lp", {2.0});
        for (double pp : plist) check(pp >= 1.0, "lp entries must be >= 1");
        if (const json* u0 = r.object("field"))
            validate_datum(*u0, "field", r.echo_slot("field"));
        else
            r.echo_slot("field") = json{{"type", "zero"}};
    } else if (cfg.command == "exp-nonuniform") {
        read_pde_block(r);
        const double s = r.number("s", 3.0);
        check(s > 2.5, "s must exceed 5/2");
        const double delta = r.number("delta", 0.5);
        check(delta > 0.0 && delta < 1.0, "delta must lie in (0,1)");
        const auto lambdas = r.number_list("lambdas", {64.0, 128.0, 256.0, 512.0, 1024.0});
        check(lambdas.size() >= 2, "lambdas needs at least two entries");
        for (double l : lambdas)
            check(l >= 4.0 && l == std::floor(l), "lambdas entries must be integers >= 4");
        const double t_probe = r.number("t_probe", 1.0);
        check(t_probe > 0.0, "t_probe must be positive");
        step_block(r, 0.02);
    } else if (cfg.command == "exp-hoelder") {
        read_pde_block(r);
        const double s = r.number("s", 3.0);
        check(s > 2.5, "s must exceed 5/2");
        const double rr = r.number("r", 2.0);
        check(rr >= 0.0 && rr < s, "r must satisfy 0 <= r < s");
        const auto eps = r.number_list("eps_list", {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4});
        check(eps.size() >= 2, "eps_list needs at least two entries");
        for (double e : eps) check(e > 0.0, "eps_list entries must be positive");
        read_grid_block(r, 256);
        const double t_final = r.number("t_final", 0.2);
        check(t_final > 0.0, "t_final must be positive");
        const double dt = r.number("dt", 1e-3);
        check(dt > 0.0, "dt must be positive");
        const double amp = r.number("base_amplitude", 0.25);
        check(amp > 0.0, "base_amplitude must be positive");
    } else if (cfg.command == "exp-conservation") {
        read_pde_block(r, 2, 2, 1.0, 1.0);
        read_grid_block(r, 256);
        const double t_final = r.number("t_final", 1.0);
        check(t_final > 0.0, "t_final must be positive");
        const double dt = r.number("dt", 1e-3);
        check(dt > 0.0, "dt must be positive");
        const long long monitor = r.integer("monitor_every", 10);
        check(monitor >= 1, "monitor_every must be >= 1");
        const double amp = r.number("amplitude", 0.4);
        check(amp > 0.0, "amplitude must be positive");
        const long long band = r.integer("band", 6);
        check(band >= 1, "band must be >= 1");
        const double drift = r.number("drift_tol", 1e-8);
        check(drift > 0.0, "drift_tol must be positive");
        const double rate = r.number("rate_tol", 1e-8);
        check(rate > 0.0, "rate_tol must be positive");
    } else if (cfg.command == "check-peakon") {
        read_pde_block(r, 1, 1, 2.0, 2.0);
        const double c = r.number("c", 1.0);
        check(c > 0.0, "c must be positive");
        const double t_final = r.number("t_final", 1.0);
        check(t_final > 0.0, "t_final must be positive");
        const double dt = r.number("dt", 1e-3);
        check(dt > 0.0, "dt must be positive");
        const double scale = r.number("amplitude_scale", 1.0);
        check(scale > 0.0, "amplitude_scale must be positive");
    } else {
        throw ConfigError("command: unknown command '" + cfg.command + "'");
    }

    r.reject_unknown();
    return cfg;
}

}  // namespace ccch
