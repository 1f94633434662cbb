#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace parastab::cli {

using nlohmann::json;

BasinGridSpec BasinOptions::grid() const {
    BasinGridSpec g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.y_min = y_min;
    g.y_max = y_max;
    g.nx = nx;
    g.ny = ny;
    g.horizon_periods = horizon_periods;
    g.escape_x = escape_x;
    return g;
}

IntegratorSettings BasinOptions::settings() const {
    IntegratorSettings s;
    s.rel_tol = rel_tol;
    s.abs_tol = abs_tol;
    return s;
}

namespace {

// Reads keys of one JSON object into fields, rejecting anything unknown.
class Reader {
public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ConfigError(where_ + ": expected a JSON object");
    }

    template <typename T>
    Reader& field(const char* key, T& dst) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) return *this;
        try {
            dst = it->template get<T>();
        } catch (const json::exception&) {
            throw ConfigError(where_ + "." + key + ": wrong type");
        }
        return *this;
    }

    Reader& section(const char* key) {
        seen_.insert(key);
        return *this;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
        }
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

template <typename Fn>
void read_section(const json& root, const char* key, Fn&& fn) {
    auto it = root.find(key);
    if (it == root.end()) return;
    Reader r(*it, key);
    fn(r);
    r.finish();
}

}  // namespace

RunConfig parse_config(const std::string& json_text, RunConfig c) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    Reader top(root, "config");
    top.field("delta_hat", c.params.delta_hat)
        .field("gamma", c.params.gamma)
        .field("beta", c.params.beta)
        .field("omega_m", c.params.omega_m)
        .field("f_amp", c.params.f_amp)
        .field("omega_f", c.params.omega_f)
        .field("out", c.out)
        .field("workers", c.workers)
        .field("seed", c.seed);
    for (const char* s : {"trajectory", "tongues", "floquet_map", "melnikov", "thresholds", "basin",
                          "integrity", "verify"}) {
        top.section(s);
    }
    top.finish();

    read_section(root, "trajectory", [&](Reader& r) {
        auto& o = c.trajectory;
        r.field("rhs", o.rhs).field("x0", o.x0).field("y0", o.y0).field("periods", o.periods);
        r.field("dt", o.dt).field("rel_tol", o.rel_tol).field("abs_tol", o.abs_tol);
    });
    read_section(root, "tongues", [&](Reader& r) {
        auto& o = c.tongues;
        r.field("k_max", o.k_max).field("gamma_min", o.gamma_min).field("gamma_max", o.gamma_max);
        r.field("gamma_count", o.gamma_count).field("truncation", o.truncation);
        r.field("damped_overlay", o.damped_overlay).field("svg", o.svg);
    });
    read_section(root, "floquet_map", [&](Reader& r) {
        auto& o = c.floquet_map;
        r.field("gamma_min", o.gamma_min).field("gamma_max", o.gamma_max);
        r.field("gamma_count", o.gamma_count).field("delta_min", o.delta_min);
        r.field("delta_max", o.delta_max).field("delta_count", o.delta_count);
    });
    read_section(root, "melnikov", [&](Reader& r) {
        r.field("t0", c.melnikov.t0).field("quadrature", c.melnikov.quadrature);
    });
    read_section(root, "thresholds", [&](Reader& r) {
        auto& o = c.thresholds;
        r.field("gamma_min", o.gamma_min).field("gamma_max", o.gamma_max);
        r.field("gamma_count", o.gamma_count).field("omega_fs", o.omega_fs);
    });
    read_section(root, "basin", [&](Reader& r) {
        auto& o = c.basin;
        r.field("x_min", o.x_min).field("x_max", o.x_max).field("y_min", o.y_min);
        r.field("y_max", o.y_max).field("nx", o.nx).field("ny", o.ny);
        r.field("horizon_periods", o.horizon_periods).field("escape_x", o.escape_x);
        r.field("rel_tol", o.rel_tol).field("abs_tol", o.abs_tol);
    });
    read_section(root, "integrity", [&](Reader& r) {
        auto& o = c.integrity;
        r.field("f_min", o.f_min).field("f_max", o.f_max).field("f_count", o.f_count);
        r.field("gammas", o.gammas).field("stop_below", o.stop_below).field("svg", o.svg);
    });
    read_section(root, "verify", [&](Reader& r) {
        r.field("truncation", c.verify.truncation)
            .field("melnikov_samples", c.verify.melnikov_samples);
    });
    return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string dump_config(const RunConfig& c) {
    json j;
    j["delta_hat"] = c.params.delta_hat;
    j["gamma"] = c.params.gamma;
    j["beta"] = c.params.beta;
    j["omega_m"] = c.params.omega_m;
    j["f_amp"] = c.params.f_amp;
    j["omega_f"] = c.params.omega_f;
    j["out"] = c.out;
    j["workers"] = c.workers;
    j["seed"] = c.seed;

    const auto& t = c.trajectory;
    j["trajectory"] = {{"rhs", t.rhs},         {"x0", t.x0}, {"y0", t.y0}, {"periods", t.periods},
                       {"dt", t.dt},           {"rel_tol", t.rel_tol},   {"abs_tol", t.abs_tol}};
    const auto& g = c.tongues;
    j["tongues"] = {{"k_max", g.k_max},
                    {"gamma_min", g.gamma_min},
                    {"gamma_max", g.gamma_max},
                    {"gamma_count", g.gamma_count},
                    {"truncation", g.truncation},
                    {"damped_overlay", g.damped_overlay},
                    {"svg", g.svg}};
    const auto& f = c.floquet_map;
    j["floquet_map"] = {{"gamma_min", f.gamma_min},     {"gamma_max", f.gamma_max},
                        {"gamma_count", f.gamma_count}, {"delta_min", f.delta_min},
                        {"delta_max", f.delta_max},     {"delta_count", f.delta_count}};
    j["melnikov"] = {{"t0", c.melnikov.t0}, {"quadrature", c.melnikov.quadrature}};
    const auto& h = c.thresholds;
    j["thresholds"] = {{"gamma_min", h.gamma_min},
                       {"gamma_max", h.gamma_max},
                       {"gamma_count", h.gamma_count},
                       {"omega_fs", h.omega_fs}};
    const auto& b = c.basin;
    j["basin"] = {{"x_min", b.x_min},     {"x_max", b.x_max},
                  {"y_min", b.y_min},     {"y_max", b.y_max},
                  {"nx", b.nx},           {"ny", b.ny},
                  {"horizon_periods", b.horizon_periods},
                  {"escape_x", b.escape_x}, {"rel_tol", b.rel_tol},
                  {"abs_tol", b.abs_tol}};
    const auto& i = c.integrity;
    j["integrity"] = {{"f_min", i.f_min},   {"f_max", i.f_max},         {"f_count", i.f_count},
                      {"gammas", i.gammas}, {"stop_below", i.stop_below}, {"svg", i.svg}};
    j["verify"] = {{"truncation", c.verify.truncation},
                   {"melnikov_samples", c.verify.melnikov_samples}};
    return j.dump(2) + "\n";
}

}  // namespace parastab::cli
