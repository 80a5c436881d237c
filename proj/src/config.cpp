#include "caplab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "caplab/errors.hpp"
#include "json.hpp"

namespace caplab {
namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string("config: ") + what + " must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
void read_positive(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("config: ") + key + " must be a number");
    const double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string("config: ") + key + " must be positive");
    if constexpr (std::is_integral_v<T>) {
        if (x != std::floor(x)) throw ConfigError(std::string("config: ") + key + " must be an integer");
    }
    out = static_cast<T>(x);
}

void parse_domain(const json& d, RunConfig& cfg) {
    if (!d.is_object()) throw ConfigError("config: domain must be an object");
    if (!d.contains("coefficients") || !d.at("coefficients").is_array() || d.at("coefficients").empty())
        throw ConfigError("config: domain.coefficients must be a nonempty array");
    cfg.map.coefficients.clear();
    for (const auto& c : d.at("coefficients")) cfg.map.coefficients.push_back(parse_complex(c, "coefficient"));
    if (d.contains("shift")) cfg.map.shift = parse_complex(d.at("shift"), "shift");
    if (d.contains("metric")) {
        const auto& m = d.at("metric");
        if (m == "sphere") cfg.map.metric = Metric::Sphere;
        else if (m == "plane") cfg.map.metric = Metric::Plane;
        else throw ConfigError("config: metric must be \"sphere\" or \"plane\"");
    }
    read_positive(d, "n_r", cfg.resolutions.n_r);
    read_positive(d, "n_theta", cfg.resolutions.n_theta);
    try {
        cfg.map.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    RunConfig cfg;
    try {
        if (doc.contains("domain")) {
            parse_domain(doc.at("domain"), cfg);
        } else {
            parse_domain(doc, cfg);
        }
        if (doc.contains("resolutions")) {
            const auto& r = doc.at("resolutions");
            if (!r.is_object()) throw ConfigError("config: resolutions must be an object");
            read_positive(r, "rings", cfg.resolutions.rings);
            read_positive(r, "sl_grid", cfg.resolutions.sl_grid);
            read_positive(r, "n_r", cfg.resolutions.n_r);
            read_positive(r, "n_theta", cfg.resolutions.n_theta);
        }
        if (doc.contains("tolerances")) {
            const auto& t = doc.at("tolerances");
            if (!t.is_object()) throw ConfigError("config: tolerances must be an object");
            read_positive(t, "residual_V", cfg.tolerances.residual_V);
        }
        if (doc.contains("sweep")) {
            const auto& s = doc.at("sweep");
            if (!s.is_object()) throw ConfigError("config: sweep must be an object");
            read_positive(s, "steps", cfg.sweep.steps);
            read_positive(s, "amplitude", cfg.sweep.amplitude);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.resolutions.rings < 4) throw ConfigError("config: rings must be at least 4");
    if (cfg.resolutions.sl_grid < 64) throw ConfigError("config: sl_grid must be at least 64");
    if (cfg.resolutions.n_r < 2 || cfg.resolutions.n_theta < 4) throw ConfigError("config: quadrature too coarse");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

RunConfig scale_resolutions(const RunConfig& config, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw ConfigError("resolution scale must be positive");
    RunConfig out = config;
    auto scale = [&](double x) { return std::max(1.0, std::round(x * factor)); };
    out.resolutions.rings = std::max(4, static_cast<int>(scale(config.resolutions.rings)));
    out.resolutions.sl_grid = std::max<std::size_t>(64, static_cast<std::size_t>(scale(config.resolutions.sl_grid)));
    out.resolutions.n_r = std::max(2, static_cast<int>(scale(config.resolutions.n_r)));
    out.resolutions.n_theta = std::max(4, static_cast<int>(scale(config.resolutions.n_theta)));
    return out;
}

ConformalDomain make_domain(const RunConfig& config) {
    return ConformalDomain(config.map, {config.resolutions.n_r, config.resolutions.n_theta});
}

}  // namespace caplab
