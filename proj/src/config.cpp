#include "wmdisc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wmdisc/errors.hpp"

namespace wmdisc {

namespace {

using nlohmann::json;

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw config_error(std::string("config field '") + key + "' must be a number");
    return j[key].get<double>();
}

SweepParam parse_param(const std::string& name) {
    if (name == "eta") return SweepParam::eta;
    if (name == "g") return SweepParam::g;
    if (name == "eps") return SweepParam::eps;
    if (name == "delta_f_mag") return SweepParam::delta_f_mag;
    throw config_error("config field 'sweep.param' must be one of eta, g, eps, delta_f_mag (got '" +
                       name + "')");
}

SweepSpec parse_sweep(const json& j) {
    static const std::set<std::string> known{"param", "start", "stop", "count", "spacing"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key))
            throw config_error("unknown config field 'sweep." + key + "'");
    }
    for (const char* key : {"param", "start", "stop", "count"})
        if (!j.contains(key))
            throw config_error(std::string("config field 'sweep.") + key + "' is required");

    SweepSpec s{};
    s.param = parse_param(j["param"].get<std::string>());
    s.start = get_number(j, "start", 0.0);
    s.stop = get_number(j, "stop", 0.0);
    if (!j["count"].is_number_integer())
        throw config_error("config field 'sweep.count' must be an integer");
    s.count = j["count"].get<int>();
    if (s.count < 2)
        throw config_error("config field 'sweep.count' must be >= 2");
    const std::string spacing = j.value("spacing", std::string("linear"));
    if (spacing == "log") {
        if (!(s.start > 0.0 && s.stop > 0.0))
            throw config_error("log-spaced sweep requires positive start and stop");
        s.log_spacing = true;
    } else if (spacing == "linear") {
        s.log_spacing = false;
    } else {
        throw config_error("config field 'sweep.spacing' must be 'linear' or 'log'");
    }
    return s;
}

} // namespace

const char* sweep_param_name(SweepParam p) {
    switch (p) {
        case SweepParam::eta: return "eta";
        case SweepParam::g: return "g";
        case SweepParam::eps: return "eps";
        default: return "delta_f_mag";
    }
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config must be a JSON object");

    static const std::set<std::string> known{
        "eta_re",  "eta_im", "g",     "eps", "delta_n_mag", "delta_f_mag",
        "delta_f_gaussian", "samples", "seed", "sweep"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key))
            throw config_error("unknown config field '" + key + "'");
    }

    ExperimentConfig c;
    c.eta_re = get_number(j, "eta_re", c.eta_re);
    c.eta_im = get_number(j, "eta_im", c.eta_im);
    c.g = get_number(j, "g", c.g);
    c.eps = get_number(j, "eps", c.eps);
    c.delta_n_mag = get_number(j, "delta_n_mag", c.delta_n_mag);
    c.delta_f_mag = get_number(j, "delta_f_mag", c.delta_f_mag);
    if (j.contains("delta_f_gaussian")) {
        if (!j["delta_f_gaussian"].is_boolean())
            throw config_error("config field 'delta_f_gaussian' must be a boolean");
        c.delta_f_gaussian = j["delta_f_gaussian"].get<bool>();
    }
    if (j.contains("samples")) {
        if (!j["samples"].is_number_integer())
            throw config_error("config field 'samples' must be an integer");
        c.samples = j["samples"].get<long long>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw config_error("config field 'seed' must be a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("sweep") && !j["sweep"].is_null()) {
        if (!j["sweep"].is_object())
            throw config_error("config field 'sweep' must be an object");
        c.sweep = parse_sweep(j["sweep"]);
    }

    if (!(c.g >= 0.0 && c.g <= M_PI))
        throw config_error("config field 'g' must lie in [0, pi]");
    for (auto [name, value] : {std::pair{"eps", c.eps},
                               {"delta_n_mag", c.delta_n_mag},
                               {"delta_f_mag", c.delta_f_mag}})
        if (!(value >= 0.0))
            throw config_error(std::string("config field '") + name + "' must be >= 0");
    if (c.samples < 1) throw config_error("config field 'samples' must be >= 1");
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace wmdisc
