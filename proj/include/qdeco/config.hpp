// config.hpp — run configuration: a single JSON document, fully validated at
// parse time with field-precise messages. Unknown keys are errors.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdeco/dynamics.hpp"
#include "qdeco/errors.hpp"
#include "qdeco/form_factor.hpp"
#include "qdeco/system.hpp"

namespace qdeco {

struct SweepSpec {
    std::string parameter;        // lambda | beta | Delta | epsilon_bias
    std::vector<double> values;
};

struct EtaGrid {
    double start = 0.0;
    double end = 3.0;
    int steps = 61;
};

struct RunConfig {
    FormFactor ff;
    ReservoirSpec res;
    QubitSystem qubit;                   // resolved system (via the spin-boson map if given)
    std::optional<SpinBosonParams> sb;   // present iff the spin_boson section was used
    double lambda = 0.1;
    InitialState init = InitialState::illustration();
    double t_start = 0.0;
    double t_end = 10.0;
    int steps = 200;
    int M = 3;
    int n_max = 3;
    double omega_max = 6.0;
    EtaGrid eta_grid;
    std::optional<SweepSpec> sweep;
    std::string out_format = "csv";      // csv | json
    std::string out_path;                // empty = stdout
};

namespace detail {

using Json = nlohmann::json;

inline void check_keys(const Json& obj, const std::string& path,
                       const std::vector<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ValidationError("unknown key \"" + (path.empty() ? it.key() : path + "." + it.key()) +
                                  "\"");
        }
    }
}

inline double require_number(const Json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw ValidationError("missing required field \"" + path + key + "\"");
    if (!obj[key].is_number()) throw ValidationError("field \"" + path + key + "\" must be a number");
    return obj[key].get<double>();
}

inline double number_or(const Json& obj, const std::string& path, const std::string& key,
                        double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ValidationError("field \"" + path + key + "\" must be a number");
    return obj[key].get<double>();
}

inline int integer_or(const Json& obj, const std::string& path, const std::string& key,
                      int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) {
        throw ValidationError("field \"" + path + key + "\" must be an integer");
    }
    return obj[key].get<int>();
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
    using detail::Json;
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config root must be a JSON object");
    detail::check_keys(doc, "", {"schema_version", "form_factor", "reservoir", "system", "lambda",
                                 "initial_state", "time_grid", "oracle", "sweep", "eta_grid",
                                 "output"});
    if (doc.contains("schema_version") && doc["schema_version"] != 1) {
        throw ValidationError("schema_version: only version 1 is supported");
    }

    RunConfig cfg;

    if (!doc.contains("form_factor")) throw ValidationError("missing required section \"form_factor\"");
    {
        const Json& ffj = doc["form_factor"];
        detail::check_keys(ffj, "form_factor", {"p", "m", "angular_norm"});
        cfg.ff.p = detail::require_number(ffj, "form_factor.", "p");
        cfg.ff.m = detail::integer_or(ffj, "form_factor.", "m", 1);
        if (ffj.contains("angular_norm")) {
            const Json& an = ffj["angular_norm"];
            if (an.is_string()) {
                if (an.get<std::string>() != "isotropic") {
                    throw ValidationError("form_factor.angular_norm: expected \"isotropic\" or a number");
                }
                cfg.ff.angular_norm = kFourPi;
            } else if (an.is_number()) {
                cfg.ff.angular_norm = an.get<double>();
            } else {
                throw ValidationError("form_factor.angular_norm: expected \"isotropic\" or a number");
            }
        }
        cfg.ff.validate();
    }

    if (!doc.contains("reservoir")) throw ValidationError("missing required section \"reservoir\"");
    {
        const Json& rj = doc["reservoir"];
        detail::check_keys(rj, "reservoir", {"beta"});
        cfg.res.beta = detail::require_number(rj, "reservoir.", "beta");
        cfg.res.validate();
    }

    if (!doc.contains("system")) throw ValidationError("missing required section \"system\"");
    {
        const Json& sj = doc["system"];
        detail::check_keys(sj, "system", {"qubit", "spin_boson"});
        const bool has_q = sj.contains("qubit");
        const bool has_sb = sj.contains("spin_boson");
        if (has_q == has_sb) {
            throw ValidationError("system: exactly one of \"qubit\" and \"spin_boson\" must be given");
        }
        if (has_q) {
            const Json& qj = sj["qubit"];
            detail::check_keys(qj, "system.qubit", {"Delta", "a", "b", "c_re", "c_im"});
            cfg.qubit.Delta = detail::require_number(qj, "system.qubit.", "Delta");
            cfg.qubit.a = detail::number_or(qj, "system.qubit.", "a", 0.0);
            cfg.qubit.b = detail::number_or(qj, "system.qubit.", "b", 0.0);
            cfg.qubit.c = Complex(detail::number_or(qj, "system.qubit.", "c_re", 0.0),
                                  detail::number_or(qj, "system.qubit.", "c_im", 0.0));
            cfg.qubit.validate();
        } else {
            const Json& bj = sj["spin_boson"];
            detail::check_keys(bj, "system.spin_boson", {"epsilon", "Delta0", "hbar"});
            SpinBosonParams sb;
            sb.epsilon_bias = detail::number_or(bj, "system.spin_boson.", "epsilon", 0.0);
            sb.Delta0 = detail::require_number(bj, "system.spin_boson.", "Delta0");
            sb.hbar = detail::number_or(bj, "system.spin_boson.", "hbar", 1.0);
            sb.validate();
            cfg.sb = sb;
            cfg.qubit = spin_boson_to_qubit(sb);
        }
    }

    if (doc.contains("lambda")) {
        if (!doc["lambda"].is_number()) throw ValidationError("field \"lambda\" must be a number");
        cfg.lambda = doc["lambda"].get<double>();
    }

    if (doc.contains("initial_state")) {
        const Json& ij = doc["initial_state"];
        if (ij.is_string()) {
            const std::string s = ij.get<std::string>();
            if (s == "illustration") {
                cfg.init = InitialState::illustration();
            } else if (s == "logic1") {
                cfg.init = InitialState::logic(1);
            } else if (s == "logic2") {
                cfg.init = InitialState::logic(2);
            } else {
                throw ValidationError("initial_state: unknown tag \"" + s +
                                      "\" (expected illustration, logic1, logic2, or "
                                      "{\"custom_diagonal\": q})");
            }
        } else if (ij.is_object()) {
            detail::check_keys(ij, "initial_state", {"custom_diagonal"});
            cfg.init = InitialState::custom_diagonal(
                detail::require_number(ij, "initial_state.", "custom_diagonal"));
        } else {
            throw ValidationError("initial_state: expected a tag string or object");
        }
    }

    if (doc.contains("time_grid")) {
        const Json& tj = doc["time_grid"];
        detail::check_keys(tj, "time_grid", {"t_start", "t_end", "steps"});
        cfg.t_start = detail::number_or(tj, "time_grid.", "t_start", 0.0);
        cfg.t_end = detail::number_or(tj, "time_grid.", "t_end", 10.0);
        cfg.steps = detail::integer_or(tj, "time_grid.", "steps", 200);
        if (cfg.t_start < 0.0) throw ValidationError("time_grid.t_start must be >= 0");
        if (cfg.steps < 1) throw ValidationError("time_grid.steps must be >= 1");
        if (cfg.steps > 1 && !(cfg.t_end > cfg.t_start)) {
            throw ValidationError("time_grid.t_end must exceed t_start when steps > 1");
        }
    }

    if (doc.contains("oracle")) {
        const Json& oj = doc["oracle"];
        detail::check_keys(oj, "oracle", {"M", "n_max", "omega_max"});
        cfg.M = detail::integer_or(oj, "oracle.", "M", 3);
        cfg.n_max = detail::integer_or(oj, "oracle.", "n_max", 3);
        cfg.omega_max = detail::number_or(oj, "oracle.", "omega_max", 6.0);
        if (cfg.M < 1) throw ValidationError("oracle.M must be >= 1");
        if (cfg.n_max < 1) throw ValidationError("oracle.n_max must be >= 1");
        if (!(cfg.omega_max > 0.0)) throw ValidationError("oracle.omega_max must be > 0");
    }

    if (doc.contains("eta_grid")) {
        const Json& ej = doc["eta_grid"];
        detail::check_keys(ej, "eta_grid", {"start", "end", "steps"});
        cfg.eta_grid.start = detail::number_or(ej, "eta_grid.", "start", 0.0);
        cfg.eta_grid.end = detail::number_or(ej, "eta_grid.", "end", 3.0);
        cfg.eta_grid.steps = detail::integer_or(ej, "eta_grid.", "steps", 61);
        if (cfg.eta_grid.start < 0.0) throw ValidationError("eta_grid.start must be >= 0");
        if (cfg.eta_grid.steps < 1) throw ValidationError("eta_grid.steps must be >= 1");
    }

    if (doc.contains("sweep")) {
        const Json& swj = doc["sweep"];
        detail::check_keys(swj, "sweep", {"parameter", "values"});
        SweepSpec sw;
        if (!swj.contains("parameter") || !swj["parameter"].is_string()) {
            throw ValidationError("sweep.parameter must be a string");
        }
        sw.parameter = swj["parameter"].get<std::string>();
        if (sw.parameter != "lambda" && sw.parameter != "beta" && sw.parameter != "Delta" &&
            sw.parameter != "epsilon_bias") {
            throw ValidationError("sweep.parameter must be one of lambda, beta, Delta, epsilon_bias");
        }
        if (sw.parameter == "epsilon_bias" && !cfg.sb) {
            throw ValidationError("sweep.parameter epsilon_bias requires a spin_boson system");
        }
        if (!swj.contains("values") || !swj["values"].is_array()) {
            throw ValidationError("sweep.values must be an array of numbers");
        }
        for (const auto& v : swj["values"]) {
            if (!v.is_number()) throw ValidationError("sweep.values must be an array of numbers");
            sw.values.push_back(v.get<double>());
        }
        cfg.sweep = sw;
    }

    if (doc.contains("output")) {
        const Json& out = doc["output"];
        detail::check_keys(out, "output", {"format", "path"});
        if (out.contains("format")) {
            const std::string f = out["format"].get<std::string>();
            if (f != "csv" && f != "json") throw ValidationError("output.format must be csv or json");
            cfg.out_format = f;
        }
        if (out.contains("path")) cfg.out_path = out["path"].get<std::string>();
    }

    return cfg;
}

}  // namespace qdeco
