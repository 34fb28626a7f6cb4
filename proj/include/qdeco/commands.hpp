// commands.hpp — the CLI subcommands as pure config -> output-string
// functions, so they can be exercised directly by tests (byte-identical
// output is part of the contract).

#pragma once

#include <string>
#include <vector>

#include "qdeco/config.hpp"
#include "qdeco/dynamics.hpp"
#include "qdeco/io.hpp"
#include "qdeco/oracle.hpp"
#include "qdeco/resonance.hpp"
#include "qdeco/spectral.hpp"

namespace qdeco {

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(a);
        return out;
    }
    for (int i = 0; i < n; ++i) {
        out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
}

namespace detail {

inline const std::vector<std::string>& resonance_columns() {
    static const std::vector<std::string> cols = {
        "lambda", "beta", "Delta", "a", "b", "c_re", "c_im",
        "eps0_re", "eps0_im", "epsDelta_re", "epsDelta_im",
        "epsMinusDelta_re", "epsMinusDelta_im",
        "R", "D", "xi0", "xiDelta", "tau_T", "tau_D", "gamma", "fgr"};
    return cols;
}

inline std::vector<std::string> resonance_row(const QubitSystem& q, const FormFactor& ff,
                                              const ReservoirSpec& res, double lambda) {
    const double R = lamb_shift_R(q, ff, res);
    const double D = rate_difference_D(q, ff, res);
    const ResonanceSet rs = qubit_resonances(q, ff, res, lambda);
    const Timescales ts = timescales(rs);
    const bool fgr = fermi_golden_rule_holds(q, ff, res);
    return {io::num(lambda),
            io::num(res.beta),
            io::num(q.Delta),
            io::num(q.a),
            io::num(q.b),
            io::num(q.c.real()),
            io::num(q.c.imag()),
            io::num(rs.eps0.real()),
            io::num(rs.eps0.imag()),
            io::num(rs.epsDelta.real()),
            io::num(rs.epsDelta.imag()),
            io::num(rs.epsMinusDelta.real()),
            io::num(rs.epsMinusDelta.imag()),
            io::num(R),
            io::num(D),
            io::num(xi(ff, res, 0.0)),
            io::num(xi(ff, res, q.Delta)),
            io::num(ts.tau_T),
            io::num(ts.tau_D),
            io::num(ts.gamma),
            io::boolean(fgr)};
}

inline std::string emit(const RunConfig& cfg, const std::string& provenance,
                        const std::vector<std::string>& columns,
                        const std::vector<std::vector<std::string>>& rows,
                        const std::vector<std::string>& extra_header = {}) {
    if (cfg.out_format == "json") {
        std::vector<std::pair<std::string, std::string>> extra;
        for (const auto& line : extra_header) {
            const auto pos = line.find(": ");
            if (pos != std::string::npos) {
                extra.emplace_back(line.substr(0, pos), "\"" + io::json_escape(line.substr(pos + 2)) + "\"");
            }
        }
        return io::json_table(provenance, columns, rows, extra);
    }
    return io::csv_table(provenance, columns, rows, extra_header);
}

inline std::vector<std::vector<std::string>> series_rows(const TimeSeries& ts) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(ts.times.size());
    for (std::size_t i = 0; i < ts.times.size(); ++i) {
        const auto& s = ts.states[i];
        rows.push_back({io::num(ts.times[i]), io::num(s.rho11), io::num(s.rho22()),
                        io::num(s.rho12.real()), io::num(s.rho12.imag()),
                        io::num(std::abs(s.rho12))});
    }
    return rows;
}

}  // namespace detail

// One record: resonance energies, shifts, rates, timescales, FGR flag.
inline std::string cmd_resonances(const RunConfig& cfg) {
    return detail::emit(cfg, "leading-order", detail::resonance_columns(),
                        {detail::resonance_row(cfg.qubit, cfg.ff, cfg.res, cfg.lambda)});
}

// Leading-order time series of the reduced density matrix.
inline std::string cmd_evolve(const RunConfig& cfg) {
    const ResonanceSet rs = qubit_resonances(cfg.qubit, cfg.ff, cfg.res, cfg.lambda);
    const TimeSeries ts = time_series(cfg.init, rs, cfg.qubit.Delta, cfg.res.beta,
                                      linspace(cfg.t_start, cfg.t_end, cfg.steps));
    return detail::emit(cfg, "leading-order",
                        {"t", "rho11", "rho22", "re_rho12", "im_rho12", "abs_rho12"},
                        detail::series_rows(ts), {"initial_state: " + cfg.init.name()});
}

// xi tabulated over the configured eta grid.
inline std::string cmd_xi(const RunConfig& cfg) {
    std::vector<std::vector<std::string>> rows;
    for (double eta : linspace(cfg.eta_grid.start, cfg.eta_grid.end, cfg.eta_grid.steps)) {
        rows.push_back({io::num(eta), io::num(xi(cfg.ff, cfg.res, eta))});
    }
    return detail::emit(cfg, "leading-order", {"eta", "xi"}, rows);
}

// The spin-boson (Delta, a, b, c) map.
inline std::string cmd_spinboson(const RunConfig& cfg) {
    if (!cfg.sb) {
        throw ValidationError("spinboson requires a system.spin_boson section in the config");
    }
    const QubitSystem q = spin_boson_to_qubit(*cfg.sb);
    return detail::emit(
        cfg, "leading-order",
        {"epsilon", "Delta0", "hbar", "Delta", "a", "b", "c_re", "c_im"},
        {{io::num(cfg.sb->epsilon_bias), io::num(cfg.sb->Delta0), io::num(cfg.sb->hbar),
          io::num(q.Delta), io::num(q.a), io::num(q.b), io::num(q.c.real()),
          io::num(q.c.imag())}});
}

// Cartesian sweep over one parameter; one resonance record per point,
// deterministic input order.
inline std::string cmd_sweep(const RunConfig& cfg) {
    if (!cfg.sweep) throw ValidationError("sweep requires a sweep section in the config");
    std::vector<std::string> columns = {"sweep_value"};
    for (const auto& c : detail::resonance_columns()) columns.push_back(c);

    std::vector<std::vector<std::string>> rows;
    for (double v : cfg.sweep->values) {
        QubitSystem q = cfg.qubit;
        ReservoirSpec res = cfg.res;
        double lambda = cfg.lambda;
        if (cfg.sweep->parameter == "lambda") {
            lambda = v;
        } else if (cfg.sweep->parameter == "beta") {
            res.beta = v;
            res.validate();
        } else if (cfg.sweep->parameter == "Delta") {
            q.Delta = v;
        } else {  // epsilon_bias
            SpinBosonParams sb = *cfg.sb;
            sb.epsilon_bias = v;
            sb.validate();
            q = spin_boson_to_qubit(sb);
        }
        std::vector<std::string> row = {io::num(v)};
        for (auto& cell : detail::resonance_row(q, cfg.ff, res, lambda)) {
            row.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
    }
    return detail::emit(cfg, "leading-order", columns,
                        rows, {"sweep_parameter: " + cfg.sweep->parameter});
}

// Finite-mode oracle time series; with compare = true the leading-order
// series is emitted side by side together with fitted decay rates and their
// resonance-theory counterparts (oracle fits are multiplied by
// rate_calibration() before comparison).
inline std::string cmd_oracle(const RunConfig& cfg, bool compare = false) {
    const DiscreteBath bath = discretize(cfg.ff, cfg.res, cfg.M, cfg.omega_max);
    TruncatedFockSpace fock;
    fock.M = cfg.M;
    fock.n_max = cfg.n_max;
    fock.validate();

    const Eigen::MatrixXcd H = build_hamiltonian(cfg.qubit, bath, fock, cfg.lambda);
    const BathThermalState thermal = thermal_bath_state(bath, fock, cfg.res.beta);
    const FullState rho0 = compose_initial(cfg.init.density_matrix(), thermal);
    const Propagator prop(H);
    const TimeSeries ts = prop.reduced_series(rho0, linspace(cfg.t_start, cfg.t_end, cfg.steps),
                                              bath.recurrence_time);

    std::vector<std::string> header = {
        "initial_state: " + cfg.init.name(),
        "recurrence_time: " + io::num(bath.recurrence_time),
        "truncation_warning: " + io::boolean(thermal.truncation_warning),
        "max_mode_tail: " + io::num(thermal.max_tail)};
    std::vector<std::string> columns = {"t",        "rho11",     "rho22",
                                        "re_rho12", "im_rho12", "abs_rho12"};
    auto rows = detail::series_rows(ts);

    if (compare) {
        const ResonanceSet rs = qubit_resonances(cfg.qubit, cfg.ff, cfg.res, cfg.lambda);
        const TimeSeries lo = time_series(cfg.init, rs, cfg.qubit.Delta, cfg.res.beta, ts.times);
        for (const auto& c : {"lo_rho11", "lo_re_rho12", "lo_im_rho12", "lo_abs_rho12"}) {
            columns.push_back(c);
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& s = lo.states[i];
            rows[i].push_back(io::num(s.rho11));
            rows[i].push_back(io::num(s.rho12.real()));
            rows[i].push_back(io::num(s.rho12.imag()));
            rows[i].push_back(io::num(std::abs(s.rho12)));
        }
        // Fit window: central part of [0, recurrence_time/2], clipped to the
        // grid; transients at both ends bias the slope.
        const double w = std::min(ts.times.back(), 0.5 * bath.recurrence_time);
        const double t1 = 0.25 * w, t2 = 0.75 * w;
        header.push_back("fit_window: [" + io::num(t1) + ", " + io::num(t2) + "]");
        header.push_back("rate_calibration: " + io::num(rate_calibration()));
        auto report = [&](const char* label, FitChannel ch, double asym, double theory) {
            std::string fitted = "n/a", calibrated = "n/a";
            try {
                const double r = fit_decay_rate(ts, t1, t2, ch, asym);
                fitted = io::num(r);
                calibrated = io::num(r * rate_calibration());
            } catch (const Error&) {
            }
            header.push_back(std::string(label) + "_fitted_rate: " + fitted);
            header.push_back(std::string(label) + "_calibrated_rate: " + calibrated);
            header.push_back(std::string(label) + "_theory_rate: " + io::num(theory));
        };
        report("coherence", FitChannel::coherence, 0.0, rs.epsDelta.imag());
        report("population", FitChannel::population,
               gibbs_state(cfg.qubit.Delta, cfg.res.beta).rho11, rs.eps0.imag());
    }
    return detail::emit(cfg, "oracle", columns, rows, header);
}

}  // namespace qdeco
