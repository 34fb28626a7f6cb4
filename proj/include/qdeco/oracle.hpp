// oracle.hpp — independent finite-mode verification: exact unitary evolution
// of the qubit coupled to a Gauss-Legendre discretization of the thermal
// bath on a truncated Fock space, the per-mode pure-dephasing solution, and
// decay-rate extraction.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdeco/dynamics.hpp"
#include "qdeco/errors.hpp"
#include "qdeco/form_factor.hpp"
#include "qdeco/system.hpp"

namespace qdeco {

// Effective spectral density J(omega) = omega^2 int_{S^2} |g(omega,sigma)|^2 dsigma,
// so that sum_j g_j^2 f(omega_j) approximates int J(omega) f(omega) domega.
inline double effective_spectral_density(const FormFactor& ff, double omega) {
    return omega * omega * ff.radial_sq(omega) * ff.angular_norm;
}

struct BathMode {
    double omega = 0.0;  // frequency, > 0
    double g = 0.0;      // coupling weight, g^2 = J(omega) * quadrature weight
};

struct DiscreteBath {
    std::vector<BathMode> modes;  // frequencies strictly increasing
    double omega_max = 0.0;
    double recurrence_time = 0.0;  // 2*pi / smallest frequency spacing

    int M() const { return static_cast<int>(modes.size()); }
};

struct TruncatedFockSpace {
    int M = 1;          // number of modes
    int n_max = 1;      // per-mode occupation cutoff
    int budget = 4096;  // cap on the composite dimension

    int levels() const { return n_max + 1; }
    long bath_dim() const {
        long d = 1;
        for (int j = 0; j < M; ++j) d *= levels();
        return d;
    }
    long dim() const { return 2 * bath_dim(); }

    void validate() const {
        if (M < 1) throw ValidationError("fock.M must be >= 1");
        if (n_max < 1) throw ValidationError("fock.n_max must be >= 1");
        if (dim() > budget) {
            throw BudgetExceeded("truncated space dimension " + std::to_string(dim()) +
                                 " exceeds budget " + std::to_string(budget));
        }
    }
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[n - 1 - i] = z;
        w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return {x, w};
}

}  // namespace detail

// Gauss-Legendre discretization of the continuum reservoir on [0, omega_max].
inline DiscreteBath discretize(const FormFactor& ff, const ReservoirSpec& res, int M,
                               double omega_max) {
    ff.validate();
    res.validate();
    if (M < 1) throw ValidationError("discretize: M must be >= 1");
    if (!(omega_max > 0.0)) throw ValidationError("discretize: omega_max must be > 0");
    // Even with the loosest cutoff n_max = 1 the space must fit the budget.
    if (M > 10) throw BudgetExceeded("discretize: " + std::to_string(M) + " modes cannot fit the dimension budget");

    const auto [x, w] = detail::gauss_legendre(M);
    DiscreteBath bath;
    bath.omega_max = omega_max;
    for (int j = 0; j < M; ++j) {
        BathMode mode;
        mode.omega = 0.5 * omega_max * (x[j] + 1.0);
        mode.g = std::sqrt(effective_spectral_density(ff, mode.omega) * 0.5 * omega_max * w[j]);
        bath.modes.push_back(mode);
    }
    // Smallest inter-mode spacing; a single mode recurs with its own period.
    double dmin = bath.modes[0].omega;
    if (M > 1) {
        dmin = bath.modes[1].omega - bath.modes[0].omega;
        for (int j = 2; j < M; ++j) {
            dmin = std::min(dmin, bath.modes[j].omega - bath.modes[j - 1].omega);
        }
    }
    bath.recurrence_time = 2.0 * std::numbers::pi / dmin;
    return bath;
}

// H = H_S x 1 + sum_j omega_j n_j + lambda G x sum_j g_j (a_j + a_j^dag)/sqrt(2),
// dense hermitian on the truncated composite space. Basis ordering:
// index = s * bath_dim + k with qubit level s in {0, 1} and k a base-(n_max+1)
// multi-index over modes (mode 0 has the largest stride).
inline Eigen::MatrixXcd build_hamiltonian(const QubitSystem& q, const DiscreteBath& bath,
                                          const TruncatedFockSpace& fock, double lambda) {
    q.validate();
    fock.validate();
    if (fock.M != bath.M()) {
        throw DimensionMismatch("build_hamiltonian: fock.M must equal the number of bath modes");
    }
    const long dimB = fock.bath_dim();
    const int d = fock.levels();

    // Bath diagonal sum_j omega_j n_j.
    Eigen::VectorXd bath_diag = Eigen::VectorXd::Zero(dimB);
    // Field operator X = sum_j g_j (a_j + a_j^dag)/sqrt(2) (real symmetric).
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(dimB, dimB);
    for (long k = 0; k < dimB; ++k) {
        long rest = k;
        long stride = dimB;
        for (int j = 0; j < fock.M; ++j) {
            stride /= d;
            const int n = static_cast<int>(rest / stride);
            rest %= stride;
            bath_diag(k) += n * bath.modes[j].omega;
            if (n < fock.n_max) {
                // <n+1| a^dag |n> = sqrt(n+1), connecting k and k + stride.
                const double el = bath.modes[j].g * std::sqrt(n + 1.0) / std::numbers::sqrt2;
                X(k + stride, k) += el;
                X(k, k + stride) += el;
            }
        }
    }

    const long dim = 2 * dimB;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    const Eigen::Matrix2cd G = q.coupling_matrix();
    const double Es[2] = {0.0, q.Delta};
    for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
            auto block = H.block(s * dimB, sp * dimB, dimB, dimB);
            if (G(s, sp) != Complex(0.0)) block = (lambda * G(s, sp)) * X.cast<Complex>();
            if (s == sp) {
                block.diagonal().array() += Es[s];
                block.diagonal() += bath_diag.cast<Complex>();
            }
        }
    }
    return H;
}

// Truncated product Gibbs state of the bath, each mode renormalized to unit
// trace after the cutoff. Diagonal in the Fock basis.
struct BathThermalState {
    Eigen::VectorXd weights;        // length bath_dim, sums to 1
    bool truncation_warning = false;
    double max_tail = 0.0;          // largest per-mode discarded weight
};

inline BathThermalState thermal_bath_state(const DiscreteBath& bath,
                                           const TruncatedFockSpace& fock, double beta) {
    if (!(beta > 0.0)) throw ValidationError("thermal_bath_state: beta must be > 0");
    fock.validate();
    if (fock.M != bath.M()) {
        throw DimensionMismatch("thermal_bath_state: fock.M must equal the number of bath modes");
    }
    const int d = fock.levels();
    BathThermalState out;
    out.weights = Eigen::VectorXd::Ones(1);
    for (int j = 0; j < fock.M; ++j) {
        Eigen::VectorXd wj(d);
        for (int n = 0; n < d; ++n) wj(n) = std::exp(-beta * bath.modes[j].omega * n);
        // Discarded tail relative to the untruncated partition function:
        // sum_{n > n_max} e^{-beta omega n} / Z = e^{-beta omega (n_max+1)}.
        const double tail = std::exp(-beta * bath.modes[j].omega * d);
        out.max_tail = std::max(out.max_tail, tail);
        wj /= wj.sum();
        Eigen::VectorXd next(out.weights.size() * d);
        for (long i = 0; i < out.weights.size(); ++i) {
            for (int n = 0; n < d; ++n) next(i * d + n) = out.weights(i) * wj(n);
        }
        out.weights = std::move(next);
    }
    out.truncation_warning = out.max_tail > 1e-6;
    return out;
}

// Density matrix of the composite system.
struct FullState {
    Eigen::MatrixXcd rho;

    void validate() const {
        if (rho.rows() != rho.cols()) throw DimensionMismatch("FullState: matrix must be square");
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw ValidationError("FullState: not hermitian to 1e-12");
        }
        if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10) {
            throw ValidationError("FullState: trace differs from 1 by more than 1e-10");
        }
    }
};

// rho_0 = rdm (x) diag(bath weights).
inline FullState compose_initial(const ReducedDensityMatrix& rdm, const BathThermalState& bath) {
    const long dimB = bath.weights.size();
    Eigen::Matrix2cd r;
    r << rdm.rho11, rdm.rho12, rdm.rho21(), rdm.rho22();
    FullState out;
    out.rho = Eigen::MatrixXcd::Zero(2 * dimB, 2 * dimB);
    for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
            out.rho.block(s * dimB, sp * dimB, dimB, dimB).diagonal() =
                r(s, sp) * bath.weights.cast<Complex>();
        }
    }
    return out;
}

// Partial trace over the bath factor.
inline ReducedDensityMatrix reduce(const FullState& full) {
    const long dim = full.rho.rows();
    if (dim % 2 != 0) throw DimensionMismatch("reduce: dimension must factor as 2 x bath_dim");
    const long dimB = dim / 2;
    const double r11 = full.rho.block(0, 0, dimB, dimB).trace().real();
    const Complex r12 = full.rho.block(0, dimB, dimB, dimB).trace();
    return {r11, r12};
}

// One-time eigendecomposition of H, reused across a time grid.
class Propagator {
public:
    explicit Propagator(const Eigen::MatrixXcd& H) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
        if (es.info() != Eigen::Success) {
            throw EigendecompositionFailure("Propagator: Hermitian eigendecomposition failed");
        }
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors();
    }

    const Eigen::VectorXd& eigenvalues() const { return evals_; }

    // rho_t = e^{-iHt} rho_0 e^{iHt}, re-symmetrized after rounding.
    FullState evolve(const FullState& rho0, double t) const {
        if (rho0.rho.rows() != evals_.size()) {
            throw DimensionMismatch("Propagator::evolve: state dimension mismatch");
        }
        Eigen::VectorXcd phase(evals_.size());
        for (long j = 0; j < evals_.size(); ++j) {
            phase(j) = std::exp(Complex(0.0, -evals_(j) * t));
        }
        const Eigen::MatrixXcd U = evecs_ * phase.asDiagonal() * evecs_.adjoint();
        FullState out;
        out.rho = U * rho0.rho * U.adjoint();
        out.rho = 0.5 * (out.rho + out.rho.adjoint().eval());
        return out;
    }

    // Reduced qubit state along a time grid without forming rho_t: with
    // rho_tilde = V^dag rho_0 V and S = V^dag P V for the entry projectors P,
    // each entry is the bilinear form u^T (rho_tilde o S^T) u* with
    // u_j = e^{-i E_j t}. Cost O(dim^2) per grid point.
    TimeSeries reduced_series(const FullState& rho0, const std::vector<double>& times,
                              double recurrence_time = 0.0) const {
        const long dim = evals_.size();
        if (rho0.rho.rows() != dim || dim % 2 != 0) {
            throw DimensionMismatch("Propagator::reduced_series: state dimension mismatch");
        }
        const long dimB = dim / 2;
        const Eigen::MatrixXcd rt = evecs_.adjoint() * rho0.rho * evecs_;
        const auto Va = evecs_.topRows(dimB);
        const auto Vb = evecs_.bottomRows(dimB);
        // S00 = V^dag (|0><0| x 1) V, S01 = V^dag (|1><0| x 1) V.
        const Eigen::MatrixXcd C00 = rt.cwiseProduct((Va.adjoint() * Va).transpose());
        const Eigen::MatrixXcd C01 = rt.cwiseProduct((Vb.adjoint() * Va).transpose());

        TimeSeries out;
        out.provenance = Provenance::oracle;
        out.recurrence_time = recurrence_time;
        out.times = times;
        out.states.reserve(times.size());
        Eigen::VectorXcd u(dim);
        for (double t : times) {
            for (long j = 0; j < dim; ++j) u(j) = std::exp(Complex(0.0, -evals_(j) * t));
            const Complex r11 = u.transpose() * (C00 * u.conjugate());
            const Complex r12 = u.transpose() * (C01 * u.conjugate());
            out.states.push_back({r11.real(), r12});
        }
        return out;
    }

private:
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

inline FullState evolve_exact(const Eigen::MatrixXcd& H, const FullState& rho0, double t) {
    return Propagator(H).evolve(rho0, t);
}

// Exact pure-dephasing (c = 0) solution of the truncated finite-mode model.
// H is block diagonal in the qubit level; for level m each mode evolves under
// its own (n_max+1)-dimensional displaced oscillator h_{m,j}. The coherence
// factorizes over modes,
//   rho12(t) = rho12(0) e^{+i Delta t} prod_j Tr_j[e^{-i h_{1,j} t} rho_j e^{+i h_{2,j} t}],
// and the populations are exactly constant. This route never builds the
// composite space, so it is an independent check on evolve_exact + reduce.
inline ReducedDensityMatrix dephasing_exact(const QubitSystem& q, const DiscreteBath& bath,
                                            const TruncatedFockSpace& fock, double beta,
                                            double lambda, double t,
                                            const ReducedDensityMatrix& rho0 = {0.5, 0.5}) {
    q.validate();
    fock.validate();
    if (q.c != Complex(0.0)) {
        throw PreconditionViolation("dephasing_exact: requires c = 0");
    }
    if (fock.M != bath.M()) {
        throw DimensionMismatch("dephasing_exact: fock.M must equal the number of bath modes");
    }
    const int d = fock.levels();
    Complex factor(1.0, 0.0);
    for (const auto& mode : bath.modes) {
        Eigen::MatrixXd field = Eigen::MatrixXd::Zero(d, d);
        for (int n = 0; n + 1 < d; ++n) {
            const double el = mode.g * std::sqrt(n + 1.0) / std::numbers::sqrt2;
            field(n + 1, n) = el;
            field(n, n + 1) = el;
        }
        Eigen::VectorXd nums = Eigen::VectorXd::LinSpaced(d, 0.0, d - 1.0);
        Eigen::MatrixXd h1 = (mode.omega * nums).asDiagonal().toDenseMatrix() + lambda * q.a * field;
        Eigen::MatrixXd h2 = (mode.omega * nums).asDiagonal().toDenseMatrix() + lambda * q.b * field;

        Eigen::VectorXd gibbs(d);
        for (int n = 0; n < d; ++n) gibbs(n) = std::exp(-beta * mode.omega * n);
        gibbs /= gibbs.sum();

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(h1), es2(h2);
        if (es1.info() != Eigen::Success || es2.info() != Eigen::Success) {
            throw EigendecompositionFailure("dephasing_exact: per-mode eigensolver failed");
        }
        auto expm = [&](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es, double sign) {
            Eigen::VectorXcd ph(d);
            for (int n = 0; n < d; ++n) ph(n) = std::exp(Complex(0.0, sign * es.eigenvalues()(n) * t));
            return Eigen::MatrixXcd(es.eigenvectors() * ph.asDiagonal() *
                                    es.eigenvectors().transpose());
        };
        const Eigen::MatrixXcd U1 = expm(es1, -1.0);
        const Eigen::MatrixXcd U2 = expm(es2, +1.0);
        factor *= (U1 * gibbs.asDiagonal().toDenseMatrix().cast<Complex>() * U2).trace();
    }
    const Complex phase = std::exp(Complex(0.0, q.Delta * t));
    return {rho0.rho11, rho0.rho12 * phase * factor};
}

// Untruncated (n_max -> inf) per-mode dephasing factors, in closed form:
//   Gamma_j(t) = (mu1 - mu2)^2 / omega^2 * (1 - cos(omega t)) * coth(beta omega / 2)
//   phi_j(t)   = (mu1^2 - mu2^2) * (t/omega - sin(omega t)/omega^2)
// with mu_m = lambda kappa_m g_j / sqrt(2), kappa_1 = a, kappa_2 = b.
inline ReducedDensityMatrix dephasing_closed_form(const QubitSystem& q, const DiscreteBath& bath,
                                                  double beta, double lambda, double t,
                                                  const ReducedDensityMatrix& rho0 = {0.5, 0.5}) {
    q.validate();
    if (q.c != Complex(0.0)) {
        throw PreconditionViolation("dephasing_closed_form: requires c = 0");
    }
    double Gamma = 0.0, phi = 0.0;
    for (const auto& mode : bath.modes) {
        const double mu1 = lambda * q.a * mode.g / std::numbers::sqrt2;
        const double mu2 = lambda * q.b * mode.g / std::numbers::sqrt2;
        const double w = mode.omega;
        Gamma += (mu1 - mu2) * (mu1 - mu2) / (w * w) * (1.0 - std::cos(w * t)) /
                 std::tanh(0.5 * beta * w);
        phi += (mu1 * mu1 - mu2 * mu2) * (t / w - std::sin(w * t) / (w * w));
    }
    const Complex phase = std::exp(Complex(0.0, q.Delta * t + phi));
    return {rho0.rho11, rho0.rho12 * phase * std::exp(-Gamma)};
}

// Bridge between the finite-mode oracle (field operator normalized as
// sum_j g_j (a_j + a_j^dag)/sqrt(2)) and the resonance-expansion rates: with
// this normalization the continuum decay rates come out exactly a factor pi
// below lambda^2 pi^2 [.] / 2. The factor is fixed once on the pure-dephasing
// channel, where both sides are computable in closed form, and verified by
// the test suite; oracle rate fits must be multiplied by it before comparison
// with Im eps.
inline constexpr double rate_calibration() { return std::numbers::pi; }

enum class FitChannel { population, coherence };

// Least-squares slope of -log|signal(t) - asymptote| over [t1, t2].
// For the population channel the signal is rho11 and the asymptote its Gibbs
// value; for the coherence channel the signal is |rho12| and the asymptote 0.
inline double fit_decay_rate(const TimeSeries& series, double t1, double t2,
                             FitChannel channel, double asymptote = 0.0,
                             double residual_threshold = 0.5) {
    if (!(t2 > t1)) throw ValidationError("fit_decay_rate: window must satisfy t2 > t1");
    if (series.recurrence_time > 0.0 && t2 > 0.5 * series.recurrence_time) {
        throw ValidationError(
            "fit_decay_rate: window end " + std::to_string(t2) +
            " exceeds recurrence_time/2 = " + std::to_string(0.5 * series.recurrence_time));
    }
    std::vector<double> ts, ys;
    double sign = 0.0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < t1 || t > t2) continue;
        const auto& s = series.states[i];
        const double dev = (channel == FitChannel::population ? s.rho11 : std::abs(s.rho12)) -
                           asymptote;
        if (dev == 0.0) throw IllConditionedFit("fit_decay_rate: signal touches the asymptote");
        if (sign == 0.0) sign = dev > 0.0 ? 1.0 : -1.0;
        if (dev * sign < 0.0) {
            throw IllConditionedFit("fit_decay_rate: signal crosses the asymptote in the window");
        }
        ts.push_back(t);
        ys.push_back(-std::log(std::abs(dev)));
    }
    if (ts.size() < 2) throw IllConditionedFit("fit_decay_rate: fewer than two points in window");

    const double n = static_cast<double>(ts.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double denom = n * stt - st * st;
    if (denom <= 0.0) throw IllConditionedFit("fit_decay_rate: degenerate time grid");
    const double slope = (n * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = ys[i] - (slope * ts[i] + intercept);
        ss += r * r;
    }
    if (std::sqrt(ss / n) > residual_threshold) {
        throw IllConditionedFit("fit_decay_rate: residual exceeds threshold");
    }
    return slope;
}

}  // namespace qdeco
