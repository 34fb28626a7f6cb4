// system.hpp — finite-dimensional system bookkeeping: Bohr spectra for
// N-level systems, the qubit coupling parameters (a, b, c), and the
// spin-boson parameter map.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdeco/errors.hpp"

namespace qdeco {

using Complex = std::complex<double>;

struct NLevelSystem {
    std::vector<double> energies;  // sorted ascending
    Eigen::MatrixXcd coupling;     // hermitian, in the energy eigenbasis

    int dim() const { return static_cast<int>(energies.size()); }

    void validate() const {
        if (dim() < 2) throw ValidationError("NLevelSystem: dim must be >= 2");
        if (!std::is_sorted(energies.begin(), energies.end())) {
            throw ValidationError("NLevelSystem: energies must be sorted ascending");
        }
        for (double e : energies) {
            if (!std::isfinite(e)) throw ValidationError("NLevelSystem: energies must be finite");
        }
        if (coupling.rows() != dim() || coupling.cols() != dim()) {
            throw DimensionMismatch("NLevelSystem: coupling must be dim x dim");
        }
        if ((coupling - coupling.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw ValidationError("NLevelSystem: coupling must be hermitian");
        }
    }
};

// Qubit in its energy eigenbasis: gap Delta and the entries of the hermitian
// coupling matrix [[a, c], [conj(c), b]].
struct QubitSystem {
    double Delta = 1.0;  // E2 - E1 > 0
    double a = 0.0;
    double b = 0.0;
    Complex c = 0.0;

    void validate() const {
        if (!(Delta > 0.0) || !std::isfinite(Delta)) {
            throw ValidationError("QubitSystem: Delta must be positive and finite");
        }
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c.real()) ||
            !std::isfinite(c.imag())) {
            throw ValidationError("QubitSystem: coupling entries must be finite");
        }
    }

    Eigen::Matrix2cd coupling_matrix() const {
        Eigen::Matrix2cd G;
        G << a, c, std::conj(c), b;
        return G;
    }
};

struct SpinBosonParams {
    double epsilon_bias = 0.0;  // bias of the asymmetric double well
    double Delta0 = 1.0;        // bare tunneling matrix element, >= 0
    double hbar = 1.0;

    void validate() const {
        if (!(Delta0 >= 0.0)) throw ValidationError("spin_boson.Delta0 must be >= 0");
        if (!(hbar > 0.0)) throw ValidationError("spin_boson.hbar must be > 0");
        if (epsilon_bias == 0.0 && Delta0 == 0.0) {
            throw DegenerateSystem("spin_boson: epsilon and Delta0 cannot both vanish");
        }
    }

    // H_S in the canonical (left/right well) basis.
    Eigen::Matrix2cd hamiltonian() const {
        Eigen::Matrix2cd H;
        H << 0.5 * epsilon_bias, -0.5 * hbar * Delta0,
             -0.5 * hbar * Delta0, -0.5 * epsilon_bias;
        return H;
    }
};

// One Bohr line: the frequency e = E_m - E_n and its index set I_e.
// Index pairs are 1-based, matching the usual labeling E_1 <= ... <= E_N.
struct BohrLine {
    double e = 0.0;
    std::vector<std::pair<int, int>> pairs;
};

struct BohrSpectrum {
    std::vector<BohrLine> lines;  // sorted by e ascending

    const BohrLine* find(double e, double tol) const {
        for (const auto& line : lines) {
            if (std::abs(line.e - e) <= tol) return &line;
        }
        return nullptr;
    }
};

// Groups the differences E_m - E_n into equivalence classes within
// degeneracy_tol. Pass a negative tolerance for the default 1e-9 * max|E|.
inline BohrSpectrum bohr_spectrum(const NLevelSystem& sys, double degeneracy_tol = -1.0) {
    sys.validate();
    double emax = 0.0;
    for (double e : sys.energies) emax = std::max(emax, std::abs(e));
    const double tol = degeneracy_tol >= 0.0 ? degeneracy_tol : 1e-9 * std::max(emax, 1.0);

    struct Entry {
        double e;
        int m, n;
    };
    std::vector<Entry> entries;
    const int N = sys.dim();
    for (int m = 1; m <= N; ++m) {
        for (int n = 1; n <= N; ++n) {
            entries.push_back({sys.energies[m - 1] - sys.energies[n - 1], m, n});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.e < y.e; });

    BohrSpectrum out;
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].e - entries[j - 1].e <= tol) ++j;
        const double lo = entries[i].e, hi = entries[j - 1].e;
        if (hi - lo > 2.0 * tol) {
            throw AmbiguousClustering(
                "bohr_spectrum: Bohr frequencies near " + std::to_string(lo) +
                " chain across more than twice the tolerance");
        }
        BohrLine line;
        double sum = 0.0;
        for (std::size_t k = i; k < j; ++k) {
            sum += entries[k].e;
            line.pairs.emplace_back(entries[k].m, entries[k].n);
        }
        line.e = sum / static_cast<double>(j - i);
        if (std::abs(line.e) <= tol) line.e = 0.0;
        out.lines.push_back(std::move(line));
        i = j;
    }
    return out;
}

// Spin-boson map to the energy eigenbasis: Delta = sqrt(eps^2 + hbar^2 Delta0^2),
// a = -b = -(hbar^2 Delta0^2/eps^2 + 1)^{-1/2}, c = (1/2)(eps^2/(hbar^2 Delta0^2) + 1)^{-1/2}.
// The eps = 0 and Delta0 = 0 limits are taken explicitly.
inline QubitSystem spin_boson_to_qubit(const SpinBosonParams& sb) {
    sb.validate();
    const double eps = sb.epsilon_bias;
    const double hd = sb.hbar * sb.Delta0;
    const double gap = std::hypot(eps, hd);
    QubitSystem q;
    q.Delta = gap;
    const double x = std::abs(eps) / gap;  // (hbar^2 Delta0^2/eps^2 + 1)^{-1/2}
    q.a = -x * (eps < 0.0 ? -1.0 : 1.0);
    q.b = -q.a;
    q.c = 0.5 * hd / gap;  // (eps^2/(hbar Delta0)^2 + 1)^{-1/2} / 2
    return q;
}

// Diagonalizes a 2x2 hermitian H and rotates G into the energy basis.
// Phase convention: Re c >= 0 (and Im c >= 0 when Re c = 0), fixed by a phase
// on the excited eigenvector.
inline QubitSystem qubit_from_matrices(const Eigen::Matrix2cd& H, const Eigen::Matrix2cd& G) {
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ValidationError("qubit_from_matrices: H must be hermitian");
    }
    if ((G - G.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ValidationError("qubit_from_matrices: G must be hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(H);
    if (es.info() != Eigen::Success) {
        throw EigendecompositionFailure("qubit_from_matrices: eigensolver failed");
    }
    const double gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    if (gap < 1e-12) throw DegenerateSystem("qubit_from_matrices: gap below 1e-12");

    const Eigen::Matrix2cd U = es.eigenvectors();  // columns: ground, excited
    Eigen::Matrix2cd Gp = U.adjoint() * G * U;
    // A phase on the excited eigenvector rotates c freely; the convention
    // Re c >= 0, Im c = 0 picks c = |c|.
    const Complex c = std::abs(Gp(0, 1));
    QubitSystem q;
    q.Delta = gap;
    q.a = Gp(0, 0).real();
    q.b = Gp(1, 1).real();
    q.c = c;
    return q;
}

}  // namespace qdeco
