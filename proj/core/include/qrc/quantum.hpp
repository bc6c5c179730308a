#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qrc/linalg.hpp"

namespace qrc {

enum class Axis { X, Y, Z };

char axis_char(Axis axis) noexcept;

// Single-site Pauli on `site` (1-based) of an n-spin register. Site 1 is the
// leftmost tensor factor, i.e. the most significant bit of the basis index;
// sigma_z is diag(+1, -1) in the (|0>, |1>) basis.
ComplexMatrix pauli_operator(Axis axis, int site, int n_spins);

// |b_1 b_2 ... b_n> with b_1 the leftmost factor.
StateVector basis_state(int n_spins, std::uint64_t index);

// --- Transverse-field Ising reservoir -------------------------------------

struct IsingParams {
    int n_spins = 5;
    double j = 1.0;          // coupling scale, the energy unit
    RealMatrix couplings;    // symmetric, zero diagonal, entries in [-j, j]
    double h = 0.2;          // static transverse field
    double c_s = 0.2;        // input scale: h_k = c_s * s_k
};

// Symmetric, zero-diagonal, J_ij (i<j) i.i.d. uniform on [-j, j]. Entries are
// drawn row-major over the upper triangle.
RealMatrix sample_couplings(std::uint64_t seed, int n_spins, double j = 1.0);

// Convenience: default parameters with freshly sampled couplings.
IsingParams make_ising(std::uint64_t seed, int n_spins = 5, double j = 1.0, double h = 0.2, double c_s = 0.2);

// H = sum_{i<j} J_ij X_i X_j + h sum_i Z_i + (c_s s_k) sum_i X_i
ComplexMatrix build_ising(const IsingParams &params, double s_k);

// --- Rydberg chain reservoir ----------------------------------------------

enum class Encoding { Detuning, Phase };

struct RydbergParams {
    static constexpr double kTwoPi = 2.0 * std::numbers::pi;

    int n_atoms = 5;
    std::vector<double> positions = {0.0, 7.0, 14.0, 21.0, 28.0}; // um
    double c6 = 862690.0 * kTwoPi;                                  // rad/us um^6
    double omega = kTwoPi * 4.2;                                    // rad/us
    Encoding encoding = Encoding::Detuning;
    double phi_star = std::numbers::pi / 2; // fixed phase for detuning encoding
    double delta_star = 5.0;                // fixed detuning, units of omega, for phase encoding
    double delta_scale = 5.0;               // detuning per unit input, units of omega
    double phi_scale = std::numbers::pi;    // phase per unit input

    // Equally spaced 1D chain.
    static RydbergParams chain(int n_atoms, double spacing_um = 7.0);
};

// V_jk = C6 / |x_j - x_k|^6 (zero diagonal). Throws ParameterInvalid when
// two atoms are closer than the 7 um blockade floor.
RealMatrix interaction_matrix(const RydbergParams &params);

// H = sum_j Omega [X_j cos(phi) - Y_j sin(phi)] - sum_j Delta/2 - sum_j Delta/2 Z_j
//     + sum_{j<k} V_jk n_j n_k,  n = (1 + Z)/2.
// The normalized input s_k in [0, 1] drives Delta (Detuning) or phi (Phase).
ComplexMatrix build_rydberg(const RydbergParams &params, double s_k);

// --- Observables ----------------------------------------------------------

// Weight-1 or weight-2 Pauli string with the same axis on every site.
struct PauliTerm {
    Axis axis = Axis::X;
    int site_a = 1;
    int site_b = 0; // 0 for single-site terms

    int weight() const noexcept { return site_b == 0 ? 1 : 2; }
    std::string label() const;
};

struct ObservableSet {
    std::string name;
    int n_spins = 0;
    std::vector<PauliTerm> terms;

    std::size_t size() const noexcept { return terms.size(); }
};

// Names: X1, One (alias "1"), N, XX, OneN (alias "1-N"), A.
// Order: single-site terms by axis then site; two-site terms by axis then
// lexicographic (i, j).
ObservableSet make_observable_set(std::string_view name, int n_spins);

// Canonical name ("One" for "1" etc.); throws Config for unknown names.
std::string canonical_set_name(std::string_view name);

ComplexMatrix pauli_term_matrix(const PauliTerm &term, int n_spins);

// m[i] = <psi|O_i|psi>. Throws DimensionMismatch, NonHermitianResidue.
RealVector measure(const StateVector &psi, const ObservableSet &set);

// --- Per-input feature map ------------------------------------------------

// Affine input encoding applied before the Hamiltonian builder, with optional
// clamping to the builder's admissible range.
struct InputEncoding {
    double scale = 1.0;
    double offset = 0.0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    double apply(double s) const noexcept;

    // Maps [min, max] onto [lo, hi] and clamps to it.
    static InputEncoding min_max(double min, double max, double lo, double hi);
};

// s_k -> H(encode(s_k)) -> exp(-i H dt)|psi0> -> m_k.
class QuantumReservoir {
  public:
    using HamiltonianBuilder = std::function<ComplexMatrix(double)>;

    QuantumReservoir(HamiltonianBuilder builder, double dt, StateVector psi0, ObservableSet observables,
                     InputEncoding encoding = {});

    RealVector features(double s_k) const;

    std::size_t feature_length() const noexcept { return observables_.size(); }
    double dt() const noexcept { return dt_; }
    const ObservableSet &observables() const noexcept { return observables_; }
    const InputEncoding &encoding() const noexcept { return encoding_; }

  private:
    HamiltonianBuilder builder_;
    double dt_;
    StateVector psi0_;
    ObservableSet observables_;
    InputEncoding encoding_;
};

} // namespace qrc
