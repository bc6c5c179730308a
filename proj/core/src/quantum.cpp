#include "qrc/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qrc/error.hpp"
#include "qrc/random.hpp"

namespace qrc {

namespace {

constexpr int kMaxSpins = 10;

void check_register(int n_spins) {
    if (n_spins < 1 || n_spins > kMaxSpins) {
        throw Error(ErrorKind::ParameterInvalid,
                    "register size " + std::to_string(n_spins) + " outside [1, " + std::to_string(kMaxSpins) + "]");
    }
}

void check_site(int site, int n_spins) {
    if (site < 1 || site > n_spins) {
        throw Error(ErrorKind::SiteOutOfRange,
                    "site " + std::to_string(site) + " not in [1, " + std::to_string(n_spins) + "]");
    }
}

std::uint64_t site_bit(int site, int n_spins) { return std::uint64_t{1} << (n_spins - site); }

// P|i> = phase(i) |i ^ flip>.
struct PauliAction {
    std::uint64_t flip = 0;
    std::uint64_t y_mask = 0;
    std::uint64_t z_mask = 0;

    void add(Axis axis, std::uint64_t bit) {
        switch (axis) {
        case Axis::X: flip |= bit; break;
        case Axis::Y: flip |= bit; y_mask |= bit; break;
        case Axis::Z: z_mask |= bit; break;
        }
    }

    Complex phase(std::uint64_t i) const {
        // Y|0> = i|1>, Y|1> = -i|0>; Z|1> = -|1>.
        const int n_y = std::popcount(y_mask);
        const int y_ones = std::popcount(i & y_mask);
        const int z_ones = std::popcount(i & z_mask);
        // i^{n_y} * (-1)^{y_ones} * (-1)^{z_ones}
        static constexpr Complex kPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        Complex p = kPow[n_y % 4];
        if ((y_ones + z_ones) % 2 == 1) {
            p = -p;
        }
        return p;
    }
};

PauliAction action_of(const PauliTerm &term, int n_spins) {
    PauliAction a;
    a.add(term.axis, site_bit(term.site_a, n_spins));
    if (term.site_b != 0) {
        a.add(term.axis, site_bit(term.site_b, n_spins));
    }
    return a;
}

void add_scaled(ComplexMatrix &h, const PauliAction &a, Complex coeff) {
    const auto dim = static_cast<std::uint64_t>(h.rows());
    for (std::uint64_t i = 0; i < dim; ++i) {
        h(static_cast<Eigen::Index>(i ^ a.flip), static_cast<Eigen::Index>(i)) += coeff * a.phase(i);
    }
}

void add_single(ComplexMatrix &h, Axis axis, int site, int n_spins, Complex coeff) {
    PauliAction a;
    a.add(axis, site_bit(site, n_spins));
    add_scaled(h, a, coeff);
}

void add_pair(ComplexMatrix &h, Axis axis, int i, int j, int n_spins, Complex coeff) {
    PauliAction a;
    a.add(axis, site_bit(i, n_spins));
    a.add(axis, site_bit(j, n_spins));
    add_scaled(h, a, coeff);
}

Eigen::Index dim_of(int n_spins) { return Eigen::Index{1} << n_spins; }

} // namespace

char axis_char(Axis axis) noexcept {
    switch (axis) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
    }
    return '?';
}

ComplexMatrix pauli_operator(Axis axis, int site, int n_spins) {
    check_register(n_spins);
    check_site(site, n_spins);
    ComplexMatrix m = ComplexMatrix::Zero(dim_of(n_spins), dim_of(n_spins));
    add_single(m, axis, site, n_spins, 1.0);
    return m;
}

StateVector basis_state(int n_spins, std::uint64_t index) {
    check_register(n_spins);
    const auto dim = dim_of(n_spins);
    if (index >= static_cast<std::uint64_t>(dim)) {
        throw Error(ErrorKind::ParameterInvalid, "basis index out of range");
    }
    StateVector psi = StateVector::Zero(dim);
    psi[static_cast<Eigen::Index>(index)] = 1.0;
    return psi;
}

RealMatrix sample_couplings(std::uint64_t seed, int n_spins, double j) {
    check_register(n_spins);
    Rng rng(seed);
    RealMatrix c = RealMatrix::Zero(n_spins, n_spins);
    for (int a = 0; a < n_spins; ++a) {
        for (int b = a + 1; b < n_spins; ++b) {
            const double v = rng.uniform(-j, j);
            c(a, b) = v;
            c(b, a) = v;
        }
    }
    return c;
}

IsingParams make_ising(std::uint64_t seed, int n_spins, double j, double h, double c_s) {
    IsingParams p;
    p.n_spins = n_spins;
    p.j = j;
    p.h = h;
    p.c_s = c_s;
    p.couplings = n_spins >= 2 ? sample_couplings(seed, n_spins, j) : RealMatrix::Zero(n_spins, n_spins);
    return p;
}

ComplexMatrix build_ising(const IsingParams &params, double s_k) {
    if (!std::isfinite(s_k)) {
        throw Error(ErrorKind::NonFinite, "Ising input is not finite");
    }
    const int n = params.n_spins;
    check_register(n);
    if (params.couplings.rows() != n || params.couplings.cols() != n) {
        throw Error(ErrorKind::DimensionMismatch, "coupling matrix does not match n_spins");
    }
    if (!std::isfinite(params.h) || !std::isfinite(params.c_s)) {
        throw Error(ErrorKind::NonFinite, "Ising field parameters are not finite");
    }
    const double h_k = params.c_s * s_k;
    ComplexMatrix h = ComplexMatrix::Zero(dim_of(n), dim_of(n));
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            add_pair(h, Axis::X, i, j, n, params.couplings(i - 1, j - 1));
        }
    }
    for (int i = 1; i <= n; ++i) {
        add_single(h, Axis::Z, i, n, params.h);
        add_single(h, Axis::X, i, n, h_k);
    }
    return h;
}

RydbergParams RydbergParams::chain(int n_atoms, double spacing_um) {
    RydbergParams p;
    p.n_atoms = n_atoms;
    p.positions.resize(static_cast<std::size_t>(n_atoms));
    for (int i = 0; i < n_atoms; ++i) {
        p.positions[static_cast<std::size_t>(i)] = spacing_um * i;
    }
    return p;
}

RealMatrix interaction_matrix(const RydbergParams &params) {
    const int n = params.n_atoms;
    check_register(n);
    if (static_cast<int>(params.positions.size()) != n) {
        throw Error(ErrorKind::DimensionMismatch, "positions do not match n_atoms");
    }
    RealMatrix v = RealMatrix::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double d = std::abs(params.positions[static_cast<std::size_t>(a)] -
                                      params.positions[static_cast<std::size_t>(b)]);
            if (d < 7.0) {
                throw Error(ErrorKind::ParameterInvalid, "atoms closer than the 7 um minimum distance");
            }
            v(a, b) = v(b, a) = params.c6 / std::pow(d, 6);
        }
    }
    return v;
}

ComplexMatrix build_rydberg(const RydbergParams &params, double s_k) {
    if (!(s_k >= 0.0 && s_k <= 1.0)) {
        throw Error(ErrorKind::InputOutOfRange, "normalized Rydberg input " + std::to_string(s_k) + " not in [0, 1]");
    }
    const int n = params.n_atoms;
    const RealMatrix v = interaction_matrix(params);

    double delta = 0.0;
    double phi = 0.0;
    if (params.encoding == Encoding::Detuning) {
        delta = params.delta_scale * params.omega * s_k;
        phi = params.phi_star;
    } else {
        phi = params.phi_scale * s_k;
        delta = params.delta_star * params.omega;
    }

    const auto dim = dim_of(n);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    const double cx = params.omega * std::cos(phi);
    const double cy = -params.omega * std::sin(phi);
    for (int j = 1; j <= n; ++j) {
        add_single(h, Axis::X, j, n, cx);
        add_single(h, Axis::Y, j, n, cy);
        add_single(h, Axis::Z, j, n, -delta / 2.0);
    }
    // -sum_j Delta_j / 2 times identity: a global phase, kept for spectral parity.
    h.diagonal().array() += Complex(-n * delta / 2.0, 0.0);

    // n_j n_k is diagonal: 1 when both sites have Z = +1 (bit 0).
    for (Eigen::Index i = 0; i < dim; ++i) {
        double e = 0.0;
        for (int a = 1; a <= n; ++a) {
            if (i & static_cast<Eigen::Index>(site_bit(a, n))) {
                continue;
            }
            for (int b = a + 1; b <= n; ++b) {
                if (!(i & static_cast<Eigen::Index>(site_bit(b, n)))) {
                    e += v(a - 1, b - 1);
                }
            }
        }
        h(i, i) += e;
    }
    return h;
}

std::string PauliTerm::label() const {
    std::string s;
    s += axis_char(axis);
    s += std::to_string(site_a);
    if (site_b != 0) {
        s += axis_char(axis);
        s += std::to_string(site_b);
    }
    return s;
}

std::string canonical_set_name(std::string_view name) {
    if (name == "X1") return "X1";
    if (name == "One" || name == "1") return "One";
    if (name == "N") return "N";
    if (name == "XX") return "XX";
    if (name == "OneN" || name == "1-N") return "OneN";
    if (name == "A") return "A";
    throw Error(ErrorKind::Config, "unknown observable set '" + std::string(name) + "'");
}

ObservableSet make_observable_set(std::string_view name, int n_spins) {
    check_register(n_spins);
    ObservableSet set;
    set.name = canonical_set_name(name);
    set.n_spins = n_spins;
    auto &t = set.terms;
    constexpr Axis kAxes[] = {Axis::X, Axis::Y, Axis::Z};

    if (set.name == "X1") {
        t.push_back({Axis::X, 1, 0});
    } else if (set.name == "One") {
        for (Axis a : kAxes) t.push_back({a, 1, 0});
    } else if (set.name == "N") {
        for (Axis a : kAxes)
            for (int i = 1; i <= n_spins; ++i) t.push_back({a, i, 0});
    } else if (set.name == "XX") {
        for (int i = 1; i <= n_spins; ++i) t.push_back({Axis::X, i, 0});
        for (int i = 1; i <= n_spins; ++i)
            for (int j = i + 1; j <= n_spins; ++j) t.push_back({Axis::X, i, j});
    } else if (set.name == "OneN") {
        for (Axis a : kAxes) t.push_back({a, 1, 0});
        for (Axis a : kAxes)
            for (int j = 2; j <= n_spins; ++j) t.push_back({a, 1, j});
    } else { // A
        for (Axis a : kAxes)
            for (int i = 1; i <= n_spins; ++i) t.push_back({a, i, 0});
        for (Axis a : kAxes)
            for (int i = 1; i <= n_spins; ++i)
                for (int j = i + 1; j <= n_spins; ++j) t.push_back({a, i, j});
    }
    return set;
}

ComplexMatrix pauli_term_matrix(const PauliTerm &term, int n_spins) {
    check_register(n_spins);
    check_site(term.site_a, n_spins);
    if (term.site_b != 0) {
        check_site(term.site_b, n_spins);
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim_of(n_spins), dim_of(n_spins));
    add_scaled(m, action_of(term, n_spins), 1.0);
    return m;
}

RealVector measure(const StateVector &psi, const ObservableSet &set) {
    const int n = set.n_spins;
    check_register(n);
    if (psi.size() != dim_of(n)) {
        throw Error(ErrorKind::DimensionMismatch, "state dim " + std::to_string(psi.size()) + " does not match " +
                                                      std::to_string(n) + " spins");
    }
    const auto dim = static_cast<std::uint64_t>(psi.size());
    RealVector m(static_cast<Eigen::Index>(set.size()));
    for (std::size_t k = 0; k < set.size(); ++k) {
        const PauliAction a = action_of(set.terms[k], n);
        Complex acc = 0.0;
        for (std::uint64_t i = 0; i < dim; ++i) {
            acc += std::conj(psi[static_cast<Eigen::Index>(i ^ a.flip)]) * a.phase(i) *
                   psi[static_cast<Eigen::Index>(i)];
        }
        if (std::abs(acc.imag()) > 1e-8) {
            throw Error(ErrorKind::NonHermitianResidue,
                        set.terms[k].label() + " has imaginary part " + std::to_string(acc.imag()));
        }
        m[static_cast<Eigen::Index>(k)] = acc.real();
    }
    return m;
}

double InputEncoding::apply(double s) const noexcept {
    return std::clamp(offset + scale * s, lo, hi);
}

InputEncoding InputEncoding::min_max(double min, double max, double lo, double hi) {
    if (!(max > min)) {
        throw Error(ErrorKind::ParameterInvalid, "min-max normalization needs max > min");
    }
    InputEncoding e;
    e.scale = (hi - lo) / (max - min);
    e.offset = lo - e.scale * min;
    e.lo = lo;
    e.hi = hi;
    return e;
}

QuantumReservoir::QuantumReservoir(HamiltonianBuilder builder, double dt, StateVector psi0,
                                   ObservableSet observables, InputEncoding encoding)
    : builder_(std::move(builder)), dt_(dt), psi0_(std::move(psi0)), observables_(std::move(observables)),
      encoding_(encoding) {
    if (!(dt_ >= 0.0) || !std::isfinite(dt_)) {
        throw Error(ErrorKind::ParameterInvalid, "evolution time must be finite and >= 0");
    }
    if (psi0_.size() != dim_of(observables_.n_spins)) {
        throw Error(ErrorKind::DimensionMismatch, "initial state does not match observable register");
    }
}

RealVector QuantumReservoir::features(double s_k) const {
    const ComplexMatrix h = builder_(encoding_.apply(s_k));
    return measure(evolve(h, dt_, psi0_), observables_);
}

} // namespace qrc
