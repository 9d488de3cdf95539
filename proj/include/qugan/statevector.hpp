#pragma once

// Dense state-vector simulation of n-qubit systems: state preparation, gate
// application, exact marginal probabilities and seeded shot sampling.
//
// Conventions (fixed once, used everywhere):
//   * Qubit 0 is the least-significant bit of a basis index (little-endian):
//     amplitude index i describes the basis state where qubit q has value
//     (i >> q) & 1.
//   * For a k-qubit gate matrix, operand 0 supplies the most-significant bit
//     of the matrix row/column index. CRY(control, target) therefore matches
//     the printed 4x4 block form with the control as the leading label, and
//     CSWAP(control, a, b) indexes as control*4 + a*2 + b.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qugan/errors.hpp"
#include "qugan/rng.hpp"

namespace qugan {

using Cplx = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 24;  // 2^24 amplitudes, ~256 MiB

enum class GateKind { H, RY, CRY, RYY, CSWAP };

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::RY: return "RY";
        case GateKind::CRY: return "CRY";
        case GateKind::RYY: return "RYY";
        case GateKind::CSWAP: return "CSWAP";
    }
    return "?";
}

inline std::size_t gate_arity(GateKind k) {
    switch (k) {
        case GateKind::H:
        case GateKind::RY: return 1;
        case GateKind::CRY:
        case GateKind::RYY: return 2;
        case GateKind::CSWAP: return 3;
    }
    return 0;
}

inline bool gate_has_angle(GateKind k) { return k == GateKind::RY || k == GateKind::CRY || k == GateKind::RYY; }

// A concrete gate instance: kind, rotation angle where applicable, and the
// ordered operand qubits (control first for CRY/CSWAP).
struct Gate {
    GateKind kind;
    double angle = 0.0;
    std::vector<std::size_t> qubits;

    static Gate h(std::size_t q) { return {GateKind::H, 0.0, {q}}; }
    static Gate ry(double angle, std::size_t q) { return {GateKind::RY, angle, {q}}; }
    static Gate cry(double angle, std::size_t control, std::size_t target) {
        return {GateKind::CRY, angle, {control, target}};
    }
    static Gate ryy(double angle, std::size_t a, std::size_t b) { return {GateKind::RYY, angle, {a, b}}; }
    static Gate cswap(std::size_t control, std::size_t a, std::size_t b) {
        return {GateKind::CSWAP, 0.0, {control, a, b}};
    }
};

// Row-major dim x dim complex matrix, just large enough for 3-qubit gates.
struct GateMatrix {
    std::size_t dim = 0;
    std::vector<Cplx> a;

    Cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const Cplx& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static GateMatrix identity(std::size_t dim) {
        GateMatrix m{dim, std::vector<Cplx>(dim * dim)};
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

// The unitary realization of a gate kind at a given angle.
inline GateMatrix gate_matrix(GateKind kind, double angle = 0.0) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            GateMatrix m{2, {r, r, r, -r}};
            return m;
        }
        case GateKind::RY:
            return GateMatrix{2, {c, -s, s, c}};
        case GateKind::CRY: {
            GateMatrix m = GateMatrix::identity(4);
            m.at(2, 2) = c;
            m.at(2, 3) = -s;
            m.at(3, 2) = s;
            m.at(3, 3) = c;
            return m;
        }
        case GateKind::RYY: {
            // +i sin on the anti-diagonal corners, -i sin in the middle block.
            GateMatrix m{4, std::vector<Cplx>(16)};
            const Cplx is{0.0, s};
            m.at(0, 0) = c;
            m.at(0, 3) = is;
            m.at(1, 1) = c;
            m.at(1, 2) = -is;
            m.at(2, 1) = -is;
            m.at(2, 2) = c;
            m.at(3, 0) = is;
            m.at(3, 3) = c;
            return m;
        }
        case GateKind::CSWAP: {
            GateMatrix m{8, std::vector<Cplx>(64)};
            for (std::size_t i = 0; i < 8; ++i) {
                std::size_t j = i;
                if (i & 4) {  // control set: swap the two target bits
                    std::size_t a = (i >> 1) & 1, b = i & 1;
                    j = (i & 4) | (b << 1) | a;
                }
                m.at(j, i) = 1.0;
            }
            return m;
        }
    }
    throw ArgumentError("unknown gate kind");
}

// Complex amplitudes over the 2^n computational basis states.
class StateVector {
  public:
    explicit StateVector(std::size_t num_qubits)
        : num_qubits_(num_qubits), amps_(std::size_t(1) << num_qubits) {}

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    Cplx& operator[](std::size_t i) { return amps_[i]; }
    const Cplx& operator[](std::size_t i) const { return amps_[i]; }

    std::span<const Cplx> amplitudes() const { return amps_; }

    double norm_sq() const {
        double n = 0.0;
        for (const Cplx& a : amps_) n += std::norm(a);
        return n;
    }

  private:
    std::size_t num_qubits_;
    std::vector<Cplx> amps_;
};

// Measured basis outcomes of a set of qubits; outcome bit i of a shot is the
// result for the i-th listed qubit.
struct ShotResult {
    std::vector<std::uint64_t> outcomes;
    std::size_t num_measured_qubits = 0;

    std::size_t shots() const { return outcomes.size(); }

    int bit(std::size_t shot, std::size_t qubit_pos) const {
        return static_cast<int>((outcomes[shot] >> qubit_pos) & 1);
    }

    // Mean of the i-th listed qubit's outcomes over all shots.
    double mean_of(std::size_t qubit_pos) const {
        std::size_t ones = 0;
        for (std::uint64_t o : outcomes) ones += (o >> qubit_pos) & 1;
        return static_cast<double>(ones) / static_cast<double>(outcomes.size());
    }
};

// |0...0> on num_qubits qubits.
inline StateVector zero_state(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw ConfigError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                          std::to_string(num_qubits));
    StateVector s(num_qubits);
    s[0] = 1.0;
    return s;
}

namespace detail {

inline void check_operands(const StateVector& state, const Gate& gate) {
    if (gate.qubits.size() != gate_arity(gate.kind))
        throw ArgumentError(std::string(gate_name(gate.kind)) + " expects " +
                            std::to_string(gate_arity(gate.kind)) + " operands");
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
        if (gate.qubits[i] >= state.num_qubits())
            throw ArgumentError("operand qubit " + std::to_string(gate.qubits[i]) +
                                " out of range for " + std::to_string(state.num_qubits()) +
                                " qubits");
        for (std::size_t j = i + 1; j < gate.qubits.size(); ++j)
            if (gate.qubits[i] == gate.qubits[j])
                throw ArgumentError("operand qubits must be distinct");
    }
}

// Applies a 2^k x 2^k unitary to the given operand qubits, identity elsewhere.
// Operand 0 is the most-significant bit of the matrix index.
inline void apply_matrix_inplace(StateVector& state, std::span<const std::size_t> qubits,
                                 const GateMatrix& u) {
    const std::size_t k = qubits.size();
    const std::size_t dim = std::size_t(1) << k;
    std::size_t op_mask = 0;
    for (std::size_t q : qubits) op_mask |= std::size_t(1) << q;

    // Bit offset of matrix-index position m within a full basis index.
    std::vector<std::size_t> stride(dim, 0);
    for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t j = 0; j < k; ++j)
            if ((m >> (k - 1 - j)) & 1) stride[m] |= std::size_t(1) << qubits[j];

    std::vector<Cplx> in(dim), out(dim);
    const std::size_t n = state.dim();
    for (std::size_t base = 0; base < n; ++base) {
        if (base & op_mask) continue;  // visit each operand-group once
        for (std::size_t m = 0; m < dim; ++m) in[m] = state[base | stride[m]];
        for (std::size_t r = 0; r < dim; ++r) {
            Cplx acc = 0.0;
            for (std::size_t cidx = 0; cidx < dim; ++cidx) acc += u.at(r, cidx) * in[cidx];
            out[r] = acc;
        }
        for (std::size_t m = 0; m < dim; ++m) state[base | stride[m]] = out[m];
    }
}

}  // namespace detail

// Returns the state after applying the gate's unitary (identity on all other
// qubits). Takes the state by value; callers that no longer need the input
// should move it in.
inline StateVector apply_gate(StateVector state, const Gate& gate) {
    detail::check_operands(state, gate);
    const GateMatrix u = gate_matrix(gate.kind, gate.angle);
    detail::apply_matrix_inplace(state, gate.qubits, u);
    return state;
}

// Exact marginal probability of measuring 1 on the given qubit.
inline double prob_one(const StateVector& state, std::size_t qubit) {
    if (qubit >= state.num_qubits())
        throw ArgumentError("qubit index " + std::to_string(qubit) + " out of range");
    const std::size_t mask = std::size_t(1) << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if (i & mask) p += std::norm(state[i]);
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

// Inner product <a|b>.
inline Cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits())
        throw ArgumentError("inner product requires equal qubit counts");
    Cplx acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

// Squared overlap |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

// Draws `shots` samples of the listed qubits from their exact joint
// distribution (marginalized over unlisted qubits). Deterministic per seed.
inline ShotResult sample(const StateVector& state, std::span<const std::size_t> qubits,
                         std::size_t shots, std::uint64_t seed) {
    if (shots == 0) throw ArgumentError("shots must be >= 1");
    if (qubits.empty()) throw ArgumentError("must measure at least one qubit");
    if (qubits.size() > 20) throw ArgumentError("too many qubits to tabulate jointly");
    for (std::size_t q : qubits)
        if (q >= state.num_qubits())
            throw ArgumentError("measured qubit " + std::to_string(q) + " out of range");

    const std::size_t k = qubits.size();
    std::vector<double> joint(std::size_t(1) << k, 0.0);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        if (p == 0.0) continue;
        std::size_t key = 0;
        for (std::size_t j = 0; j < k; ++j) key |= ((i >> qubits[j]) & 1) << j;
        joint[key] += p;
    }
    std::vector<double> cdf(joint.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < joint.size(); ++i) {
        acc += joint[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;  // absorb rounding in the tail

    Rng rng(seed);
    ShotResult result;
    result.num_measured_qubits = k;
    result.outcomes.resize(shots);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u < cdf[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        result.outcomes[s] = lo;
    }
    return result;
}

}  // namespace qugan
