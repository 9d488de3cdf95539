#pragma once

// The similarity subcircuit between the discriminator register and either
// the data register or the generator register: H on the ancilla, one
// controlled-SWAP per qubit pair, H again, then measure the ancilla. The
// measurement mean E is folded to p = |E - 0.5| / 0.5, which equals the
// squared overlap of the two prepared states under either ancilla sign
// convention (the fold is symmetric about 0.5).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qugan/circuit.hpp"
#include "qugan/errors.hpp"
#include "qugan/statevector.hpp"

namespace qugan {

// Role assignment over the full register: one ancilla, d discriminator
// qubits, d generator-or-data qubits; total width 1 + 2d.
struct QubitLayout {
    std::size_t ancilla = 0;
    std::vector<std::size_t> disc_qubits;
    std::vector<std::size_t> gen_qubits;

    std::size_t dim() const { return disc_qubits.size(); }
    std::size_t total_qubits() const { return 1 + disc_qubits.size() + gen_qubits.size(); }

    // Ancilla on qubit 0, discriminator on 1..d, generator/data on d+1..2d.
    static QubitLayout standard(std::size_t dim) {
        QubitLayout layout;
        layout.ancilla = 0;
        for (std::size_t i = 0; i < dim; ++i) layout.disc_qubits.push_back(1 + i);
        for (std::size_t i = 0; i < dim; ++i) layout.gen_qubits.push_back(1 + dim + i);
        return layout;
    }

    void validate() const {
        if (disc_qubits.size() != gen_qubits.size())
            throw ArgumentError("discriminator and generator registers must have equal size");
        if (disc_qubits.empty()) throw ArgumentError("layout needs at least one qubit per register");
        std::vector<std::size_t> all{ancilla};
        all.insert(all.end(), disc_qubits.begin(), disc_qubits.end());
        all.insert(all.end(), gen_qubits.begin(), gen_qubits.end());
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (all[i] == all[j]) throw ArgumentError("layout qubit groups overlap");
        for (std::size_t q : all)
            if (q >= total_qubits())
                throw ArgumentError("layout qubit " + std::to_string(q) +
                                    " outside the 1+2d register");
    }
};

struct SwapTestOutcome {
    double expectation = 0.0;              // ancilla measurement mean in [0,1]
    double p_value = 0.0;                  // |(expectation - 0.5) / 0.5|
    std::optional<std::size_t> shots;      // nullopt = exact expectation
};

// H(ancilla); CSWAP(ancilla, disc_i, gen_i) for each i; H(ancilla).
inline ParamCircuit build_swap_test(const QubitLayout& layout) {
    layout.validate();
    ParamCircuit fragment;
    fragment.num_qubits = layout.total_qubits();
    fragment.num_params = 0;
    fragment.gates.push_back({GateKind::H, {layout.ancilla}, std::nullopt, 0.0});
    for (std::size_t i = 0; i < layout.dim(); ++i)
        fragment.gates.push_back(
            {GateKind::CSWAP, {layout.ancilla, layout.disc_qubits[i], layout.gen_qubits[i]}, std::nullopt, 0.0});
    fragment.gates.push_back({GateKind::H, {layout.ancilla}, std::nullopt, 0.0});
    fragment.validate();
    return fragment;
}

namespace detail {

inline void check_prep_scope(const ParamCircuit& prep, std::span<const std::size_t> allowed,
                             const char* which) {
    for (const ParamGate& g : prep.gates)
        for (std::size_t q : g.qubits) {
            bool ok = false;
            for (std::size_t a : allowed) ok = ok || a == q;
            if (!ok)
                throw ArgumentError(std::string(which) + " preparation touches qubit " +
                                    std::to_string(q) + " outside its register");
        }
}

// Full-register state after both preparations and the interference fragment.
inline StateVector swap_test_state(const ParamCircuit& disc_prep, std::span<const double> disc_params,
                                   const ParamCircuit& other_prep, std::span<const double> other_params,
                                   const QubitLayout& layout) {
    layout.validate();
    check_prep_scope(disc_prep, layout.disc_qubits, "discriminator");
    check_prep_scope(other_prep, layout.gen_qubits, "generator/data");
    StateVector state = zero_state(layout.total_qubits());
    state = bind_and_run(disc_prep, disc_params, std::move(state));
    state = bind_and_run(other_prep, other_params, std::move(state));
    state = bind_and_run(build_swap_test(layout), {}, std::move(state));
    return state;
}

inline double fold_p(double expectation) {
    double p = std::abs((expectation - 0.5) / 0.5);
    return p > 1.0 ? 1.0 : p;
}

}  // namespace detail

// Exact-expectation similarity: p equals the squared overlap of the two
// prepared d-qubit states (up to simulation roundoff).
inline SwapTestOutcome p_value_exact(const ParamCircuit& disc_prep, std::span<const double> disc_params,
                                     const ParamCircuit& other_prep, std::span<const double> other_params,
                                     const QubitLayout& layout) {
    const StateVector state =
        detail::swap_test_state(disc_prep, disc_params, other_prep, other_params, layout);
    SwapTestOutcome out;
    out.expectation = prob_one(state, layout.ancilla);
    out.p_value = detail::fold_p(out.expectation);
    return out;
}

// Shot-estimated similarity: the expectation is the empirical mean of the
// ancilla over `shots` seeded draws.
inline SwapTestOutcome p_value_shots(const ParamCircuit& disc_prep, std::span<const double> disc_params,
                                     const ParamCircuit& other_prep, std::span<const double> other_params,
                                     const QubitLayout& layout, std::size_t shots, std::uint64_t seed) {
    if (shots == 0) throw ArgumentError("shots must be >= 1");
    const StateVector state =
        detail::swap_test_state(disc_prep, disc_params, other_prep, other_params, layout);
    const std::size_t anc[1] = {layout.ancilla};
    const ShotResult draws = sample(state, anc, shots, seed);
    SwapTestOutcome out;
    out.expectation = draws.mean_of(0);
    out.p_value = detail::fold_p(out.expectation);
    out.shots = shots;
    return out;
}

}  // namespace qugan
