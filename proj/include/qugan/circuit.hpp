#pragma once

// Parameterized circuit programs built from three layer types (single-qubit
// Y rotation, dual-qubit YY rotation, controlled-Y entangler), each consuming
// one fresh trainable parameter. Circuits are immutable after construction
// and safe to share across threads.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qugan/errors.hpp"
#include "qugan/statevector.hpp"

namespace qugan {

// A gate whose angle is either fixed at build time or bound from a parameter
// vector at run time. Non-rotational gates (H, CSWAP) carry neither.
struct ParamGate {
    GateKind kind;
    std::vector<std::size_t> qubits;
    std::optional<std::size_t> param_slot;
    double fixed_angle = 0.0;
};

struct ParamCircuit {
    std::size_t num_qubits = 0;
    std::vector<ParamGate> gates;
    std::size_t num_params = 0;

    void validate() const {
        for (const ParamGate& g : gates) {
            if (g.qubits.size() != gate_arity(g.kind))
                throw ArgumentError(std::string(gate_name(g.kind)) + " has wrong operand count");
            for (std::size_t q : g.qubits)
                if (q >= num_qubits)
                    throw ArgumentError("gate operand " + std::to_string(q) +
                                        " outside circuit of " + std::to_string(num_qubits) +
                                        " qubits");
            if (g.param_slot && *g.param_slot >= num_params)
                throw ArgumentError("parameter slot " + std::to_string(*g.param_slot) +
                                    " out of range");
        }
    }
};

enum class LayerKind { SingleQubitUnitary, DualQubitUnitary, EntanglementUnitary };

// One network layer: an RY on one qubit, an RYY on a qubit pair, or a CRY
// entangler on a (control, target) pair. Each layer owns one parameter.
struct LayerSpec {
    LayerKind kind;
    std::vector<std::size_t> qubits;

    static LayerSpec squ(std::size_t q) { return {LayerKind::SingleQubitUnitary, {q}}; }
    static LayerSpec dqu(std::size_t a, std::size_t b) { return {LayerKind::DualQubitUnitary, {a, b}}; }
    static LayerSpec ent(std::size_t control, std::size_t target) {
        return {LayerKind::EntanglementUnitary, {control, target}};
    }
};

// Assembles a circuit from layers, in order, allocating one fresh parameter
// per layer. `num_qubits` may widen the register beyond the targeted qubits
// (0 = tight fit); the gates still touch only the listed targets.
inline ParamCircuit build_network(std::span<const std::size_t> qubits,
                                  std::span<const LayerSpec> layers,
                                  std::size_t num_qubits = 0) {
    std::size_t width = num_qubits;
    if (width == 0) {
        for (std::size_t q : qubits) width = std::max(width, q + 1);
    }
    ParamCircuit circuit;
    circuit.num_qubits = width;
    circuit.num_params = layers.size();
    circuit.gates.reserve(layers.size());

    auto in_list = [&](std::size_t q) { return std::find(qubits.begin(), qubits.end(), q) != qubits.end(); };

    std::size_t slot = 0;
    for (const LayerSpec& layer : layers) {
        const std::size_t want = layer.kind == LayerKind::SingleQubitUnitary ? 1 : 2;
        if (layer.qubits.size() != want)
            throw ArgumentError("layer targets " + std::to_string(layer.qubits.size()) +
                                " qubits, expected " + std::to_string(want));
        for (std::size_t q : layer.qubits)
            if (!in_list(q))
                throw ArgumentError("layer target " + std::to_string(q) +
                                    " not in the network qubit list");
        ParamGate g;
        g.qubits = layer.qubits;
        g.param_slot = slot++;
        switch (layer.kind) {
            case LayerKind::SingleQubitUnitary: g.kind = GateKind::RY; break;
            case LayerKind::DualQubitUnitary: g.kind = GateKind::RYY; break;
            case LayerKind::EntanglementUnitary: g.kind = GateKind::CRY; break;
        }
        circuit.gates.push_back(std::move(g));
    }
    circuit.validate();
    return circuit;
}

// The network shape used for both adversaries: one single-qubit unitary per
// qubit, one dual-qubit unitary per adjacent pair (ascending), then one
// entangler per adjacent pair with the lower index controlling. For d qubits
// this yields 3d-2 parameters; for the two-qubit case, exactly 4.
inline std::vector<LayerSpec> standard_layers(std::span<const std::size_t> qubits) {
    std::vector<LayerSpec> layers;
    for (std::size_t q : qubits) layers.push_back(LayerSpec::squ(q));
    for (std::size_t i = 0; i + 1 < qubits.size(); ++i)
        layers.push_back(LayerSpec::dqu(qubits[i], qubits[i + 1]));
    for (std::size_t i = 0; i + 1 < qubits.size(); ++i)
        layers.push_back(LayerSpec::ent(qubits[i], qubits[i + 1]));
    return layers;
}

// Resolves a gate's angle against a bound parameter vector.
inline Gate bind_gate(const ParamGate& g, std::span<const double> params) {
    Gate gate;
    gate.kind = g.kind;
    gate.qubits = g.qubits;
    gate.angle = g.param_slot ? params[*g.param_slot] : g.fixed_angle;
    return gate;
}

// Applies every gate in order with its bound angle. The initial state must
// match the circuit's register width.
inline StateVector bind_and_run(const ParamCircuit& circuit, std::span<const double> params,
                                StateVector initial) {
    if (params.size() != circuit.num_params)
        throw ArgumentError("expected " + std::to_string(circuit.num_params) + " parameters, got " +
                            std::to_string(params.size()));
    if (initial.num_qubits() != circuit.num_qubits)
        throw ArgumentError("initial state has " + std::to_string(initial.num_qubits()) +
                            " qubits, circuit needs " + std::to_string(circuit.num_qubits));
    for (const ParamGate& g : circuit.gates)
        initial = apply_gate(std::move(initial), bind_gate(g, params));
    return initial;
}

}  // namespace qugan
