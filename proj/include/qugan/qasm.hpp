#pragma once

// OpenQASM 2.0 emission for bound circuits. H and RY map directly onto
// qelib1 gates. The two composite rotations are decomposed:
//
//   CRY(t; c->q)  =  ry(t/2) q;  cx c,q;  ry(-t/2) q;  cx c,q;
//   RYY(t; a,b)   =  rx(pi/2) a,b;  cx a,b;  rz(t) b;  cx a,b;  rx(-pi/2) a,b;
//
// i.e. a controlled rotation split into two half-angle halves, and a ZZ
// interaction conjugated into the YY basis. Both identities are exact
// (rz taken as exp(-i t Z/2)); the test suite verifies them by simulation
// rather than trusting the algebra.

#include <cmath>
#include <cstdio>
#include <span>
#include <string>

#include "qugan/circuit.hpp"

namespace qugan {

namespace detail {

inline std::string fmt_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

// Emits the circuit with the given parameter binding as an OpenQASM 2.0
// program, one instruction per line.
inline std::string export_qasm(const ParamCircuit& circuit, std::span<const double> params) {
    if (params.size() != circuit.num_params)
        throw ArgumentError("expected " + std::to_string(circuit.num_params) + " parameters, got " +
                            std::to_string(params.size()));
    const double half_pi = std::acos(-1.0) / 2.0;

    std::string out;
    out += "OPENQASM 2.0;\n";
    out += "include \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(circuit.num_qubits) + "];\n";

    auto q = [](std::size_t i) { return "q[" + std::to_string(i) + "]"; };
    auto emit1 = [&](const char* name, double angle, std::size_t a) {
        out += std::string(name) + "(" + detail::fmt_angle(angle) + ") " + q(a) + ";\n";
    };

    for (const ParamGate& pg : circuit.gates) {
        const Gate g = bind_gate(pg, params);
        switch (g.kind) {
            case GateKind::H:
                out += "h " + q(g.qubits[0]) + ";\n";
                break;
            case GateKind::RY:
                emit1("ry", g.angle, g.qubits[0]);
                break;
            case GateKind::CRY: {
                const std::size_t c = g.qubits[0], t = g.qubits[1];
                emit1("ry", g.angle / 2.0, t);
                out += "cx " + q(c) + "," + q(t) + ";\n";
                emit1("ry", -g.angle / 2.0, t);
                out += "cx " + q(c) + "," + q(t) + ";\n";
                break;
            }
            case GateKind::RYY: {
                const std::size_t a = g.qubits[0], b = g.qubits[1];
                emit1("rx", half_pi, a);
                emit1("rx", half_pi, b);
                out += "cx " + q(a) + "," + q(b) + ";\n";
                emit1("rz", g.angle, b);
                out += "cx " + q(a) + "," + q(b) + ";\n";
                emit1("rx", -half_pi, a);
                emit1("rx", -half_pi, b);
                break;
            }
            case GateKind::CSWAP:
                out += "cswap " + q(g.qubits[0]) + "," + q(g.qubits[1]) + "," + q(g.qubits[2]) +
                       ";\n";
                break;
        }
    }
    return out;
}

}  // namespace qugan
