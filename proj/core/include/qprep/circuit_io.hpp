#pragma once

#include <string>

#include "qprep/circuit.hpp"

namespace qprep {

/// Versioned circuit schema: {"version":1,"num_qubits":N,"gates":[...]}.
std::string circuit_to_json(const Circuit& circuit);

/// Parses the version-1 schema; rejects unknown versions and gate kinds.
Circuit circuit_from_json(const std::string& text);

struct QasmOptions {
    /// Emit negative controls with the negctrl modifier; otherwise conjugate
    /// the control with explicit x gates.
    bool use_negctrl = true;
};

/// OpenQASM 3 text; byte-for-byte deterministic for a given circuit and options.
std::string export_qasm(const Circuit& circuit, const QasmOptions& options = {});

}  // namespace qprep
