#pragma once

#include "qsvm/circuit.hpp"
#include "qsvm/graph.hpp"

namespace qsvm {

// Replaces every CX by the native five-gate sequence
//   RY(-pi/2) c;  MS(pi/4) (c,t);  RX(-pi/2) c;  RX(pi/2) t;  RY(pi/2) c
// which equals CX up to a global phase. Input may contain
// {RX, RY, RPHI, CX, MS}; H is oracle-only and rejected.
Circuit transpile_cx(const Circuit& circuit);

// Fixed-point peephole rewriting:
//   (i)   merge adjacent same-axis rotations on the same qubit (RPHI only
//         when the axis angles match) and same-pair MS gates (angles summed,
//         wrapped to (-pi, pi]);
//   (ii)  drop rotations whose merged angle is 0 mod 4pi; an angle of
//         2pi mod 4pi is a pure sign flip (spin-1/2 rotation), recorded in
//         metadata["global_phase_flips"] and then dropped;
//   (iii) cancel adjacent CX pairs on the same (control, target).
// "Adjacent" looks through gates with disjoint qubit support, which may be
// reordered freely. The result's unitary equals the input's up to global
// phase; gate count never increases; the pass is idempotent.
Circuit optimize(const Circuit& circuit);

// Kernel circuit for a pair of graphs: one MS per edge present in either
// graph, angle gamma * (gA_jk/max|gA| - gB_jk/max|gB|), edges in
// lexicographic (j, k) order. All factors commute, so the order is a
// reproducibility choice, not physics.
Circuit merge_graph_kernel(const GraphInstance& a, const GraphInstance& b, double gamma);

}  // namespace qsvm
