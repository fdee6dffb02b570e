#pragma once

// Integral charges on distinguished triangulations: existence solver over the
// integers, the edge lattice vectors, mod-2 holonomy, and charge transits.

#include "qhi/triangulation.hpp"

namespace qhi::charge {

// Per tetrahedron the charges (c0, c1, c2) on the three opposite-edge pairs
// of the branching.
struct ChargeAssignment {
  std::vector<std::array<int, 3>> c;
};

// Edge sum targets: 0 on H, 2 elsewhere (closed case); `cusped` uses 2 on
// every edge (the Hamiltonian is empty there).
ValidationReport validate_charge(const tri::Triangulation& T, const tri::Branching& b,
                                 const tri::Hamiltonian& H, const ChargeAssignment& c,
                                 bool check_holonomy = true);

ChargeAssignment solve_charge(const tri::Triangulation& T, const tri::Branching& b,
                              const tri::Hamiltonian& H);

// Neumann lattice vector of an edge class, in the coordinates
// (c_pair0 per tet..., minus c_pair1 per tet...): length 2 * n_tet.
std::vector<long long> lattice_vector(const tri::Triangulation& T, const tri::Branching& b,
                                      int edge_id);

// c + k * w(e): per occurrence of e at pair j, adds +k at pair j+1 and -k at
// pair j+2 (mod 3).
ChargeAssignment add_lattice(const tri::Triangulation& T, const tri::Branching& b,
                             const ChargeAssignment& c, int edge_id, int k);

// Parities of c(s) over a fundamental cycle basis of the dual graph.
std::vector<int> mod2_holonomy(const tri::Triangulation& T, const tri::Branching& b,
                               const ChargeAssignment& c);

// Charge transit along a move: charges on surviving tets are kept; the new
// tets' charges solve the transit-of-sum conditions. For 2->3 moves the
// solution family is c_base + lambda * w(new edge); `lambda` selects within
// it (base solution: minimal max-abs charge, ties lexicographically).
ChargeAssignment charge_transit(const tri::Triangulation& T_old, const tri::Branching& b_old,
                                const tri::Hamiltonian& H_old, const ChargeAssignment& c_old,
                                const tri::MoveResult& mv, const tri::Branching& b_new,
                                int lambda = 0);

}  // namespace qhi::charge
