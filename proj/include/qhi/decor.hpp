#pragma once

// PSL(2,C) cocycles on branched triangulations, idealization to cross-ratio
// moduli, edge compatibility, and decorated transits.

#include <cstdint>
#include <optional>

#include "qhi/moebius.hpp"
#include "qhi/triangulation.hpp"

namespace qhi::decor {

using moebius::PSL2C;
using moebius::SpherePoint;

// One PSL(2,C) value per edge class, stored along the class reference
// direction; the reverse edge carries the inverse.
struct Cocycle {
  std::vector<PSL2C> val;

  PSL2C on(const tri::Triangulation& T, int tet, int from, int to) const {
    const int e = T.edge_class(tet, from, to);
    const PSL2C& v = val[static_cast<size_t>(e)];
    return T.edge_dir(tet, from, to) > 0 ? v : moebius::inverse(v);
  }

  static Cocycle identity(const tri::Triangulation& T) {
    Cocycle z;
    z.val.assign(static_cast<size_t>(T.n_edges()), PSL2C::identity());
    return z;
  }
};

// Cross-ratio modular triple with the idealization numerators, when known.
struct ModuliTriple {
  cx w0, w1, w2;
  cx p0, p1, p2;
  bool has_p = false;

  cx w(int pair) const { return pair == 0 ? w0 : pair == 1 ? w1 : w2; }
  static ModuliTriple from_w0(cx w0_);
};

struct ITriangulation {
  tri::Triangulation T;
  tri::Branching b;
  std::vector<ModuliTriple> moduli;  // per tet
};

// z_0 z_1 z_2^{-1} = 1 (PSL, up-to-sign) on each 2-face of each tetrahedron.
ValidationReport check_cocycle(const tri::Triangulation& T, const tri::Branching& b,
                               const Cocycle& z);

// Coboundary action: z'(e) = lambda(tail)^{-1} z(e) lambda(head).
Cocycle gauge_transform(const tri::Triangulation& T, const Cocycle& z,
                        const std::vector<PSL2C>& lambda);

struct IdealizeTetResult {
  bool ok = false;
  ModuliTriple w;
  std::array<SpherePoint, 4> u;
  std::string reason;
};
IdealizeTetResult idealize_tet(const tri::Triangulation& T, const tri::Branching& b,
                               const Cocycle& z, int tet);

struct IdealizeResult {
  bool ok = false;
  ITriangulation TI;
  int failed_tet = -1;
  std::string reason;
};
IdealizeResult idealize(const tri::Triangulation& T, const tri::Branching& b, const Cocycle& z);

// prod over the star of each edge class of w(a)^{*_b} = 1.
ValidationReport check_edge_compat(const ITriangulation& TI, double rel_tol = 1e-8);

// Perturbs z by coboundaries of random 0-cochains near the identity until the
// result is idealizable (first attempt is the unperturbed z).
Cocycle perturb_to_idealizable(const tri::Triangulation& T, const tri::Branching& b,
                               const Cocycle& z, std::uint64_t seed, int max_retries = 100);

// Cocycle transit along a move. The bubble move takes a free PSL2C parameter.
Cocycle cocycle_transit(const tri::Triangulation& T_old, const Cocycle& z,
                        const tri::MoveResult& mv,
                        const std::optional<PSL2C>& bubble_free = std::nullopt);

// Ideal 2<->3 transits through point realization.
struct ITransitResult {
  bool ok = false;
  ITriangulation TI;
  tri::MoveResult mv;
  std::string reason;
};
ITransitResult ideal_transit_2_3(const ITriangulation& TI, int tet, int face,
                                 int branching_choice = 0);
ITransitResult ideal_transit_3_2(const ITriangulation& TI, int edge_id, int branching_choice = 0);

// 0->2 / bubble ideal transits: both new tetrahedra receive the free modulus.
ITransitResult ideal_transit_0_2(const ITriangulation& TI, tri::TetFace f1, tri::TetFace f2,
                                 int edge_id, cx free_modulus, int branching_choice = 0);

// Signed Bloch-Wigner volume sum over the tetrahedra.
double volume(const ITriangulation& TI);

}  // namespace qhi::decor
