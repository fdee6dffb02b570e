#pragma once

// Singular triangulations of closed oriented 3-manifolds (and ideal
// triangulations of bounded ones): gluing data, derived edge/vertex classes,
// branchings, Hamiltonian subcomplexes, and the bare moves (2<->3, 0<->2,
// bubble) with correspondences.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qhi/common.hpp"

namespace qhi::tri {

// Face f of a tetrahedron is the face opposite local vertex f.
struct Gluing {
  int tet = -1;                      // partner tet, -1 when unglued
  std::array<int, 4> vmap{0, 1, 2, 3};  // full vertex bijection; vmap[f] = partner face

  bool glued() const { return tet >= 0; }
};

struct TetFace {
  int tet = 0;
  int face = 0;
  auto operator<=>(const TetFace&) const = default;
};

// Abstract directed edge inside one tetrahedron.
struct TetEdge {
  int tet = 0;
  int from = 0;
  int to = 0;
  auto operator<=>(const TetEdge&) const = default;
};

// Local edge pair index j = 0,1,2 for the opposite-edge pairs
// {e_j, e_j'} of a *branched* tetrahedron; see Branching below.

class Triangulation {
 public:
  Triangulation() = default;
  Triangulation(int n_tet, bool ideal) : ideal_(ideal), glue_(static_cast<size_t>(n_tet)) {}

  int n_tet() const { return static_cast<int>(glue_.size()); }
  bool ideal() const { return ideal_; }
  void set_ideal(bool v) { ideal_ = v; rebuild(); }

  const Gluing& gluing(int tet, int face) const { return glue_[static_cast<size_t>(tet)][static_cast<size_t>(face)]; }

  // Glues face f1 of t1 to face f2 of t2 via the full vertex bijection m
  // (m[f1] must equal f2). Installs both directions.
  void glue_faces(int t1, int f1, int t2, int f2, const std::array<int, 4>& m);
  void unglue(int tet, int face);

  // Derived classes (recomputed whenever the gluing data changes).
  int n_edges() const { return n_edges_; }
  int n_vertices() const { return n_vertices_; }
  int n_faces() const { return n_faces_; }

  int edge_class(int tet, int a, int b) const;       // class id of abstract edge {a,b}
  int edge_dir(int tet, int a, int b) const;         // +1 if (a->b) agrees with the class reference direction
  int vertex_class(int tet, int v) const;
  // All abstract edges {a,b} (a<b) in a class.
  const std::vector<TetEdge>& edge_occurrences(int edge_id) const { return edge_occ_[static_cast<size_t>(edge_id)]; }
  // Endpoint vertex classes (tail, head) of the class reference direction.
  std::pair<int, int> edge_endpoints(int edge_id) const;
  bool edge_link_closed(int edge_id) const { return edge_closed_[static_cast<size_t>(edge_id)]; }

  // Euler characteristic V - E + F - T.
  int euler_characteristic() const { return n_vertices_ - n_edges_ + n_faces_ - n_tet(); }
  // Euler characteristic of the link of a vertex class (2 = sphere, 0 = torus).
  int vertex_link_euler(int vertex_id) const;

  ValidationReport validate() const;
  bool is_quasi_regular() const;

  // Ambient orientation: parity class (+1/-1) per tetrahedron. Tries to
  // orient from scratch; returns false when non-orientable.
  bool orient();
  void set_orientation(std::vector<int> parity) { orient_ = std::move(parity); }
  const std::vector<int>& orientation() const { return orient_; }
  bool orientation_consistent(std::string* why = nullptr) const;
  void reverse_orientation();

  // Canonical encoding up to combinatorial isomorphism (lexicographically
  // minimal BFS relabeling).
  std::string canonical_string() const;

  void rebuild();  // recompute derived classes

 private:
  bool ideal_ = false;
  std::vector<std::array<Gluing, 4>> glue_;
  std::vector<int> orient_;

  // derived
  int n_edges_ = 0, n_vertices_ = 0, n_faces_ = 0;
  std::vector<std::array<std::array<int, 4>, 4>> edge_id_;   // [tet][a][b]
  std::vector<std::array<std::array<int, 4>, 4>> edge_dir_;  // sign vs class reference
  std::vector<std::array<int, 4>> vertex_id_;
  std::vector<std::vector<TetEdge>> edge_occ_;
  std::vector<char> edge_closed_;
};

// ---------------------------------------------------------------------------
// Branchings

// Per tetrahedron, a total order of its four local vertices. order[t][k] is
// the local vertex in position k (k = 0 smallest).
struct Branching {
  std::vector<std::array<int, 4>> order;

  int position(int tet, int local_vertex) const;
  // Branching edges of tet: e_0=[v0,v1], e_1=[v1,v2], e_2=[v0,v2]; e_j' opposite.
  // Returns the directed abstract edge of pair j (primed = opposite edge).
  TetEdge edge(int tet, int pair, bool primed) const;
  // Pair index (0,1,2) of abstract edge {a,b} of tet.
  int pair_of(int tet, int a, int b) const;
};

// Checks that branching-induced directions agree across each edge class.
ValidationReport validate_branching(const Triangulation& T, const Branching& b);

// Total-order branching for a quasi-regular triangulation; vertex_order is a
// permutation of vertex class ids (rank by position).
Branching total_order_branching(const Triangulation& T, const std::vector<int>& vertex_order);

// Exhaustive backtracking search; nullopt = no branching exists.
std::optional<Branching> find_branching(const Triangulation& T);

// Sign *_b: +1 iff the branching order of tet is an even permutation of the
// reference ambient-oriented order.
int b_sign(const Triangulation& T, const Branching& b, int tet);

// Faces labelled by opposite vertex positions; the input pair and output pair
// of the tetrahedron's tensor, each ordered by opposite-vertex position.
struct FaceIO {
  std::array<int, 2> in;   // local face indices (I1, I2)
  std::array<int, 2> out;  // (O1, O2)
};
FaceIO face_io_assignment(const Triangulation& T, const Branching& b, int tet);

// ---------------------------------------------------------------------------
// Hamiltonian subcomplex

struct Hamiltonian {
  std::set<int> edges;  // edge class ids
};

ValidationReport validate_hamiltonian(const Triangulation& T, const Hamiltonian& H);
int hamiltonian_component_count(const Triangulation& T, const Hamiltonian& H);

// ---------------------------------------------------------------------------
// Moves

// Correspondence between a triangulation and the result of a move.
struct MoveResult {
  Triangulation tri;
  std::vector<int> tet_map;    // old tet -> new tet id, -1 for removed tets
  std::vector<int> new_tets;   // created tets (new ids)
  Hamiltonian new_H;           // transited Hamiltonian subcomplex
  // Representative of the edge created by a 2->3 move (in new labels), and of
  // the new interior edge for 0->2 / bubble moves.
  TetEdge new_edge{-1, 0, 0};
  // Bubble move: the new vertex as (tet, local vertex).
  std::pair<int, int> new_vertex{-1, -1};
  // Edge classes present on both sides: (old id, new id) pairs.
  std::vector<std::array<int, 2>> common_edges;
  // 0->2 only: the split edge class and its two descendants.
  int split_old_edge = -1;
  std::array<int, 2> split_new_edges{-1, -1};
  // Abstract edges of removed tets and their representatives in the result.
  std::vector<std::pair<TetEdge, TetEdge>> edge_carry;
};

// 2->3 on the face class containing (tet, face). H passes through unchanged.
MoveResult move_2_3(const Triangulation& T, const Hamiltonian& H, int tet, int face);

// 3->2 on an edge class of valence 3 (not in H).
MoveResult move_3_2(const Triangulation& T, const Hamiltonian& H, int edge_id);

// 0->2 on two distinct face classes sharing the edge class edge_id. The faces
// are given by one side each; the shared edge splits into two classes.
MoveResult move_0_2(const Triangulation& T, const Hamiltonian& H, TetFace face1, TetFace face2,
                    int edge_id);

// Inverse of 0->2: the two tets must form a pillow glued along two faces.
MoveResult move_2_0(const Triangulation& T, const Hamiltonian& H, int tet1, int tet2);

// Distinguished bubble on the face class containing (tet, face); h_edge_id
// must be an H-edge on that face. H is rerouted through the new vertex.
MoveResult bubble(const Triangulation& T, const Hamiltonian& H, int tet, int face, int h_edge_id);

// Branching transit: all branchings of the new triangulation that agree with
// b on surviving edges (enumerated deterministically).
std::vector<Branching> branching_transits(const Triangulation& T_old, const Branching& b,
                                          const MoveResult& mv);

// ---------------------------------------------------------------------------
// Fixtures

// Boundary of the 4-simplex: 5 tetrahedra, 10 faces, 10 edges, 5 vertices.
Triangulation four_simplex_boundary();
// The 5-cycle Hamiltonian subcomplex [01][12][23][34][04] on it.
Hamiltonian four_simplex_h_cycle(const Triangulation& T);

}  // namespace qhi::tri
