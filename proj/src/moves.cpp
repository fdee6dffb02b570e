#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "qhi/triangulation.hpp"

namespace qhi::tri {

namespace {

int perm_parity4(const std::array<int, 4>& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// Identifies new-class ids for the edges of old H via survivor occurrences,
// or via an explicit extra correspondence for edges living on removed tets.
struct EdgeMapper {
  const Triangulation* told = nullptr;
  const Triangulation* tnew = nullptr;
  const std::vector<int>* tet_map = nullptr;
  // old (tet,a,b) -> new (tet,a,b) for removed-tet edges (normalized keys)
  std::map<std::array<int, 3>, std::array<int, 3>> extra;
  // direction-faithful correspondence for removed-tet edges
  std::vector<std::pair<TetEdge, TetEdge>> carry;

  std::optional<int> new_class(int old_class) const {
    for (const TetEdge& occ : told->edge_occurrences(old_class)) {
      const int nt = (*tet_map)[static_cast<size_t>(occ.tet)];
      if (nt >= 0) return tnew->edge_class(nt, occ.from, occ.to);
      auto it = extra.find({occ.tet, occ.from, occ.to});
      if (it != extra.end())
        return tnew->edge_class(it->second[0], it->second[1], it->second[2]);
    }
    return std::nullopt;
  }
};

void dump_edge_carry(const EdgeMapper& em, MoveResult& mv) { mv.edge_carry = em.carry; }

Hamiltonian map_hamiltonian(const Hamiltonian& H, const EdgeMapper& em) {
  Hamiltonian out;
  for (int e : H.edges) {
    auto n = em.new_class(e);
    if (!n) throw domain_error("LostHEdge", "H edge class lost by the move");
    out.edges.insert(*n);
  }
  return out;
}

void fill_common_edges(const Triangulation& told, const EdgeMapper& em, MoveResult& mv,
                       std::vector<std::array<int, 2>>& common) {
  (void)mv;
  for (int e = 0; e < told.n_edges(); ++e) {
    auto n = em.new_class(e);
    if (n) common.push_back({e, *n});
  }
}

}  // namespace

MoveResult move_2_3(const Triangulation& T, const Hamiltonian& H, int tet, int face) {
  const Gluing g = T.gluing(tet, face);
  if (!g.glued()) throw domain_error("IllegalMove", "face is unglued");
  const int tA = tet, tB = g.tet;
  if (tA == tB) throw domain_error("IllegalMove", "2->3 needs two distinct tetrahedra");
  const int fA = face;
  const std::array<int, 4> m = g.vmap;  // A-locals -> B-locals
  const int apexB = m[fA];

  std::array<int, 3> sv{};  // shared-face vertices, A-locals ascending
  {
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != fA) sv[static_cast<size_t>(k++)] = v;
  }

  const int Tn = T.n_tet();
  MoveResult mv;
  mv.tet_map.assign(static_cast<size_t>(Tn), -1);
  int next = 0;
  for (int t = 0; t < Tn; ++t)
    if (t != tA && t != tB) mv.tet_map[static_cast<size_t>(t)] = next++;
  const int base = next;  // C_0, C_1, C_2 = base, base+1, base+2
  mv.new_tets = {base, base + 1, base + 2};

  Triangulation R(base + 3, T.ideal());

  // rem[k] = the two shared vertices other than sv[k], ascending (A-locals).
  std::array<std::array<int, 2>, 3> rem{};
  for (int k = 0; k < 3; ++k) {
    int q = 0;
    for (int i = 0; i < 3; ++i)
      if (i != k) rem[static_cast<size_t>(k)][static_cast<size_t>(q++)] = sv[static_cast<size_t>(i)];
  }
  // Local index of A-local shared vertex w inside C_k (2 or 3).
  auto ck_local = [&](int k, int w) {
    if (rem[static_cast<size_t>(k)][0] == w) return 2;
    if (rem[static_cast<size_t>(k)][1] == w) return 3;
    return -1;
  };

  // Forwarding of the six outer faces: (old tet, old face) -> (new tet, new
  // face, map old-tet-local -> new-local).
  struct Fwd {
    int tet, face;
    std::array<int, 4> to_new;  // old local -> new local (full bijection)
  };
  std::map<std::pair<int, int>, Fwd> fwd;
  for (int k = 0; k < 3; ++k) {
    const int u = rem[static_cast<size_t>(k)][0], v = rem[static_cast<size_t>(k)][1];
    // A's face sv[k] -> C_k face 1
    std::array<int, 4> ta{};
    ta[static_cast<size_t>(fA)] = 0;
    ta[static_cast<size_t>(sv[static_cast<size_t>(k)])] = 1;
    ta[static_cast<size_t>(u)] = 2;
    ta[static_cast<size_t>(v)] = 3;
    fwd[{tA, sv[static_cast<size_t>(k)]}] = {base + k, 1, ta};
    // B's face m[sv[k]] -> C_k face 0
    std::array<int, 4> tb{};
    tb[static_cast<size_t>(apexB)] = 1;
    tb[static_cast<size_t>(m[static_cast<size_t>(sv[static_cast<size_t>(k)])])] = 0;
    tb[static_cast<size_t>(m[static_cast<size_t>(u)])] = 2;
    tb[static_cast<size_t>(m[static_cast<size_t>(v)])] = 3;
    fwd[{tB, m[static_cast<size_t>(sv[static_cast<size_t>(k)])]}] = {base + k, 0, tb};
  }

  // Copy survivor-survivor gluings and wire forwarded faces.
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> done;
  auto wire = [&](int t1, int f1) {
    const Gluing& gg = T.gluing(t1, f1);
    if (!gg.glued()) return;
    const int t2 = gg.tet, f2 = gg.vmap[static_cast<size_t>(f1)];
    const auto key = std::minmax({std::make_pair(t1, f1), std::make_pair(t2, f2)});
    if (done.count({key.first, key.second})) return;
    done.insert({key.first, key.second});

    const bool fwd1 = fwd.count({t1, f1}) > 0;
    const bool fwd2 = fwd.count({t2, f2}) > 0;
    // Surviving side keeps its labels.
    auto new_side = [&](int t, int f) -> Fwd {
      if (fwd.count({t, f})) return fwd[{t, f}];
      std::array<int, 4> id{0, 1, 2, 3};
      return {mv.tet_map[static_cast<size_t>(t)], f, id};
    };
    if (!fwd1 && !fwd2 && (mv.tet_map[static_cast<size_t>(t1)] < 0 || mv.tet_map[static_cast<size_t>(t2)] < 0))
      return;  // interior face of the removed pair (the shared face itself)
    const Fwd s1 = new_side(t1, f1);
    const Fwd s2 = new_side(t2, f2);
    if (s1.tet < 0 || s2.tet < 0) return;
    std::array<int, 4> comp{};
    // map: new locals of side1 -> new locals of side2
    std::array<int, 4> inv1{};
    for (int v = 0; v < 4; ++v) inv1[static_cast<size_t>(s1.to_new[static_cast<size_t>(v)])] = v;
    for (int nv = 0; nv < 4; ++nv) {
      const int old1 = inv1[static_cast<size_t>(nv)];
      comp[static_cast<size_t>(nv)] = s2.to_new[static_cast<size_t>(gg.vmap[static_cast<size_t>(old1)])];
    }
    R.glue_faces(s1.tet, s1.face, s2.tet, s2.face, comp);
  };
  for (int t = 0; t < Tn; ++t)
    for (int f = 0; f < 4; ++f) {
      if ((t == tA && f == fA) || (t == tB && f == apexB)) continue;
      wire(t, f);
    }

  // Inner gluings among C_0, C_1, C_2.
  for (int k = 0; k < 3; ++k)
    for (int j = k + 1; j < 3; ++j) {
      int l = 3 - k - j;  // the third index
      const int w = sv[static_cast<size_t>(l)];  // common shared vertex of C_k and C_j
      std::array<int, 4> mm{};
      mm[0] = 0;
      mm[1] = 1;
      mm[static_cast<size_t>(ck_local(k, w))] = ck_local(j, w);
      mm[static_cast<size_t>(ck_local(k, sv[static_cast<size_t>(j)]))] = ck_local(j, sv[static_cast<size_t>(k)]);
      R.glue_faces(base + k, ck_local(k, sv[static_cast<size_t>(j)]), base + j,
                   ck_local(j, sv[static_cast<size_t>(k)]), mm);
    }

  // Orientation: survivors keep theirs; C_k from A by the transfer parity.
  {
    std::vector<int> par(static_cast<size_t>(base + 3), 0);
    const auto& oo = T.orientation();
    const bool have = static_cast<int>(oo.size()) == Tn;
    for (int t = 0; t < Tn; ++t)
      if (mv.tet_map[static_cast<size_t>(t)] >= 0 && have) par[static_cast<size_t>(mv.tet_map[static_cast<size_t>(t)])] = oo[static_cast<size_t>(t)];
    if (have)
      for (int k = 0; k < 3; ++k) {
        std::array<int, 4> tau{};
        tau[static_cast<size_t>(fA)] = 0;
        tau[static_cast<size_t>(sv[static_cast<size_t>(k)])] = 1;
        tau[static_cast<size_t>(rem[static_cast<size_t>(k)][0])] = 2;
        tau[static_cast<size_t>(rem[static_cast<size_t>(k)][1])] = 3;
        par[static_cast<size_t>(base + k)] = perm_parity4(tau) * oo[static_cast<size_t>(tA)];
      }
    R.set_orientation(par);
  }

  // Edge correspondence for removed-tet edges.
  EdgeMapper em;
  em.told = &T;
  em.tnew = &R;
  em.tet_map = &mv.tet_map;
  auto add_extra = [&](int t, int a, int b, int nt, int na, int nb) {
    em.extra[{t, std::min(a, b), std::max(a, b)}] = {nt, std::min(na, nb), std::max(na, nb)};
    em.carry.push_back({TetEdge{t, a, b}, TetEdge{nt, na, nb}});
  };
  for (int k = 0; k < 3; ++k) {
    const int u = rem[static_cast<size_t>(k)][0], v = rem[static_cast<size_t>(k)][1];
    // A edges: {fA, u}: in C_k as (0, ck_local): pick k such that u != sv[k].
    add_extra(tA, fA, u, base + k, 0, ck_local(k, u));
    add_extra(tA, fA, v, base + k, 0, ck_local(k, v));
    add_extra(tB, apexB, m[static_cast<size_t>(u)], base + k, 1, ck_local(k, u));
    add_extra(tB, apexB, m[static_cast<size_t>(v)], base + k, 1, ck_local(k, v));
    // shared-face edge {u,v} lives in C_k as (2,3)
    add_extra(tA, u, v, base + k, 2, 3);
    add_extra(tB, m[static_cast<size_t>(u)], m[static_cast<size_t>(v)], base + k, 2, 3);
  }

  mv.new_H = map_hamiltonian(H, em);
  mv.new_edge = {base, 0, 1};
  fill_common_edges(T, em, mv, mv.common_edges);
  dump_edge_carry(em, mv);
  mv.tri = std::move(R);
  return mv;
}

MoveResult move_3_2(const Triangulation& T, const Hamiltonian& H, int edge_id) {
  if (H.edges.count(edge_id))
    throw domain_error("IllegalMove", "the disappearing edge of T belongs to T\\H");
  const auto& occ = T.edge_occurrences(edge_id);
  if (occ.size() != 3) throw domain_error("IllegalMove", "edge must have valence 3");
  if (!T.edge_link_closed(edge_id)) throw domain_error("IllegalMove", "edge link not closed");

  // Walk the fan to get the cyclic structure: tets C0,C1,C2 around directed
  // edge (a,b), with w[i] = equator vertex of C_i opposite the face to C_{i+1}.
  struct Around {
    int tet, a, b, w_prev, w_next;  // C_i has locals {a,b,w_prev,w_next}
  };
  std::array<Around, 3> ring{};
  {
    TetEdge e0 = occ[0];
    int other[2], k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != e0.from && v != e0.to) other[k++] = v;
    int t = e0.tet, a = e0.from, b = e0.to, entered = other[1], exit = other[0];
    for (int i = 0; i < 3; ++i) {
      ring[static_cast<size_t>(i)] = {t, a, b, entered, exit};
      const Gluing& g = T.gluing(t, exit);
      const int nt = g.tet, na = g.vmap[static_cast<size_t>(a)], nb = g.vmap[static_cast<size_t>(b)],
                nentered = g.vmap[static_cast<size_t>(exit)];
      int nexit = -1;
      for (int v = 0; v < 4; ++v)
        if (v != na && v != nb && v != nentered) nexit = v;
      t = nt;
      a = na;
      b = nb;
      entered = nentered;
      exit = nexit;
    }
  }
  if (ring[0].tet == ring[1].tet || ring[1].tet == ring[2].tet || ring[0].tet == ring[2].tet)
    throw domain_error("IllegalMove", "3->2 needs three distinct tetrahedra around the edge");

  const int Tn = T.n_tet();
  MoveResult mv;
  mv.tet_map.assign(static_cast<size_t>(Tn), -1);
  int next = 0;
  for (int t = 0; t < Tn; ++t)
    if (t != ring[0].tet && t != ring[1].tet && t != ring[2].tet)
      mv.tet_map[static_cast<size_t>(t)] = next++;
  const int nA = next, nB = next + 1;
  mv.new_tets = {nA, nB};

  // New tet A = (a, w0, w1, w2): locals 0=a-apex, 1=w0, 2=w1, 3=w2 where w_i is
  // the equator vertex "between C_i and C_{i+1}" = ring[i].w_next.
  // New tet B = (b, w0, w1, w2): locals 0=b-apex, 1..3 = w's.
  // C_i has vertices {a, b, ring[i].w_prev = w_{i-1}, ring[i].w_next = w_i}.
  Triangulation R(next + 2, T.ideal());

  // Forwarding: C_i's face omitting b (contains a, w_{i-1}, w_i) -> A's face
  // omitting the missing w (w_{i+1}); C_i's face omitting a -> B likewise.
  struct Fwd {
    int tet, face;
    std::array<int, 4> to_new;
  };
  std::map<std::pair<int, int>, Fwd> fwd;
  for (int i = 0; i < 3; ++i) {
    const auto& c = ring[static_cast<size_t>(i)];
    const int iprev = (i + 2) % 3;
    // C_i spans {a, b, w_{i-1}, w_i}; the entering face index is the local
    // vertex w_i, the exit face index is w_{i-1}. A/B slots: w_j -> 1+j.
    std::array<int, 4> ta{};
    ta[static_cast<size_t>(c.a)] = 0;
    ta[static_cast<size_t>(c.w_prev)] = 1 + i;      // entered face index = vertex w_i
    ta[static_cast<size_t>(c.w_next)] = 1 + iprev;  // exit face index = vertex w_{i-1}
    ta[static_cast<size_t>(c.b)] = 1 + (i + 1) % 3;  // face index: the missing w
    fwd[{c.tet, c.b}] = {nA, 1 + (i + 1) % 3, ta};
    std::array<int, 4> tb{};
    tb[static_cast<size_t>(c.b)] = 0;
    tb[static_cast<size_t>(c.w_prev)] = 1 + i;
    tb[static_cast<size_t>(c.w_next)] = 1 + iprev;
    tb[static_cast<size_t>(c.a)] = 1 + (i + 1) % 3;
    fwd[{c.tet, c.a}] = {nB, 1 + (i + 1) % 3, tb};
  }

  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> done;
  auto wire = [&](int t1, int f1) {
    const Gluing& gg = T.gluing(t1, f1);
    if (!gg.glued()) return;
    const int t2 = gg.tet, f2 = gg.vmap[static_cast<size_t>(f1)];
    const auto key = std::minmax({std::make_pair(t1, f1), std::make_pair(t2, f2)});
    if (done.count({key.first, key.second})) return;
    // Skip the three interior faces of the ring (between C_i and C_{i+1}).
    const bool interior1 = !fwd.count({t1, f1}) && mv.tet_map[static_cast<size_t>(t1)] < 0;
    const bool interior2 = !fwd.count({t2, f2}) && mv.tet_map[static_cast<size_t>(t2)] < 0;
    if (interior1 || interior2) return;
    done.insert({key.first, key.second});
    auto new_side = [&](int t, int f) -> Fwd {
      if (fwd.count({t, f})) return fwd[{t, f}];
      std::array<int, 4> id{0, 1, 2, 3};
      return {mv.tet_map[static_cast<size_t>(t)], f, id};
    };
    const Fwd s1 = new_side(t1, f1);
    const Fwd s2 = new_side(t2, f2);
    std::array<int, 4> inv1{}, comp{};
    for (int v = 0; v < 4; ++v) inv1[static_cast<size_t>(s1.to_new[static_cast<size_t>(v)])] = v;
    for (int nv = 0; nv < 4; ++nv)
      comp[static_cast<size_t>(nv)] = s2.to_new[static_cast<size_t>(gg.vmap[static_cast<size_t>(inv1[static_cast<size_t>(nv)])])];
    R.glue_faces(s1.tet, s1.face, s2.tet, s2.face, comp);
  };
  for (int t = 0; t < Tn; ++t)
    for (int f = 0; f < 4; ++f) wire(t, f);

  // A-B inner gluing along (w0,w1,w2): A face 0 <-> B face 0, identity on w's.
  R.glue_faces(nA, 0, nB, 0, {0, 1, 2, 3});

  // Orientation.
  {
    std::vector<int> par(static_cast<size_t>(next + 2), 0);
    const auto& oo = T.orientation();
    const bool have = static_cast<int>(oo.size()) == Tn;
    for (int t = 0; t < Tn; ++t)
      if (mv.tet_map[static_cast<size_t>(t)] >= 0 && have) par[static_cast<size_t>(mv.tet_map[static_cast<size_t>(t)])] = oo[static_cast<size_t>(t)];
    if (have) {
      // A relates to C_0 via tau: (a->0, w_prev->1+iprev, w_next->1+i, b->face)
      const auto& c = ring[0];
      std::array<int, 4> tau{};
      tau[static_cast<size_t>(c.a)] = 0;
      tau[static_cast<size_t>(c.w_prev)] = 1;  // w_0
      tau[static_cast<size_t>(c.w_next)] = 3;  // w_2
      tau[static_cast<size_t>(c.b)] = 2;
      par[static_cast<size_t>(nA)] = perm_parity4(tau) * oo[static_cast<size_t>(c.tet)];
      std::array<int, 4> taub{};
      taub[static_cast<size_t>(c.b)] = 0;
      taub[static_cast<size_t>(c.w_prev)] = 1;
      taub[static_cast<size_t>(c.w_next)] = 3;
      taub[static_cast<size_t>(c.a)] = 2;
      par[static_cast<size_t>(nB)] = perm_parity4(taub) * oo[static_cast<size_t>(c.tet)];
    }
    R.set_orientation(par);
  }

  EdgeMapper em;
  em.told = &T;
  em.tnew = &R;
  em.tet_map = &mv.tet_map;
  auto add_extra = [&](int t, int a, int b, int nt, int na, int nb) {
    em.extra[{t, std::min(a, b), std::max(a, b)}] = {nt, std::min(na, nb), std::max(na, nb)};
    em.carry.push_back({TetEdge{t, a, b}, TetEdge{nt, na, nb}});
  };
  for (int i = 0; i < 3; ++i) {
    const auto& c = ring[static_cast<size_t>(i)];
    const int iprev = (i + 2) % 3;
    add_extra(c.tet, c.a, c.w_prev, nA, 0, 1 + i);
    add_extra(c.tet, c.a, c.w_next, nA, 0, 1 + iprev);
    add_extra(c.tet, c.b, c.w_prev, nB, 0, 1 + i);
    add_extra(c.tet, c.b, c.w_next, nB, 0, 1 + iprev);
    add_extra(c.tet, c.w_prev, c.w_next, nA, 1 + i, 1 + iprev);
  }

  mv.new_H = map_hamiltonian(H, em);
  fill_common_edges(T, em, mv, mv.common_edges);
  dump_edge_carry(em, mv);
  mv.tri = std::move(R);
  return mv;
}

MoveResult move_0_2(const Triangulation& T, const Hamiltonian& H, TetFace face1, TetFace face2,
                    int edge_id) {
  if (H.edges.count(edge_id)) throw domain_error("IllegalMove", "0->2 along an H-edge is not supported");
  const Gluing g1 = T.gluing(face1.tet, face1.face);
  const Gluing g2 = T.gluing(face2.tet, face2.face);
  if (!g1.glued() || !g2.glued()) throw domain_error("IllegalMove", "0->2 needs glued faces");
  if (face1 == face2) throw domain_error("IllegalMove", "0->2 needs two distinct faces");
  if (g1.tet == face2.tet && g1.vmap[static_cast<size_t>(face1.face)] == face2.face)
    throw domain_error("IllegalMove", "the two faces must be distinct face classes");

  // Locate the shared edge on both given sides.
  auto edge_on_face = [&](const TetFace& tf) -> std::pair<int, int> {
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (a == tf.face || b == tf.face) continue;
        if (T.edge_class(tf.tet, a, b) == edge_id) return {a, b};
      }
    throw domain_error("IllegalMove", "face does not contain the given edge class");
  };
  auto [a1, b1] = edge_on_face(face1);
  auto [a2, b2] = edge_on_face(face2);
  // Orient both occurrences consistently with the class reference direction.
  if (T.edge_dir(face1.tet, a1, b1) < 0) std::swap(a1, b1);
  if (T.edge_dir(face2.tet, a2, b2) < 0) std::swap(a2, b2);
  // Apexes of the two faces with respect to the edge.
  const int c1 = 6 - face1.face - a1 - b1;  // vertex of face1 not on the edge
  const int c2 = 6 - face2.face - a2 - b2;

  // Walk the fan around the edge starting on the g1 side of face1 until the
  // exit face is a side of face class 2. The tets passed form arc 1 (the D1
  // side); the side of face2 reached is recorded.
  const std::pair<int, int> f2_side_a{face2.tet, face2.face};
  const std::pair<int, int> f2_side_b{g2.tet, g2.vmap[static_cast<size_t>(face2.face)]};
  int end_tet = -1, end_exit = -1, end_a = -1, end_b = -1, end_apex = -1;
  {
    int t = g1.tet;
    int a = g1.vmap[static_cast<size_t>(a1)], b = g1.vmap[static_cast<size_t>(b1)];
    int entered = g1.vmap[static_cast<size_t>(face1.face)];
    size_t steps = 0;
    while (true) {
      const int exit = 0 + 1 + 2 + 3 - a - b - entered;
      if (std::make_pair(t, exit) == f2_side_a || std::make_pair(t, exit) == f2_side_b) {
        end_tet = t;
        end_exit = exit;
        end_a = a;
        end_b = b;
        end_apex = entered;
        break;
      }
      const Gluing& gg = T.gluing(t, exit);
      if (!gg.glued()) throw domain_error("IllegalMove", "edge fan is not closed");
      const int nt = gg.tet;
      const int na = gg.vmap[static_cast<size_t>(a)], nb = gg.vmap[static_cast<size_t>(b)],
                nentered = gg.vmap[static_cast<size_t>(exit)];
      t = nt;
      a = na;
      b = nb;
      entered = nentered;
      if (++steps > T.edge_occurrences(edge_id).size() + 1)
        throw domain_error("IllegalMove", "face2 not found around the edge");
    }
  }
  const bool hit_near = std::make_pair(end_tet, end_exit) == f2_side_a;

  const int Tn = T.n_tet();
  MoveResult mv;
  mv.tet_map.assign(static_cast<size_t>(Tn), -1);
  for (int t = 0; t < Tn; ++t) mv.tet_map[static_cast<size_t>(t)] = t;
  const int nD1 = Tn, nD2 = Tn + 1;
  mv.new_tets = {nD1, nD2};

  Triangulation R(Tn + 2, T.ideal());
  // Copy all old gluings except the two opened faces.
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> skip;
  {
    auto key = [&](const TetFace& tf, const Gluing& gg) {
      const auto k = std::minmax({std::make_pair(tf.tet, tf.face),
                                  std::make_pair(gg.tet, gg.vmap[static_cast<size_t>(tf.face)])});
      return std::make_pair(k.first, k.second);
    };
    skip.insert(key(face1, g1));
    skip.insert(key(face2, g2));
  }
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> done;
  for (int t = 0; t < Tn; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& gg = T.gluing(t, f);
      if (!gg.glued()) continue;
      const auto k = std::minmax({std::make_pair(t, f), std::make_pair(gg.tet, gg.vmap[static_cast<size_t>(f)])});
      if (skip.count({k.first, k.second}) || done.count({k.first, k.second})) continue;
      done.insert({k.first, k.second});
      R.glue_faces(t, f, gg.tet, gg.vmap[static_cast<size_t>(f)], gg.vmap);
    }

  // Pillow tets D1, D2 with locals 0=a (edge tail), 1=b (edge head), 2=c1
  // (apex of face1), 3=c2 (apex of face2). D1 faces the arc-1 side.
  {
    // D1 face 3 (vertices a,b,c1) -> first arc-1 slot (g1.tet side of face1).
    std::array<int, 4> mm{};
    mm[0] = g1.vmap[static_cast<size_t>(a1)];
    mm[1] = g1.vmap[static_cast<size_t>(b1)];
    mm[2] = g1.vmap[static_cast<size_t>(c1)];
    mm[3] = g1.vmap[static_cast<size_t>(face1.face)];
    R.glue_faces(nD1, 3, g1.tet, g1.vmap[static_cast<size_t>(face1.face)], mm);
    // D2 face 3 -> (face1.tet, face1.face) directly.
    std::array<int, 4> m2{};
    m2[0] = a1;
    m2[1] = b1;
    m2[2] = c1;
    m2[3] = face1.face;
    R.glue_faces(nD2, 3, face1.tet, face1.face, m2);
    // D1 face 2 (vertices a,b,c2) -> the side of face2 the arc-1 walk hit.
    std::array<int, 4> m3{};
    m3[0] = end_a;
    m3[1] = end_b;
    m3[3] = end_apex;
    m3[2] = end_exit;
    R.glue_faces(nD1, 2, end_tet, end_exit, m3);
    // D2 face 2 -> the other side of face2.
    std::array<int, 4> m4{};
    if (hit_near) {
      m4[0] = g2.vmap[static_cast<size_t>(a2)];
      m4[1] = g2.vmap[static_cast<size_t>(b2)];
      m4[3] = g2.vmap[static_cast<size_t>(c2)];
      m4[2] = g2.vmap[static_cast<size_t>(face2.face)];
      R.glue_faces(nD2, 2, g2.tet, g2.vmap[static_cast<size_t>(face2.face)], m4);
    } else {
      m4[0] = a2;
      m4[1] = b2;
      m4[3] = c2;
      m4[2] = face2.face;
      R.glue_faces(nD2, 2, face2.tet, face2.face, m4);
    }
    // Inner gluings D1 <-> D2 along faces 0 (b,c1,c2) and 1 (a,c1,c2).
    R.glue_faces(nD1, 0, nD2, 0, {0, 1, 2, 3});
    R.glue_faces(nD1, 1, nD2, 1, {0, 1, 2, 3});
  }

  // Orientation: D1 from its face-3 partner.
  {
    std::vector<int> par(static_cast<size_t>(Tn + 2), 0);
    const auto& oo = T.orientation();
    const bool have = static_cast<int>(oo.size()) == Tn;
    if (have) {
      for (int t = 0; t < Tn; ++t) par[static_cast<size_t>(t)] = oo[static_cast<size_t>(t)];
      const Gluing& gg = R.gluing(nD1, 3);
      par[static_cast<size_t>(nD1)] = -perm_parity4(gg.vmap) * par[static_cast<size_t>(gg.tet)];
      const Gluing& g22 = R.gluing(nD2, 3);
      par[static_cast<size_t>(nD2)] = -perm_parity4(g22.vmap) * par[static_cast<size_t>(g22.tet)];
    }
    R.set_orientation(par);
  }

  EdgeMapper em;
  em.told = &T;
  em.tnew = &R;
  em.tet_map = &mv.tet_map;
  mv.new_H = map_hamiltonian(H, em);
  mv.new_edge = {nD1, 2, 3};  // the new interior edge (c1, c2)
  mv.split_old_edge = edge_id;
  mv.split_new_edges = {R.edge_class(nD1, 0, 1), R.edge_class(nD2, 0, 1)};
  fill_common_edges(T, em, mv, mv.common_edges);
  mv.tri = std::move(R);
  // The split classes are not "common": drop them if they slipped in.
  std::erase_if(mv.common_edges, [&](const std::array<int, 2>& p) { return p[0] == edge_id; });
  return mv;
}

MoveResult move_2_0(const Triangulation& T, const Hamiltonian& H, int tet1, int tet2) {
  // Validate pillow: tet1 and tet2 glued to each other along exactly the two
  // faces 0 and 1 pattern is not required literally; find the two glued face
  // pairs between them.
  std::vector<std::pair<int, int>> shared;  // (face of tet1, face of tet2)
  for (int f = 0; f < 4; ++f) {
    const Gluing& g = T.gluing(tet1, f);
    if (g.glued() && g.tet == tet2) shared.push_back({f, g.vmap[static_cast<size_t>(f)]});
  }
  if (shared.size() != 2 && shared.size() != 3)
    throw domain_error("IllegalMove", "2->0 needs a pillow glued along two or three faces");
  // The outer faces of the pillow.
  std::vector<int> outer1, outer2;
  for (int f = 0; f < 4; ++f) {
    bool in1 = false, in2 = false;
    for (const auto& [s1, s2] : shared) {
      in1 = in1 || f == s1;
      in2 = in2 || f == s2;
    }
    if (!in1) outer1.push_back(f);
    if (!in2) outer2.push_back(f);
  }
  // The pillow collapses: each outer face of tet1 reglues to the matching
  // outer face of tet2 carried by the same face triangle. The matching is via
  // the pillow structure: outer face f of tet1 corresponds to the face of
  // tet2 with the same vertex set image under either inner gluing.
  const Gluing& inner = T.gluing(tet1, shared[0].first);
  // outer face f (of tet1) maps to inner.vmap[f]... but f is not on the glued
  // face; use the vertex map to transport the face label.
  const int Tn = T.n_tet();
  MoveResult mv;
  mv.tet_map.assign(static_cast<size_t>(Tn), -1);
  int next = 0;
  for (int t = 0; t < Tn; ++t)
    if (t != tet1 && t != tet2) mv.tet_map[static_cast<size_t>(t)] = next++;

  Triangulation R(next, T.ideal());
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> done;
  // Reglue: partner of (tet1, f) with partner of (tet2, inner.vmap[f]).
  auto outer_pair = [&](int f1) {
    const int f2 = inner.vmap[static_cast<size_t>(f1)];
    const Gluing& ga = T.gluing(tet1, f1);
    const Gluing& gb = T.gluing(tet2, f2);
    if (!ga.glued() || !gb.glued()) throw domain_error("IllegalMove", "pillow outer faces must be glued");
    // Compose: (P side) <- tet1 face f1 ... tet2 face f2 -> (Q side)
    // Map P -> Q: gb.vmap o inner.vmap o ga.inverse
    std::array<int, 4> inv_ga{};
    for (int v = 0; v < 4; ++v) inv_ga[static_cast<size_t>(ga.vmap[static_cast<size_t>(v)])] = v;
    std::array<int, 4> comp{};
    for (int v = 0; v < 4; ++v)
      comp[static_cast<size_t>(v)] = gb.vmap[static_cast<size_t>(inner.vmap[static_cast<size_t>(inv_ga[static_cast<size_t>(v)])])];
    return std::make_tuple(ga.tet, ga.vmap[static_cast<size_t>(f1)], gb.tet, gb.vmap[static_cast<size_t>(f2)], comp);
  };
  for (int f1 : outer1) {
    auto [p, fp, q, fq, comp] = outer_pair(f1);
    if (p == tet1 || p == tet2 || q == tet1 || q == tet2)
      throw domain_error("IllegalMove", "pillow outer faces glued to the pillow itself");
    R.glue_faces(mv.tet_map[static_cast<size_t>(p)], fp, mv.tet_map[static_cast<size_t>(q)], fq, comp);
  }
  for (int t = 0; t < Tn; ++t)
    for (int f = 0; f < 4; ++f) {
      if (t == tet1 || t == tet2) continue;
      const Gluing& gg = T.gluing(t, f);
      if (!gg.glued() || gg.tet == tet1 || gg.tet == tet2) continue;
      const auto k = std::minmax({std::make_pair(t, f), std::make_pair(gg.tet, gg.vmap[static_cast<size_t>(f)])});
      if (done.count({k.first, k.second})) continue;
      done.insert({k.first, k.second});
      R.glue_faces(mv.tet_map[static_cast<size_t>(t)], f, mv.tet_map[static_cast<size_t>(gg.tet)],
                   gg.vmap[static_cast<size_t>(f)], gg.vmap);
    }
  {
    std::vector<int> par(static_cast<size_t>(next), 0);
    const auto& oo = T.orientation();
    if (static_cast<int>(oo.size()) == Tn)
      for (int t = 0; t < Tn; ++t)
        if (mv.tet_map[static_cast<size_t>(t)] >= 0) par[static_cast<size_t>(mv.tet_map[static_cast<size_t>(t)])] = oo[static_cast<size_t>(t)];
    R.set_orientation(par);
  }
  EdgeMapper em;
  em.told = &T;
  em.tnew = &R;
  em.tet_map = &mv.tet_map;
  // Inverse-bubble H transit: two H-edges meeting at the disappearing vertex
  // collapse back to the single edge joining their far endpoints.
  Hamiltonian keep;
  std::vector<tri::TetEdge> lost;
  for (int e : H.edges) {
    bool survives = false;
    for (const TetEdge& occ : T.edge_occurrences(e))
      if (occ.tet != tet1 && occ.tet != tet2) survives = true;
    if (survives) {
      keep.edges.insert(e);
    } else {
      for (const TetEdge& occ : T.edge_occurrences(e))
        if (occ.tet == tet1) {
          lost.push_back(occ);
          break;
        }
    }
  }
  mv.new_H = map_hamiltonian(keep, em);
  if (!lost.empty()) {
    if (lost.size() != 2) throw domain_error("IllegalMove", "H cannot transit through this 2->0 move");
    // common vertex of the two lost edges (the disappearing one)
    std::array<int, 4> count{};
    for (const TetEdge& occ : lost) {
      count[static_cast<size_t>(occ.from)]++;
      count[static_cast<size_t>(occ.to)]++;
    }
    int far1 = -1, far2 = -1;
    for (int v = 0; v < 4; ++v)
      if (count[static_cast<size_t>(v)] == 1) (far1 < 0 ? far1 : far2) = v;
    if (far2 < 0) throw domain_error("IllegalMove", "H cannot transit through this 2->0 move");
    // map the closing edge through an outer-face partner of tet1
    bool added = false;
    for (int f1 : outer1) {
      if (f1 == far1 || f1 == far2) continue;
      const Gluing& ga = T.gluing(tet1, f1);
      mv.new_H.edges.insert(R.edge_class(mv.tet_map[static_cast<size_t>(ga.tet)],
                                         ga.vmap[static_cast<size_t>(far1)],
                                         ga.vmap[static_cast<size_t>(far2)]));
      added = true;
      break;
    }
    if (!added) throw domain_error("IllegalMove", "H cannot transit through this 2->0 move");
  }
  fill_common_edges(T, em, mv, mv.common_edges);
  mv.tri = std::move(R);
  return mv;
}

MoveResult bubble(const Triangulation& T, const Hamiltonian& H, int tet, int face, int h_edge_id) {
  const Gluing g = T.gluing(tet, face);
  if (!g.glued()) throw domain_error("IllegalMove", "bubble needs a glued face");
  if (!H.edges.count(h_edge_id)) throw domain_error("IllegalMove", "bubble needs an H-edge on the face");
  // The H-edge must lie on the face.
  int ea = -1, eb = -1;
  for (int a = 0; a < 4 && ea < 0; ++a)
    for (int b = a + 1; b < 4; ++b) {
      if (a == face || b == face) continue;
      if (T.edge_class(tet, a, b) == h_edge_id) {
        ea = a;
        eb = b;
        break;
      }
    }
  if (ea < 0) throw domain_error("IllegalMove", "an edge e of H must lie in the boundary of the face");

  // Face vertices x0<x1<x2 in tet-locals; pillow D1=(x0,x1,x2,v), D2 likewise.
  std::array<int, 3> xs{};
  {
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != face) xs[static_cast<size_t>(k++)] = v;
  }
  const int Tn = T.n_tet();
  MoveResult mv;
  mv.tet_map.assign(static_cast<size_t>(Tn), -1);
  for (int t = 0; t < Tn; ++t) mv.tet_map[static_cast<size_t>(t)] = t;
  const int nD1 = Tn, nD2 = Tn + 1;
  mv.new_tets = {nD1, nD2};

  Triangulation R(Tn + 2, T.ideal());
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> done;
  for (int t = 0; t < Tn; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& gg = T.gluing(t, f);
      if (!gg.glued()) continue;
      if (t == tet && f == face) continue;
      if (gg.tet == tet && gg.vmap[static_cast<size_t>(f)] == face) continue;
      const auto k = std::minmax({std::make_pair(t, f), std::make_pair(gg.tet, gg.vmap[static_cast<size_t>(f)])});
      if (done.count({k.first, k.second})) continue;
      done.insert({k.first, k.second});
      R.glue_faces(t, f, gg.tet, gg.vmap[static_cast<size_t>(f)], gg.vmap);
    }
  // D1 face 3 (x0,x1,x2) -> (tet, face); D2 face 3 -> far side of the face.
  {
    std::array<int, 4> m1{};
    m1[0] = xs[0];
    m1[1] = xs[1];
    m1[2] = xs[2];
    m1[3] = face;
    R.glue_faces(nD1, 3, tet, face, m1);
    std::array<int, 4> m2{};
    m2[0] = g.vmap[static_cast<size_t>(xs[0])];
    m2[1] = g.vmap[static_cast<size_t>(xs[1])];
    m2[2] = g.vmap[static_cast<size_t>(xs[2])];
    m2[3] = g.vmap[static_cast<size_t>(face)];
    R.glue_faces(nD2, 3, g.tet, g.vmap[static_cast<size_t>(face)], m2);
    // Inner: D1 faces 0,1,2 <-> D2 faces 0,1,2, identity maps.
    R.glue_faces(nD1, 0, nD2, 0, {0, 1, 2, 3});
    R.glue_faces(nD1, 1, nD2, 1, {0, 1, 2, 3});
    R.glue_faces(nD1, 2, nD2, 2, {0, 1, 2, 3});
  }
  {
    std::vector<int> par(static_cast<size_t>(Tn + 2), 0);
    const auto& oo = T.orientation();
    if (static_cast<int>(oo.size()) == Tn) {
      for (int t = 0; t < Tn; ++t) par[static_cast<size_t>(t)] = oo[static_cast<size_t>(t)];
      const Gluing& gg1 = R.gluing(nD1, 3);
      par[static_cast<size_t>(nD1)] = -perm_parity4(gg1.vmap) * par[static_cast<size_t>(gg1.tet)];
      const Gluing& gg2 = R.gluing(nD2, 3);
      par[static_cast<size_t>(nD2)] = -perm_parity4(gg2.vmap) * par[static_cast<size_t>(gg2.tet)];
    }
    R.set_orientation(par);
  }

  EdgeMapper em;
  em.told = &T;
  em.tnew = &R;
  em.tet_map = &mv.tet_map;

  // Hamiltonian reroute: drop the old H-edge, add (xi,v) and (xj,v) where
  // {xi,xj} = the H-edge on the face.
  Hamiltonian newH;
  for (int e : H.edges) {
    if (e == h_edge_id) continue;
    auto n = em.new_class(e);
    if (!n) throw domain_error("LostHEdge", "H edge class lost by the move");
    newH.edges.insert(*n);
  }
  // locals of ea, eb inside D1: position in xs
  auto d1local = [&](int w) {
    for (int k = 0; k < 3; ++k)
      if (xs[static_cast<size_t>(k)] == w) return k;
    return -1;
  };
  newH.edges.insert(R.edge_class(nD1, d1local(ea), 3));
  newH.edges.insert(R.edge_class(nD1, d1local(eb), 3));
  mv.new_H = std::move(newH);
  mv.new_vertex = {nD1, 3};
  mv.new_edge = {nD1, d1local(ea), 3};
  fill_common_edges(T, em, mv, mv.common_edges);
  mv.tri = std::move(R);
  return mv;
}

std::vector<Branching> branching_transits(const Triangulation& T_old, const Branching& b,
                                          const MoveResult& mv) {
  const Triangulation& R = mv.tri;
  // Seed edge-class directions from surviving tets.
  std::vector<int> dir(static_cast<size_t>(R.n_edges()), 0);
  Branching base;
  base.order.assign(static_cast<size_t>(R.n_tet()), {0, 1, 2, 3});
  for (int t = 0; t < T_old.n_tet(); ++t) {
    const int nt = mv.tet_map[static_cast<size_t>(t)];
    if (nt < 0) continue;
    base.order[static_cast<size_t>(nt)] = b.order[static_cast<size_t>(t)];
    for (int a = 0; a < 4; ++a)
      for (int bb = a + 1; bb < 4; ++bb) {
        const int lo_first = b.position(t, a) < b.position(t, bb) ? 1 : -1;
        const int class_dir = lo_first * R.edge_dir(nt, a, bb);
        int& d = dir[static_cast<size_t>(R.edge_class(nt, a, bb))];
        d = class_dir;  // survivors are mutually consistent when b was valid
      }
  }
  // Backtrack over the new tets only.
  std::vector<Branching> results;
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == mv.new_tets.size()) {
      results.push_back(base);
      return;
    }
    const int t = mv.new_tets[idx];
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end());
    do {
      std::vector<int> touched;
      auto pos = [&](int v) {
        for (int k = 0; k < 4; ++k)
          if (order[static_cast<size_t>(k)] == v) return k;
        return -1;
      };
      bool ok = true;
      for (int a = 0; a < 4 && ok; ++a)
        for (int bb = a + 1; bb < 4 && ok; ++bb) {
          const int lo_first = pos(a) < pos(bb) ? 1 : -1;
          const int class_dir = lo_first * R.edge_dir(t, a, bb);
          int& d = dir[static_cast<size_t>(R.edge_class(t, a, bb))];
          if (d == 0) {
            d = class_dir;
            touched.push_back(R.edge_class(t, a, bb));
          } else if (d != class_dir) {
            ok = false;
          }
        }
      if (ok) {
        base.order[static_cast<size_t>(t)] = order;
        rec(idx + 1);
      }
      for (int e : touched) dir[static_cast<size_t>(e)] = 0;
    } while (std::next_permutation(order.begin(), order.end()));
  };
  rec(0);
  return results;
}

}  // namespace qhi::tri
