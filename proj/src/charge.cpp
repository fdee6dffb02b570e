#include "qhi/charge.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>

#include "qhi/intmat.hpp"

namespace qhi::charge {

namespace {

int edge_target(const tri::Hamiltonian& H, int edge_id) { return H.edges.count(edge_id) ? 0 : 2; }

// Contribution of tet t to edge class e, as an affine form in the tet's free
// pair (a, b) = (c_pair0, c_pair1): coef_a * a + coef_b * b + constant,
// using c_pair2 = 1 - a - b.
struct AffineForm {
  long long ca = 0, cb = 0, c0 = 0;
};

AffineForm edge_contribution(const tri::Triangulation& T, const tri::Branching& b, int t,
                             int edge_id) {
  AffineForm f;
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y) {
      if (T.edge_class(t, x, y) != edge_id) continue;
      switch (b.pair_of(t, x, y)) {
        case 0: f.ca += 1; break;
        case 1: f.cb += 1; break;
        default:
          f.ca -= 1;
          f.cb -= 1;
          f.c0 += 1;
      }
    }
  return f;
}

}  // namespace

ValidationReport validate_charge(const tri::Triangulation& T, const tri::Branching& b,
                                 const tri::Hamiltonian& H, const ChargeAssignment& c,
                                 bool check_holonomy) {
  ValidationReport rep;
  if (c.c.size() != static_cast<size_t>(T.n_tet())) {
    rep.fail("ChargeSize", "charge list does not match tetrahedron count");
    return rep;
  }
  for (int t = 0; t < T.n_tet(); ++t) {
    const auto& ct = c.c[static_cast<size_t>(t)];
    if (ct[0] + ct[1] + ct[2] != 1)
      rep.fail("TetSum", "tet " + std::to_string(t) + " charges sum to " +
                             std::to_string(ct[0] + ct[1] + ct[2]));
  }
  for (int e = 0; e < T.n_edges(); ++e) {
    long long sum = 0;
    for (const tri::TetEdge& occ : T.edge_occurrences(e))
      sum += c.c[static_cast<size_t>(occ.tet)][static_cast<size_t>(b.pair_of(occ.tet, occ.from, occ.to))];
    if (sum != edge_target(H, e))
      rep.fail("EdgeSum", "edge " + std::to_string(e) + " sums to " + std::to_string(sum) +
                              ", expected " + std::to_string(edge_target(H, e)));
  }
  if (check_holonomy) {
    for (int h : mod2_holonomy(T, b, c))
      if (h != 0) {
        rep.fail("Mod2Holonomy", "nonzero holonomy class");
        break;
      }
  }
  return rep;
}

ChargeAssignment solve_charge(const tri::Triangulation& T, const tri::Branching& b,
                              const tri::Hamiltonian& H) {
  const int Tn = T.n_tet();
  // Linear system over (a_t, b_t): edge sums.
  intmat::Mat A(T.n_edges(), 2 * Tn);
  std::vector<intmat::Int> rhs(static_cast<size_t>(T.n_edges()));
  for (int e = 0; e < T.n_edges(); ++e) {
    long long target = edge_target(H, e);
    for (int t = 0; t < Tn; ++t) {
      const AffineForm f = edge_contribution(T, b, t, e);
      A.at(e, t) = static_cast<long>(f.ca);
      A.at(e, Tn + t) = static_cast<long>(f.cb);
      target -= f.c0;
    }
    rhs[static_cast<size_t>(e)] = static_cast<long>(target);
  }
  auto sol = intmat::solve(A, rhs);
  if (!sol) throw domain_error("Infeasible", "charge system has no integer solution");
  ChargeAssignment c;
  c.c.resize(static_cast<size_t>(Tn));
  for (int t = 0; t < Tn; ++t) {
    const long long a = (*sol)[static_cast<size_t>(t)].get_si();
    const long long bb = (*sol)[static_cast<size_t>(Tn + t)].get_si();
    c.c[static_cast<size_t>(t)] = {static_cast<int>(a), static_cast<int>(bb),
                                   static_cast<int>(1 - a - bb)};
  }
  // Fix the mod-2 holonomy by lattice vectors.
  std::vector<int> h = mod2_holonomy(T, b, c);
  const bool all_zero = std::all_of(h.begin(), h.end(), [](int v) { return v == 0; });
  if (!all_zero) {
    // M[cycle][edge] = parity change of cycle when adding w(edge).
    std::vector<std::vector<int>> M(h.size(), std::vector<int>(static_cast<size_t>(T.n_edges()), 0));
    for (int e = 0; e < T.n_edges(); ++e) {
      ChargeAssignment shifted = add_lattice(T, b, c, e, 1);
      std::vector<int> h2 = mod2_holonomy(T, b, shifted);
      for (size_t k = 0; k < h.size(); ++k) M[k][static_cast<size_t>(e)] = (h2[k] - h[k] + 2) % 2;
    }
    auto coeffs = intmat::solve_gf2(M, h);
    if (!coeffs) throw domain_error("Infeasible", "mod-2 holonomy cannot be corrected");
    for (int e = 0; e < T.n_edges(); ++e)
      if ((*coeffs)[static_cast<size_t>(e)]) c = add_lattice(T, b, c, e, 1);
  }
  ValidationReport check = validate_charge(T, b, H, c);
  if (!check.ok()) throw domain_error("Infeasible", "solver output fails validation: " + check.summary());
  return c;
}

std::vector<long long> lattice_vector(const tri::Triangulation& T, const tri::Branching& b,
                                      int edge_id) {
  const int Tn = T.n_tet();
  std::vector<long long> dpair0(static_cast<size_t>(Tn), 0), dpair1(static_cast<size_t>(Tn), 0);
  for (const tri::TetEdge& occ : T.edge_occurrences(edge_id)) {
    const int j = b.pair_of(occ.tet, occ.from, occ.to);
    const int jp1 = (j + 1) % 3, jp2 = (j + 2) % 3;
    auto bump = [&](int pair, int delta) {
      if (pair == 0) dpair0[static_cast<size_t>(occ.tet)] += delta;
      if (pair == 1) dpair1[static_cast<size_t>(occ.tet)] += delta;
    };
    bump(jp1, +1);
    bump(jp2, -1);
  }
  std::vector<long long> w;
  w.reserve(static_cast<size_t>(2 * Tn));
  for (int t = 0; t < Tn; ++t) w.push_back(dpair0[static_cast<size_t>(t)]);
  for (int t = 0; t < Tn; ++t) w.push_back(-dpair1[static_cast<size_t>(t)]);
  return w;
}

ChargeAssignment add_lattice(const tri::Triangulation& T, const tri::Branching& b,
                             const ChargeAssignment& c, int edge_id, int k) {
  ChargeAssignment out = c;
  for (const tri::TetEdge& occ : T.edge_occurrences(edge_id)) {
    const int j = b.pair_of(occ.tet, occ.from, occ.to);
    out.c[static_cast<size_t>(occ.tet)][static_cast<size_t>((j + 1) % 3)] += k;
    out.c[static_cast<size_t>(occ.tet)][static_cast<size_t>((j + 2) % 3)] -= k;
  }
  return out;
}

std::vector<int> mod2_holonomy(const tri::Triangulation& T, const tri::Branching& b,
                               const ChargeAssignment& c) {
  // Dual graph: nodes = tets, arcs = face slots. Spanning tree by BFS.
  struct Arc {
    int from_tet, from_face, to_tet, to_face;
  };
  const int Tn = T.n_tet();
  std::vector<int> parent(static_cast<size_t>(Tn), -2);
  std::vector<Arc> parent_arc(static_cast<size_t>(Tn));
  std::vector<int> order;
  std::vector<Arc> chords;
  std::set<std::pair<int, int>> used;  // face slots in the tree (both sides)
  parent[0] = -1;
  order.push_back(0);
  for (size_t head = 0; head < order.size(); ++head) {
    const int t = order[head];
    for (int f = 0; f < 4; ++f) {
      const tri::Gluing& g = T.gluing(t, f);
      if (!g.glued()) continue;
      if (parent[static_cast<size_t>(g.tet)] == -2) {
        parent[static_cast<size_t>(g.tet)] = t;
        parent_arc[static_cast<size_t>(g.tet)] = {t, f, g.tet, g.vmap[static_cast<size_t>(f)]};
        used.insert({t, f});
        used.insert({g.tet, g.vmap[static_cast<size_t>(f)]});
        order.push_back(g.tet);
      }
    }
  }
  for (int t = 0; t < Tn; ++t)
    for (int f = 0; f < 4; ++f) {
      const tri::Gluing& g = T.gluing(t, f);
      if (!g.glued() || used.count({t, f})) continue;
      const auto key = std::minmax(
          {std::make_pair(t, f), std::make_pair(g.tet, g.vmap[static_cast<size_t>(f)])});
      if (std::make_pair(t, f) != key.first) continue;  // one orientation per chord
      chords.push_back({t, f, g.tet, g.vmap[static_cast<size_t>(f)]});
    }

  std::vector<int> parities;
  for (const Arc& chord : chords) {
    // Cycle: chord from u to v, then tree path v -> u.
    std::vector<Arc> steps{chord};
    // path v -> root as arcs child->parent; path u -> root likewise; compose
    // v -> root -> u with cancellation handled below.
    std::vector<Arc> up_v, up_u;
    for (int t = chord.to_tet; parent[static_cast<size_t>(t)] >= 0; t = parent[static_cast<size_t>(t)]) {
      const Arc& pa = parent_arc[static_cast<size_t>(t)];
      up_v.push_back({pa.to_tet, pa.to_face, pa.from_tet, pa.from_face});  // child -> parent
    }
    for (int t = chord.from_tet; parent[static_cast<size_t>(t)] >= 0; t = parent[static_cast<size_t>(t)]) {
      const Arc& pa = parent_arc[static_cast<size_t>(t)];
      up_u.push_back({pa.to_tet, pa.to_face, pa.from_tet, pa.from_face});
    }
    for (const Arc& a : up_v) steps.push_back(a);
    for (auto it = up_u.rbegin(); it != up_u.rend(); ++it)
      steps.push_back({it->to_tet, it->to_face, it->from_tet, it->from_face});  // reversed
    // Cancel immediate back-tracks (crossing a face and straight back), which
    // is the homotopy-invariant reading of the no-back-tracking rule.
    bool changed = true;
    while (changed && steps.size() >= 2) {
      changed = false;
      for (size_t i = 0; i < steps.size(); ++i) {
        const size_t jn = (i + 1) % steps.size();
        const Arc& s1 = steps[i];
        const Arc& s2 = steps[jn];
        if (s1.to_tet == s2.from_tet && s1.to_face == s2.from_face && s1.from_tet == s2.to_tet &&
            s1.from_face == s2.to_face) {
          if (jn > i) {
            steps.erase(steps.begin() + static_cast<long>(jn));
            steps.erase(steps.begin() + static_cast<long>(i));
          } else {
            steps.erase(steps.begin() + static_cast<long>(i));
            steps.erase(steps.begin());
          }
          changed = true;
          break;
        }
      }
    }
    long long sum = 0;
    const size_t n = steps.size();
    for (size_t i = 0; i < n; ++i) {
      const Arc& in_arc = steps[i];
      const Arc& out_arc = steps[(i + 1) % n];
      const int t = in_arc.to_tet;
      const int fin = in_arc.to_face;
      const int fout = out_arc.from_face;
      if (out_arc.from_tet != t) throw domain_error("Internal", "broken dual cycle");
      if (fin == fout) continue;  // retraced; contributes twice the same charge
      // selected edge: the one shared by the two faces = complement vertices
      int verts[2], k = 0;
      for (int v = 0; v < 4; ++v)
        if (v != fin && v != fout) verts[k++] = v;
      sum += c.c[static_cast<size_t>(t)][static_cast<size_t>(b.pair_of(t, verts[0], verts[1]))];
    }
    parities.push_back(static_cast<int>(((sum % 2) + 2) % 2));
  }
  return parities;
}

ChargeAssignment charge_transit(const tri::Triangulation& T_old, const tri::Branching& b_old,
                                const tri::Hamiltonian& H_old, const ChargeAssignment& c_old,
                                const tri::MoveResult& mv, const tri::Branching& b_new,
                                int lambda) {
  (void)H_old;
  const tri::Triangulation& R = mv.tri;
  const int Tn = R.n_tet();
  ChargeAssignment out;
  out.c.assign(static_cast<size_t>(Tn), {0, 0, 0});
  std::vector<char> known(static_cast<size_t>(Tn), 0);
  for (int t = 0; t < T_old.n_tet(); ++t) {
    const int nt = mv.tet_map[static_cast<size_t>(t)];
    if (nt < 0) continue;
    // The charge of a pair is attached to the underlying edge pair; transfer
    // through the (same-local-labels) correspondence and the branchings.
    for (int pair = 0; pair < 3; ++pair) {
      const tri::TetEdge e = b_old.edge(t, pair, false);
      const int npair = b_new.pair_of(nt, e.from, e.to);
      out.c[static_cast<size_t>(nt)][static_cast<size_t>(npair)] =
          c_old.c[static_cast<size_t>(t)][static_cast<size_t>(pair)];
    }
    known[static_cast<size_t>(nt)] = 1;
  }
  if (mv.new_tets.empty()) return out;

  // Solve the transit-of-sum conditions for the new tets' free pairs.
  const int K = static_cast<int>(mv.new_tets.size());
  // Old edge sums by new edge class: conditions on every class meeting a new
  // tet. Old sums: for common edges use the old triangulation total; for the
  // split edges of a 0->2 move the target comes from the defcharges rule via
  // mv.new_H.
  std::map<int, long long> target;  // new edge class -> required total
  for (const auto& [olde, newe] : mv.common_edges) {
    long long sum = 0;
    for (const tri::TetEdge& occ : T_old.edge_occurrences(olde))
      sum += c_old.c[static_cast<size_t>(occ.tet)]
                    [static_cast<size_t>(b_old.pair_of(occ.tet, occ.from, occ.to))];
    target[newe] = sum;
  }
  // Any class of R not in `target` gets the defcharges value (new and split
  // edges): 0 on H, else 2.
  for (int e = 0; e < R.n_edges(); ++e)
    if (!target.count(e)) target[e] = mv.new_H.edges.count(e) ? 0 : 2;

  // Build the system over the new tets' (a_t, b_t).
  std::vector<int> tet_col(static_cast<size_t>(Tn), -1);
  for (int k = 0; k < K; ++k) tet_col[static_cast<size_t>(mv.new_tets[static_cast<size_t>(k)])] = k;
  std::vector<int> rows;  // edge classes meeting new tets
  for (int e = 0; e < R.n_edges(); ++e) {
    bool meets = false;
    for (const tri::TetEdge& occ : R.edge_occurrences(e))
      if (tet_col[static_cast<size_t>(occ.tet)] >= 0) meets = true;
    if (meets) rows.push_back(e);
  }
  intmat::Mat A(static_cast<int>(rows.size()), 2 * K);
  std::vector<intmat::Int> rhs(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    const int e = rows[r];
    long long tgt = target.at(e);
    for (const tri::TetEdge& occ : R.edge_occurrences(e)) {
      const int col = tet_col[static_cast<size_t>(occ.tet)];
      const int pair = b_new.pair_of(occ.tet, occ.from, occ.to);
      if (col < 0) {
        tgt -= out.c[static_cast<size_t>(occ.tet)][static_cast<size_t>(pair)];
        continue;
      }
      switch (pair) {
        case 0: A.at(static_cast<int>(r), col) += 1; break;
        case 1: A.at(static_cast<int>(r), K + col) += 1; break;
        default:
          A.at(static_cast<int>(r), col) -= 1;
          A.at(static_cast<int>(r), K + col) -= 1;
          tgt -= 1;
      }
    }
    rhs[r] = static_cast<long>(tgt);
  }
  auto sol = intmat::solve(A, rhs);
  if (!sol) throw domain_error("IllegalMove", "no integral charge transit exists");
  auto kernel = intmat::kernel_basis(A);

  auto charges_from = [&](const std::vector<intmat::Int>& x) {
    std::vector<std::array<int, 3>> cs(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) {
      const long long a = x[static_cast<size_t>(k)].get_si();
      const long long bb = x[static_cast<size_t>(K + k)].get_si();
      cs[static_cast<size_t>(k)] = {static_cast<int>(a), static_cast<int>(bb),
                                    static_cast<int>(1 - a - bb)};
    }
    return cs;
  };
  auto max_abs = [](const std::vector<std::array<int, 3>>& cs) {
    int m = 0;
    for (const auto& c3 : cs)
      for (int v : c3) m = std::max(m, std::abs(v));
    return m;
  };
  // Canonical base point: scan lambda offsets along each kernel vector to
  // minimize the max absolute charge (ties lexicographically).
  std::vector<intmat::Int> base = *sol;
  bool improved = true;
  while (improved) {
    improved = false;
    for (const auto& kv : kernel) {
      for (int dir : {1, -1}) {
        std::vector<intmat::Int> cand = base;
        for (size_t i = 0; i < cand.size(); ++i) cand[i] += dir * kv[i];
        const auto cur = charges_from(base);
        const auto nxt = charges_from(cand);
        if (max_abs(nxt) < max_abs(cur) ||
            (max_abs(nxt) == max_abs(cur) && nxt < cur)) {
          base = cand;
          improved = true;
        }
      }
    }
  }
  std::vector<intmat::Int> chosen = base;
  if (lambda != 0 && !kernel.empty())
    for (size_t i = 0; i < chosen.size(); ++i) chosen[i] += lambda * kernel[0][i];
  const auto cs = charges_from(chosen);
  for (int k = 0; k < K; ++k)
    out.c[static_cast<size_t>(mv.new_tets[static_cast<size_t>(k)])] = cs[static_cast<size_t>(k)];
  return out;
}

}  // namespace qhi::charge
