#include "qhi/decor.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "qhi/classical.hpp"

namespace qhi::decor {

namespace {

constexpr double kCoincidenceTol = 1e-12;

cx crossratio(cx z0, cx z1, cx z2, cx z3) {
  return (z2 - z1) * (z3 - z0) / ((z2 - z0) * (z3 - z1));
}

bool bad_modulus(cx w) {
  return !std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) < 1e-12 ||
         std::abs(w - 1.0) < 1e-12;
}

}  // namespace

ModuliTriple ModuliTriple::from_w0(cx w0_) {
  ModuliTriple m;
  m.w0 = w0_;
  m.w1 = 1.0 / (1.0 - w0_);
  m.w2 = 1.0 - 1.0 / w0_;  // = 1/(1-w1)
  m.p0 = 1.0 - w0_;
  m.p1 = w0_;
  m.p2 = -1.0;
  m.has_p = true;
  return m;
}

ValidationReport check_cocycle(const tri::Triangulation& T, const tri::Branching& b,
                               const Cocycle& z) {
  ValidationReport rep;
  for (int t = 0; t < T.n_tet(); ++t) {
    for (int f = 0; f < 4; ++f) {
      // Face vertices in branching order.
      std::array<int, 3> vs{};
      int k = 0;
      for (int pos = 0; pos < 4; ++pos) {
        const int v = b.order[static_cast<size_t>(t)][static_cast<size_t>(pos)];
        if (v != f) vs[static_cast<size_t>(k++)] = v;
      }
      const PSL2C z0 = z.on(T, t, vs[0], vs[1]);
      const PSL2C z1 = z.on(T, t, vs[1], vs[2]);
      const PSL2C z2 = z.on(T, t, vs[0], vs[2]);
      if (!moebius::approx_equal(moebius::compose(z0, z1), z2))
        rep.fail("CocycleFace", "tet " + std::to_string(t) + " face " + std::to_string(f));
    }
  }
  return rep;
}

Cocycle gauge_transform(const tri::Triangulation& T, const Cocycle& z,
                        const std::vector<PSL2C>& lambda) {
  Cocycle out;
  out.val.resize(static_cast<size_t>(T.n_edges()));
  for (int e = 0; e < T.n_edges(); ++e) {
    auto [va, vb] = T.edge_endpoints(e);
    out.val[static_cast<size_t>(e)] = moebius::compose(
        moebius::compose(moebius::inverse(lambda[static_cast<size_t>(va)]), z.val[static_cast<size_t>(e)]),
        lambda[static_cast<size_t>(vb)]);
  }
  return out;
}

IdealizeTetResult idealize_tet(const tri::Triangulation& T, const tri::Branching& b,
                               const Cocycle& z, int tet) {
  IdealizeTetResult res;
  const auto& o = b.order[static_cast<size_t>(tet)];
  auto v = [&](int k) { return o[static_cast<size_t>(k)]; };
  const PSL2C z0 = z.on(T, tet, v(0), v(1));
  const PSL2C z1 = z.on(T, tet, v(1), v(2));
  const PSL2C z0p = z.on(T, tet, v(2), v(3));

  const SpherePoint zero = SpherePoint::finite(0.0);
  res.u[0] = zero;
  res.u[1] = moebius::act(z0, zero);
  res.u[2] = moebius::act(moebius::compose(z0, z1), zero);
  res.u[3] = moebius::act(moebius::compose(moebius::compose(z0, z1), z0p), zero);

  for (int i = 0; i < 4; ++i) {
    if (res.u[static_cast<size_t>(i)].infinite) {
      res.reason = "u" + std::to_string(i) + " at infinity";
      return res;
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (moebius::chordal_distance(res.u[static_cast<size_t>(i)], res.u[static_cast<size_t>(j)]) < kCoincidenceTol) {
        res.reason = "u" + std::to_string(i) + " = u" + std::to_string(j);
        return res;
      }

  const cx u1 = res.u[1].value, u2 = res.u[2].value, u3 = res.u[3].value;
  ModuliTriple m;
  m.p0 = u1 * (u3 - u2);
  m.p1 = (u2 - u1) * u3;
  m.p2 = -u2 * (u3 - u1);
  m.w0 = -m.p1 / m.p2;
  m.w1 = -m.p2 / m.p0;
  m.w2 = -m.p0 / m.p1;
  m.has_p = true;
  if (bad_modulus(m.w0) || bad_modulus(m.w1) || bad_modulus(m.w2)) {
    res.reason = "degenerate modulus in {0,1}";
    return res;
  }
  res.ok = true;
  res.w = m;
  return res;
}

IdealizeResult idealize(const tri::Triangulation& T, const tri::Branching& b, const Cocycle& z) {
  IdealizeResult out;
  out.TI.T = T;
  out.TI.b = b;
  out.TI.moduli.resize(static_cast<size_t>(T.n_tet()));
  for (int t = 0; t < T.n_tet(); ++t) {
    IdealizeTetResult r = idealize_tet(T, b, z, t);
    if (!r.ok) {
      out.failed_tet = t;
      out.reason = r.reason;
      return out;
    }
    out.TI.moduli[static_cast<size_t>(t)] = r.w;
  }
  out.ok = true;
  return out;
}

ValidationReport check_edge_compat(const ITriangulation& TI, double rel_tol) {
  ValidationReport rep;
  const auto& T = TI.T;
  for (int e = 0; e < T.n_edges(); ++e) {
    cx prod = 1.0;
    for (const tri::TetEdge& occ : T.edge_occurrences(e)) {
      const int pair = TI.b.pair_of(occ.tet, occ.from, occ.to);
      const cx w = TI.moduli[static_cast<size_t>(occ.tet)].w(pair);
      const int s = tri::b_sign(T, TI.b, occ.tet);
      prod *= s > 0 ? w : 1.0 / w;
    }
    if (std::abs(prod - 1.0) > rel_tol)
      rep.fail("EdgeCompat", "edge class " + std::to_string(e) + " product " +
                                 std::to_string(prod.real()) + "+" + std::to_string(prod.imag()) +
                                 "i");
  }
  return rep;
}

Cocycle perturb_to_idealizable(const tri::Triangulation& T, const tri::Branching& b,
                               const Cocycle& z, std::uint64_t seed, int max_retries) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    Cocycle cand = z;
    if (attempt > 0) {
      std::vector<PSL2C> lambda(static_cast<size_t>(T.n_vertices()));
      for (auto& l : lambda) {
        const double s = 0.1;
        l = PSL2C::from_matrix(1.0 + s * cx(dist(rng), dist(rng)), s * cx(dist(rng), dist(rng)),
                               s * cx(dist(rng), dist(rng)), 1.0 + s * cx(dist(rng), dist(rng)));
      }
      cand = gauge_transform(T, z, lambda);
    }
    if (idealize(T, b, cand).ok) return cand;
  }
  throw domain_error("RetriesExhausted", "no idealizable perturbation found");
}

Cocycle cocycle_transit(const tri::Triangulation& T_old, const Cocycle& z,
                        const tri::MoveResult& mv, const std::optional<PSL2C>& bubble_free) {
  const tri::Triangulation& R = mv.tri;
  Cocycle out;
  out.val.assign(static_cast<size_t>(R.n_edges()), PSL2C::identity());
  std::vector<char> set(static_cast<size_t>(R.n_edges()), 0);

  auto assign = [&](int nt, int a, int b, const PSL2C& v) {
    const int ne = R.edge_class(nt, a, b);
    if (set[static_cast<size_t>(ne)]) return;
    out.val[static_cast<size_t>(ne)] = R.edge_dir(nt, a, b) > 0 ? v : moebius::inverse(v);
    set[static_cast<size_t>(ne)] = 1;
  };

  // Values on edges surviving inside surviving tets.
  for (int t = 0; t < T_old.n_tet(); ++t) {
    const int nt = mv.tet_map[static_cast<size_t>(t)];
    if (nt < 0) continue;
    for (int a = 0; a < 4; ++a)
      for (int bb = a + 1; bb < 4; ++bb) assign(nt, a, bb, z.on(T_old, t, a, bb));
  }
  // Values carried from removed tets (their edges persist as classes).
  for (const auto& [oldE, newE] : mv.edge_carry)
    assign(newE.tet, newE.from, newE.to, z.on(T_old, oldE.tet, oldE.from, oldE.to));
  // 0->2: both split copies inherit the old value.
  if (mv.split_old_edge >= 0) {
    const tri::TetEdge occ = T_old.edge_occurrences(mv.split_old_edge).front();
    const PSL2C v = z.on(T_old, occ.tet, occ.from, occ.to);
    for (int copy : {0, 1}) {
      const int ne = mv.split_new_edges[static_cast<size_t>(copy)];
      if (set[static_cast<size_t>(ne)]) continue;
      // reference direction: find an occurrence of the class in a survivor
      const tri::TetEdge nocc = R.edge_occurrences(ne).front();
      // nocc has the same local labels in a surviving tet (tet ids unchanged
      // for 0->2), so transport directly.
      const int nt = nocc.tet;
      if (mv.tet_map.size() > 0 && nt < static_cast<int>(mv.tet_map.size())) {
        assign(nt, nocc.from, nocc.to, z.on(T_old, nt, nocc.from, nocc.to));
      } else {
        // pillow-only class: value along directed (0->1) equals v
        out.val[static_cast<size_t>(ne)] = R.edge_dir(nt, 0, 1) > 0 ? v : moebius::inverse(v);
        set[static_cast<size_t>(ne)] = 1;
      }
    }
  }
  // Bubble: free parameter on (x0 -> v) of the pillow.
  if (mv.new_vertex.first >= 0) {
    const PSL2C freep = bubble_free.value_or(PSL2C::identity());
    assign(mv.new_vertex.first, 0, 3, freep);
  }
  // Propagate through face relations until everything is determined.
  for (int pass = 0; pass < 6; ++pass) {
    bool progressed = false;
    for (int nt : mv.new_tets)
      for (int f = 0; f < 4; ++f) {
        std::array<int, 3> vs{};
        int k = 0;
        for (int v = 0; v < 4; ++v)
          if (v != f) vs[static_cast<size_t>(k++)] = v;
        const int e01 = R.edge_class(nt, vs[0], vs[1]);
        const int e12 = R.edge_class(nt, vs[1], vs[2]);
        const int e02 = R.edge_class(nt, vs[0], vs[2]);
        const int known = set[static_cast<size_t>(e01)] + set[static_cast<size_t>(e12)] + set[static_cast<size_t>(e02)];
        if (known != 2) continue;
        if (!set[static_cast<size_t>(e02)])
          assign(nt, vs[0], vs[2],
                 moebius::compose(out.on(R, nt, vs[0], vs[1]), out.on(R, nt, vs[1], vs[2])));
        else if (!set[static_cast<size_t>(e12)])
          assign(nt, vs[1], vs[2],
                 moebius::compose(moebius::inverse(out.on(R, nt, vs[0], vs[1])),
                                  out.on(R, nt, vs[0], vs[2])));
        else
          assign(nt, vs[0], vs[1],
                 moebius::compose(out.on(R, nt, vs[0], vs[2]),
                                  moebius::inverse(out.on(R, nt, vs[1], vs[2]))));
        progressed = true;
      }
    if (!progressed) break;
  }
  for (int e = 0; e < R.n_edges(); ++e)
    if (!set[static_cast<size_t>(e)])
      throw domain_error("TransitIncomplete", "cocycle transit left edge " + std::to_string(e) +
                                                  " undetermined");
  return out;
}

namespace {

// Solve cr(z0,z1,z2,z3) = w for the point at `missing`, given the others.
cx solve_cross_ratio(int missing, const std::array<cx, 4>& zz, cx w) {
  const cx z0 = zz[0], z1 = zz[1], z2 = zz[2], z3 = zz[3];
  PSL2C M;
  switch (missing) {
    case 0: {
      const cx A = z2 - z1, B = z3 - z1;
      M = PSL2C::from_matrix(-A, A * z3, -B, B * z2);
      break;
    }
    case 1: {
      const cx C = z3 - z0, D = z2 - z0;
      M = PSL2C::from_matrix(-C, C * z2, -D, D * z3);
      break;
    }
    case 2: {
      const cx C = z3 - z0, B = z3 - z1;
      M = PSL2C::from_matrix(C, -C * z1, B, -B * z0);
      break;
    }
    default: {
      const cx A = z2 - z1, D = z2 - z0;
      M = PSL2C::from_matrix(A, -A * z0, D, -D * z1);
      break;
    }
  }
  const SpherePoint t = moebius::act(moebius::inverse(M), SpherePoint::finite(w));
  if (t.infinite) throw domain_error("TransitFails", "realized point at infinity");
  return t.value;
}

// Realizes the four branched vertices of tet as sphere points, given at least
// three already-fixed global point values. points: global vertex key -> value.
// Keys are (tet,local) collapsed through a local union-find built by the
// caller; here we just take a resolver.
struct LocalRealizer {
  const ITriangulation* TI;
  // resolve (tet, local) -> slot id in pts
  std::function<int(int, int)> slot;
  std::vector<std::optional<cx>> pts;

  // Realize missing vertices of tet (at most one unset among its 4).
  void realize(int tet) {
    const auto& o = TI->b.order[static_cast<size_t>(tet)];
    std::array<int, 4> sl{};
    int unset = -1, n_unset = 0;
    std::array<cx, 4> zz{};
    for (int k = 0; k < 4; ++k) {
      sl[static_cast<size_t>(k)] = slot(tet, o[static_cast<size_t>(k)]);
      if (!pts[static_cast<size_t>(sl[static_cast<size_t>(k)])]) {
        unset = k;
        ++n_unset;
      } else {
        zz[static_cast<size_t>(k)] = *pts[static_cast<size_t>(sl[static_cast<size_t>(k)])];
      }
    }
    if (n_unset == 0) return;
    if (n_unset > 1) throw domain_error("TransitFails", "not enough fixed points to realize tet");
    const cx w0 = TI->moduli[static_cast<size_t>(tet)].w0;
    pts[static_cast<size_t>(sl[static_cast<size_t>(unset)])] = solve_cross_ratio(unset, zz, w0);
  }
};

ModuliTriple triple_from_points(cx q0, cx q1, cx q2, cx q3) {
  ModuliTriple m;
  m.p0 = (q1 - q0) * (q3 - q2);
  m.p1 = (q2 - q1) * (q3 - q0);
  m.p2 = -(q2 - q0) * (q3 - q1);
  m.w0 = -m.p1 / m.p2;
  m.w1 = -m.p2 / m.p0;
  m.w2 = -m.p0 / m.p1;
  m.has_p = true;
  return m;
}

// After a bare move with chosen branching, recompute the new tets' moduli
// from realized points (slots = new-triangulation vertex classes restricted
// to the moved region; here we realize via old tets and transfer through
// vertex classes of the *new* complex).
ITransitResult finish_transit(const ITriangulation& TI_old, tri::MoveResult mv,
                              const std::vector<tri::Branching>& branchings, int branching_choice,
                              const std::vector<int>& old_region,
                              const std::vector<std::pair<int, int>>& seeds) {
  ITransitResult res;
  if (branchings.empty()) {
    res.reason = "no branching transit exists";
    return res;
  }
  const tri::Branching& nb = branchings[static_cast<size_t>(branching_choice) % branchings.size()];
  const tri::Triangulation& R = mv.tri;

  // Realize the old region's points keyed by *old* vertex class.
  LocalRealizer lr;
  lr.TI = &TI_old;
  lr.pts.assign(static_cast<size_t>(TI_old.T.n_vertices()), std::nullopt);
  lr.slot = [&](int tet, int local) { return TI_old.T.vertex_class(tet, local); };
  // Seed three generic positions on the first tet's first three branched
  // vertices (cross-ratios are Moebius invariant, so any choice works).
  {
    const int t0 = old_region.front();
    const auto& o = TI_old.b.order[static_cast<size_t>(t0)];
    lr.pts[static_cast<size_t>(TI_old.T.vertex_class(t0, o[0]))] = cx(0.0, 0.0);
    lr.pts[static_cast<size_t>(TI_old.T.vertex_class(t0, o[1]))] = cx(1.0, 0.0);
    lr.pts[static_cast<size_t>(TI_old.T.vertex_class(t0, o[2]))] = cx(2.3, 1.1);
  }
  for (int t : old_region) lr.realize(t);

  // Transfer to the new tets: seeds gives (new tet, new local) -> the old
  // vertex class carries over via the correspondence prepared by the caller.
  res.TI.T = R;
  res.TI.b = nb;
  res.TI.moduli.resize(static_cast<size_t>(R.n_tet()));
  for (int t = 0; t < TI_old.T.n_tet(); ++t) {
    const int nt = mv.tet_map[static_cast<size_t>(t)];
    if (nt >= 0) res.TI.moduli[static_cast<size_t>(nt)] = TI_old.moduli[static_cast<size_t>(t)];
  }
  // seeds: for each new tet local vertex, the old vertex class id.
  auto old_class_of = [&](int nt, int local) -> int {
    for (const auto& [key, cls] : seeds)
      if (key == nt * 4 + local) return cls;
    return -1;
  };
  for (int nt : mv.new_tets) {
    const auto& o = nb.order[static_cast<size_t>(nt)];
    std::array<cx, 4> q{};
    for (int k = 0; k < 4; ++k) {
      const int cls = old_class_of(nt, o[static_cast<size_t>(k)]);
      if (cls < 0 || !lr.pts[static_cast<size_t>(cls)]) {
        res.reason = "internal: missing realized point";
        return res;
      }
      q[static_cast<size_t>(k)] = *lr.pts[static_cast<size_t>(cls)];
    }
    ModuliTriple m = triple_from_points(q[0], q[1], q[2], q[3]);
    if (bad_modulus(m.w0) || bad_modulus(m.w1) || bad_modulus(m.w2)) {
      res.reason = "TransitFails: new modulus degenerate";
      return res;
    }
    res.TI.moduli[static_cast<size_t>(nt)] = m;
  }
  res.mv = std::move(mv);
  res.ok = true;
  return res;
}

}  // namespace

ITransitResult ideal_transit_2_3(const ITriangulation& TI, int tet, int face,
                                 int branching_choice) {
  const tri::Gluing g = TI.T.gluing(tet, face);
  if (!g.glued()) throw domain_error("IllegalMove", "face is unglued");
  tri::Hamiltonian emptyH;
  tri::MoveResult mv = tri::move_2_3(TI.T, emptyH, tet, face);
  auto branchings = tri::branching_transits(TI.T, TI.b, mv);

  // New tets: C_k locals 0 = apexA (old (tet,face) vertex class), 1 = apexB,
  // 2,3 = shared vertices rem_k.
  std::array<int, 3> sv{};
  {
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != face) sv[static_cast<size_t>(k++)] = v;
  }
  std::vector<std::pair<int, int>> seeds;
  const int base = mv.new_tets[0];
  for (int k = 0; k < 3; ++k) {
    std::array<int, 2> rem{};
    int q = 0;
    for (int i = 0; i < 3; ++i)
      if (i != k) rem[static_cast<size_t>(q++)] = sv[static_cast<size_t>(i)];
    seeds.push_back({(base + k) * 4 + 0, TI.T.vertex_class(tet, face)});
    seeds.push_back({(base + k) * 4 + 1, TI.T.vertex_class(g.tet, g.vmap[static_cast<size_t>(face)])});
    seeds.push_back({(base + k) * 4 + 2, TI.T.vertex_class(tet, rem[0])});
    seeds.push_back({(base + k) * 4 + 3, TI.T.vertex_class(tet, rem[1])});
  }
  return finish_transit(TI, std::move(mv), branchings, branching_choice, {tet, g.tet}, seeds);
}

ITransitResult ideal_transit_3_2(const ITriangulation& TI, int edge_id, int branching_choice) {
  tri::Hamiltonian emptyH;
  tri::MoveResult mv = tri::move_3_2(TI.T, emptyH, edge_id);
  auto branchings = tri::branching_transits(TI.T, TI.b, mv);

  // Reconstruct the ring data the same way move_3_2 did.
  const auto& occ = TI.T.edge_occurrences(edge_id);
  tri::TetEdge e0 = occ[0];
  int other[2], k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != e0.from && v != e0.to) other[k++] = v;
  int t = e0.tet, a = e0.from, b = e0.to, entered = other[1], exit = other[0];
  std::vector<int> region;
  std::vector<std::pair<int, int>> seeds;
  const int nA = mv.new_tets[0], nB = mv.new_tets[1];
  for (int i = 0; i < 3; ++i) {
    region.push_back(t);
    const int iprev = (i + 2) % 3;
    // A locals: 0 = a-class, 1+j = w_j; B locals: 0 = b-class.
    seeds.push_back({nA * 4 + 0, TI.T.vertex_class(t, a)});
    seeds.push_back({nB * 4 + 0, TI.T.vertex_class(t, b)});
    seeds.push_back({nA * 4 + 1 + i, TI.T.vertex_class(t, entered)});
    seeds.push_back({nA * 4 + 1 + iprev, TI.T.vertex_class(t, exit)});
    seeds.push_back({nB * 4 + 1 + i, TI.T.vertex_class(t, entered)});
    seeds.push_back({nB * 4 + 1 + iprev, TI.T.vertex_class(t, exit)});
    const tri::Gluing& gg = TI.T.gluing(t, exit);
    const int nt = gg.tet, na = gg.vmap[static_cast<size_t>(a)], nb2 = gg.vmap[static_cast<size_t>(b)],
              nentered = gg.vmap[static_cast<size_t>(exit)];
    t = nt;
    a = na;
    b = nb2;
    entered = nentered;
    exit = 0 + 1 + 2 + 3 - a - b - entered;
  }
  // dedupe seeds (same key may repeat with the same class)
  return finish_transit(TI, std::move(mv), branchings, branching_choice, region, seeds);
}

ITransitResult ideal_transit_0_2(const ITriangulation& TI, tri::TetFace f1, tri::TetFace f2,
                                 int edge_id, cx free_modulus, int branching_choice) {
  if (bad_modulus(free_modulus)) throw domain_error("DegenerateModulus", "free modulus in {0,1}");
  tri::Hamiltonian emptyH;
  tri::MoveResult mv = tri::move_0_2(TI.T, emptyH, f1, f2, edge_id);
  auto branchings = tri::branching_transits(TI.T, TI.b, mv);
  ITransitResult res;
  if (branchings.empty()) {
    res.reason = "no branching transit exists";
    return res;
  }
  const tri::Branching& nb = branchings[static_cast<size_t>(branching_choice) % branchings.size()];
  res.TI.T = mv.tri;
  res.TI.b = nb;
  res.TI.moduli.resize(static_cast<size_t>(mv.tri.n_tet()));
  for (int t = 0; t < TI.T.n_tet(); ++t) {
    const int nt = mv.tet_map[static_cast<size_t>(t)];
    if (nt >= 0) res.TI.moduli[static_cast<size_t>(nt)] = TI.moduli[static_cast<size_t>(t)];
  }
  // Both new tets receive the same modular triple; their b-orientations are
  // opposite. The triple is anchored on the new branching's w0.
  for (int nt : mv.new_tets) res.TI.moduli[static_cast<size_t>(nt)] = ModuliTriple::from_w0(free_modulus);
  res.mv = std::move(mv);
  res.ok = true;
  return res;
}

double volume(const ITriangulation& TI) {
  double vol = 0.0;
  for (int t = 0; t < TI.T.n_tet(); ++t) {
    const cx w0 = TI.moduli[static_cast<size_t>(t)].w0;
    const double d = w0.imag() == 0.0 ? 0.0 : classical::bloch_wigner(w0);
    vol += tri::b_sign(TI.T, TI.b, t) * d;
  }
  return vol;
}

}  // namespace qhi::decor
