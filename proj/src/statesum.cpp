#include "qhi/statesum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

namespace qhi::statesum {

namespace {

int modN(long long v, int N) {
  long long r = v % N;
  if (r < 0) r += N;
  return static_cast<int>(r);
}

// Face class ids: one per glued face pair.
std::map<std::pair<int, int>, int> face_ids(const tri::Triangulation& T) {
  std::map<std::pair<int, int>, int> ids;
  int next = 0;
  for (int t = 0; t < T.n_tet(); ++t)
    for (int f = 0; f < 4; ++f) {
      const tri::Gluing& g = T.gluing(t, f);
      if (!g.glued()) throw domain_error("UngluedFace", "state sum needs a closed complex");
      if (ids.count({t, f})) continue;
      ids[{t, f}] = next;
      ids[{g.tet, g.vmap[static_cast<size_t>(f)]}] = next;
      ++next;
    }
  return ids;
}

// Dense intermediate tensor over open faces (each of size N).
struct Dense {
  std::vector<int> faces;
  std::vector<cx> data;

  size_t size() const {
    return data.size();
  }
};

size_t pow_size(int N, size_t rank) {
  size_t s = 1;
  for (size_t i = 0; i < rank; ++i) s *= static_cast<size_t>(N);
  return s;
}

Dense densify(const NetTensor& nt, int N) {
  Dense d;
  d.faces = {nt.face_of_slot[0], nt.face_of_slot[1], nt.face_of_slot[2], nt.face_of_slot[3]};
  d.data.assign(pow_size(N, 4), cx(0.0));
  // slot order (0,1,2,3) <-> indices (delta, beta, gamma, alpha)
  for (int al = 0; al < N; ++al)
    for (int g = 0; g < N; ++g)
      for (int dd = 0; dd < N; ++dd) {
        const int be = modN(g + dd, N);
        d.data[((static_cast<size_t>(dd) * N + be) * N + g) * N + al] = nt.tensor.at(al, g, dd);
      }
  // Self-traces: repeated face ids inside one tetrahedron.
  for (size_t i = 0; i < d.faces.size(); ++i)
    for (size_t j = i + 1; j < d.faces.size(); ++j)
      if (d.faces[i] == d.faces[j]) {
        // trace out slots i and j
        Dense r;
        for (size_t k = 0; k < d.faces.size(); ++k)
          if (k != i && k != j) r.faces.push_back(d.faces[k]);
        r.data.assign(pow_size(N, r.faces.size()), cx(0.0));
        const size_t rank = d.faces.size();
        std::vector<int> idx(rank, 0);
        for (size_t flat = 0; flat < d.data.size(); ++flat) {
          size_t rem = flat;
          for (size_t k = rank; k-- > 0;) {
            idx[k] = static_cast<int>(rem % static_cast<size_t>(N));
            rem /= static_cast<size_t>(N);
          }
          if (idx[i] != idx[j]) continue;
          size_t rflat = 0;
          for (size_t k = 0; k < rank; ++k) {
            if (k == i || k == j) continue;
            rflat = rflat * static_cast<size_t>(N) + static_cast<size_t>(idx[k]);
          }
          r.data[rflat] += d.data[flat];
        }
        return r;  // at most one repeated pair per tetrahedron slot set
      }
  return d;
}

Dense merge(const Dense& A, const Dense& B, int N, int threads) {
  // Shared faces.
  std::vector<size_t> a_shared, b_shared;
  std::vector<size_t> a_only, b_only;
  for (size_t i = 0; i < A.faces.size(); ++i) {
    auto it = std::find(B.faces.begin(), B.faces.end(), A.faces[i]);
    if (it != B.faces.end()) {
      a_shared.push_back(i);
      b_shared.push_back(static_cast<size_t>(it - B.faces.begin()));
    } else {
      a_only.push_back(i);
    }
  }
  for (size_t j = 0; j < B.faces.size(); ++j)
    if (std::find(A.faces.begin(), A.faces.end(), B.faces[j]) == A.faces.end()) b_only.push_back(j);

  Dense R;
  for (size_t i : a_only) R.faces.push_back(A.faces[i]);
  for (size_t j : b_only) R.faces.push_back(B.faces[j]);
  R.data.assign(pow_size(N, R.faces.size()), cx(0.0));

  const size_t na = pow_size(N, a_only.size());
  const size_t nb = pow_size(N, b_only.size());
  const size_t ns = pow_size(N, a_shared.size());

  auto decode = [N](size_t flat, size_t rank, std::vector<int>& out) {
    for (size_t k = rank; k-- > 0;) {
      out[k] = static_cast<int>(flat % static_cast<size_t>(N));
      flat /= static_cast<size_t>(N);
    }
  };

  auto work = [&](size_t ia_begin, size_t ia_end) {
    std::vector<int> ia_idx(a_only.size()), is_idx(a_shared.size()), ib_idx(b_only.size());
    std::vector<int> a_full(A.faces.size()), b_full(B.faces.size());
    for (size_t ia = ia_begin; ia < ia_end; ++ia) {
      decode(ia, a_only.size(), ia_idx);
      for (size_t is = 0; is < ns; ++is) {
        decode(is, a_shared.size(), is_idx);
        for (size_t k = 0; k < a_only.size(); ++k) a_full[a_only[k]] = ia_idx[k];
        for (size_t k = 0; k < a_shared.size(); ++k) a_full[a_shared[k]] = is_idx[k];
        size_t aflat = 0;
        for (size_t k = 0; k < A.faces.size(); ++k)
          aflat = aflat * static_cast<size_t>(N) + static_cast<size_t>(a_full[k]);
        const cx av = A.data[aflat];
        if (av == cx(0.0)) continue;
        for (size_t ib = 0; ib < nb; ++ib) {
          decode(ib, b_only.size(), ib_idx);
          for (size_t k = 0; k < b_only.size(); ++k) b_full[b_only[k]] = ib_idx[k];
          for (size_t k = 0; k < b_shared.size(); ++k) b_full[b_shared[k]] = is_idx[k];
          size_t bflat = 0;
          for (size_t k = 0; k < B.faces.size(); ++k)
            bflat = bflat * static_cast<size_t>(N) + static_cast<size_t>(b_full[k]);
          const cx bv = B.data[bflat];
          if (bv == cx(0.0)) continue;
          R.data[ia * nb + ib] += av * bv;
        }
      }
    }
  };

  if (threads <= 1 || na < 2) {
    work(0, na);
  } else {
    const size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), na);
    std::vector<std::thread> pool;
    const size_t chunk = (na + nthreads - 1) / nthreads;
    for (size_t t = 0; t < nthreads; ++t) {
      const size_t lo = t * chunk;
      const size_t hi = std::min(na, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return R;
}

}  // namespace

TensorNetwork build_network(const decor::ITriangulation& TI,
                            const std::vector<std::array<int, 3>>& charges,
                            const RootContext& ctx) {
  const tri::Triangulation& T = TI.T;
  TensorNetwork net;
  net.N = ctx.N;
  const auto fids = face_ids(T);
  net.n_faces = 0;
  for (const auto& [k, v] : fids) net.n_faces = std::max(net.n_faces, v + 1);

  std::vector<int> in_count(static_cast<size_t>(net.n_faces), 0);
  std::vector<int> out_count(static_cast<size_t>(net.n_faces), 0);
  for (int t = 0; t < T.n_tet(); ++t) {
    NetTensor nt;
    const int sgn = tri::b_sign(T, TI.b, t);
    // Charge pair layout on the tetrahedron's edge pairs.
    nt.tensor = qd::sym_tet_tensor(ctx, TI.moduli[static_cast<size_t>(t)], sgn,
                                   charges[static_cast<size_t>(t)]);
    const tri::FaceIO io = tri::face_io_assignment(T, TI.b, t);
    const auto& o = TI.b.order[static_cast<size_t>(t)];
    for (int k = 0; k < 4; ++k) {
      const int local_face = o[static_cast<size_t>(k)];  // face opposite position k
      nt.face_of_slot[static_cast<size_t>(k)] = fids.at({t, local_face});
      const bool is_in = local_face == io.in[0] || local_face == io.in[1];
      nt.input_slot[static_cast<size_t>(k)] = is_in;
      (is_in ? in_count : out_count)[static_cast<size_t>(nt.face_of_slot[static_cast<size_t>(k)])]++;
    }
    net.tets.push_back(std::move(nt));
  }
  for (int f = 0; f < net.n_faces; ++f)
    if (in_count[static_cast<size_t>(f)] != 1 || out_count[static_cast<size_t>(f)] != 1)
      throw domain_error("FaceRoleMismatch",
                         "face " + std::to_string(f) + " does not have exactly one input and one output role");
  return net;
}

ContractionPlan plan_contraction(const TensorNetwork& net) {
  ContractionPlan plan;
  // Work on face-id multisets.
  std::vector<std::vector<int>> open;
  for (const auto& t : net.tets) {
    std::vector<int> fs(t.face_of_slot.begin(), t.face_of_slot.end());
    // self-paired faces inside one tet contract immediately
    std::sort(fs.begin(), fs.end());
    std::vector<int> reduced;
    for (size_t i = 0; i < fs.size();) {
      if (i + 1 < fs.size() && fs[i] == fs[i + 1]) {
        i += 2;
      } else {
        reduced.push_back(fs[i]);
        ++i;
      }
    }
    open.push_back(reduced);
    plan.peak_rank = std::max(plan.peak_rank, static_cast<int>(reduced.size()));
  }
  std::vector<int> alive(open.size());
  for (size_t i = 0; i < alive.size(); ++i) alive[i] = 1;
  int remaining = static_cast<int>(open.size());
  while (remaining > 1) {
    int best_a = -1, best_b = -1;
    int best_rank = 1 << 30;
    double best_cost = 0.0;
    for (size_t a = 0; a < open.size(); ++a) {
      if (!alive[a]) continue;
      for (size_t b = a + 1; b < open.size(); ++b) {
        if (!alive[b]) continue;
        int shared = 0;
        for (int f : open[a])
          if (std::find(open[b].begin(), open[b].end(), f) != open[b].end()) ++shared;
        const int rank = static_cast<int>(open[a].size() + open[b].size()) - 2 * shared;
        const double cost =
            std::pow(static_cast<double>(net.N),
                     static_cast<double>(open[a].size() + open[b].size() - shared));
        if (rank < best_rank || (rank == best_rank && cost < best_cost)) {
          best_rank = rank;
          best_cost = cost;
          best_a = static_cast<int>(a);
          best_b = static_cast<int>(b);
        }
      }
    }
    plan.steps.push_back({best_a, best_b});
    plan.est_cost += best_cost;
    plan.peak_rank = std::max(plan.peak_rank, best_rank);
    // merge face lists
    std::vector<int> merged;
    for (int f : open[static_cast<size_t>(best_a)])
      if (std::find(open[static_cast<size_t>(best_b)].begin(), open[static_cast<size_t>(best_b)].end(), f) ==
          open[static_cast<size_t>(best_b)].end())
        merged.push_back(f);
    for (int f : open[static_cast<size_t>(best_b)])
      if (std::find(open[static_cast<size_t>(best_a)].begin(), open[static_cast<size_t>(best_a)].end(), f) ==
          open[static_cast<size_t>(best_a)].end())
        merged.push_back(f);
    open[static_cast<size_t>(best_a)] = merged;
    alive[static_cast<size_t>(best_b)] = 0;
    --remaining;
  }
  return plan;
}

cx contract(const TensorNetwork& net, const ContractionPlan& plan, int threads) {
  std::vector<Dense> work;
  work.reserve(net.tets.size());
  for (const auto& t : net.tets) work.push_back(densify(t, net.N));
  std::vector<int> alive(work.size(), 1);
  for (const auto& step : plan.steps) {
    work[static_cast<size_t>(step.a)] =
        merge(work[static_cast<size_t>(step.a)], work[static_cast<size_t>(step.b)], net.N, threads);
    work[static_cast<size_t>(step.b)].data.clear();
    alive[static_cast<size_t>(step.b)] = 0;
  }
  cx result = 1.0;
  for (size_t i = 0; i < work.size(); ++i) {
    if (!alive[i]) continue;
    if (!work[i].faces.empty()) throw domain_error("PlanIncomplete", "open faces after contraction");
    result *= work[i].data.empty() ? cx(1.0) : work[i].data[0];
  }
  return result;
}

cx contract_naive(const TensorNetwork& net) {
  const int N = net.N;
  std::vector<int> state(static_cast<size_t>(net.n_faces), 0);
  cx total = 0.0;
  while (true) {
    cx prod = 1.0;
    for (const auto& t : net.tets) {
      const int dd = state[static_cast<size_t>(t.face_of_slot[0])];
      const int be = state[static_cast<size_t>(t.face_of_slot[1])];
      const int g = state[static_cast<size_t>(t.face_of_slot[2])];
      const int al = state[static_cast<size_t>(t.face_of_slot[3])];
      prod *= t.tensor.entry(al, be, g, dd);
      if (prod == cx(0.0)) break;
    }
    total += prod;
    int k = net.n_faces - 1;
    while (k >= 0 && ++state[static_cast<size_t>(k)] == N) {
      state[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return total;
}

StateSumResult H_N(const tri::Triangulation& T, const tri::Branching& b, const decor::Cocycle& z,
                   const std::vector<std::array<int, 3>>& charges, const RootContext& ctx) {
  StateSumResult res;
  decor::IdealizeResult ide = decor::idealize(T, b, z);
  if (!ide.ok) {
    res.reason = "NotIdealizable: tet " + std::to_string(ide.failed_tet) + ": " + ide.reason;
    return res;
  }
  TensorNetwork net = build_network(ide.TI, charges, ctx);
  ContractionPlan plan = plan_contraction(net);
  cx val = contract(net, plan);
  val *= std::pow(static_cast<double>(ctx.N), -static_cast<double>(T.n_vertices()));
  res.ok = true;
  res.value = val;
  return res;
}

cx power_2N(cx v, int N) { return qd::ipow(v, 2LL * N); }

StateSumResult K_N(const tri::Triangulation& T, const tri::Branching& b, const decor::Cocycle& z,
                   const std::vector<std::array<int, 3>>& charges, const RootContext& ctx) {
  StateSumResult res = H_N(T, b, z, charges, ctx);
  if (res.ok) res.value = power_2N(res.value, ctx.N);
  return res;
}

StateSumResult cusped_statesum(const decor::ITriangulation& TI,
                               const std::vector<std::array<int, 3>>& charges,
                               const RootContext& ctx) {
  StateSumResult res;
  TensorNetwork net = build_network(TI, charges, ctx);
  // The cusped fixtures are tiny (two tetrahedra) but run at large N; a
  // single sparse pairwise pass avoids the dense rank-4 intermediates.
  if (net.tets.size() == 2) {
    const auto& A = net.tets[0];
    const auto& B = net.tets[1];
    bool all_shared = true;
    for (int k = 0; k < 4; ++k) {
      bool found = false;
      for (int l = 0; l < 4; ++l)
        if (B.face_of_slot[static_cast<size_t>(l)] == A.face_of_slot[static_cast<size_t>(k)]) found = true;
      all_shared = all_shared && found;
    }
    std::array<int, 4> bslot{};  // B slot holding the same face as A slot k
    if (all_shared) {
      bool distinct = true;
      std::array<bool, 4> used{};
      for (int k = 0; k < 4; ++k) {
        bslot[static_cast<size_t>(k)] = -1;
        for (int l = 0; l < 4; ++l)
          if (!used[static_cast<size_t>(l)] &&
              B.face_of_slot[static_cast<size_t>(l)] == A.face_of_slot[static_cast<size_t>(k)]) {
            bslot[static_cast<size_t>(k)] = l;
            used[static_cast<size_t>(l)] = true;
            break;
          }
        if (bslot[static_cast<size_t>(k)] < 0) distinct = false;
      }
      // Faces must be four distinct classes for this fast path.
      std::array<int, 4> fs = A.face_of_slot;
      std::sort(fs.begin(), fs.end());
      for (int k = 0; k + 1 < 4; ++k)
        if (fs[static_cast<size_t>(k)] == fs[static_cast<size_t>(k + 1)]) distinct = false;
      if (distinct) {
        const int N = ctx.N;
        cx total = 0.0;
        // A slots (delta, beta, gamma, alpha) = values (d, g+d, g, al)
        for (int al = 0; al < N; ++al)
          for (int g = 0; g < N; ++g)
            for (int d = 0; d < N; ++d) {
              const cx av = A.tensor.at(al, g, d);
              if (av == cx(0.0)) continue;
              const int vals[4] = {d, modN(g + d, N), g, al};
              int bvals[4];
              for (int k = 0; k < 4; ++k) bvals[bslot[static_cast<size_t>(k)]] = vals[k];
              // B slots are (delta, beta, gamma, alpha) of B's own indices
              const cx bv = B.tensor.entry(bvals[3], bvals[1], bvals[2], bvals[0]);
              if (bv == cx(0.0)) continue;
              total += av * bv;
            }
        res.ok = true;
        res.value = total;
        return res;
      }
    }
  }
  ContractionPlan plan = plan_contraction(net);
  res.value = contract(net, plan);
  res.ok = true;
  return res;
}

bool compare_up_to_phase(cx a, cx b, int N, double tol) {
  if (std::abs(b) == 0.0) {
    if (std::abs(a) == 0.0) return true;
    throw domain_error("DivisionByZero", "phase comparison against zero");
  }
  if (std::abs(std::abs(a) - std::abs(b)) > tol * std::abs(a)) return false;
  const cx ratio = a / b;
  return std::abs(qd::ipow(ratio / std::abs(ratio), 2LL * N) - 1.0) <= tol;
}

}  // namespace qhi::statesum
