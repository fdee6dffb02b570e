#include "qhi/triangulation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace qhi::tri {

namespace {

// (a,b) with a<b -> 0..5: (01)(02)(03)(12)(13)(23)
int pair6(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a == 0) return b - 1;
  if (a == 1) return b + 1;
  return 5;
}

int perm_parity(const std::array<int, 4>& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

struct UnionFind {
  std::vector<int> parent;
  std::vector<int> sign;  // sign relative to parent

  explicit UnionFind(int n) : parent(n), sign(n, 1) { std::iota(parent.begin(), parent.end(), 0); }

  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, 1};
    auto [root, s] = find(parent[x]);
    parent[x] = root;
    sign[x] *= s;
    return {root, sign[x]};
  }

  // Unites with relation: x = rel * y.
  void unite(int x, int y, int rel) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    if (rx == ry) return;
    parent[ry] = rx;
    sign[ry] = sx * rel * sy;
  }
};

}  // namespace

void Triangulation::glue_faces(int t1, int f1, int t2, int f2, const std::array<int, 4>& m) {
  if (m[f1] != f2) throw domain_error("BadGluing", "vertex map must send the opposite vertex to the partner face");
  Gluing g1{t2, m};
  std::array<int, 4> inv{};
  for (int v = 0; v < 4; ++v) inv[m[v]] = v;
  Gluing g2{t1, inv};
  glue_[static_cast<size_t>(t1)][static_cast<size_t>(f1)] = g1;
  glue_[static_cast<size_t>(t2)][static_cast<size_t>(f2)] = g2;
  rebuild();
}

void Triangulation::unglue(int tet, int face) {
  const Gluing g = glue_[static_cast<size_t>(tet)][static_cast<size_t>(face)];
  if (g.glued()) glue_[static_cast<size_t>(g.tet)][static_cast<size_t>(g.vmap[face])] = Gluing{};
  glue_[static_cast<size_t>(tet)][static_cast<size_t>(face)] = Gluing{};
  rebuild();
}

void Triangulation::rebuild() {
  const int T = n_tet();
  // --- edge classes with relative directions ---
  UnionFind uf(T * 6);
  for (int t = 0; t < T; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = glue_[static_cast<size_t>(t)][static_cast<size_t>(f)];
      if (!g.glued()) continue;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          if (a == f || b == f) continue;
          const int ia = g.vmap[a], ib = g.vmap[b];
          const int rel = ia < ib ? 1 : -1;
          uf.unite(t * 6 + pair6(a, b), g.tet * 6 + pair6(ia, ib), rel);
        }
    }
  edge_id_.assign(static_cast<size_t>(T), {});
  edge_dir_.assign(static_cast<size_t>(T), {});
  std::map<int, int> root_to_id;
  edge_occ_.clear();
  for (int t = 0; t < T; ++t)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        auto [root, s] = uf.find(t * 6 + pair6(a, b));
        auto it = root_to_id.find(root);
        int id;
        if (it == root_to_id.end()) {
          id = static_cast<int>(root_to_id.size());
          root_to_id.emplace(root, id);
          edge_occ_.emplace_back();
        } else {
          id = it->second;
        }
        edge_id_[static_cast<size_t>(t)][static_cast<size_t>(a)][static_cast<size_t>(b)] = id;
        edge_id_[static_cast<size_t>(t)][static_cast<size_t>(b)][static_cast<size_t>(a)] = id;
        edge_dir_[static_cast<size_t>(t)][static_cast<size_t>(a)][static_cast<size_t>(b)] = s;
        edge_dir_[static_cast<size_t>(t)][static_cast<size_t>(b)][static_cast<size_t>(a)] = -s;
        edge_occ_[static_cast<size_t>(id)].push_back({t, std::min(a, b), std::max(a, b)});
      }
  n_edges_ = static_cast<int>(root_to_id.size());

  // --- vertex classes ---
  UnionFind vf(T * 4);
  for (int t = 0; t < T; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = glue_[static_cast<size_t>(t)][static_cast<size_t>(f)];
      if (!g.glued()) continue;
      for (int v = 0; v < 4; ++v)
        if (v != f) vf.unite(t * 4 + v, g.tet * 4 + g.vmap[v], 1);
    }
  vertex_id_.assign(static_cast<size_t>(T), {});
  std::map<int, int> vroot_to_id;
  for (int t = 0; t < T; ++t)
    for (int v = 0; v < 4; ++v) {
      auto [root, s] = vf.find(t * 4 + v);
      auto it = vroot_to_id.find(root);
      int id;
      if (it == vroot_to_id.end()) {
        id = static_cast<int>(vroot_to_id.size());
        vroot_to_id.emplace(root, id);
      } else {
        id = it->second;
      }
      vertex_id_[static_cast<size_t>(t)][static_cast<size_t>(v)] = id;
    }
  n_vertices_ = static_cast<int>(vroot_to_id.size());

  // --- face count ---
  int glued = 0, unglued = 0;
  for (int t = 0; t < T; ++t)
    for (int f = 0; f < 4; ++f)
      glue_[static_cast<size_t>(t)][static_cast<size_t>(f)].glued() ? ++glued : ++unglued;
  n_faces_ = glued / 2 + unglued;

  // --- edge link closure ---
  edge_closed_.assign(static_cast<size_t>(n_edges_), 0);
  std::vector<char> visited_here;
  for (int e = 0; e < n_edges_; ++e) {
    const auto& occ = edge_occ_[static_cast<size_t>(e)];
    if (occ.empty()) continue;
    // Walk the fan starting from occ[0] through one adjacent face.
    const TetEdge start = occ[0];
    int other[2];
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != start.from && v != start.to) other[k++] = v;
    int t = start.tet, a = start.from, b = start.to, exit_face = other[0];
    size_t steps = 0;
    bool closed = false;
    while (steps <= 2 * occ.size()) {
      const Gluing& g = glue_[static_cast<size_t>(t)][static_cast<size_t>(exit_face)];
      if (!g.glued()) break;
      const int nt = g.tet, na = g.vmap[a], nb = g.vmap[b], entered = g.vmap[exit_face];
      int next_exit = -1;
      for (int v = 0; v < 4; ++v)
        if (v != na && v != nb && v != entered) next_exit = v;
      t = nt;
      a = na;
      b = nb;
      exit_face = next_exit;
      ++steps;
      if (t == start.tet && std::min(a, b) == start.from && std::max(a, b) == start.to &&
          exit_face == other[0]) {
        closed = true;
        break;
      }
    }
    edge_closed_[static_cast<size_t>(e)] = closed && steps == occ.size() ? 1 : 0;
  }
}

int Triangulation::edge_class(int tet, int a, int b) const {
  return edge_id_[static_cast<size_t>(tet)][static_cast<size_t>(a)][static_cast<size_t>(b)];
}
int Triangulation::edge_dir(int tet, int a, int b) const {
  return edge_dir_[static_cast<size_t>(tet)][static_cast<size_t>(a)][static_cast<size_t>(b)];
}
int Triangulation::vertex_class(int tet, int v) const {
  return vertex_id_[static_cast<size_t>(tet)][static_cast<size_t>(v)];
}

std::pair<int, int> Triangulation::edge_endpoints(int edge_id) const {
  const TetEdge rep = edge_occ_[static_cast<size_t>(edge_id)].front();
  const int d = edge_dir(rep.tet, rep.from, rep.to);
  const int va = vertex_class(rep.tet, rep.from);
  const int vb = vertex_class(rep.tet, rep.to);
  return d > 0 ? std::make_pair(va, vb) : std::make_pair(vb, va);
}

int Triangulation::vertex_link_euler(int vertex_id) const {
  const int T = n_tet();
  // Corners.
  int corners = 0;
  for (int t = 0; t < T; ++t)
    for (int v = 0; v < 4; ++v)
      if (vertex_class(t, v) == vertex_id) ++corners;
  // Link edges: corner sides (t, v, f) with f != v, paired across gluings.
  int paired = 0, boundary = 0;
  for (int t = 0; t < T; ++t)
    for (int v = 0; v < 4; ++v) {
      if (vertex_class(t, v) != vertex_id) continue;
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        glue_[static_cast<size_t>(t)][static_cast<size_t>(f)].glued() ? ++paired : ++boundary;
      }
    }
  const int link_edges = paired / 2 + boundary;
  // Link vertices: edge-end classes at this vertex. End = directed (t, far, v).
  UnionFind ef(n_tet() * 12);
  auto end_node = [](int t, int far, int v) {
    int k = far * 4 + v;  // 16 slots, 12 used
    static const int compress[16] = {-1, 0, 1, 2, 3, -1, 4, 5, 6, 7, -1, 8, 9, 10, 11, -1};
    return t * 12 + compress[k];
  };
  for (int t = 0; t < T; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = glue_[static_cast<size_t>(t)][static_cast<size_t>(f)];
      if (!g.glued()) continue;
      for (int far = 0; far < 4; ++far)
        for (int v = 0; v < 4; ++v) {
          if (far == v || far == f || v == f) continue;
          ef.unite(end_node(t, far, v), end_node(g.tet, g.vmap[far], g.vmap[v]), 1);
        }
    }
  std::set<int> roots;
  for (int t = 0; t < T; ++t)
    for (int far = 0; far < 4; ++far)
      for (int v = 0; v < 4; ++v) {
        if (far == v) continue;
        if (vertex_class(t, v) != vertex_id) continue;
        roots.insert(ef.find(end_node(t, far, v)).first);
      }
  const int link_vertices = static_cast<int>(roots.size());
  return link_vertices - link_edges + corners;
}

ValidationReport Triangulation::validate() const {
  ValidationReport rep;
  const int T = n_tet();
  for (int t = 0; t < T; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = glue_[static_cast<size_t>(t)][static_cast<size_t>(f)];
      if (!g.glued()) {
        rep.fail("UngluedFace", "tet " + std::to_string(t) + " face " + std::to_string(f));
        continue;
      }
      if (g.vmap[f] < 0 || g.vmap[f] > 3) {
        rep.fail("BadGluing", "invalid vertex map");
        continue;
      }
      // involution
      const Gluing& back = glue_[static_cast<size_t>(g.tet)][static_cast<size_t>(g.vmap[f])];
      bool symmetric = back.glued() && back.tet == t;
      if (symmetric)
        for (int v = 0; v < 4; ++v)
          if (back.vmap[g.vmap[v]] != v) symmetric = false;
      if (!symmetric)
        rep.fail("InvolutionFailure", "tet " + std::to_string(t) + " face " + std::to_string(f));
      if (g.tet == t && g.vmap[f] == f) {
        bool identity = true;
        for (int v = 0; v < 4; ++v)
          if (g.vmap[v] != v) identity = false;
        if (identity) rep.fail("SelfGluedFace", "face glued to itself with identity map");
      }
    }
  if (!rep.ok()) return rep;

  for (int e = 0; e < n_edges_; ++e)
    if (!edge_closed_[static_cast<size_t>(e)])
      rep.fail("OpenEdgeLink", "edge class " + std::to_string(e));

  if (!ideal_) {
    if (euler_characteristic() != 0)
      rep.fail("EulerCharacteristic",
               "expected 0, got " + std::to_string(euler_characteristic()));
    if (n_edges_ - n_vertices_ != n_tet())
      rep.fail("EdgeVertexCount", "edges - vertices != tetrahedra");
    for (int v = 0; v < n_vertices_; ++v)
      if (vertex_link_euler(v) != 2)
        rep.fail("VertexLink", "vertex " + std::to_string(v) + " link is not a sphere (chi=" +
                                   std::to_string(vertex_link_euler(v)) + ")");
  } else {
    for (int v = 0; v < n_vertices_; ++v) {
      const int chi = vertex_link_euler(v);
      if (chi != 0 && chi != 2)
        rep.fail("VertexLink", "vertex " + std::to_string(v) + " link chi=" + std::to_string(chi));
    }
  }
  return rep;
}

bool Triangulation::is_quasi_regular() const {
  for (int e = 0; e < n_edges_; ++e) {
    const TetEdge rep = edge_occ_[static_cast<size_t>(e)].front();
    if (vertex_class(rep.tet, rep.from) == vertex_class(rep.tet, rep.to)) return false;
  }
  return true;
}

bool Triangulation::orient() {
  const int T = n_tet();
  orient_.assign(static_cast<size_t>(T), 0);
  for (int seed = 0; seed < T; ++seed) {
    if (orient_[static_cast<size_t>(seed)] != 0) continue;
    orient_[static_cast<size_t>(seed)] = 1;
    std::vector<int> stack{seed};
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = glue_[static_cast<size_t>(t)][static_cast<size_t>(f)];
        if (!g.glued()) continue;
        const int need = -perm_parity(g.vmap) * orient_[static_cast<size_t>(t)];
        int& o = orient_[static_cast<size_t>(g.tet)];
        if (o == 0) {
          o = need;
          stack.push_back(g.tet);
        } else if (o != need) {
          return false;
        }
      }
    }
  }
  return true;
}

bool Triangulation::orientation_consistent(std::string* why) const {
  if (static_cast<int>(orient_.size()) != n_tet()) {
    if (why) *why = "orientation not assigned";
    return false;
  }
  for (int t = 0; t < n_tet(); ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = glue_[static_cast<size_t>(t)][static_cast<size_t>(f)];
      if (!g.glued()) continue;
      if (perm_parity(g.vmap) * orient_[static_cast<size_t>(t)] * orient_[static_cast<size_t>(g.tet)] != -1) {
        if (why)
          *why = "gluing tet " + std::to_string(t) + " face " + std::to_string(f) +
                 " is orientation-incompatible";
        return false;
      }
    }
  return true;
}

void Triangulation::reverse_orientation() {
  for (auto& o : orient_) o = -o;
}

std::string Triangulation::canonical_string() const {
  const int T = n_tet();
  std::array<int, 4> perm{0, 1, 2, 3};
  std::string best;
  std::vector<std::array<int, 4>> seeds;
  std::sort(perm.begin(), perm.end());
  do seeds.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  for (int start = 0; start < T; ++start) {
    for (const auto& rho : seeds) {
      // label[t] = new id; sigma[t] = map old local -> new local.
      std::vector<int> label(static_cast<size_t>(T), -1);
      std::vector<std::array<int, 4>> sigma(static_cast<size_t>(T));
      std::vector<int> order;  // old ids in new order
      label[static_cast<size_t>(start)] = 0;
      sigma[static_cast<size_t>(start)] = rho;
      order.push_back(start);
      std::ostringstream enc;
      for (size_t pos = 0; pos < order.size(); ++pos) {
        const int t = order[pos];
        // process faces in new-label order
        std::array<int, 4> old_face_of_new{};
        for (int v = 0; v < 4; ++v) old_face_of_new[static_cast<size_t>(sigma[static_cast<size_t>(t)][static_cast<size_t>(v)])] = v;
        for (int nf = 0; nf < 4; ++nf) {
          const int f = old_face_of_new[static_cast<size_t>(nf)];
          const Gluing& g = glue_[static_cast<size_t>(t)][static_cast<size_t>(f)];
          if (!g.glued()) {
            enc << "b;";
            continue;
          }
          if (label[static_cast<size_t>(g.tet)] == -1) {
            label[static_cast<size_t>(g.tet)] = static_cast<int>(order.size());
            // new labeling of partner: sigma'(m[v]) = sigma(v)
            std::array<int, 4>& sp = sigma[static_cast<size_t>(g.tet)];
            for (int v = 0; v < 4; ++v) sp[static_cast<size_t>(g.vmap[v])] = sigma[static_cast<size_t>(t)][static_cast<size_t>(v)];
            order.push_back(g.tet);
          }
          enc << label[static_cast<size_t>(g.tet)] << ':';
          const auto& sp = sigma[static_cast<size_t>(g.tet)];
          for (int nv = 0; nv < 4; ++nv) {
            // image of new vertex nv of t under the gluing, in new labels
            const int v = [&] {
              for (int w = 0; w < 4; ++w)
                if (sigma[static_cast<size_t>(t)][static_cast<size_t>(w)] == nv) return w;
              return -1;
            }();
            enc << sp[static_cast<size_t>(g.vmap[static_cast<size_t>(v)])];
          }
          enc << ';';
        }
      }
      if (order.size() != static_cast<size_t>(T)) {
        // disconnected: canonicalize components jointly via start iteration.
        continue;
      }
      std::string s = enc.str();
      if (best.empty() || s < best) best = s;
    }
  }
  return best.empty() ? std::string("disconnected") : best;
}

// ---------------------------------------------------------------------------

int Branching::position(int tet, int local_vertex) const {
  const auto& o = order[static_cast<size_t>(tet)];
  for (int k = 0; k < 4; ++k)
    if (o[static_cast<size_t>(k)] == local_vertex) return k;
  return -1;
}

TetEdge Branching::edge(int tet, int pair, bool primed) const {
  const auto& o = order[static_cast<size_t>(tet)];
  auto v = [&](int k) { return o[static_cast<size_t>(k)]; };
  switch (pair) {
    case 0: return primed ? TetEdge{tet, v(2), v(3)} : TetEdge{tet, v(0), v(1)};
    case 1: return primed ? TetEdge{tet, v(0), v(3)} : TetEdge{tet, v(1), v(2)};
    default: return primed ? TetEdge{tet, v(1), v(3)} : TetEdge{tet, v(0), v(2)};
  }
}

int Branching::pair_of(int tet, int a, int b) const {
  const int pa = position(tet, a), pb = position(tet, b);
  const int lo = std::min(pa, pb), hi = std::max(pa, pb);
  if ((lo == 0 && hi == 1) || (lo == 2 && hi == 3)) return 0;
  if ((lo == 1 && hi == 2) || (lo == 0 && hi == 3)) return 1;
  return 2;
}

ValidationReport validate_branching(const Triangulation& T, const Branching& b) {
  ValidationReport rep;
  if (b.order.size() != static_cast<size_t>(T.n_tet())) {
    rep.fail("BranchingSize", "order list does not match tetrahedron count");
    return rep;
  }
  std::vector<int> dir(static_cast<size_t>(T.n_edges()), 0);
  for (int t = 0; t < T.n_tet(); ++t) {
    for (int a = 0; a < 4; ++a)
      for (int bb = a + 1; bb < 4; ++bb) {
        const int lo_first = b.position(t, a) < b.position(t, bb) ? 1 : -1;
        // branching direction a->b iff position(a) < position(b)
        const int class_dir = lo_first * T.edge_dir(t, a, bb);
        int& d = dir[static_cast<size_t>(T.edge_class(t, a, bb))];
        if (d == 0)
          d = class_dir;
        else if (d != class_dir)
          rep.fail("EdgeOrientationConflict",
                   "edge class " + std::to_string(T.edge_class(t, a, bb)));
      }
  }
  return rep;
}

Branching total_order_branching(const Triangulation& T, const std::vector<int>& vertex_order) {
  if (!T.is_quasi_regular()) throw domain_error("NotQuasiRegular", "total-order branchings need quasi-regular T");
  std::vector<int> rank(static_cast<size_t>(T.n_vertices()));
  for (size_t i = 0; i < vertex_order.size(); ++i) rank[static_cast<size_t>(vertex_order[i])] = static_cast<int>(i);
  Branching b;
  b.order.resize(static_cast<size_t>(T.n_tet()));
  for (int t = 0; t < T.n_tet(); ++t) {
    std::array<int, 4> o{0, 1, 2, 3};
    std::sort(o.begin(), o.end(), [&](int x, int y) {
      return rank[static_cast<size_t>(T.vertex_class(t, x))] < rank[static_cast<size_t>(T.vertex_class(t, y))];
    });
    b.order[static_cast<size_t>(t)] = o;
  }
  return b;
}

namespace {

bool try_orders(const Triangulation& T, int t, Branching& b, std::vector<int>& dir);

bool assign_tet(const Triangulation& T, int t, const std::array<int, 4>& order, Branching& b,
                std::vector<int>& dir) {
  std::vector<std::pair<int, int>> touched;
  auto pos = [&](int v) {
    for (int k = 0; k < 4; ++k)
      if (order[static_cast<size_t>(k)] == v) return k;
    return -1;
  };
  bool ok = true;
  for (int a = 0; a < 4 && ok; ++a)
    for (int bb = a + 1; bb < 4 && ok; ++bb) {
      const int lo_first = pos(a) < pos(bb) ? 1 : -1;
      const int class_dir = lo_first * T.edge_dir(t, a, bb);
      int& d = dir[static_cast<size_t>(T.edge_class(t, a, bb))];
      if (d == 0) {
        d = class_dir;
        touched.push_back({T.edge_class(t, a, bb), 0});
      } else if (d != class_dir) {
        ok = false;
      }
    }
  if (ok) {
    b.order[static_cast<size_t>(t)] = order;
    if (try_orders(T, t + 1, b, dir)) return true;
  }
  for (auto& [e, old] : touched) dir[static_cast<size_t>(e)] = old;
  return false;
}

bool try_orders(const Triangulation& T, int t, Branching& b, std::vector<int>& dir) {
  if (t == T.n_tet()) return true;
  std::array<int, 4> order{0, 1, 2, 3};
  do {
    if (assign_tet(T, t, order, b, dir)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace

std::optional<Branching> find_branching(const Triangulation& T) {
  Branching b;
  b.order.resize(static_cast<size_t>(T.n_tet()));
  std::vector<int> dir(static_cast<size_t>(T.n_edges()), 0);
  if (try_orders(T, 0, b, dir)) return b;
  return std::nullopt;
}

int b_sign(const Triangulation& T, const Branching& b, int tet) {
  if (static_cast<int>(T.orientation().size()) != T.n_tet())
    throw domain_error("InconsistentOrientation", "triangulation has no orientation assigned");
  std::string why;
  if (!T.orientation_consistent(&why)) throw domain_error("InconsistentOrientation", why);
  return perm_parity(b.order[static_cast<size_t>(tet)]) * T.orientation()[static_cast<size_t>(tet)];
}

FaceIO face_io_assignment(const Triangulation& T, const Branching& b, int tet) {
  // Faces labelled by the opposite vertex *position* in the branching order.
  // For *_b = +1 the faces opposite positions 1 and 3 point inwards; the
  // parity classes swap for *_b = -1. Frozen by the pentagon identity; see
  // the statesum convention regression test.
  const auto& o = b.order[static_cast<size_t>(tet)];
  const int s = b_sign(T, b, tet);
  auto face_opp_pos = [&](int k) { return o[static_cast<size_t>(k)]; };
  FaceIO io;
  if (s > 0) {
    io.in = {face_opp_pos(1), face_opp_pos(3)};
    io.out = {face_opp_pos(0), face_opp_pos(2)};
  } else {
    io.in = {face_opp_pos(0), face_opp_pos(2)};
    io.out = {face_opp_pos(1), face_opp_pos(3)};
  }
  return io;
}

// ---------------------------------------------------------------------------

ValidationReport validate_hamiltonian(const Triangulation& T, const Hamiltonian& H) {
  ValidationReport rep;
  std::vector<int> deg(static_cast<size_t>(T.n_vertices()), 0);
  for (int e : H.edges) {
    auto [va, vb] = T.edge_endpoints(e);
    if (va == vb) rep.fail("LoopEdgeInH", "edge " + std::to_string(e));
    ++deg[static_cast<size_t>(va)];
    ++deg[static_cast<size_t>(vb)];
  }
  for (int v = 0; v < T.n_vertices(); ++v)
    if (deg[static_cast<size_t>(v)] != 2)
      rep.fail("NotHamiltonian", "vertex " + std::to_string(v) + " has H-degree " +
                                     std::to_string(deg[static_cast<size_t>(v)]));
  return rep;
}

int hamiltonian_component_count(const Triangulation& T, const Hamiltonian& H) {
  std::vector<int> parent(static_cast<size_t>(T.n_vertices()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); };
  for (int e : H.edges) {
    auto [va, vb] = T.edge_endpoints(e);
    parent[static_cast<size_t>(find(va))] = find(vb);
  }
  std::set<int> roots;
  for (int v = 0; v < T.n_vertices(); ++v) roots.insert(find(v));
  return static_cast<int>(roots.size());
}

Triangulation four_simplex_boundary() {
  Triangulation T(5, false);
  auto locals = [](int omit) {
    std::vector<int> v;
    for (int g = 0; g < 5; ++g)
      if (g != omit) v.push_back(g);
    return v;  // locals 0..3 -> globals ascending
  };
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      // Tets i and j share the face with globals {0..4} - {i,j}.
      const auto li = locals(i), lj = locals(j);
      auto local_of = [](const std::vector<int>& l, int g) {
        for (int k = 0; k < 4; ++k)
          if (l[static_cast<size_t>(k)] == g) return k;
        return -1;
      };
      std::array<int, 4> m{};
      const int fi = local_of(li, j);  // face of tet i opposite the vertex that is global j
      for (int k = 0; k < 4; ++k) {
        const int g = li[static_cast<size_t>(k)];
        m[static_cast<size_t>(k)] = g == j ? local_of(lj, i) : local_of(lj, g);
      }
      (void)fi;
      T.glue_faces(i, local_of(li, j), j, local_of(lj, i), m);
    }
  T.orient();
  return T;
}

Hamiltonian four_simplex_h_cycle(const Triangulation& T) {
  // Vertex class of global vertex g: global g appears in tet 0 (omitting 0)
  // unless g == 0; use tets to locate classes. Tet i has globals {0..4}-{i},
  // locals ascending.
  auto vclass = [&](int g) {
    const int t = g == 0 ? 1 : 0;
    int local = 0;
    int k = 0;
    for (int gg = 0; gg < 5; ++gg) {
      if (gg == (g == 0 ? 1 : 0)) continue;
      if (gg == g) {
        local = k;
        break;
      }
      ++k;
    }
    return T.vertex_class(t, local);
  };
  (void)vclass;
  // Edge {a,b} (globals) found in any tet omitting neither: tet omit c with
  // c not in {a,b}.
  auto edge_of = [&](int a, int b) {
    int omit = 0;
    while (omit == a || omit == b) ++omit;
    // locals of a,b in tet omit
    auto local_of = [&](int g) {
      int k = 0;
      for (int gg = 0; gg < 5; ++gg) {
        if (gg == omit) continue;
        if (gg == g) return k;
        ++k;
      }
      return -1;
    };
    return T.edge_class(omit, local_of(a), local_of(b));
  };
  Hamiltonian H;
  H.edges = {edge_of(0, 1), edge_of(1, 2), edge_of(2, 3), edge_of(3, 4), edge_of(0, 4)};
  return H;
}

}  // namespace qhi::tri
