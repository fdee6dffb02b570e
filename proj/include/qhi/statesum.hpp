#pragma once

// Tensor network of a charged I-triangulation, contraction planning and
// execution, the invariants H_N and K_N, and the cusped state sum.

#include "qhi/qdilog.hpp"

namespace qhi::statesum {

using cyclo::RootContext;

// One tensor per tetrahedron; slot k corresponds to the face opposite the
// k-th branched vertex. Index roles by slot: 0 -> delta, 1 -> beta,
// 2 -> gamma, 3 -> alpha.
struct NetTensor {
  qd::QTensor tensor;
  std::array<int, 4> face_of_slot{-1, -1, -1, -1};
  std::array<bool, 4> input_slot{};  // role of the slot's face for this tet
};

struct TensorNetwork {
  int N = 0;
  std::vector<NetTensor> tets;
  int n_faces = 0;
};

TensorNetwork build_network(const decor::ITriangulation& TI,
                            const std::vector<std::array<int, 3>>& charges,
                            const RootContext& ctx);

struct ContractionPlan {
  // Merge steps reference tensor slots by their current position in a working
  // list; each step merges b into a (a < b), removing b.
  struct Step {
    int a = 0;
    int b = 0;
  };
  std::vector<Step> steps;
  int peak_rank = 0;
  double est_cost = 0.0;  // sum over steps of N^{ra+rb-shared}
};

ContractionPlan plan_contraction(const TensorNetwork& net);

cx contract(const TensorNetwork& net, const ContractionPlan& plan, int threads = 1);

// Full state enumeration over all faces; oracle for small fixtures.
cx contract_naive(const TensorNetwork& net);

// Closed-manifold invariant: N^{-n_0} times the contraction of the
// symmetrized tensors of the idealized triangulation.
struct StateSumResult {
  bool ok = false;
  cx value{0.0};
  std::string reason;
};
StateSumResult H_N(const tri::Triangulation& T, const tri::Branching& b, const decor::Cocycle& z,
                   const std::vector<std::array<int, 3>>& charges, const RootContext& ctx);
StateSumResult K_N(const tri::Triangulation& T, const tri::Branching& b, const decor::Cocycle& z,
                   const std::vector<std::array<int, 3>>& charges, const RootContext& ctx);

// Cusped variant: the raw contraction of a given I-triangulation.
StateSumResult cusped_statesum(const decor::ITriangulation& TI,
                               const std::vector<std::array<int, 3>>& charges,
                               const RootContext& ctx);

// True iff |a| = |b| (relative tol) and (a/b)^{2N} = 1 (tol).
bool compare_up_to_phase(cx a, cx b, int N, double tol = 1e-6);

cx power_2N(cx v, int N);

}  // namespace qhi::statesum
