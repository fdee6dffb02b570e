#pragma once

// Link diagrams (PD codes) and their compilation, via the tunnel
// construction, into distinguished quasi-regular triangulations of (S^3, L)
// and ideal triangulations of the complement.

#include <string>

#include "qhi/triangulation.hpp"

namespace qhi::linkcomp {

struct Crossing {
  std::array<int, 4> arcs{};  // arc labels counterclockwise from the incoming under-strand
};

struct LinkDiagram {
  std::vector<Crossing> crossings;
  int n_arcs = 0;
  int n_regions = 0;
  int n_components = 0;
};

LinkDiagram parse_pd(const std::string& text);

struct CompiledLink {
  tri::Triangulation T;
  tri::Hamiltonian H;
};

// Distinguished quasi-regular triangulation of (S^3, L): the per-crossing
// octahedron pattern (4 tets) plus a two-tet wall per arc, with the selected
// wall rerouted through the two ball vertices.
CompiledLink compile_distinguished(const LinkDiagram& d);

// Ideal triangulation of the link complement: the wall-free tunnel spine
// dualized, with the two ball cusps drilled into the selected component.
tri::Triangulation compile_complement(const LinkDiagram& d);

// Smith-normal-form first homology of a closed triangulation: free rank and
// torsion coefficients.
struct Homology {
  int free_rank = 0;
  std::vector<long long> torsion;
};
Homology first_homology(const tri::Triangulation& T);

}  // namespace qhi::linkcomp
