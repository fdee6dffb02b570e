#pragma once

// Workspace files: a self-describing structured-text format carrying a
// triangulation with its decorations. Complex numbers appear as [re, im].

#include <iosfwd>
#include <optional>
#include <string>

#include "qhi/charge.hpp"
#include "qhi/decor.hpp"

namespace qhi::io {

struct Workspace {
  tri::Triangulation T;
  std::optional<tri::Branching> branching;
  std::optional<tri::Hamiltonian> hamiltonian;
  std::optional<decor::Cocycle> cocycle;
  std::optional<charge::ChargeAssignment> charges;
  std::optional<std::vector<cx>> moduli_w0;  // per tet, for cusped inputs
};

Workspace load(std::istream& in);
Workspace load_file(const std::string& path);
void save(std::ostream& out, const Workspace& ws);
void save_file(const std::string& path, const Workspace& ws);

}  // namespace qhi::io
