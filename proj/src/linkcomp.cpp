#include "qhi/linkcomp.hpp"

#include "qhi/intmat.hpp"

namespace qhi::linkcomp {

LinkDiagram parse_pd(const std::string& text) {
  (void)text;
  throw domain_error("NotImplemented", "parse_pd pending");
}

CompiledLink compile_distinguished(const LinkDiagram& d) {
  (void)d;
  throw domain_error("NotImplemented", "compile_distinguished pending");
}

tri::Triangulation compile_complement(const LinkDiagram& d) {
  (void)d;
  throw domain_error("NotImplemented", "compile_complement pending");
}

Homology first_homology(const tri::Triangulation& T) {
  (void)T;
  throw domain_error("NotImplemented", "first_homology pending");
}

}  // namespace qhi::linkcomp
