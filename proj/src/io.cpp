#include "qhi/io.hpp"

namespace qhi::io {

Workspace load(std::istream& in) {
  (void)in;
  throw domain_error("NotImplemented", "load pending");
}
Workspace load_file(const std::string& path) {
  (void)path;
  throw domain_error("NotImplemented", "load_file pending");
}
void save(std::ostream& out, const Workspace& ws) {
  (void)out;
  (void)ws;
  throw domain_error("NotImplemented", "save pending");
}
void save_file(const std::string& path, const Workspace& ws) {
  (void)path;
  (void)ws;
  throw domain_error("NotImplemented", "save_file pending");
}

}  // namespace qhi::io
