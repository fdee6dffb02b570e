#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhi {

using cx = std::complex<double>;

inline constexpr double kEntryTol = 1e-10;   // absolute, on matrix/tensor entries
inline constexpr double kScalarTol = 1e-6;   // relative, on contracted scalars

// Contract violations (bad arguments, illegal moves). Check-style operations
// report through ValidationReport instead of throwing.
class domain_error : public std::runtime_error {
 public:
  domain_error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void fail(std::string code, std::string detail) {
    violations.push_back({std::move(code), std::move(detail)});
  }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  std::string summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& v : violations) {
      s += v.code;
      s += ": ";
      s += v.detail;
      s += '\n';
    }
    return s;
  }
};

}  // namespace qhi
