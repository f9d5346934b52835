#pragma once

#include <stdexcept>
#include <string>

namespace dercat {

enum class errc {
  syntax_error,
  semantic_error,
  ring_mismatch,
  ambient_mismatch,
  not_monomial,
  not_maximal,
  not_certifiable,
  not_tabulated,
  incomplete_ambient,
  unsupported_ring,
  unsupported_ideal,
  not_a_complex,
  condition_disagreement,
  precondition_failed,
  computation_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::syntax_error: return "SyntaxError";
    case errc::semantic_error: return "SemanticError";
    case errc::ring_mismatch: return "RingMismatch";
    case errc::ambient_mismatch: return "AmbientMismatch";
    case errc::not_monomial: return "NotMonomial";
    case errc::not_maximal: return "NotMaximal";
    case errc::not_certifiable: return "NotCertifiable";
    case errc::not_tabulated: return "NotTabulated";
    case errc::incomplete_ambient: return "IncompleteAmbient";
    case errc::unsupported_ring: return "UnsupportedRing";
    case errc::unsupported_ideal: return "UnsupportedIdeal";
    case errc::not_a_complex: return "NotAComplex";
    case errc::condition_disagreement: return "ConditionDisagreement";
    case errc::precondition_failed: return "PreconditionFailed";
    case errc::computation_error: return "ComputationError";
  }
  return "Error";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace dercat
