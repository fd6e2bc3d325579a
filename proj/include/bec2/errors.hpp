#pragma once

#include <stdexcept>
#include <string>

namespace bec2 {

enum class errc {
  invalid_basis,
  not_normal_ordered,
  ambiguous_minimum,
  degenerate_state,
  not_degenerate,
  unsupported_parameters,
  invalid_state,
  invalid_operator,
  resource_limit,
  invalid_degree,
  negative_probability,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_basis: return "InvalidBasis";
    case errc::not_normal_ordered: return "NotNormalOrdered";
    case errc::ambiguous_minimum: return "AmbiguousMinimum";
    case errc::degenerate_state: return "DegenerateState";
    case errc::not_degenerate: return "NotDegenerate";
    case errc::unsupported_parameters: return "UnsupportedParameters";
    case errc::invalid_state: return "InvalidState";
    case errc::invalid_operator: return "InvalidOperator";
    case errc::resource_limit: return "ResourceLimit";
    case errc::invalid_degree: return "InvalidDegree";
    case errc::negative_probability: return "NegativeProbability";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace bec2
