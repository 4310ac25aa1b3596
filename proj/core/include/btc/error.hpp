#pragma once

#include <stdexcept>
#include <string>

namespace btc {

/// Stable error identifiers carried by btc::Error.
enum class errc {
  invalid_label,
  invalid_node,
  invalid_leaf,
  invalid_labeling,
  invalid_pair_member,
  invalid_network,
  invalid_argument,
  no_parent,
  cannot_reduce,
  infeasible,
  label_clash,
  not_a_dag,
  empty_network,
  too_large,
  insufficient_samples,
  parse_error,
};

const char* to_string(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_label: return "invalid-label";
    case errc::invalid_node: return "invalid-node";
    case errc::invalid_leaf: return "invalid-leaf";
    case errc::invalid_labeling: return "invalid-labeling";
    case errc::invalid_pair_member: return "invalid-pair-member";
    case errc::invalid_network: return "invalid-network";
    case errc::invalid_argument: return "invalid-argument";
    case errc::no_parent: return "no-parent";
    case errc::cannot_reduce: return "cannot-reduce";
    case errc::infeasible: return "infeasible";
    case errc::label_clash: return "label-clash";
    case errc::not_a_dag: return "not-a-dag";
    case errc::empty_network: return "empty-network";
    case errc::too_large: return "too-large";
    case errc::insufficient_samples: return "insufficient-samples";
    case errc::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace btc
