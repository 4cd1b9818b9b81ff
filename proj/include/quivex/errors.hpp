#pragma once

#include <stdexcept>
#include <string>

namespace quivex {

// Every domain failure carries one of these codes so callers (and the CLI)
// can dispatch without parsing messages.
enum class errc {
  // quivers with potential
  loop_arrow,
  two_cycle_arrows,
  non_composable_cycle,
  unknown_arrow_in_potential,
  unknown_vertex,
  unsupported_reduction,
  bad_subset,
  // surfaces
  incompatible,
  has_punctures,
  no_boundary,
  enhancement_violated,
  kappa_too_small,
  not_simple_weights,
  infeasible_weights,
  not_a_diagonal,
  degenerate_flip,
  not_a_refinement,
  no_witness,
  // torus
  non_unimodular,
  non_normal_form,
  // exchange graphs
  operator_failure,
  truncated,
  // quotient seeds
  support_violation,
  no_admissible_refinement,
  key_collision,
  // cli
  usage,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::loop_arrow: return "LoopArrow";
    case errc::two_cycle_arrows: return "TwoCycleArrows";
    case errc::non_composable_cycle: return "NonComposableCycle";
    case errc::unknown_arrow_in_potential: return "UnknownArrowInPotential";
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::unsupported_reduction: return "UnsupportedReduction";
    case errc::bad_subset: return "BadSubset";
    case errc::incompatible: return "Incompatible";
    case errc::has_punctures: return "HasPunctures";
    case errc::no_boundary: return "NoBoundary";
    case errc::enhancement_violated: return "EnhancementViolated";
    case errc::kappa_too_small: return "KappaTooSmall";
    case errc::not_simple_weights: return "NotSimpleWeights";
    case errc::infeasible_weights: return "InfeasibleWeights";
    case errc::not_a_diagonal: return "NotADiagonal";
    case errc::degenerate_flip: return "DegenerateFlip";
    case errc::not_a_refinement: return "NotARefinement";
    case errc::no_witness: return "NoWitness";
    case errc::non_unimodular: return "NonUnimodular";
    case errc::non_normal_form: return "NonNormalForm";
    case errc::operator_failure: return "OperatorFailure";
    case errc::truncated: return "Truncated";
    case errc::support_violation: return "SupportViolation";
    case errc::no_admissible_refinement: return "NoAdmissibleRefinement";
    case errc::key_collision: return "KeyCollision";
    case errc::usage: return "UsageError";
  }
  return "Unknown";
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

}  // namespace quivex
