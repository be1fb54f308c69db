#pragma once

#include "triloop/loop.hpp"

#include <cstdint>
#include <vector>

namespace triloop {

// Concrete run of a loop: states[0] is the initial state, guard_holds[i]
// tells whether the guard admits another step from states[i].  The run
// stops at the first violating state (which is included) or after
// max_states stored states.
struct Trace {
  std::vector<std::vector<Int>> states;
  std::vector<bool> guard_holds;
};

// Exact big-integer execution.  Values can grow exponentially, so callers
// wanting long horizons should prefer the streaming checks below, which
// store only one state.
Trace simulate(const Loop& loop, const std::vector<Int>& init, std::uint64_t max_states);

enum class WitnessStatus {
  Confirmed,   // guard held at every sampled step after the reported prefix
  Refuted,     // (never produced: a bounded run cannot refute eventuality)
  Inconclusive // guard still failing at the end of the horizon
};

struct WitnessCheck {
  WitnessStatus status;
  std::uint64_t prefix{0}; // meaningful for Confirmed: minimal observed n0
};

// Streams the run for steps 0..horizon and reports the minimal n0 with the
// guard holding at every step in (n0, horizon]; Inconclusive when the
// guard fails at the horizon itself.
WitnessCheck check_eventual_witness(const Loop& loop, const std::vector<Int>& init,
                                    std::uint64_t horizon);

// Advances the state n0+1 steps: turns a state that is eventually
// non-terminating from step n0+1 on into a direct non-termination
// candidate.
std::vector<Int> lift_witness(const Loop& loop, const std::vector<Int>& init,
                              std::uint64_t n0);

} // namespace triloop
