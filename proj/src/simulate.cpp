#include "triloop/simulate.hpp"

#include "triloop/errors.hpp"

namespace triloop {

namespace {

void check_dim(const Loop& loop, const std::vector<Int>& init) {
  if (init.size() != loop.dim())
    throw DimensionMismatchError("initial state size does not match variable count");
}

} // namespace

Trace simulate(const Loop& loop, const std::vector<Int>& init, std::uint64_t max_states) {
  check_dim(loop, init);
  Trace t;
  if (max_states == 0) return t;
  std::vector<Int> state = init;
  while (true) {
    bool g = loop.guard_holds(state);
    t.states.push_back(state);
    t.guard_holds.push_back(g);
    if (!g || t.states.size() >= max_states) break;
    state = loop.step(state);
  }
  return t;
}

WitnessCheck check_eventual_witness(const Loop& loop, const std::vector<Int>& init,
                                    std::uint64_t horizon) {
  check_dim(loop, init);
  std::vector<Int> state = init;
  std::int64_t last_fail = -1;
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    if (!loop.guard_holds(state)) last_fail = static_cast<std::int64_t>(n);
    if (n < horizon) state = loop.step(state);
  }
  if (last_fail == static_cast<std::int64_t>(horizon))
    return {WitnessStatus::Inconclusive, 0};
  return {WitnessStatus::Confirmed,
          last_fail < 0 ? 0 : static_cast<std::uint64_t>(last_fail)};
}

std::vector<Int> lift_witness(const Loop& loop, const std::vector<Int>& init,
                              std::uint64_t n0) {
  check_dim(loop, init);
  std::vector<Int> state = init;
  for (std::uint64_t i = 0; i <= n0; ++i) state = loop.step(state);
  return state;
}

} // namespace triloop
