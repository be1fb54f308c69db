#pragma once

#include "triloop/loop.hpp"

#include <cstddef>
#include <vector>

namespace triloop {

// A loop reordered into lower-triangular form plus the bookkeeping needed
// to translate states back to the order the user wrote.
struct ParsedLoop {
  Loop loop; // lower-triangular update matrix
  // to_internal[i] = position of presented variable i in loop's order.
  std::vector<std::size_t> to_internal;
};

// Reorders variables so that every variable depends only on itself and
// earlier ones.  The order is the unique topological order of the
// dependency graph with ties broken by original index, so the result is
// deterministic.  Throws NotTriangularizableError (carrying one dependency
// cycle) when no such order exists.
ParsedLoop triangularize(const Loop& presented);

} // namespace triloop
