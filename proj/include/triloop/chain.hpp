#pragma once

#include "triloop/loop.hpp"

namespace triloop {

// Fuses two iterations into one: the guard becomes "guard now and guard
// after one step", the update matrix is squared, the offset becomes
// update*offset + offset.  For a triangular matrix the squared diagonal is
// entrywise a square, hence nonnegative — chaining once therefore always
// yields a loop the closed-form construction accepts.  The chained loop
// terminates iff the original does.
Loop chain(const Loop& triangular);

} // namespace triloop
