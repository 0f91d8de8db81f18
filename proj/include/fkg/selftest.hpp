#pragma once

#include <ostream>

namespace fkg {

/// Fast invariant battery over every layer: transforms, symbol calculus,
/// mollifier mass, flows, fits, negligibility verdicts. One PASS/FAIL
/// line per check; returns true iff everything passed.
bool run_selftest(std::ostream& out);

} // namespace fkg
