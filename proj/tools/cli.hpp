#pragma once

#include <ostream>

namespace bgeom::cli {

/// Entry point shared by the executable and the tests. Reports go to `out`
/// unless --out is given; diagnostics go to `log`.
/// Returns 0 when every unflagged check passes, 1 on check failures and 2 on
/// usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace bgeom::cli
