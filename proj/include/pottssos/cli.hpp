#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pottssos::cli {

/// Runs one CLI invocation (args excludes the program name). Returns 0 on
/// success, 2 on invalid flags or values (usage goes to `err`), 1 when an
/// internal consistency check fails.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g"; non-finite values print as "nan" / "inf" / "-inf".
std::string format_number(double x);

}  // namespace pottssos::cli
