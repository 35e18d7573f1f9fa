#pragma once

// Command-line front end: verify, catalog, lattice, homology.

#include <iosfwd>
#include <string>
#include <vector>

namespace bousfield {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitConfig = 78;

/// `args` excludes the program name. Documents go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bousfield
