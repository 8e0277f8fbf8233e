#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anisonet::cli {

/// Entry point of the `anisonet` tool. Returns 0 on success, 2 on usage or configuration errors and
/// 1 when a numerical routine fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Number formatting used by every table: 9 significant digits.
std::string format_number(double x);

/// Header lines of the CSV tables.
inline constexpr const char* kSweepHeader = "eta,pattern,mean_degree_over_rho,stderr,analytic_M";
inline constexpr const char* kSTableHeader = "eta,pattern,s_closed,s_quadrature";
inline constexpr const char* kMultisectorHeader = "n,lambda,min_mass,blind_spot,avoidance_margin,rotations";

}  // namespace anisonet::cli
