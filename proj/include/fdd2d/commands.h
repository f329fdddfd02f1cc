#ifndef FDD2D_COMMANDS_H_
#define FDD2D_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

// Command-line front end. Subcommands:
//
//   analyze  <scenario> [--out payoff.csv]
//   game     <scenario> | --lambda1 L --lambda2 L [--mu1 M --mu2 M]
//   optimize <scenario> | --lambda L --mu M  [--oracle STEP] [--strict]
//            [--experimental] [--threads N]
//   simulate <scenario> --modes M1,M2 | --strategy1 P --strategy2 P
//            [--slots N] [--seed S] [--out file.csv] [--threads N] [--strict]
//   sweep    fig3|fig4|fig5|fig6|fig7|custom [--var mu|lambda|beta_db|D
//            --lo X --hi X --step X --lambda L --mu M --scenario FILE]
//            [--out file.csv]
//
// Exit codes: 0 success, 2 input or validation error, 3 consistency failure
// under --strict.

namespace fdd2d {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConsistency = 3;

// Largest brute-force gap accepted by `optimize --oracle ... --strict`.
inline constexpr double kOracleGapTolerance = 5e-3;

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace fdd2d

#endif  // FDD2D_COMMANDS_H_
