#ifndef COOPT_MATPOWER_HPP
#define COOPT_MATPOWER_HPP

#include <string>
#include <string_view>

#include "coopt/common.hpp"

namespace coopt {

// Raw contents of a MATPOWER case file. Rows keep every column found in the
// file, including ones this library never interprets, so an unusual case
// survives a parse/dump round trip untouched.
struct RawCase {
  std::string case_name;
  double base_mva = 0.0;
  Matrix bus_rows;
  Matrix gen_rows;
  Matrix branch_rows;
  Matrix gencost_rows;

  bool operator==(const RawCase&) const = default;
};

// MATPOWER column positions consumed downstream.
namespace mpc {
inline constexpr int BUS_I = 0;
inline constexpr int BUS_PD = 2;
inline constexpr int GEN_BUS = 0;
inline constexpr int GEN_PMAX = 8;
inline constexpr int BR_FROM = 0;
inline constexpr int BR_TO = 1;
inline constexpr int BR_X = 3;
inline constexpr int BR_RATE_A = 5;
inline constexpr int COST_MODEL = 0;
inline constexpr int COST_NCOST = 3;
inline constexpr int COST_COEF0 = 4;  // coefficients follow, highest degree first
}  // namespace mpc

// Parses the `function mpc = caseN` script subset used by MATPOWER case
// files: scalar assignments, quoted-string assignments and matrix literals,
// with `%` comments. Anything else (expressions, function calls) is rejected.
RawCase parse_case(std::string_view text);

// Canonical re-emission of a RawCase; parse_case(dump_case(rc)) == rc.
std::string dump_case(const RawCase& rc);

}  // namespace coopt

#endif
