// Concrete formula syntax shared by the two logics.
//
//   propositions   identifiers; reserved: call ret int pinf true false
//   unary          ! Xg Xa Pg Pa Pc
//   clock          Ng[I] Na[I] Bg[I] Ba[I] Bc[I]
//   binary infix   & | ->  and  Ug Ua Sg Sa Sc, optionally interval-decorated
//                  (Ug[I] ...) for the timed until/since of NMTL
//   intervals      [a,b] [a,b) (a,b] (a,b) [a,inf) (a,inf)
//
// Precedence: prefix > until/since (right assoc) > & > | > ->.
// '&' and '->' desugar to !/| at parse time; the printer emits the core
// connectives only, and parse(print(f)) == f.
#pragma once

#include <string>

#include "ecnl/formula.hpp"

namespace ecnl {

struct ParseError {
    size_t line = 1;
    size_t column = 1;
    std::string message;
};

// Throws Error{kind="syntax"} with "line:col: message".
FormulaId parse_formula(FormulaArena& arena, const std::string& text);

}  // namespace ecnl
