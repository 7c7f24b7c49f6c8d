#pragma once

// A small expression language over the tensors of an instance file:
//
//   expr  := call | pair | name | "0"
//   call  := op "(" expr ("," expr)* ")"
//   pair  := "(" expr "," expr ")"          a section (X, a) of TM + T*M
//   name  := A | pi | P | a declared vector or form | d/d<coord> | d<coord>
//
// Operators: lie, courant, schouten, d, L, i, sharp, wedge, apply, compose,
// nijenhuis, S_A, S_Phi, R, pb1, phi. Operators without an explicit A or pi
// argument use the instance's.

#include <string>
#include <string_view>

#include "qcrf/io.hpp"

namespace qcrf {

/// Evaluates `expression` and returns the canonically printed result.
/// Throws ParseError (with the offset into `expression`) on syntax and type errors.
std::string eval_expression(const InstanceDocument& doc, std::string_view expression);

}  // namespace qcrf
