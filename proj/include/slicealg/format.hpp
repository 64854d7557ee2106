#pragma once

#include <string>

#include "slicealg/slice.hpp"

namespace slicealg {

// Canonical text form, e.g. "1-3/2*i+l". Zero prints as "0".
std::string format_element(const QElement& x);
std::string format_element(const FElement& x);

// Element literal: term (("+"|"-") term)*, term = [rational][*]basisname.
// Decimals are accepted only with allow_decimal; they are converted to the
// exact rational they denote. In a complexified algebra a bare "I" means iota.
QElement parse_element(const std::string& literal, const AlgebraPtr& spec, bool allow_decimal = false);

// Polynomial expression, fully expanded:
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := factor ("*"? factor)*      "*" is the slice product
//   factor := "x" ["^" uint] | "(" expr ")" | number | basisname
// A number directly followed by a name multiplies it ("2e1" = 2*e1).
PolyStem parse_poly(const std::string& expr, const AlgebraPtr& spec, bool allow_decimal = false);

}  // namespace slicealg
