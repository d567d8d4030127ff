#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hypertrop/mpoly.hpp"

namespace hypertrop {

// Parses integers, t, identifiers, + - * / ^, parentheses and unary minus.
// `t` is the field parameter; every other identifier is a variable.
// Variables in `vars` come first, new ones follow in order of appearance.
// Division is allowed by nonzero elements of Q(t) and by single terms.
MPoly parse_expr(std::string_view src, const std::vector<std::string>& vars = {});

// Parses an expression that must not contain variables.
RatFunc parse_ratfunc(std::string_view src);

}  // namespace hypertrop
