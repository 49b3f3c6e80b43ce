#pragma once

#include "drham/diffpoly.hpp"

#include <string>
#include <string_view>

namespace drham {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Expressions in + - * / ^ ( ) with:
//   u^{a}_{k}, u2_3 (alpha 2, k 3), u2, and u, u_3 when nvars == 1
//   (v and w are accepted as synonyms of u)
//   eps, integers, and any other identifier as a formal parameter.
DiffPoly parse_diffpoly(std::string_view text, int nvars, TruncationConfig trunc = {});

// {"nvars":N,"terms":[{"eps":e,"jets":[[alpha,k,exp],...],"coeff":{"num":..,"den":..,"params":{..}}}]}
std::string to_json(const DiffPoly& f, int indent = -1);
DiffPoly diffpoly_from_json(std::string_view text, TruncationConfig trunc = {});

}  // namespace drham
