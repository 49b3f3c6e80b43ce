#pragma once

#include "drham/diffpoly.hpp"

#include "json.hpp"

namespace drham {

nlohmann::json rational_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json diffpoly_json(const DiffPoly& f);
DiffPoly diffpoly_from_json(const nlohmann::json& j, TruncationConfig trunc = {});

}  // namespace drham
