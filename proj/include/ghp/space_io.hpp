/* Apache License, Version 2.0 */
#pragma once

#include <string>

#include "ghp/finite_space.hpp"
#include "ghp/pyramid.hpp"

namespace ghp {

// Space file schema:
//   {"n": int, "matrix": [[number|"inf"]], "base": optional int,
//    "label": optional string}
// Readers reject invalid matrices with the full validation report.
std::string space_to_json(const FiniteSpace& x, int base = -1);
FiniteSpace space_from_json(const std::string& text, int* base_out = nullptr);

FiniteSpace load_space_file(const std::string& path, int* base_out = nullptr);
void save_space_file(const std::string& path, const FiniteSpace& x,
                     int base = -1);

std::string rho_to_json(const RhoEstimate& est);
std::string net_to_json(const SliceNet& net);

}  // namespace ghp
