#pragma once

#include "infex/structure.hpp"

namespace infex {

// Backtracking search for an atom- and constant-preserving bijection.
// Meant for small structures (size <= 12). Throws on signature mismatch.
bool finite_isomorphic(const FiniteStructure& f, const FiniteStructure& g);

}  // namespace infex
