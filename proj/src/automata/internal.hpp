#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nncomp/automata.hpp"

namespace nncomp::automata::detail {

// Bit i of a mask is atoms[i].
using Mask = std::uint32_t;

// Alphabets wider than this are refused; construction enumerates 2^n symbols.
inline constexpr std::size_t kMaxAtoms = 16;

Symbol symbol_of(Mask m, const std::vector<std::string>& atoms);
bool eval_mask(const Formula& g, Mask m, const std::vector<std::string>& atoms);

// Minimal sum-of-products guard for the set of masks with on[m] set.
Formula guard_from_masks(const std::vector<bool>& on, const std::vector<std::string>& atoms);

}  // namespace nncomp::automata::detail
