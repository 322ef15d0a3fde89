#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace dosg {

// Vertices of the Bethe lattice with coordination number k are addressed by
// digit strings (a_1, ..., a_l) with a_1 in {1..k} and a_j in {1..k-1} for
// j >= 2; the root is the empty string. Two addresses are adjacent exactly
// when one is the other plus one trailing digit.
using BetheAddress = std::vector<int>;

bool valid_address(const BetheAddress& a, int k);
void require_valid(const BetheAddress& a, int k);

bool address_adjacent(const BetheAddress& a, const BetheAddress& b);

// Generalized translation: prepends 1 to addresses whose first digit is not
// k, and otherwise pops a level ((k) -> root, (k,a2,...) -> (a2+1,...));
// the root maps to (1). An automorphism of the infinite tree.
BetheAddress tau1(const BetheAddress& a, int k);

// Generalized rotation: increments the first digit mod k and every deeper
// digit mod k-1, with representatives kept in {1..k} and {1..k-1}. Fixes the
// root and preserves levels.
BetheAddress tau2(const BetheAddress& a, int k);

// Searches for (d1, d2) with tau2^d2(tau1^d1(root)) = a. Since tau1^d
// produces the all-ones address of level d and tau2 preserves levels, d1 is
// forced to equal the level and d2 ranges over the rotation period; the
// orbit is checked exhaustively up to the period. Returns nullopt when a is
// not in the orbit. Throws when the level exceeds max_level.
std::optional<std::pair<int, int>>
transitive_coordinates(const BetheAddress& a, int k, int max_level = 64);

} // namespace dosg
