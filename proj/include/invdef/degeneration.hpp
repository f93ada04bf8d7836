#pragma once

#include <vector>

#include "invdef/groebner.hpp"

namespace invdef {

// Flat limit t -> 0 of the ideal L under the one-parameter subgroup scaling the
// i-th variable by t^a[i]: the ideal of lowest <a, exponent> parts. Works for any
// signs of a through homogenization. Returns a reduced Gröbner basis (grevlex).
std::vector<Polynomial> flat_limit(const RingPtr& ring, const std::vector<Polynomial>& L, const std::vector<long>& a);

// Per-variable weights a from an n-tuple: a[v] = sign[v] * n[column[v]].
std::vector<long> psg_weights(const std::vector<long>& n, const std::vector<int>& column, const std::vector<int>& sign);

}  // namespace invdef
