#pragma once

#include <optional>
#include <vector>

#include "invdef/groebner.hpp"

namespace invdef {

// Coordinate-free summary of a weighted-homogeneous ideal: sorted variable
// weights, Krull dimension and the Hilbert series numerator.
struct Fingerprint {
    std::vector<long> weights;
    int dimension = 0;
    HilbertNumerator numerator;
    bool operator==(const Fingerprint& o) const {
        return weights == o.weights && dimension == o.dimension && numerator == o.numerator;
    }
};

Fingerprint fingerprint(const RingPtr& ring, const std::vector<Polynomial>& gens, const std::vector<long>& weights);

// Searches the distinct assignments of the multiset `pool` to the variables of
// `ring` under which every generator is homogeneous, and returns the first one
// whose fingerprint equals `target`.
std::optional<std::vector<long>> match_fingerprint(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                                   std::vector<long> pool, const Fingerprint& target);

}  // namespace invdef
