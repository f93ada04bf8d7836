#include "invdef/fingerprint.hpp"

#include <algorithm>

namespace invdef {

namespace {

bool homogeneous(const std::vector<Polynomial>& gens, const std::vector<long>& w) {
    for (const auto& g : gens)
        if (!g.is_zero() && !weighted_degree(g, w)) return false;
    return true;
}

}  // namespace

Fingerprint fingerprint(const RingPtr& ring, const std::vector<Polynomial>& gens, const std::vector<long>& weights) {
    Fingerprint f;
    f.weights = weights;
    std::sort(f.weights.begin(), f.weights.end());
    f.dimension = krull_dimension(ring, gens);
    f.numerator = weighted_hilbert_series(ring, gens, weights);
    return f;
}

std::optional<std::vector<long>> match_fingerprint(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                                   std::vector<long> pool, const Fingerprint& target) {
    if (static_cast<int>(pool.size()) != ring->nvars()) throw AlgebraError("weight pool has the wrong size");
    std::sort(pool.begin(), pool.end());
    if (pool != target.weights) return std::nullopt;
    // the leading monomials do not depend on the weights once the ideal is homogeneous
    auto gb = buchberger(ring, gens);
    if (krull_dimension(gb) != target.dimension) return std::nullopt;
    auto lead = gb.leading_monomials();
    do {
        if (!homogeneous(gens, pool)) continue;
        if (hilbert_numerator_of_monomials(lead, pool) == target.numerator) return pool;
    } while (std::next_permutation(pool.begin(), pool.end()));
    return std::nullopt;
}

}  // namespace invdef
