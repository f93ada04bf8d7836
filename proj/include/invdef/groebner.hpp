#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invdef/matrix.hpp"

namespace invdef {

namespace detail {
class GBCore;
}

struct GBOptions {
    enum class Selection { Normal, Oldest };
    Selection selection = Selection::Normal;
    bool use_criteria = true;
    // Degree used for pair selection and truncation: grading . exponent + comp_shifts[comp].
    // Empty grading means total degree.
    std::vector<long> grading;
    std::vector<long> comp_shifts;
    // Pairs above this degree are skipped; the result is then a basis up to that
    // degree, which is exact for inputs homogeneous with respect to `grading`.
    std::optional<long long> max_degree;
};

class GroebnerBasis {
public:
    GroebnerBasis() = default;
    GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens, std::shared_ptr<const detail::GBCore> core)
        : ring_(std::move(ring)), gens_(std::move(gens)), core_(std::move(core)) {}

    const RingPtr& ring() const { return ring_; }
    // Reduced basis, each element monic, sorted by increasing leading monomial.
    const std::vector<Polynomial>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    bool is_unit() const;
    std::vector<Monomial> leading_monomials() const;
    const detail::GBCore& core() const { return *core_; }

private:
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<const detail::GBCore> core_;
};

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                         const GBOptions& opts = {});

struct NormalForm {
    Polynomial remainder;
    std::vector<Polynomial> cofactors;  // with respect to gb.generators()
};

NormalForm normal_form(const Polynomial& f, const GroebnerBasis& gb);
Polynomial reduce(const Polynomial& f, const GroebnerBasis& gb);

// Gröbner basis of a submodule of P^rank (term-over-position). When tracking is
// requested, each basis element carries its expression in the input generators.
class ModuleGB {
public:
    const RingPtr& ring() const { return ring_; }
    int rank() const { return rank_; }
    int num_inputs() const { return num_inputs_; }
    const std::vector<FreeModuleElement>& basis() const { return basis_; }
    const std::vector<FreeModuleElement>& transforms() const { return transforms_; }
    bool tracked() const { return tracked_; }
    std::vector<Monomial> leading_monomials() const;  // comp = component index
    const detail::GBCore& core() const { return *core_; }

private:
    friend ModuleGB module_gb(const RingPtr&, int, const std::vector<FreeModuleElement>&,
                              const std::vector<int>&, int, const GBOptions&);
    RingPtr ring_;
    int rank_ = 0;
    int num_inputs_ = 0;
    bool tracked_ = false;
    std::vector<FreeModuleElement> basis_;
    std::vector<FreeModuleElement> transforms_;
    std::shared_ptr<const detail::GBCore> core_;
};

// track_slot[k] is the slot of generator k in the transformation records, or -1
// for an untracked generator; num_slots is the number of slots.
ModuleGB module_gb(const RingPtr& ring, int rank, const std::vector<FreeModuleElement>& gens,
                   const std::vector<int>& track_slot, int num_slots, const GBOptions& opts = {});
ModuleGB module_gb(const RingPtr& ring, int rank, const std::vector<FreeModuleElement>& gens,
                   bool track, const GBOptions& opts = {});

struct ModuleNormalForm {
    FreeModuleElement remainder;
    // For tracked bases: target - remainder = sum coefficients[k] * input_k (over tracked slots).
    std::vector<Polynomial> coefficients;
};

ModuleNormalForm normal_form(const FreeModuleElement& f, const ModuleGB& gb);
std::optional<std::vector<Polynomial>> lift(const FreeModuleElement& target, const ModuleGB& gb);
std::optional<std::vector<Polynomial>> lift_through_module(const FreeModuleElement& target,
                                                           const std::vector<FreeModuleElement>& gens);

struct SyzygyResult {
    PolyMatrix matrix;                        // n x m, columns generate the syzygy module
    std::vector<FreeModuleElement> derived;   // raw syzygies from the S-pair lifts
    bool complete = false;                    // every derived syzygy lies in the column span
};

// Syzygies of the entries of a 1 x n row (all entries nonzero). When the row is
// homogeneous for `grading` the columns are minimized degree by degree.
SyzygyResult syzygies_full(const PolyMatrix& row, const std::vector<long>& grading = {});
PolyMatrix syzygies(const PolyMatrix& row);

bool ideal_membership(const Polynomial& f, const GroebnerBasis& gb);
bool ideal_membership(const Polynomial& f, const std::vector<Polynomial>& gens);
bool ideal_contains(const GroebnerBasis& gb, const std::vector<Polynomial>& gens);
bool ideal_equal(const RingPtr& ring, const std::vector<Polynomial>& I, const std::vector<Polynomial>& J);
std::vector<Polynomial> ideal_intersection(const RingPtr& ring, const std::vector<Polynomial>& I,
                                           const std::vector<Polynomial>& J);

class UnitIdealError : public AlgebraError {
public:
    UnitIdealError() : AlgebraError("unit ideal") {}
};

int krull_dimension(const RingPtr& ring, const std::vector<Polynomial>& gens);
int krull_dimension(const GroebnerBasis& gb);

// Numerator N(u) of the Hilbert series N(u) / prod(1 - u^w_i); coefficient k of u^k.
struct HilbertNumerator {
    std::vector<Integer> coeffs;
    bool operator==(const HilbertNumerator& o) const { return coeffs == o.coeffs; }
    std::string to_string() const;
};

class HilbertGuardError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

HilbertNumerator weighted_hilbert_series(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                         const std::vector<long>& weights);
HilbertNumerator hilbert_numerator_of_monomials(std::vector<Monomial> gens, const std::vector<long>& weights,
                                                std::size_t node_cap = 1000000);

}  // namespace invdef
