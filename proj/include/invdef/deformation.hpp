#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invdef/group_action.hpp"
#include "invdef/groebner.hpp"

namespace invdef {

class ValidationError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

// A postcondition the theory guarantees did not hold.
class InternalError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

struct IrrepCount {
    int multiplicity = 0;
    int hilbert_value = 0;
};

struct DeformOptions {
    std::optional<int> max_order;  // truncate instead of waiting for the stop condition
    int order_cap = 24;            // hard limit when max_order is unset
    int max_covariant_degree = 16;
    bool positive_weight_only = false;
};

struct ProblemSpec {
    RingPtr ring;  // W-variables with their G_m-weights, grevlex
    GroupAction action;
    std::vector<Polynomial> ideal_gens;
    std::vector<IrrepCount> n1_decomposition;
    std::vector<Polynomial> invariants;
    DeformOptions options;

    int covariant_count() const;
    // Throws ValidationError.
    void validate() const;
};

struct Presentation {
    RingPtr ring;
    PolyMatrix A0;  // 1 x n1
    PolyMatrix B0;  // n1 x n2
    Representation rho1, rho2;
    std::vector<long> f_weights, r_weights;
    GroebnerBasis gb;  // of I
    ModuleGB lift_gb;  // tracked basis of the f_i, rank 1
    bool syzygies_complete = false;

    int n1() const { return A0.cols(); }
    int n2() const { return B0.cols(); }
};

Presentation build_presentation(const ProblemSpec& spec);

struct Covariant {
    PolyMatrix row;  // equivariant 1 x n1, not reduced mod I
    long t_weight = 0;
};

std::vector<Covariant> covariant_basis(const ProblemSpec& spec, const Presentation& pres);

struct TangentBasis {
    std::vector<PolyMatrix> rows;
    std::vector<long> t_weights;
    int dim() const { return static_cast<int>(rows.size()); }
};

TangentBasis tangent_space(const ProblemSpec& spec, const Presentation& pres, const std::vector<Covariant>& cov);

struct MonomialKeyLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.comp != b.comp) return a.comp < b.comp;
        return a.e < b.e;
    }
};

struct DeformationState {
    int order = 0;
    TangentBasis tangent;
    RingPtr t_ring;    // t1..td with their weights
    RingPtr combined;  // W-variables then t-variables
    std::vector<PolyMatrix> A, B;  // over `combined`, A[i] and B[i] of t-degree i
    // Accumulated obstruction: standard monomial of the cokernel -> t-coefficient.
    std::map<Monomial, Polynomial, MonomialKeyLess> omega;
    std::vector<Polynomial> K;  // minimized generators of K_n (without m^{n+1})
    std::vector<Polynomial> K_prime;
    bool stopped = false;
    std::vector<std::string> log;
    std::shared_ptr<const ModuleGB> coker;  // rows of B0 and I e_j
};

PolyMatrix U_of(const DeformationState& s);
PolyMatrix V_of(const DeformationState& s);

DeformationState first_order(const ProblemSpec& spec, const Presentation& pres, TangentBasis tangent);
void obstruction_step(DeformationState& state, const Presentation& pres, const ProblemSpec& spec);

struct StopResult {
    std::vector<Polynomial> K_prime;
    bool stopped = false;
};
StopResult stop_check(const DeformationState& state);

struct UniversalDeformation {
    RingPtr t_ring, combined;
    std::vector<Polynomial> K;
    PolyMatrix U, V;
    int stop_order = 0;
    bool stopped = false;
    std::vector<std::string> log;
};

// Called after each order with the state and the seconds spent on that order.
using OrderCallback = std::function<void(const DeformationState&, double)>;

UniversalDeformation run(const ProblemSpec& spec);
UniversalDeformation run(const ProblemSpec& spec, const Presentation& pres, const TangentBasis& tangent,
                         const OrderCallback& on_order = {});

struct VerifyReport {
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::string> details;
    bool ok() const;
};

VerifyReport verify(const UniversalDeformation& res, const ProblemSpec& spec);

// Throws InternalError if some invariant does not reduce to a t-polynomial.
std::vector<Polynomial> fiber_over_zero(const UniversalDeformation& res, const std::vector<Polynomial>& invariants,
                                        const GroupAction& action);

// Helpers shared with the tests.
// Groups the terms of a matrix over the combined ring by t-monomial (in the t-ring)
// and returns the P-matrices.
std::map<Monomial, PolyMatrix, MonomialKeyLess> split_by_t(const PolyMatrix& m, const RingPtr& p_ring,
                                                          const RingPtr& t_ring);
// For each entry and P-monomial (comp = entry index) the t-polynomial coefficient.
std::map<Monomial, Polynomial, MonomialKeyLess> split_by_p(const PolyMatrix& m, const RingPtr& p_ring,
                                                          const RingPtr& t_ring);
// Minimal weight-homogeneous generating set, increasing weight.
std::vector<Polynomial> minimize_homogeneous(const RingPtr& ring, const std::vector<Polynomial>& gens);
PolyMatrix primitive_matrix(const PolyMatrix& m);

}  // namespace invdef
