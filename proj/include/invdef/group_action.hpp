#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invdef/linalg.hpp"
#include "invdef/matrix.hpp"

namespace invdef {

class ActionError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

// Krylov or closure space grew past its cap.
class CapError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

// Linear action on the span of the named variables. Matrices use the column
// convention: g(x_j) = sum_i g(i,j) x_i and D(x_j) = sum_i D(i,j) x_i. Variables
// of a ring that are not listed (the t-variables) are fixed by the group.
struct GroupAction {
    std::vector<std::string> vars;
    std::vector<QMatrix> finite;             // full group, identity included
    std::vector<std::vector<long>> torus;    // one weight per variable, per row
    std::vector<QMatrix> lie, lie_dual;      // Casimir = sum lie[i] o lie_dual[i]
    std::size_t krylov_cap = 64;

    static GroupAction trivial(std::vector<std::string> vars);
    int nvars() const { return static_cast<int>(vars.size()); }
    // Shapes, identity and closure of the finite part, Casimir centrality and its
    // commutation with the finite part on polynomials of degree <= 2.
    void validate() const;
};

std::vector<QMatrix> finite_closure(const std::vector<QMatrix>& gens, std::size_t cap = 10000);

// Action on a finite-dimensional space with a fixed basis, column convention:
// X(b_k) = sum_l rho(X)(l,k) b_l.
struct Representation {
    int dim = 0;
    std::vector<QMatrix> lie, lie_dual, finite;
    std::vector<std::vector<long>> torus;  // torus[row][k]: weight of b_k

    static Representation trivial(const GroupAction& a, int dim);
};

Polynomial apply_derivation(const Polynomial& f, const QMatrix& d, const GroupAction& a);
Polynomial apply_finite(const Polynomial& f, const QMatrix& g, const GroupAction& a);

// Action on r x c matrices C, with `left` of dimension r and `right` of dimension c:
//   D.C = D(C) + left(D) C - C right(D),   g.C = left(g) g(C) right(g)^-1,
// and torus weight of a term x^a in entry (i,j) equal to wt(x^a) + wL_i - wR_j.
// The generator row uses left trivial and right = rho_1; a column of P (x) N_1
// uses left = rho_1 and right trivial.
class TwistedAction {
public:
    TwistedAction(const GroupAction& a, Representation left, Representation right);

    const GroupAction& action() const { return a_; }
    const Representation& left() const { return left_; }
    const Representation& right() const { return right_; }

    PolyMatrix lie(const PolyMatrix& c, std::size_t i, bool dual = false) const;
    PolyMatrix finite(const PolyMatrix& c, std::size_t g) const;
    PolyMatrix casimir(const PolyMatrix& c) const;
    PolyMatrix finite_average(const PolyMatrix& c) const;
    PolyMatrix torus_project(const PolyMatrix& c) const;
    // Projection onto the equivariant part: finite average, torus weight 0, then
    // the Casimir kernel via the minimal polynomial on the Krylov space.
    PolyMatrix reynolds(const PolyMatrix& c) const;
    bool is_equivariant(const PolyMatrix& c) const;
    // Torus weights of a nonzero homogeneous element, nullopt if mixed.
    std::optional<std::vector<long>> torus_weight(const PolyMatrix& c) const;

private:
    GroupAction a_;
    Representation left_, right_;
    std::vector<QMatrix> right_inv_;
};

Polynomial reynolds(const Polynomial& f, const GroupAction& a);
bool is_invariant(const Polynomial& f, const GroupAction& a);
PolyMatrix reynolds_twisted(const PolyMatrix& c, const Representation& left, const Representation& right,
                            const GroupAction& a);
bool is_equivariant(const PolyMatrix& c, const Representation& left, const Representation& right,
                    const GroupAction& a);

struct RepResult {
    std::optional<Representation> rep;
    std::optional<PolyMatrix> witness;  // an image that left the span
};

// Basis elements are matrices acted on by `twisted`.
RepResult rep_on_subspace(const std::vector<PolyMatrix>& basis, const TwistedAction& twisted);
RepResult rep_on_subspace(const std::vector<Polynomial>& basis, const GroupAction& a);

// Basis (in discovery order) of the smallest stable subspace containing the seed.
std::vector<PolyMatrix> g_closure(const std::vector<PolyMatrix>& seed, const TwistedAction& twisted,
                                  std::size_t cap = 4096);
std::vector<Polynomial> g_closure(const std::vector<Polynomial>& seed, const GroupAction& a, std::size_t cap = 4096);

}  // namespace invdef
