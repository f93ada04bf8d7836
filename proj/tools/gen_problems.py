#!/usr/bin/env python3
"""Writes the example problem files under problems/.

Usage: gen_problems.py [outdir]
"""

import itertools
import json
import os
import sys

import sympy as sp


def pstr(e):
    e = sp.expand(e)
    return str(e).replace("**", "^")


def mat_json(m):
    return [[str(x) for x in row] for row in m.tolist()]


def zero(n):
    return sp.zeros(n, n)


# --- matrix variables -------------------------------------------------------

def matrix_vars(prefix, rows=3, cols=3):
    names = [f"{prefix}{i + 1}{j + 1}" for i in range(rows) for j in range(cols)]
    syms = sp.Matrix(rows, cols, [sp.Symbol(n) for n in names])
    return names, syms


def left_action(X, rows=3, cols=3):
    """Derivation of entries of a rows x cols matrix w under w -> X w.

    Column convention on the variable span: D(x_kj) = sum_i X[i,k] x_ij.
    """
    n = rows * cols
    M = zero(n)
    for j in range(cols):
        for k in range(rows):
            for i in range(rows):
                M[i * cols + j, k * cols + j] = X[i, k]
    return M


def right_action(X, rows=3, cols=3):
    """Derivation of entries of w under w -> -w X (the contragredient on columns)."""
    n = rows * cols
    M = zero(n)
    for i in range(rows):
        for k in range(cols):
            for j in range(cols):
                M[i * cols + j, i * cols + k] = -X[k, j]
    return M


def so3_basis():
    L1 = sp.Matrix([[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    L2 = sp.Matrix([[0, 0, -1], [0, 0, 0], [1, 0, 0]])
    L3 = sp.Matrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    return [L1, L2, L3]


def trace_dual(basis):
    """Dual basis for the trace form tr(XY)."""
    n = len(basis)
    gram = sp.Matrix(n, n, lambda a, b: (basis[a] * basis[b]).trace())
    inv = gram.inv()
    return [sum((inv[a, b] * basis[b] for b in range(n)), zero(basis[0].rows)) for a in range(n)]


def sl3_basis():
    out = []
    for i in range(3):
        for j in range(3):
            if i != j:
                E = zero(3)
                E[i, j] = 1
                out.append(E)
    out.append(sp.diag(1, -1, 0))
    out.append(sp.diag(0, 1, -1))
    return out


def so3_group(names, finite=None):
    basis = so3_basis()
    dual = trace_dual(basis)
    g = {
        "variables": names,
        "lie_basis": [mat_json(left_action(X)) for X in basis],
        "lie_dual_basis": [mat_json(left_action(X)) for X in dual],
    }
    if finite:
        g["finite_part"] = [mat_json(m) for m in finite]
    return g


def column_psg(n_vars_cols, sign=1):
    return {"variable_index": [j for _ in range(3) for j in range(n_vars_cols)], "sign": sign}


# --- SO3 and O3 -------------------------------------------------------------

X_NAMES, X = matrix_vars("x")


def q(j, k):
    return sum(X[i, j] * X[i, k] for i in range(3))


def minors():
    out = []
    for a, b in itertools.combinations(range(3), 2):
        for j, k in itertools.combinations(range(3), 2):
            out.append(X[a, j] * X[b, k] - X[b, j] * X[a, k])
    return out


def ideal_I():
    c = [X[i, 0] for i in range(3)]
    v4 = [c[0] * c[1], c[0] * c[2], c[1] * c[2], c[0] ** 2 - c[1] ** 2, c[1] ** 2 - c[2] ** 2]
    v0 = [q(j, k) for j in range(3) for k in range(j, 3)]
    return v4 + v0 + minors()


def ideal_Iprime():
    return [X[i, 0] for i in range(3)] + [q(1, 1), q(1, 2), q(2, 2)]


def so3_invariants():
    return [q(j, k) for j in range(3) for k in range(j, 3)] + [X.det()]


def so3_fiber_ideal(with_det=True):
    QtQ = X.T * X
    gens = [QtQ[j, k] - (1 if j == k else 0) for j in range(3) for k in range(j, 3)]
    if with_det:
        gens.append(X.det() - 1)
    return gens


def ring(names, weights):
    return {"variables": names, "gm_weights": weights}


# Column weights of the multiplicative subgroup of the Borel used for the
# deformation runs; column 1 carries the distinguished line.
SO3_WEIGHTS = [3, 2, 2]
SO3_PRIME_WEIGHTS = [3, 1, 1]
O3_WEIGHTS = [3, 2, 1]
O3_X2_WEIGHTS = [2, 1, 1]


def col_weights(w):
    return [w[j] for _ in range(3) for j in range(3)]


def problem(**kw):
    return {k: v for k, v in kw.items() if v is not None}


def so3_x0():
    return problem(
        derivation=[
            "W = 3x3 matrices x_ij, SO3 acting on the row index, GL3 on the column index.",
            "Column 1 spans the Borel-stable line D1; its quadrics span D2 (x) S^2 V.",
            "Generators: the traceless quadrics in column 1 (V4 piece of D2),",
            "all six column inner products q_jk (S^2 V' (x) V0),",
            "and the nine 2x2 minors with two different columns (Lambda^2 V' (x) V2).",
        ],
        ring=ring(X_NAMES, col_weights(SO3_WEIGHTS)),
        group=so3_group(X_NAMES),
        ideal=[pstr(f) for f in ideal_I()],
        n1_decomposition=[
            {"multiplicity": 1, "hilbert_value": 5},
            {"multiplicity": 6, "hilbert_value": 1},
            {"multiplicity": 3, "hilbert_value": 3},
        ],
        invariants=[pstr(f) for f in so3_invariants()],
        options={"max_covariant_degree": 12},
    )


def so3_x0prime():
    return problem(
        derivation=[
            "Column 1 entries (D1 (x) V2) and the inner products of columns 2 and 3;",
            "q_1k lie in the ideal of column 1 and are omitted.",
        ],
        ring=ring(X_NAMES, col_weights(SO3_PRIME_WEIGHTS)),
        group=so3_group(X_NAMES),
        ideal=[pstr(f) for f in ideal_Iprime()],
        n1_decomposition=[{"multiplicity": 1, "hilbert_value": 3}, {"multiplicity": 3, "hilbert_value": 1}],
        invariants=[pstr(f) for f in so3_invariants()],
        options={"max_covariant_degree": 12},
    )


def so3_connect():
    return problem(
        derivation=[
            "Ideal of the fiber of the quotient map over (id, 1): entries of Q^T Q - id and det Q - 1.",
            "The diagonal subgroup diag(t^n1, t^n2, t^n3) of GL3 scales column j by t^nj.",
        ],
        ring=ring(X_NAMES, [1] * 9),
        group=so3_group(X_NAMES),
        ideal=[pstr(f) for f in so3_fiber_ideal()],
        n1_decomposition=[],
        invariants=[pstr(f) for f in so3_invariants()],
        one_parameter_subgroup=column_psg(3),
        limit_targets=[
            {"name": "I", "n": [-3, -2, -2], "ideal": [pstr(f) for f in ideal_I()]},
            {"name": "I'", "n": [-3, -1, -1], "ideal": [pstr(f) for f in ideal_Iprime()]},
        ],
    )


def ref_K_so3():
    t = sp.symbols("t1:9")
    t1, t2, t3, t4, t5, t6, t7, t8 = t
    K = [
        405 * t2 * t5 + 810 * t1 * t6 + 36 * t3 * t6 * t7 - 54 * t3 * t5 * t8 - 90 * t2 * t7 * t8
        - 90 * t1 * t8 ** 2 + 8 * t3 * t7 * t8 ** 2,
        810 * t2 * t4 + 405 * t1 * t5 + 18 * t3 * t5 * t7 - 90 * t2 * t7 ** 2 - 108 * t3 * t4 * t8
        - 90 * t1 * t7 * t8 + 8 * t3 * t7 ** 2 * t8,
        15 * t2 * t3 - 2 * t3 ** 2 * t8,
        45 * t1 * t3 + 2 * t3 ** 2 * t7,
    ]
    return K


def ref_K0_so3():
    t1, t2, t3, t4, t5, t6, t7, t8 = sp.symbols("t1:9")
    K = ref_K_so3()
    return K[:2] + [
        2025 * t1 ** 2 - 2025 * t3 ** 2 * t4 + 221 * t3 ** 2 * t7 ** 2,
        1350 * t1 * t2 + 675 * t3 ** 2 * t5 - 142 * t3 ** 2 * t7 * t8,
        75 * t2 ** 2 - 75 * t3 ** 2 * t6 + 7 * t3 ** 2 * t8 ** 2,
    ] + K[2:]


def col(j):
    return [X[i, j] for i in range(3)]


def cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def sym_traceless(u, v):
    """Basis of the V4 part of u (x) v: symmetrized off-diagonal and diagonal differences."""
    S = [[u[i] * v[k] + u[k] * v[i] for k in range(3)] for i in range(3)]
    return [S[0][1], S[0][2], S[1][2], S[0][0] - S[1][1], S[1][1] - S[2][2]]


def ideal_X1():
    c1 = col(0)
    quad = [c1[i] * c1[k] for i in range(3) for k in range(i, 3)]
    qs = [q(j, k) for j in range(3) for k in range(j, 3) if (j, k) != (0, 0)]
    cubic = sym_traceless(col(1), cross(col(0), col(1)))
    return quad + qs + cubic


def o3_x1():
    return problem(
        derivation=[
            "O3 = SO3 x {+-1} on 3x3 matrices, acting on rows; GL3 on columns, Borel upper triangular.",
            "Generators: all quadrics in column 1 (S^2 of the line D1: V4 + V0),",
            "the inner products q_jk other than q_11 (five copies of V0),",
            "and the V4 part of v2 (x) (v1 x v2), a copy of V4 twisted by det (degree 3).",
            "Equal to the flat limit of Q^T Q = id under diag(t^-5, t^-4, t^-3) (see o3_connect.json).",
        ],
        ring=ring(X_NAMES, col_weights(O3_WEIGHTS)),
        group=o3_group(),
        ideal=[pstr(f) for f in ideal_X1()],
        n1_decomposition=[
            {"multiplicity": 1, "hilbert_value": 5},
            {"multiplicity": 6, "hilbert_value": 1},
            {"multiplicity": 1, "hilbert_value": 5},
        ],
        invariants=[pstr(q(j, k)) for j in range(3) for k in range(j, 3)],
        options={"max_covariant_degree": 12},
    )


def ideal_X2():
    c1 = col(0)
    quad = [c1[i] * c1[k] for i in range(3) for k in range(i, 3)]
    qs = [q(j, k) for j in range(3) for k in range(j, 3) if (j, k) != (0, 0)]
    cubic = sym_traceless(col(0), cross(col(1), col(2)))
    return quad + qs + cubic


def o3_x2():
    d = o3_x1()
    d["derivation"] = [
        "Second Borel-fixed point for O3: same quadrics as o3_x1.json,",
        "with the V4 part of v1 (x) (v2 x v3) as the cubic piece instead of v2 (x) (v1 x v2).",
        "The ideal contains every q_jk, so V_2l can only occur in degrees l and l+1 of the quotient;",
        "with the quadrics fixed, the degree-3 piece is a Borel eigenline in the six-dimensional",
        "multiplicity space of V4 (x) det, and this is the one besides the o3_x1.json choice.",
    ]
    d["ideal"] = [pstr(f) for f in ideal_X2()]
    d["ring"]["gm_weights"] = col_weights(O3_X2_WEIGHTS)
    return d


def o3_connect():
    return problem(
        derivation=[
            "O3 = SO3 x {+-1}: ideal of the fiber of Q -> Q^T Q over id, the entries of Q^T Q - id.",
            "The diagonal subgroup diag(t^n1, t^n2, t^n3) of GL3 scales column j by t^nj.",
        ],
        ring=ring(X_NAMES, [1] * 9),
        group=o3_group(),
        ideal=[pstr(f) for f in so3_fiber_ideal(with_det=False)],
        n1_decomposition=[],
        invariants=[pstr(q(j, k)) for j in range(3) for k in range(j, 3)],
        one_parameter_subgroup=column_psg(3),
        limit_targets=[{"name": "X1", "n": [-5, -4, -3], "ideal": [pstr(f) for f in ideal_X1()]}],
    )


def ideal_file(names, weights, gens, note):
    return {"derivation": note, "ring": ring(names, weights), "ideal": [pstr(g) for g in gens]}


def weights_making_homogeneous(gens, syms):
    """Positive integer weights making every generator homogeneous, smallest total first."""
    n = len(syms)
    rows = []
    for g in gens:
        terms = sp.Poly(sp.expand(g), *syms).monoms()
        for m in terms[1:]:
            rows.append([a - b for a, b in zip(m, terms[0])])
    M = sp.Matrix(rows) if rows else sp.zeros(1, n)
    R, pivots = M.rref()
    free = [j for j in range(n) if j not in pivots]
    best = None
    for vals in itertools.product(range(1, 4), repeat=len(free)):
        w = [sp.Integer(0)] * n
        for j, v in zip(free, vals):
            w[j] = sp.Integer(v)
        for r, pc in enumerate(pivots):
            w[pc] = -sum(R[r, j] * w[j] for j in free)
        if all(x > 0 and x.is_integer for x in w):
            if best is None or sum(w) < sum(best):
                best = w
    if best is None:
        raise RuntimeError("no positive grading")
    g = sp.igcd(*[int(x) for x in best])
    return [int(x) // g for x in best]


def o3_group():
    minus = -sp.eye(9)
    return so3_group(X_NAMES, finite=[minus])


# --- GL3 --------------------------------------------------------------------

Y_NAMES, Y = matrix_vars("y")  # Q1: rows V, columns V1
Z_NAMES, Z = matrix_vars("z")  # Q2: rows V2, columns V
GL_NAMES = Y_NAMES + Z_NAMES


def gl3_group():
    basis = sl3_basis()
    dual = trace_dual(basis)

    def rep(Xm):
        M = zero(18)
        M[:9, :9] = left_action(Xm)
        M[9:, 9:] = right_action(Xm)
        return M

    return {
        "variables": GL_NAMES,
        "torus_part": [[1] * 9 + [-1] * 9],
        "lie_basis": [mat_json(rep(Xm)) for Xm in basis],
        "lie_dual_basis": [mat_json(rep(Xm)) for Xm in dual],
    }


def gl3_invariants():
    P = Z * Y
    return [P[i, j] for i in range(3) for j in range(3)]


def gl3_fiber_ideal():
    P = Z * Y
    return [P[i, j] - (1 if i == j else 0) for i in range(3) for j in range(3)]


def gl3_psg():
    # n = (a1, a2, a3, b1, b2, b3): diag(t^a) on V1 scales column j of Q1 by t^aj,
    # diag(t^b) on V2 scales row i of Q2 by t^-bi on coordinates
    return {
        "variable_index": [j for _ in range(3) for j in range(3)] + [3 + i for i in range(3) for _ in range(3)],
        "sign": [1] * 9 + [-1] * 9,
    }


def ideal_gl3():
    P = Z * Y
    u = [Y[i, 0] for i in range(3)]
    v = [Y[i, 1] for i in range(3)]
    zeta = [Z[0, i] for i in range(3)]
    eta = [Z[1, i] for i in range(3)]
    inv = [P[i, j] for i in range(3) for j in range(3) if (i, j) != (0, 0)]
    rank_one = [u[k] * zeta[l] for k in range(3) for l in range(3)]
    mu = cross(u, v)
    nu = cross(zeta, eta)
    sym_y = [mu[i] * eta[j] + mu[j] * eta[i] for i in range(3) for j in range(i, 3)]
    sym_z = [nu[i] * v[j] + nu[j] * v[i] for i in range(3) for j in range(i, 3)]
    return inv + rank_one + sym_y + sym_z


# weight of column j of Q1, then of row i of Q2
GL3_WEIGHTS = [3, 2, 1, 3, 2, 1]


def gl3_weights(w):
    return [w[j] for _ in range(3) for j in range(3)] + [w[3 + i] for i in range(3) for _ in range(3)]


def gl3():
    return problem(
        derivation=[
            "Borel-fixed point for GL3 on Hom(V1, V) x Hom(V, V2), the limit of gl3_connect.json at n = (0,1,2,6,5,4).",
            "u, v: first two columns of Q1; zeta, eta: first two rows of Q2.",
            "Generators: entries of Q2 Q1 other than (1,1) (eight invariants), the nine products u_k zeta_l",
            "(adjoint plus the (1,1) invariant), the S^2 part of (u x v) (x) eta and of (zeta x eta) (x) v.",
        ],
        ring=ring(GL_NAMES, gl3_weights(GL3_WEIGHTS)),
        group=gl3_group(),
        ideal=[pstr(f) for f in ideal_gl3()],
        n1_decomposition=[
            {"multiplicity": 9, "hilbert_value": 1},
            {"multiplicity": 1, "hilbert_value": 8},
            {"multiplicity": 2, "hilbert_value": 6},
        ],
        invariants=[pstr(f) for f in gl3_invariants()],
        options={"max_covariant_degree": 12},
    )


def gl3_connect():
    return problem(
        derivation=[
            "GL3 on Hom(V1, V) x Hom(V, V2): ideal of the fiber of (Q1, Q2) -> Q2 Q1 over id.",
            "n = (a1, a2, a3, b1, b2, b3): column j of Q1 has weight aj, row i of Q2 has weight -bi.",
        ],
        ring=ring(GL_NAMES, [1] * 18),
        group=gl3_group(),
        ideal=[pstr(f) for f in gl3_fiber_ideal()],
        n1_decomposition=[],
        invariants=[pstr(f) for f in gl3_invariants()],
        one_parameter_subgroup=gl3_psg(),
        limit_targets=[{"name": "X", "n": [0, 1, 2, 6, 5, 4], "ideal": [pstr(f) for f in ideal_gl3()]}],
    )


def ref_K_gl3():
    t = sp.symbols("t1:13")
    t1, t2, t3, t4, t5, t6, t7, t8, t9, t10, t11, t12 = t
    return [
        t2 * t3 - t2 * t5 - t2 * t8 * t11,
        t1 * t3 - t1 * t5 - t1 * t8 * t11,
        t2 * t6, t1 * t6, t2 * t4, t1 * t4,
    ]


def ref_K0_gl3():
    return ref_K_gl3() + [sp.Symbol("t1")]


def trivial_hilb2():
    return problem(
        derivation=["Trivial group on k[x, y], I = (x^2, y): a length-two scheme, unobstructed with d = 4."],
        ring=ring(["x", "y"], [1, 2]),
        group={"variables": ["x", "y"]},
        ideal=["x^2", "y"],
        n1_decomposition=[{"multiplicity": 2, "hilbert_value": 2}],
        invariants=["x", "y"],
    )


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "problems")
    os.makedirs(out, exist_ok=True)
    files = {
        "so3_x0.json": so3_x0(),
        "so3_x0prime.json": so3_x0prime(),
        "so3_connect.json": so3_connect(),
        "o3_connect.json": o3_connect(),
        "o3_x1.json": o3_x1(),
        "o3_x2.json": o3_x2(),
        "gl3_connect.json": gl3_connect(),
        "gl3.json": gl3(),
        "trivial_hilb2.json": trivial_hilb2(),
    }
    t = sp.symbols("t1:9")
    files["ref_K_so3.json"] = ideal_file(
        [str(s) for s in t], weights_making_homogeneous(ref_K_so3(), t), ref_K_so3(),
        ["K at the singular SO3 fixed point, 8 variables; weights chosen to make it homogeneous."])
    files["ref_K0_so3.json"] = ideal_file(
        [str(s) for s in t], weights_making_homogeneous(ref_K0_so3(), t), ref_K0_so3(),
        ["Ideal of the fiber over 0 near the singular SO3 fixed point, seven generators."])
    t = sp.symbols("t1:13")
    files["ref_K_gl3.json"] = ideal_file(
        [str(s) for s in t], weights_making_homogeneous(ref_K_gl3(), t), ref_K_gl3(),
        ["K at the GL3 fixed point, 12 variables; weights chosen to make it homogeneous."])
    files["ref_K0_gl3.json"] = ideal_file(
        [str(s) for s in t], weights_making_homogeneous(ref_K0_gl3(), t), ref_K0_gl3(),
        ["K + (t1) at the GL3 fixed point."])
    for name, data in files.items():
        with open(os.path.join(out, name), "w") as f:
            json.dump(data, f, indent=2)
            f.write("\n")


if __name__ == "__main__":
    main()
