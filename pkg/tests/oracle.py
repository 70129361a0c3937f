"""Independent second route for every identity.

Products are contracted with ``numpy.einsum`` over object arrays of exact
scalars and maps are applied with matrix-vector ``@``, so nothing here goes
through the package's ``apply_product``/``LinearOperator.__call__`` or the
checkers' residual functions. Formulas are retyped from their definitions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np


def obj_array(nested) -> np.ndarray:
    arr = np.empty(np.shape(np.array(nested, dtype=object)), dtype=object)
    arr[...] = np.array(nested, dtype=object)
    return arr


class Oracle:
    def __init__(self, a, R=None, weight=0):
        self.n = a.dim
        self.c = {lbl: obj_array([[list(v) for v in row] for row in m.coeffs])
                  for lbl, m in a.products.items()}
        self.A = obj_array([list(r) for r in a.alpha.rows])
        self.B = obj_array([list(r) for r in a.beta.rows])
        self.R = None if R is None else obj_array([list(r) for r in R.rows])
        self.lam = weight
        self.zero = a.field.zero
        self.one = a.field.one
        self.label = next(iter(a.products)) if len(a.products) == 1 else None

    def e(self, i) -> np.ndarray:
        v = np.empty(self.n, dtype=object)
        v[...] = self.zero
        v[i] = self.one
        return v

    def mul(self, x, y, label=None):
        return np.einsum("a,b,abk->k", x, y, self.c[label or self.label])

    def P(self, x, y):
        return self.mul(x, y, "prec")

    def S(self, x, y):
        return self.mul(x, y, "succ")

    def al(self, x):
        return self.A @ x

    def be(self, x):
        return self.B @ x

    # identities, each returning LHS - RHS

    def assoc(self, x, y, z):
        m, A, B = self.mul, self.al, self.be
        return m(A(x), m(y, z)) - m(m(x, y), B(z))

    def skew(self, x, y):
        m, A, B = self.mul, self.al, self.be
        return m(B(x), A(y)) + m(B(y), A(x))

    def jacobi(self, x, y, z):
        m, A, B = self.mul, self.al, self.be
        return sum(m(B(B(u)), m(B(v), A(w))) for u, v, w in ((x, y, z), (y, z, x), (z, x, y)))

    def alt_jacobi(self, x, y, z):
        m, A, B = self.mul, self.al, self.be
        return sum(m(m(B(u), A(v)), A(A(w))) for u, v, w in ((x, y, z), (y, z, x), (z, x, y)))

    def left_leibniz(self, x, y, z):
        m, A, B = self.mul, self.al, self.be
        return m(A(B(x)), m(y, z)) - m(m(B(x), y), B(z)) - m(B(y), m(A(x), z))

    def right_leibniz(self, x, y, z):
        m, A, B = self.mul, self.al, self.be
        return m(m(x, y), A(B(z))) - m(m(x, B(z)), A(y)) - m(A(x), m(y, A(z)))

    def _lassoc(self, x, y, z):
        m, A, B = self.mul, self.al, self.be
        return m(A(B(x)), m(A(y), z)) - m(m(B(x), A(y)), B(z))

    def left_prelie(self, x, y, z):
        return self._lassoc(x, y, z) - self._lassoc(y, x, z)

    def _rassoc(self, x, y, z):
        m, A, B = self.mul, self.al, self.be
        return m(A(x), m(B(y), A(z))) - m(m(x, B(y)), A(B(z)))

    def right_prelie(self, x, y, z):
        return self._rassoc(x, y, z) - self._rassoc(x, z, y)

    def dend_prec(self, x, y, z):
        P, S, A, B = self.P, self.S, self.al, self.be
        return P(P(x, y), B(z)) - P(A(x), P(y, z) + S(y, z))

    def dend_mixed(self, x, y, z):
        P, S, A, B = self.P, self.S, self.al, self.be
        return P(S(x, y), B(z)) - S(A(x), P(y, z))

    def dend_succ(self, x, y, z):
        P, S, A, B = self.P, self.S, self.al, self.be
        return S(A(x), S(y, z)) - S(P(x, y) + S(x, y), B(z))

    def rota_baxter(self, x, y):
        m, R = self.mul, self.R
        return m(R @ x, R @ y) - R @ (m(R @ x, y) + m(x, R @ y) + self.lam * m(x, y))

    ARITY = {"assoc": 3, "skew": 2, "jacobi": 3, "alt_jacobi": 3, "left_leibniz": 3,
             "right_leibniz": 3, "left_prelie": 3, "right_prelie": 3, "dend_prec": 3,
             "dend_mixed": 3, "dend_succ": 3, "rota_baxter": 2}

    def basis_residuals(self, name: str) -> dict:
        """Nonzero residuals on basis tuples, keyed by index tuple."""
        fn = getattr(self, name)
        out = {}
        for idx in product(range(self.n), repeat=self.ARITY[name]):
            r = fn(*(self.e(i) for i in idx))
            if any(v != 0 for v in r):
                out[idx] = tuple(r)
        return out

    def holds(self, name: str) -> bool:
        return not self.basis_residuals(name)


# checker label -> oracle method
LABEL_TO_ORACLE = {
    "bihom-associativity": "assoc",
    "bihom-skew-symmetry": "skew",
    "bihom-jacobi": "jacobi",
    "alternative-jacobi": "alt_jacobi",
    "left-bihom-leibniz": "left_leibniz",
    "right-bihom-leibniz": "right_leibniz",
    "left-bihom-prelie": "left_prelie",
    "right-bihom-prelie": "right_prelie",
    "dendriform-prec": "dend_prec",
    "dendriform-mixed": "dend_mixed",
    "dendriform-succ": "dend_succ",
}


def preamble_holds(a) -> bool:
    """Commuting maps and multiplicativity, by matrix algebra on the arrays."""
    o = Oracle(a)
    if not np.array_equal(o.A @ o.B, o.B @ o.A):
        return False
    for lbl in o.c:
        for f in (o.A, o.B):
            for i, j in product(range(o.n), repeat=2):
                lhs = f @ o.mul(o.e(i), o.e(j), lbl)
                rhs = o.mul(f @ o.e(i), f @ o.e(j), lbl)
                if any(u != v for u, v in zip(lhs, rhs)):
                    return False
    return True


def random_rational_vector(rng, n, lo=-9, hi=9) -> np.ndarray:
    v = np.empty(n, dtype=object)
    for i in range(n):
        den = 0
        while den == 0:
            den = rng.randint(lo, hi)
        v[i] = Fraction(rng.randint(lo, hi), den)
    return v


def rb_solutions_fp(c_int, p, weight, dim, commute_with=()) -> list:
    """Pure-Python brute force over every dim x dim matrix mod p; returns row-major
    tuples of entries of each RB operator (lexicographic), by explicit index sums."""
    rng = range(dim)
    out = []
    for flat in product(range(p), repeat=dim * dim):
        R = [flat[r * dim:(r + 1) * dim] for r in rng]
        if any(sum(R[i][k] * F[k][j] - F[i][k] * R[k][j] for k in rng) % p
               for F in commute_with for i in rng for j in rng):
            continue
        ok = True
        for i, j in product(rng, repeat=2):
            # R(e_i)R(e_j) and R(R(e_i)e_j + e_iR(e_j) + w e_ie_j), coordinate t
            lhs = [sum(R[a][i] * R[b][j] * c_int[a][b][t] for a in rng for b in rng) for t in rng]
            inner = [sum(R[a][i] * c_int[a][j][t] for a in rng) + sum(R[b][j] * c_int[i][b][t] for b in rng)
                     + weight * c_int[i][j][t] for t in rng]
            rhs = [sum(R[t][s] * inner[s] for s in rng) for t in rng]
            if any((u - v) % p for u, v in zip(lhs, rhs)):
                ok = False
                break
        if ok:
            out.append(flat)
    return out
