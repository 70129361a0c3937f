"""Exact identity checkers.

Every identity is a multilinear residual ``LHS - RHS``; a checker evaluates
it on all basis tuples (complete by multilinearity) and returns one
``ViolationWitness`` per failing tuple, in lexicographic tuple order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct
from typing import Callable, Sequence

from .errors import InstanceError
from .linalg import LinearOperator, Vector, apply_product, vec_add, vec_scale, vec_sub
from .model import (
    AlgebraInstance, AlgebraKind, ViolationWitness, commutator_witnesses, validate_preamble,
)
from .scalars import Scalar


@dataclass(frozen=True)
class _Env:
    """Operations an identity may use. ``mul`` is the single product; dendriform
    identities use ``prec``/``succ``; RB identities use ``R`` and ``weight``."""

    mul: Callable | None
    prec: Callable | None
    succ: Callable | None
    al: Callable
    be: Callable
    R: Callable | None = None
    weight: Scalar | None = None


def _env(a: AlgebraInstance, label: str | None = None, R=None, weight=None) -> _Env:
    def bound(m):
        return lambda x, y: apply_product(m, x, y)

    al, be = a.alpha, a.beta

    if a.kind is AlgebraKind.BiHomDendriform and label is None:
        return _Env(None, bound(a.products["prec"]), bound(a.products["succ"]), al, be, R, weight)
    m = a.products[label] if label is not None else a.product
    return _Env(bound(m), None, None, al, be, R, weight)


# -- residuals ---------------------------------------------------------------

def _assoc(e, x, y, z):
    m, al, be = e.mul, e.al, e.be
    return vec_sub(m(al(x), m(y, z)), m(m(x, y), be(z)))


def _skew(e, x, y):
    m, al, be = e.mul, e.al, e.be
    return vec_add(m(be(x), al(y)), m(be(y), al(x)))


def _jacobi(e, x, y, z):
    m, al, be = e.mul, e.al, e.be

    def term(u, v, w):
        return m(be(be(u)), m(be(v), al(w)))

    return vec_add(vec_add(term(x, y, z), term(y, z, x)), term(z, x, y))


def _alt_jacobi(e, x, y, z):
    m, al, be = e.mul, e.al, e.be

    def term(u, v, w):
        return m(m(be(u), al(v)), al(al(w)))

    return vec_add(vec_add(term(x, y, z), term(y, z, x)), term(z, x, y))


def _left_leibniz(e, x, y, z):
    m, al, be = e.mul, e.al, e.be
    lhs = m(al(be(x)), m(y, z))
    rhs = vec_add(m(m(be(x), y), be(z)), m(be(y), m(al(x), z)))
    return vec_sub(lhs, rhs)


def _right_leibniz(e, x, y, z):
    m, al, be = e.mul, e.al, e.be
    lhs = m(m(x, y), al(be(z)))
    rhs = vec_add(m(m(x, be(z)), al(y)), m(al(x), m(y, al(z))))
    return vec_sub(lhs, rhs)


def _left_prelie(e, x, y, z):
    m, al, be = e.mul, e.al, e.be

    def assoc(u, v):
        return vec_sub(m(al(be(u)), m(al(v), z)), m(m(be(u), al(v)), be(z)))

    return vec_sub(assoc(x, y), assoc(y, x))


def _right_prelie(e, x, y, z):
    m, al, be = e.mul, e.al, e.be

    def assoc(v, w):
        return vec_sub(m(al(x), m(be(v), al(w))), m(m(x, be(v)), al(be(w))))

    return vec_sub(assoc(y, z), assoc(z, y))


def _dend_prec(e, x, y, z):
    p, s, al, be = e.prec, e.succ, e.al, e.be
    return vec_sub(p(p(x, y), be(z)), p(al(x), vec_add(p(y, z), s(y, z))))


def _dend_mixed(e, x, y, z):
    p, s, al, be = e.prec, e.succ, e.al, e.be
    return vec_sub(p(s(x, y), be(z)), s(al(x), p(y, z)))


def _dend_succ(e, x, y, z):
    p, s, al, be = e.prec, e.succ, e.al, e.be
    return vec_sub(s(al(x), s(y, z)), s(vec_add(p(x, y), s(x, y)), be(z)))


def _rota_baxter(e, x, y):
    m, R = e.mul, e.R
    Rx, Ry = R(x), R(y)
    inner = vec_add(vec_add(m(Rx, y), m(x, Ry)), vec_scale(e.weight, m(x, y)))
    return vec_sub(m(Rx, Ry), R(inner))


@dataclass(frozen=True)
class Identity:
    label: str
    arity: int
    residual: Callable
    # "cyclic": residual is a cyclic sum, so rotated index tuples agree exactly;
    # "symmetric": residual is invariant under swapping its two arguments
    symmetry: str | None = None


IDENTITIES = {i.label: i for i in (
    Identity("bihom-associativity", 3, _assoc),
    Identity("bihom-skew-symmetry", 2, _skew, "symmetric"),
    Identity("bihom-jacobi", 3, _jacobi, "cyclic"),
    Identity("alternative-jacobi", 3, _alt_jacobi, "cyclic"),
    Identity("left-bihom-leibniz", 3, _left_leibniz),
    Identity("right-bihom-leibniz", 3, _right_leibniz),
    Identity("left-bihom-prelie", 3, _left_prelie),
    Identity("right-bihom-prelie", 3, _right_prelie),
    Identity("dendriform-prec", 3, _dend_prec),
    Identity("dendriform-mixed", 3, _dend_mixed),
    Identity("dendriform-succ", 3, _dend_succ),
    Identity("rota-baxter", 2, _rota_baxter),
)}

KIND_IDENTITIES = {
    AlgebraKind.BiHomAssociative: ("bihom-associativity",),
    AlgebraKind.PlainAssociative: ("bihom-associativity",),
    AlgebraKind.BiHomLie: ("bihom-skew-symmetry", "bihom-jacobi"),
    AlgebraKind.PlainLie: ("bihom-skew-symmetry", "bihom-jacobi"),
    AlgebraKind.LeftBiHomLie: ("bihom-skew-symmetry", "left-bihom-leibniz"),
    AlgebraKind.RightBiHomLie: ("bihom-skew-symmetry", "right-bihom-leibniz"),
    AlgebraKind.LeftBiHomLeibniz: ("left-bihom-leibniz",),
    AlgebraKind.PlainLeftLeibniz: ("left-bihom-leibniz",),
    AlgebraKind.RightBiHomLeibniz: ("right-bihom-leibniz",),
    AlgebraKind.PlainRightLeibniz: ("right-bihom-leibniz",),
    AlgebraKind.LeftBiHomPreLie: ("left-bihom-prelie",),
    AlgebraKind.PlainLeftPreLie: ("left-bihom-prelie",),
    AlgebraKind.RightBiHomPreLie: ("right-bihom-prelie",),
    AlgebraKind.PlainRightPreLie: ("right-bihom-prelie",),
    AlgebraKind.BiHomDendriform: ("dendriform-prec", "dendriform-mixed", "dendriform-succ"),
}

_DENDRIFORM_IDS = {"dendriform-prec", "dendriform-mixed", "dendriform-succ"}


def evaluate_identity(label: str, a: AlgebraInstance, vectors: Sequence[Vector], *,
                      product_label: str | None = None, R=None, weight=None) -> Vector:
    """Residual of identity ``label`` on arbitrary vectors (not just basis ones)."""
    ident = IDENTITIES[label]
    if len(vectors) != ident.arity:
        raise ValueError(f"{label} takes {ident.arity} arguments")
    return ident.residual(_env(a, product_label, R, weight), *vectors)


def _check_arity(a: AlgebraInstance, label: str) -> None:
    dend = a.kind is AlgebraKind.BiHomDendriform
    if (label in _DENDRIFORM_IDS) != dend:
        raise InstanceError(f"identity {label} does not apply to kind {a.kind.value}")


def _orbit_key(idx: tuple, symmetry: str | None) -> tuple:
    if symmetry == "cyclic":
        return min(idx[k:] + idx[:k] for k in range(len(idx)))
    if symmetry == "symmetric":
        return tuple(sorted(idx))
    return idx


def run_identity(label: str, a: AlgebraInstance, *, product_label: str | None = None,
                 R=None, weight=None) -> list:
    """Evaluate identity ``label`` on every basis tuple; return the failures."""
    if product_label is None and label != "rota-baxter":
        _check_arity(a, label)
    ident = IDENTITIES[label]
    env = _env(a, product_label, R, weight)
    basis = [a.basis_vector(i) for i in range(a.dim)]
    out = []
    seen = {}
    for idx in _iproduct(range(a.dim), repeat=ident.arity):
        key = _orbit_key(idx, ident.symmetry)
        r = seen.get(key)
        if r is None:
            r = seen[key] = ident.residual(env, *(basis[i] for i in key))
        if any(r):
            out.append(ViolationWitness(label, idx, r))
    return out


def check_bihom_associativity(a):
    return run_identity("bihom-associativity", a)


def check_bihom_skew_symmetry(a):
    return run_identity("bihom-skew-symmetry", a)


def check_bihom_jacobi(a):
    return run_identity("bihom-jacobi", a)


def check_left_bihom_leibniz(a):
    return run_identity("left-bihom-leibniz", a)


def check_right_bihom_leibniz(a):
    return run_identity("right-bihom-leibniz", a)


def check_left_bihom_prelie(a):
    return run_identity("left-bihom-prelie", a)


def check_right_bihom_prelie(a):
    return run_identity("right-bihom-prelie", a)


def check_bihom_dendriform(a):
    return (run_identity("dendriform-prec", a) + run_identity("dendriform-mixed", a)
            + run_identity("dendriform-succ", a))


def check_alternative_jacobi(a):
    return run_identity("alternative-jacobi", a)


def check_rota_baxter(a: AlgebraInstance, product_label: str | None, R: LinearOperator,
                      weight) -> list:
    """RB condition of the given weight on all basis pairs, plus ``R`` commuting
    with both structure maps. Witness labels: ``rota-baxter``,
    ``rb-commutes-alpha``, ``rb-commutes-beta``."""
    if product_label is None:
        product_label = a.product_label
    if product_label not in a.products:
        raise InstanceError(f"no product labelled {product_label!r}")
    if R.dim != a.dim or R.field != a.field:
        raise InstanceError("operator dimension/field does not match the algebra")
    weight = a.field(weight)
    out = run_identity("rota-baxter", a, product_label=product_label, R=R, weight=weight)
    out += commutator_witnesses(R, a.alpha, "rb-commutes-alpha")
    out += commutator_witnesses(R, a.beta, "rb-commutes-beta")
    return out


def kind_identities(kind: AlgebraKind) -> tuple:
    return KIND_IDENTITIES[kind]


def check_kind(a: AlgebraInstance, kind: AlgebraKind | None = None) -> list:
    """Preamble plus the identity set of ``kind`` (default: the declared kind)."""
    kind = kind or a.kind
    if (kind is AlgebraKind.BiHomDendriform) != (a.kind is AlgebraKind.BiHomDendriform):
        raise InstanceError(f"cannot check a {a.kind.value} instance as {kind.value}")
    out = validate_preamble(a)
    for label in KIND_IDENTITIES[kind]:
        out += run_identity(label, a)
    return out


def rgraf_witnesses(new: AlgebraInstance, old: AlgebraInstance, R: LinearOperator) -> list:
    """Witnesses for ``R({x,y}) != [R x, R y]`` where ``{,}`` is ``new``'s product
    and ``[,]`` is ``old``'s."""
    out = []
    nm, om = new.product, old.product
    for i, j in _iproduct(range(new.dim), repeat=2):
        r = vec_sub(R(nm.on_basis(i, j)), apply_product(om, R.column(i), R.column(j)))
        if any(r):
            out.append(ViolationWitness("rb-homomorphism", (i, j), r))
    return out


__all__ = [
    "IDENTITIES", "KIND_IDENTITIES", "Identity", "evaluate_identity", "run_identity",
    "check_bihom_associativity", "check_bihom_skew_symmetry", "check_bihom_jacobi",
    "check_left_bihom_leibniz", "check_right_bihom_leibniz", "check_left_bihom_prelie",
    "check_right_bihom_prelie", "check_bihom_dendriform", "check_alternative_jacobi",
    "check_rota_baxter", "check_kind", "kind_identities", "rgraf_witnesses",
]
