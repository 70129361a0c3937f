"""Bundled seed algebras with hand-auditable structure constants.

Each entry carries a list of suggested ``(alpha2, beta2)`` pairs that satisfy
the Yau-twist hypotheses (commuting, multiplicative). All entries are over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import BilinearProduct, LinearOperator
from .model import AlgebraInstance, AlgebraKind, make_instance
from .scalars import QQ


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    instance: AlgebraInstance
    notes: str
    suggested_maps: tuple


def _op(rows):
    return LinearOperator(QQ, rows)


def _diag(*vals):
    return LinearOperator.diag([Fraction(v) for v in vals], QQ)


def _ident(n):
    return LinearOperator.identity(n, QQ)


def _build():
    entries = []

    def add(id_, kind, basis, table, notes, maps, products=None):
        n = len(basis)
        if products is None:
            products = {"mu": BilinearProduct.from_table(n, QQ, table)}
        inst = make_instance(id_, kind, basis, products, field=QQ)
        entries.append(CatalogEntry(id_, inst, notes, tuple(maps)))

    add("abelian2", AlgebraKind.PlainLie, ("e1", "e2"), [],
        "Abelian Lie algebra of dimension 2: every bracket is zero.",
        [(_ident(2), _ident(2)), (_diag(2, 3), _diag(5, 7)), (_op([[1, 1], [0, 1]]), _ident(2))])

    add("aff1", AlgebraKind.PlainLie, ("e1", "e2"),
        [(0, 1, 1, 1), (1, 0, 1, -1)],
        "Non-abelian 2-dimensional Lie algebra aff(1): [e1, e2] = e2. "
        "diag(1, t) is an automorphism for every t != 0.",
        [(_ident(2), _ident(2)), (_diag(1, 2), _diag(1, 3)), (_diag(1, 5), _diag(1, 7))])

    add("sl2", AlgebraKind.PlainLie, ("h", "e", "f"),
        [(0, 1, 1, 2), (1, 0, 1, -2), (0, 2, 2, -2), (2, 0, 2, 2), (1, 2, 0, 1), (2, 1, 0, -1)],
        "sl(2) in the Chevalley basis: [h, e] = 2e, [h, f] = -2f, [e, f] = h. "
        "The torus diag(1, t, 1/t) acts by automorphisms.",
        [(_ident(3), _ident(3)), (_diag(1, 2, Fraction(1, 2)), _diag(1, 3, Fraction(1, 3))),
         (_diag(1, 3, Fraction(1, 3)), _ident(3))])

    add("heis3", AlgebraKind.PlainLie, ("e1", "e2", "e3"),
        [(0, 1, 2, 1), (1, 0, 2, -1)],
        "3-dimensional Heisenberg algebra: [e1, e2] = e3, e3 central. "
        "diag(a, b, ab) is an automorphism.",
        [(_ident(3), _ident(3)), (_diag(1, 2, 2), _diag(3, 1, 3)), (_diag(2, 3, 6), _diag(-1, 2, -2))])

    add("leibniz2", AlgebraKind.PlainLeftLeibniz, ("e1", "e2"),
        [(0, 0, 1, 1)],
        "Nilpotent non-Lie Leibniz algebra: [e1, e1] = e2, all else zero. "
        "All iterated brackets vanish, so it is left and right Leibniz. "
        "diag(a, a^2) is an automorphism.",
        [(_ident(2), _ident(2)), (_diag(2, 4), _diag(3, 9)), (_diag(-1, 1), _diag(2, 4))])

    add("leibniz2l", AlgebraKind.PlainLeftLeibniz, ("e1", "e2"),
        [(0, 0, 1, 1), (0, 1, 1, 1)],
        "Left Leibniz, not right Leibniz: [e1, e1] = e2, [e1, e2] = e2 "
        "(left multiplications are derivations). The automorphisms "
        "e1 -> e1 + b e2, e2 -> (1 + b) e2 pairwise commute.",
        [(_ident(2), _ident(2)), (_op([[1, 0], [1, 2]]), _op([[1, 0], [2, 3]]))])

    add("prelie2", AlgebraKind.PlainLeftPreLie, ("e1", "e2"),
        [(0, 0, 1, 1)],
        "Commutative product e1 e1 = e2, all else zero (associative, hence "
        "left and right pre-Lie). diag(a, a^2) is an automorphism.",
        [(_ident(2), _ident(2)), (_diag(2, 4), _diag(3, 9)), (_diag(-1, 1), _diag(-2, 4))])

    add("prelie2l", AlgebraKind.PlainLeftPreLie, ("e1", "e2"),
        [(0, 0, 0, 2), (0, 1, 1, 1), (1, 1, 0, 1)],
        "Left pre-Lie, not right pre-Lie and not associative: e1 e1 = 2 e1, "
        "e1 e2 = e2, e2 e2 = e1, e2 e1 = 0. diag(1, -1) is an automorphism.",
        [(_ident(2), _ident(2)), (_diag(1, -1), _ident(2))])

    add("z2group", AlgebraKind.PlainAssociative, ("1", "g"),
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
        "Group algebra of Z/2 = {1, g}, g^2 = 1. g -> -g is an automorphism.",
        [(_ident(2), _ident(2)), (_diag(1, -1), _ident(2)), (_diag(1, -1), _diag(1, -1))])

    add("tri2", AlgebraKind.PlainAssociative, ("E11", "E12", "E22"),
        [(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
        "Upper triangular 2x2 matrices with matrix units E11, E12, E22. "
        "Conjugation by diag(1, t) gives the automorphism diag(1, t, 1).",
        [(_ident(3), _ident(3)), (_diag(1, 2, 1), _diag(1, 3, 1)), (_diag(1, -1, 1), _diag(1, 5, 1))])

    return {e.id: e for e in entries}


_ENTRIES = None


def _entries():
    global _ENTRIES
    if _ENTRIES is None:
        _ENTRIES = _build()
        _ENTRIES.update(_derived_entries(_ENTRIES))
    return _ENTRIES


def _derived_entries(base):
    """Entries obtained from the base catalog by a certified construction."""
    from .constructions import rb_dendriform

    z2 = base["z2group"].instance
    R = LinearOperator(QQ, ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2))))
    dend = rb_dendriform(z2, R, -1)
    dend = AlgebraInstance("z2dend", dend.kind, dend.basis, dend.products, dend.alpha, dend.beta)
    tri = base["tri2"].instance
    tdend = rb_dendriform(tri, _diag(1, 1, 0), -1)
    tdend = AlgebraInstance("tri2dend", tdend.kind, tdend.basis, tdend.products, tdend.alpha, tdend.beta)
    return {
        "z2dend": CatalogEntry(
            "z2dend", dend,
            "Dendriform pair on the Z/2 group algebra from the weight -1 Rota-Baxter "
            "operator R = projection onto (1 + g)/2 along (1 - g)/2: "
            "x < y = x R(y) - x y, x > y = R(x) y.",
            ((_ident(2), _ident(2)),)),
        "tri2dend": CatalogEntry(
            "tri2dend", tdend,
            "Dendriform pair on tri2 from the weight -1 Rota-Baxter operator "
            "R = projection onto span(E11, E12) along span(E22) (both subalgebras): "
            "x < y = x R(y) - x y, x > y = R(x) y.",
            ((_ident(3), _ident(3)), (_diag(1, 2, 1), _diag(1, 3, 1)))),
    }


def catalog_list() -> list:
    return list(_entries())


def catalog_get(id: str) -> CatalogEntry:
    """Return the entry. Entries are immutable, so sharing is an independent copy."""
    try:
        return _entries()[id]
    except KeyError:
        raise KeyError(f"unknown catalog entry {id!r}") from None
