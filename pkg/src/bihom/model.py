"""Algebra records: kinds, instances, violation witnesses, and the shared
preamble (commuting structure maps + multiplicativity) every kind requires."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field, replace
from itertools import product as _iproduct
from types import MappingProxyType
from typing import Mapping

from .errors import InstanceError
from .linalg import (
    BilinearProduct, LinearOperator, Vector, apply_product, basis_vector, op_compose, vec_sub,
)
from .scalars import Field, format_scalar


class AlgebraKind(enum.Enum):
    BiHomAssociative = "BiHomAssociative"
    BiHomLie = "BiHomLie"
    LeftBiHomLie = "LeftBiHomLie"
    RightBiHomLie = "RightBiHomLie"
    LeftBiHomLeibniz = "LeftBiHomLeibniz"
    RightBiHomLeibniz = "RightBiHomLeibniz"
    LeftBiHomPreLie = "LeftBiHomPreLie"
    RightBiHomPreLie = "RightBiHomPreLie"
    BiHomDendriform = "BiHomDendriform"
    PlainLie = "PlainLie"
    PlainLeftPreLie = "PlainLeftPreLie"
    PlainRightPreLie = "PlainRightPreLie"
    PlainLeftLeibniz = "PlainLeftLeibniz"
    PlainRightLeibniz = "PlainRightLeibniz"
    PlainAssociative = "PlainAssociative"

    @property
    def is_plain(self) -> bool:
        return self.value.startswith("Plain")

    @property
    def bihom(self) -> "AlgebraKind":
        """The BiHom kind a plain kind becomes under a Yau twist."""
        return _PLAIN_TO_BIHOM.get(self, self)


_PLAIN_TO_BIHOM = {
    AlgebraKind.PlainLie: AlgebraKind.BiHomLie,
    AlgebraKind.PlainLeftPreLie: AlgebraKind.LeftBiHomPreLie,
    AlgebraKind.PlainRightPreLie: AlgebraKind.RightBiHomPreLie,
    AlgebraKind.PlainLeftLeibniz: AlgebraKind.LeftBiHomLeibniz,
    AlgebraKind.PlainRightLeibniz: AlgebraKind.RightBiHomLeibniz,
    AlgebraKind.PlainAssociative: AlgebraKind.BiHomAssociative,
}

_FLIP = {
    AlgebraKind.LeftBiHomLie: AlgebraKind.RightBiHomLie,
    AlgebraKind.LeftBiHomLeibniz: AlgebraKind.RightBiHomLeibniz,
    AlgebraKind.LeftBiHomPreLie: AlgebraKind.RightBiHomPreLie,
    AlgebraKind.PlainLeftPreLie: AlgebraKind.PlainRightPreLie,
    AlgebraKind.PlainLeftLeibniz: AlgebraKind.PlainRightLeibniz,
}
_FLIP.update({v: k for k, v in list(_FLIP.items())})

DENDRIFORM_LABELS = ("prec", "succ")
DEFAULT_LABEL = "mu"


@dataclass(frozen=True)
class ViolationWitness:
    """An identity label, the basis tuple it fails on, and the nonzero residual."""

    identity_label: str
    basis_indices: tuple
    residual: Vector

    def __post_init__(self):
        if not any(self.residual):
            raise ValueError("a witness must carry a nonzero residual")
        object.__setattr__(self, "basis_indices", tuple(self.basis_indices))
        object.__setattr__(self, "residual", tuple(self.residual))

    def render(self, labels=None) -> str:
        names = [labels[i] if labels else str(i) for i in self.basis_indices]
        res = ", ".join(format_scalar(x) for x in self.residual)
        return f"{self.identity_label} at ({', '.join(names)}): residual [{res}]"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class AlgebraInstance:
    name: str
    kind: AlgebraKind
    basis: tuple
    products: Mapping[str, BilinearProduct]
    alpha: LinearOperator
    beta: LinearOperator
    unverified: bool = dc_field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "products", MappingProxyType(dict(self.products)))
        if not isinstance(self.kind, AlgebraKind):
            object.__setattr__(self, "kind", AlgebraKind(self.kind))
        n = len(self.basis)
        if n < 1:
            raise InstanceError("dimension must be positive")
        if len(set(self.basis)) != n:
            raise InstanceError("basis labels must be distinct")
        fld = self.alpha.field
        for label, m in self.products.items():
            if m.dim != n:
                raise InstanceError(f"product {label!r} has dim {m.dim}, expected {n}")
            if m.field != fld:
                raise InstanceError(f"product {label!r} is over {m.field}, maps over {fld}")
        for nm, op in (("alpha", self.alpha), ("beta", self.beta)):
            if op.dim != n:
                raise InstanceError(f"{nm} has dim {op.dim}, expected {n}")
            if op.field != fld:
                raise InstanceError(f"{nm} is over {op.field}, expected {fld}")
        labels = set(self.products)
        if self.kind is AlgebraKind.BiHomDendriform:
            if labels != set(DENDRIFORM_LABELS):
                raise InstanceError("a dendriform instance needs exactly the products 'prec' and 'succ'")
        elif len(labels) != 1:
            raise InstanceError(f"kind {self.kind.value} needs exactly one product, got {sorted(labels)}")
        if self.kind.is_plain and not (self.alpha.is_identity() and self.beta.is_identity()):
            raise InstanceError(f"kind {self.kind.value} requires alpha = beta = identity")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> Field:
        return self.alpha.field

    @property
    def product_label(self) -> str:
        if len(self.products) != 1:
            raise InstanceError(f"kind {self.kind.value} has {len(self.products)} products")
        return next(iter(self.products))

    @property
    def product(self) -> BilinearProduct:
        return self.products[self.product_label]

    def with_product(self, m: BilinearProduct, label: str | None = None) -> "AlgebraInstance":
        label = label or self.product_label
        return replace(self, products={**self.products, label: m})

    def basis_vector(self, i: int) -> Vector:
        return basis_vector(self.field, self.dim, i)


def make_instance(name, kind, basis, products, alpha=None, beta=None, *, field=None,
                  unverified=False) -> AlgebraInstance:
    """Convenience constructor; a bare product becomes ``{"mu": product}`` and
    missing maps default to the identity."""
    if isinstance(products, BilinearProduct):
        products = {DEFAULT_LABEL: products}
    fld = field or next(iter(products.values())).field
    n = len(basis)
    alpha = alpha or LinearOperator.identity(n, fld)
    beta = beta or LinearOperator.identity(n, fld)
    return AlgebraInstance(name, AlgebraKind(kind) if isinstance(kind, str) else kind,
                           tuple(basis), products, alpha, beta, unverified)


# -- preamble ----------------------------------------------------------------

def commutator_witnesses(f: LinearOperator, g: LinearOperator, label: str) -> list:
    """One witness per basis vector ``e_j`` with ``f(g(e_j)) != g(f(e_j))``."""
    fg, gf = op_compose(f, g), op_compose(g, f)
    out = []
    for j in range(f.dim):
        r = vec_sub(fg.column(j), gf.column(j))
        if any(r):
            out.append(ViolationWitness(label, (j,), r))
    return out


def multiplicativity_witnesses(m: BilinearProduct, f: LinearOperator, label: str) -> list:
    """Witnesses for ``f(m(e_i, e_j)) != m(f e_i, f e_j)``, lexicographic in (i, j)."""
    n = m.dim
    if f.is_identity() and f.dim == n and f.field == m.field:
        return []
    out = []
    for i, j in _iproduct(range(n), repeat=2):
        r = vec_sub(f(m.on_basis(i, j)), apply_product(m, f.column(i), f.column(j)))
        if any(r):
            out.append(ViolationWitness(label, (i, j), r))
    return out


def validate_preamble(a: AlgebraInstance) -> list:
    out = commutator_witnesses(a.alpha, a.beta, "maps-commute")
    for label in sorted(a.products):
        m = a.products[label]
        out += multiplicativity_witnesses(m, a.alpha, f"alpha-multiplicative[{label}]")
        out += multiplicativity_witnesses(m, a.beta, f"beta-multiplicative[{label}]")
    return out


def is_bijective_pair(a: AlgebraInstance) -> bool:
    return a.alpha.is_invertible() and a.beta.is_invertible()


def opposite_flip(a: AlgebraInstance) -> AlgebraInstance:
    """Transpose the product, swap (alpha, beta), and flip left <-> right."""
    try:
        kind = _FLIP[a.kind]
    except KeyError:
        raise InstanceError(f"kind {a.kind.value} has no left/right flip") from None
    label = a.product_label
    return replace(a, kind=kind, products={label: a.product.transpose()},
                   alpha=a.beta, beta=a.alpha)
