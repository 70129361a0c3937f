"""Constructions producing new algebras from old data.

Every construction checks its hypotheses first and raises ``HypothesisError``
with witnesses when one fails. Passing ``unchecked=True`` skips the checks;
the result is then marked ``unverified``.
"""

from __future__ import annotations

from .checkers import check_rota_baxter
from .errors import HypothesisError, InstanceError, NotBijectiveError
from .linalg import (
    BilinearProduct, LinearOperator, apply_product, conjugate_product_by_maps, op_compose,
    op_inverse,
)
from .model import (
    AlgebraInstance, AlgebraKind, commutator_witnesses, is_bijective_pair,
    multiplicativity_witnesses,
)

K = AlgebraKind

_LIE_LIKE = {K.BiHomLie, K.LeftBiHomLie, K.RightBiHomLie, K.LeftBiHomLeibniz,
             K.RightBiHomLeibniz, K.PlainLie, K.PlainLeftLeibniz, K.PlainRightLeibniz}
_PRELIE = {K.LeftBiHomPreLie, K.RightBiHomPreLie, K.PlainLeftPreLie, K.PlainRightPreLie}
_ASSOC = {K.BiHomAssociative, K.PlainAssociative}


def _require(clause: str, witnesses) -> None:
    if witnesses:
        raise HypothesisError(clause, witnesses)


def _require_kind(a: AlgebraInstance, allowed, what: str) -> None:
    if a.kind not in allowed:
        names = ", ".join(sorted(k.value for k in allowed))
        raise HypothesisError("kind", message=f"{what} needs kind in {{{names}}}, got {a.kind.value}")


def _inverses(a: AlgebraInstance):
    try:
        return op_inverse(a.alpha), op_inverse(a.beta)
    except NotBijectiveError as exc:
        raise NotBijectiveError(f"{a.name}: structure maps must be bijective ({exc})") from None


def _require_rb(a: AlgebraInstance, R: LinearOperator, weight, label=None) -> None:
    _require("rota-baxter", check_rota_baxter(a, label, R, weight))


# -- twists ------------------------------------------------------------------

def twist_hypotheses(a: AlgebraInstance, alpha2: LinearOperator, beta2: LinearOperator) -> list:
    """Witnesses against the twist hypotheses: all four maps pairwise commuting
    and both new maps multiplicative for every product of ``a``."""
    if alpha2.dim != a.dim or beta2.dim != a.dim:
        raise InstanceError("twisting maps must match the algebra's dimension")
    out = []
    for (n1, f), (n2, g) in (
        (("alpha2", alpha2), ("beta2", beta2)),
        (("alpha", a.alpha), ("alpha2", alpha2)), (("alpha", a.alpha), ("beta2", beta2)),
        (("beta", a.beta), ("alpha2", alpha2)), (("beta", a.beta), ("beta2", beta2)),
        (("alpha", a.alpha), ("beta", a.beta)),
    ):
        out += commutator_witnesses(f, g, f"commute[{n1},{n2}]")
    for label in sorted(a.products):
        m = a.products[label]
        out += multiplicativity_witnesses(m, alpha2, f"alpha2-multiplicative[{label}]")
        out += multiplicativity_witnesses(m, beta2, f"beta2-multiplicative[{label}]")
    return out


def yau_twist(a: AlgebraInstance, alpha2: LinearOperator, beta2: LinearOperator, *,
              unchecked: bool = False, name: str | None = None) -> AlgebraInstance:
    """Product ``m'(x, y) = m(alpha2 x, beta2 y)`` with maps ``(alpha alpha2, beta beta2)``.

    Plain kinds are promoted to their BiHom counterpart; BiHom kinds are kept.
    A dendriform pair is twisted componentwise.
    """
    if not unchecked:
        w = twist_hypotheses(a, alpha2, beta2)
        if w:
            raise HypothesisError(w[0].identity_label.split("[")[0], w)
    products = {label: conjugate_product_by_maps(m, alpha2, beta2) for label, m in a.products.items()}
    return AlgebraInstance(
        name or f"{a.name}~twist", a.kind.bihom, a.basis, products,
        op_compose(a.alpha, alpha2), op_compose(a.beta, beta2), unverified=unchecked or a.unverified)


def generalized_twist(a: AlgebraInstance, alpha2: LinearOperator, beta2: LinearOperator, *,
                      unchecked: bool = False, name: str | None = None) -> AlgebraInstance:
    """Twist of an already-BiHom instance by two commuting morphisms; same
    formula as ``yau_twist``, kind preserved."""
    return yau_twist(a, alpha2, beta2, unchecked=unchecked, name=name)


# -- derived products --------------------------------------------------------

def prelie_derived_bracket(a: AlgebraInstance, *, unchecked: bool = False) -> AlgebraInstance:
    """``[x, y] = x.y - (alpha^-1 beta y).(alpha beta^-1 x)``; result tagged BiHomLie."""
    if not unchecked:
        _require_kind(a, _PRELIE, "prelie_derived_bracket")
    ai, bi = _inverses(a)
    left = op_compose(ai, a.beta)    # alpha^-1 beta
    right = op_compose(a.alpha, bi)  # alpha beta^-1
    m = a.product
    n = a.dim
    swapped = BilinearProduct(a.field, tuple(
        tuple(apply_product(m, left.column(j), right.column(i)) for j in range(n)) for i in range(n)))
    return AlgebraInstance(f"{a.name}~bracket", K.BiHomLie, a.basis, {"mu": m - swapped},
                           a.alpha, a.beta, unverified=unchecked or a.unverified)


def _rb_prelie(a, R, side, unchecked):
    if not unchecked:
        allowed = {K.PlainLie, K.LeftBiHomLie if side == "left" else K.RightBiHomLie}
        if a.kind is K.BiHomLie and is_bijective_pair(a):
            allowed.add(K.BiHomLie)
        _require_kind(a, allowed, f"rb_prelie_{side}")
        _require_rb(a, R, 0)
    ident = LinearOperator.identity(a.dim, a.field)
    m = (conjugate_product_by_maps(a.product, R, ident) if side == "left"
         else conjugate_product_by_maps(a.product, ident, R))
    kind = K.LeftBiHomPreLie if side == "left" else K.RightBiHomPreLie
    return AlgebraInstance(f"{a.name}~rb-prelie-{side}", kind, a.basis, {"mu": m},
                           a.alpha, a.beta, unverified=unchecked or a.unverified)


def rb_prelie_left(a: AlgebraInstance, R: LinearOperator, *, unchecked: bool = False) -> AlgebraInstance:
    """``x.y = [R x, y]`` for a weight-0 RB operator ``R`` on a left BiHom-Lie algebra.

    A BiHomLie-tagged input is accepted when its maps are bijective, since the
    two notions then coincide.
    """
    return _rb_prelie(a, R, "left", unchecked)


def rb_prelie_right(a: AlgebraInstance, R: LinearOperator, *, unchecked: bool = False) -> AlgebraInstance:
    """``x.y = [x, R y]``; mirror image of ``rb_prelie_left``."""
    return _rb_prelie(a, R, "right", unchecked)


def _rb_sum_product(m: BilinearProduct, R: LinearOperator, weight) -> BilinearProduct:
    ident = LinearOperator.identity(m.dim, m.field)
    return (conjugate_product_by_maps(m, R, ident) + conjugate_product_by_maps(m, ident, R)
            + m.scale(weight))


def rb_derived_bracket(a: AlgebraInstance, R: LinearOperator, weight, *,
                       unchecked: bool = False) -> AlgebraInstance:
    """``{x, y} = [R x, y] + [x, R y] + weight [x, y]``; kind preserved."""
    weight = a.field(weight)
    if not unchecked:
        _require_kind(a, _LIE_LIKE, "rb_derived_bracket")
        _require_rb(a, R, weight)
    return AlgebraInstance(f"{a.name}~rb-bracket", a.kind, a.basis,
                           {a.product_label: _rb_sum_product(a.product, R, weight)},
                           a.alpha, a.beta, unverified=unchecked or a.unverified)


def rb_assoc_derived_product(a: AlgebraInstance, R: LinearOperator, weight, *,
                             unchecked: bool = False) -> AlgebraInstance:
    """``a * b = R(a) b + a R(b) + weight a b`` on a (BiHom-)associative algebra."""
    weight = a.field(weight)
    if not unchecked:
        _require_kind(a, _ASSOC, "rb_assoc_derived_product")
        _require_rb(a, R, weight)
    return AlgebraInstance(f"{a.name}~rb-assoc", a.kind, a.basis,
                           {a.product_label: _rb_sum_product(a.product, R, weight)},
                           a.alpha, a.beta, unverified=unchecked or a.unverified)


def rb_dendriform(a: AlgebraInstance, R: LinearOperator, weight, *,
                  unchecked: bool = False) -> AlgebraInstance:
    """Dendriform pair from an RB operator on a (BiHom-)associative algebra:
    ``x < y = x R(y) + weight x y`` and ``x > y = R(x) y``.

    At weight 0 this is the classical ``x < y = x R(y)``, ``x > y = R(x) y``.
    """
    weight = a.field(weight)
    if not unchecked:
        _require_kind(a, _ASSOC, "rb_dendriform")
        _require_rb(a, R, weight)
    m = a.product
    ident = LinearOperator.identity(a.dim, a.field)
    prec = conjugate_product_by_maps(m, ident, R) + m.scale(weight)
    succ = conjugate_product_by_maps(m, R, ident)
    return AlgebraInstance(f"{a.name}~rb-dendriform", K.BiHomDendriform, a.basis,
                           {"prec": prec, "succ": succ}, a.alpha, a.beta,
                           unverified=unchecked or a.unverified)


def dendriform_to_prelie(a: AlgebraInstance, *, unchecked: bool = False):
    """Split a dendriform algebra with bijective maps into (left, right) pre-Lie:

    ``x |> y = x > y - (alpha^-1 beta y) < (alpha beta^-1 x)``
    ``x <| y = x < y - (alpha^-1 beta y) > (alpha beta^-1 x)``
    """
    if not unchecked:
        _require_kind(a, {K.BiHomDendriform}, "dendriform_to_prelie")
    ai, bi = _inverses(a)
    left = op_compose(ai, a.beta)
    right = op_compose(a.alpha, bi)
    prec, succ = a.products["prec"], a.products["succ"]
    n = a.dim

    def swapped(m):
        return BilinearProduct(a.field, tuple(
            tuple(apply_product(m, left.column(j), right.column(i)) for j in range(n))
            for i in range(n)))

    flag = unchecked or a.unverified
    lhd = AlgebraInstance(f"{a.name}~left-prelie", K.LeftBiHomPreLie, a.basis,
                          {"mu": succ - swapped(prec)}, a.alpha, a.beta, unverified=flag)
    rhd = AlgebraInstance(f"{a.name}~right-prelie", K.RightBiHomPreLie, a.basis,
                          {"mu": prec - swapped(succ)}, a.alpha, a.beta, unverified=flag)
    return lhd, rhd


__all__ = [
    "yau_twist", "generalized_twist", "twist_hypotheses", "prelie_derived_bracket",
    "rb_prelie_left", "rb_prelie_right", "rb_derived_bracket", "rb_assoc_derived_product",
    "rb_dendriform", "dendriform_to_prelie",
]
