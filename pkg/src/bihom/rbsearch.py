"""Finding Rota-Baxter operators.

``enumerate_rb_fp`` brute-forces a matrix family over F_p (vectorised with
integer numpy arrays, then re-certified one by one with the exact checker);
``lift_to_rationals`` searches small-height rational preimages of an F_p
solution; ``verify_user_operator`` certifies a given operator.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _iproduct

import numpy as np

from .checkers import check_rota_baxter
from .errors import BudgetExceeded, FieldMismatch, HypothesisError
from .linalg import BilinearProduct, LinearOperator
from .model import AlgebraInstance
from .scalars import GF, QQ, Field, FpElement, PrimeField, Scalar, is_prime

_CHUNK = 1 << 15


class Ansatz(enum.Enum):
    Full = "full"
    UpperTriangular = "upper-triangular"
    Diagonal = "diagonal"
    Nilpotent = "nilpotent"  # strictly upper triangular

    def free_positions(self, dim: int) -> list:
        cells = [(i, j) for i in range(dim) for j in range(dim)]
        if self is Ansatz.Full:
            return cells
        if self is Ansatz.UpperTriangular:
            return [(i, j) for i, j in cells if i <= j]
        if self is Ansatz.Diagonal:
            return [(i, j) for i, j in cells if i == j]
        return [(i, j) for i, j in cells if i < j]


class Source(enum.Enum):
    Enumeration = "enumeration"
    Lift = "lift"
    UserProvided = "user"


@dataclass(frozen=True)
class SearchConfig:
    modulus: int = 5
    weight: int | Fraction = 0
    require_commute_with_maps: bool = True
    ansatz: Ansatz = Ansatz.Full
    max_candidates: int = 10_000
    budget_bits: float = 25.0

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be >= 1")
        if not isinstance(self.ansatz, Ansatz):
            object.__setattr__(self, "ansatz", Ansatz(self.ansatz))


@dataclass(frozen=True)
class CertifiedOperator:
    R: LinearOperator
    weight: Scalar
    field: Field
    source: Source
    verified: bool = True
    commutes_with_maps: bool = True


# -- F_p reduction -----------------------------------------------------------

def reduce_mod_p(a: AlgebraInstance, p: int) -> AlgebraInstance:
    """Image of a rational instance in F_p (denominators must be prime to p)."""
    if a.field != QQ:
        raise FieldMismatch(f"{a.name} is over {a.field}, not Q")
    fld = GF(p)
    try:
        products = {lbl: BilinearProduct(fld, m.coeffs) for lbl, m in a.products.items()}
        alpha = LinearOperator(fld, a.alpha.rows)
        beta = LinearOperator(fld, a.beta.rows)
    except ZeroDivisionError as exc:
        raise FieldMismatch(f"{a.name} does not reduce mod {p}: {exc}") from None
    return AlgebraInstance(f"{a.name} mod {p}", a.kind, a.basis, products, alpha, beta, a.unverified)


def _int_tensor(m: BilinearProduct) -> np.ndarray:
    return np.array([[[x.value for x in v] for v in r] for r in m.coeffs], dtype=np.int64)


def _int_matrix(f: LinearOperator) -> np.ndarray:
    return np.array([[x.value for x in r] for r in f.rows], dtype=np.int64)


def _candidates(positions, dim, p, start, stop) -> np.ndarray:
    """Matrices number ``start..stop-1`` of the family in lexicographic order of
    their flattened (row-major) entries."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((stop - start, dim, dim), dtype=np.int64)
    for pos, (i, j) in reversed(list(enumerate(positions))):
        out[:, i, j] = idx % p
        idx //= p
    return out


def _rb_mask(Rs: np.ndarray, c: np.ndarray, lam: int, p: int) -> np.ndarray:
    """Boolean mask of candidates satisfying R(x)R(y) = R(R(x)y + xR(y) + lam xy)
    on all basis pairs, mod p. ``Rs[n, k, i]`` is the k-th coordinate of R(e_i)."""
    t = np.einsum("nai,abk->nibk", Rs, c, optimize=True) % p
    lhs = np.einsum("nibk,nbj->nijk", t, Rs, optimize=True) % p
    x1 = np.einsum("nai,ajm->nijm", Rs, c, optimize=True)      # [R e_i, e_j]
    x2 = np.einsum("nbj,ibm->nijm", Rs, c, optimize=True)      # [e_i, R e_j]
    inner = (x1 + x2 + (lam * c)[None]) % p
    rhs = np.einsum("nkm,nijm->nijk", Rs, inner, optimize=True) % p
    return np.all((lhs - rhs) % p == 0, axis=(1, 2, 3))


def _commute_mask(Rs: np.ndarray, f: np.ndarray, p: int) -> np.ndarray:
    a = np.einsum("nij,jk->nik", Rs, f) % p
    b = np.einsum("ij,njk->nik", f, Rs) % p
    return np.all(a == b, axis=(1, 2))


def enumerate_rb_fp(a: AlgebraInstance, cfg: SearchConfig, product_label: str | None = None) -> list:
    """Every operator of the ansatz family that is an RB operator of weight
    ``cfg.weight`` (and commutes with both structure maps when required), in
    lexicographic order of flattened entries, capped at ``cfg.max_candidates``.

    Raises ``BudgetExceeded`` if the family has more than ``2**cfg.budget_bits``
    members; an empty result therefore means none exist in the family.
    """
    fld = a.field
    if not isinstance(fld, PrimeField):
        raise FieldMismatch(f"{a.name} is over {fld}; reduce it mod p first")
    p = cfg.modulus
    if fld.p != p:
        raise FieldMismatch(f"{a.name} is over F_{fld.p}, config asks for F_{p}")
    dim = a.dim
    positions = cfg.ansatz.free_positions(dim)
    if len(positions) * math.log2(p) > cfg.budget_bits:
        raise BudgetExceeded(
            f"{p}^{len(positions)} candidates exceeds the budget of 2^{cfg.budget_bits:g}")
    weight = fld(cfg.weight)
    label = product_label or a.product_label
    c = _int_tensor(a.products[label])
    al, be = _int_matrix(a.alpha), _int_matrix(a.beta)
    total = p ** len(positions)
    found = []
    for start in range(0, total, _CHUNK):
        Rs = _candidates(positions, dim, p, start, min(total, start + _CHUNK))
        mask = _rb_mask(Rs, c, weight.value, p)
        if cfg.require_commute_with_maps:
            mask &= _commute_mask(Rs, al, p) & _commute_mask(Rs, be, p)
        for R in Rs[mask]:
            op = LinearOperator(fld, tuple(tuple(int(x) for x in r) for r in R))
            wit = check_rota_baxter(a, label, op, weight)
            if any(w.identity_label == "rota-baxter" for w in wit) or (
                    cfg.require_commute_with_maps and wit):
                raise AssertionError(f"vectorised filter disagrees with the exact checker: {wit[0]}")
            found.append(CertifiedOperator(op, weight, fld, Source.Enumeration,
                                           commutes_with_maps=not wit))
            if len(found) >= cfg.max_candidates:
                return found
    return found


# -- lifting -----------------------------------------------------------------

def _preimages(v: FpElement, num_box, den_box) -> list:
    """Rationals n/d in the box congruent to v mod p, ordered by height."""
    p = v.modulus
    seen = set()
    for d in range(den_box[0], den_box[1] + 1):
        if d % p == 0:
            continue
        for n in range(num_box[0], num_box[1] + 1):
            if (n - v.value * d) % p == 0:
                seen.add(Fraction(n, d))
    return sorted(seen, key=lambda q: (max(abs(q.numerator), q.denominator), q.denominator,
                                       abs(q.numerator), q < 0))


def lift_to_rationals(a_q: AlgebraInstance, candidate: CertifiedOperator, *,
                      a_fp: AlgebraInstance | None = None, weight=None,
                      num_box=(-3, 3), den_box=(1, 3), max_attempts: int = 200_000,
                      product_label: str | None = None) -> CertifiedOperator | None:
    """First small-height rational preimage of ``candidate`` (entries and, unless
    ``weight`` is given, the weight) that is an RB operator over Q.

    Preimages are tried in order of increasing height, entrywise row-major.
    ``a_fp``, when given, must equal ``a_q`` reduced mod p.
    """
    fld = candidate.field
    if not isinstance(fld, PrimeField):
        raise FieldMismatch("candidate is not over a prime field")
    if a_q.field != QQ:
        raise FieldMismatch(f"{a_q.name} is not over Q")
    reduced = reduce_mod_p(a_q, fld.p)
    if a_fp is not None and (reduced.products != a_fp.products or reduced.alpha != a_fp.alpha
                             or reduced.beta != a_fp.beta):
        raise ValueError(f"{a_q.name} does not reduce mod {fld.p} to the candidate's algebra")
    entries = [x for r in candidate.R.rows for x in r]
    choices = [_preimages(x, num_box, den_box) for x in entries]
    if weight is None:
        choices.append(_preimages(candidate.weight, num_box, den_box))
    else:
        weight = Fraction(weight)
        if fld(weight) != candidate.weight:
            raise ValueError(f"weight {weight} is not congruent to {candidate.weight} mod {fld.p}")
    if any(not ch for ch in choices):
        return None
    n = a_q.dim
    for attempt, pick in enumerate(_iproduct(*choices)):
        if attempt >= max_attempts:
            return None
        w = weight if weight is not None else pick[-1]
        R = LinearOperator(QQ, tuple(tuple(pick[i * n:(i + 1) * n]) for i in range(n)))
        if not check_rota_baxter(a_q, product_label, R, w):
            return CertifiedOperator(R, QQ(w), QQ, Source.Lift)
    return None


def verify_user_operator(a: AlgebraInstance, R: LinearOperator, weight,
                         product_label: str | None = None) -> CertifiedOperator:
    """Certify ``R`` as an RB operator of ``weight`` commuting with the maps, or
    raise ``HypothesisError`` carrying every witness."""
    weight = a.field(weight)
    wit = check_rota_baxter(a, product_label, R, weight)
    if wit:
        raise HypothesisError("rota-baxter", wit)
    return CertifiedOperator(R, weight, a.field, Source.UserProvided)


__all__ = [
    "Ansatz", "Source", "SearchConfig", "CertifiedOperator", "reduce_mod_p",
    "enumerate_rb_fp", "lift_to_rationals", "verify_user_operator",
]
