"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line with
its wall time against the stated limit. Every criterion is exact (zero residual).
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from bihom.catalog import catalog_get, catalog_list
from bihom.checkers import (
    IDENTITIES, check_alternative_jacobi, check_bihom_jacobi, check_bihom_skew_symmetry,
    check_kind, check_left_bihom_leibniz, check_left_bihom_prelie, check_right_bihom_leibniz,
    check_right_bihom_prelie, check_rota_baxter, evaluate_identity, rgraf_witnesses,
    kind_identities, run_identity,
)
from bihom.cli import run
from bihom.constructions import (
    dendriform_to_prelie, prelie_derived_bracket, rb_derived_bracket, rb_prelie_left,
    rb_prelie_right, yau_twist,
)
from bihom.io import parse_algebra_file, serialize_algebra
from bihom.linalg import LinearOperator
from bihom.model import AlgebraKind as K, is_bijective_pair, make_instance, validate_preamble
from bihom.rbsearch import Ansatz, SearchConfig, enumerate_rb_fp, lift_to_rationals, reduce_mod_p
from bihom.scalars import QQ
from oracle import LABEL_TO_ORACLE, Oracle, obj_array, random_rational_vector

LIE = ["abelian2", "aff1", "sl2", "heis3"]
LEIBNIZ = ["leibniz2", "leibniz2l"]
PRELIE = ["prelie2", "prelie2l"]


def gate(name: str, limit: float, body, capsys) -> None:
    """Run ``body``, print one PASS/FAIL line, then re-raise or enforce the limit."""
    t0 = time.perf_counter()
    err = None
    try:
        detail = body()
    except AssertionError as exc:
        err, detail = exc, str(exc).splitlines()[0] if str(exc) else None
    dt = time.perf_counter() - t0
    ok = err is None and dt < limit
    extra = f"; {detail}" if detail else ""
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} {name} ({dt:.2f} s / limit {limit:g} s{extra})")
    if err is not None:
        raise err
    assert dt < limit, f"{name} took {dt:.2f} s, limit {limit:g} s"


def twists(cid):
    e = catalog_get(cid)
    return [yau_twist(e.instance, a2, b2) for a2, b2 in e.suggested_maps]


# -- Yau twists --------------------------------------------------------------

def test_yau_twist_replay(capsys):
    def body():
        n = 0
        for cid in LIE + LEIBNIZ + PRELIE:
            for tw in twists(cid):
                assert check_kind(tw) == [], tw.name
                if tw.kind is K.BiHomLie and is_bijective_pair(tw):
                    assert check_kind(tw, K.LeftBiHomLie) == [], tw.name
                    assert check_kind(tw, K.RightBiHomLie) == [], tw.name
                n += 1
        return f"{n} twisted instances"
    gate("yau-twist-replay", 1, body, capsys)


# -- equivalence of the BiHom-Lie predicates under bijective maps -----------

def _rand_q(rng) -> Fraction:
    return Fraction(rng.choice([k for k in range(-5, 6) if k]), rng.randint(1, 5))


def _diag(vals):
    return LinearOperator.diag([Fraction(v) for v in vals], QQ)


def _in_box(vals) -> bool:
    return all(v and -5 <= v <= 5 for v in vals)


def _random_automorphism(cid, rng):
    """A diagonal automorphism of the catalog Lie algebra, entries in [-5, 5] minus 0."""
    while True:
        a, b = _rand_q(rng), _rand_q(rng)
        vals = {"aff1": (1, a), "sl2": (1, a, 1 / a), "heis3": (a, b, a * b),
                "abelian2": (a, b)}[cid]
        if _in_box(vals):
            return _diag(vals)


def _jacobi_breaking_sl2():
    """sl2 with [h, e] = 3e: still skew and torus-multiplicative, not Jacobi."""
    s = catalog_get("sl2").instance
    m = s.product.with_entry(0, 1, 1, 3).with_entry(1, 0, 1, -3)
    return make_instance("sl2[h,e=3e]", K.PlainLie, s.basis, m)


def equivalence_instances():
    rng = random.Random(0)
    out = [tw for cid in LIE for tw in twists(cid) if is_bijective_pair(tw)]
    for cid in LIE:
        for _ in range(3):
            a = catalog_get(cid).instance
            out.append(yau_twist(a, _random_automorphism(cid, rng), _random_automorphism(cid, rng)))
    bad = _jacobi_breaking_sl2()
    for _ in range(3):
        out.append(yau_twist(bad, _random_automorphism("sl2", rng), _random_automorphism("sl2", rng)))
    return out


def test_bihom_lie_predicates_agree(capsys):
    def body():
        insts = equivalence_instances()
        assert len(insts) >= 10
        broken = 0
        for a in insts:
            assert is_bijective_pair(a) and validate_preamble(a) == []
            assert check_bihom_skew_symmetry(a) == []
            jac = not check_bihom_jacobi(a)
            assert jac == (not check_left_bihom_leibniz(a)) == (not check_right_bihom_leibniz(a)), a.name
            assert (not check_alternative_jacobi(a)) == jac, a.name
            broken += not jac
        assert broken >= 1
        return f"{len(insts)} instances, {broken} with Jacobi failing"
    gate("bihom-lie-predicates-agree", 2, body, capsys)


# -- RB operators to pre-Lie -------------------------------------------------

PRELIE_PAIRS = {
    "aff1": (_diag((1, 2)), _diag((1, 3))),
    "heis3": (_diag((1, 2, 2)), _diag((3, 1, 3))),
}


def test_rb_prelie_replay(capsys):
    def body():
        n = 0
        for cid, pair in PRELIE_PAIRS.items():
            base = catalog_get(cid).instance
            for a in (base, yau_twist(base, *pair)):
                fp = reduce_mod_p(a, 5)
                ops = enumerate_rb_fp(fp, SearchConfig(5, 0, ansatz=Ansatz.UpperTriangular))
                assert ops
                cases = [(fp, c.R) for c in ops]
                for c in ops:
                    lift = lift_to_rationals(a, c, weight=0)
                    if lift is not None:
                        cases.append((a, lift.R))
                for alg, R in cases:
                    assert check_left_bihom_prelie(rb_prelie_left(alg, R)) == []
                    assert check_right_bihom_prelie(rb_prelie_right(alg, R)) == []
                    n += 1
        return f"{n} operators"
    gate("rb-prelie-replay", 10, body, capsys)


# -- RB derived bracket ------------------------------------------------------

def test_rb_derived_bracket_replay(capsys):
    def body():
        n = 0
        for cid in LIE + LEIBNIZ:
            a = catalog_get(cid).instance
            fp = reduce_mod_p(a, 5)
            cases = [(a, LinearOperator.identity(a.dim, QQ), -1),
                     (a, LinearOperator.zero(a.dim, QQ), 0)]
            for w in (0, -1):
                found = enumerate_rb_fp(fp, SearchConfig(5, w, ansatz=Ansatz.UpperTriangular))
                cases += [(fp, c.R, w) for c in found]
            for alg, R, w in cases:
                new = rb_derived_bracket(alg, R, w)
                assert check_kind(new) == [], (new.name, R)
                assert rgraf_witnesses(new, alg, R) == [], (new.name, R)
                assert check_rota_baxter(new, None, R, w) == [], (new.name, R)
                n += 1
        return f"{n} operators"
    gate("rb-derived-bracket-replay", 5, body, capsys)


# -- dendriform split --------------------------------------------------------

def test_dendriform_split_replay(capsys):
    def body():
        n = 0
        for cid in ("z2dend", "tri2dend"):
            for d in twists(cid):
                assert check_kind(d) == []
                lhd, rhd = dendriform_to_prelie(d)
                assert check_left_bihom_prelie(lhd) == [], d.name
                assert check_right_bihom_prelie(rhd) == [], d.name
                n += 1
        return f"{n} dendriform instances"
    gate("dendriform-split-replay", 1, body, capsys)


# -- bracket of a pre-Lie algebra --------------------------------------------

def test_prelie_bracket_replay(capsys):
    def body():
        n = 0
        for cid in PRELIE:
            for tw in twists(cid):
                if not is_bijective_pair(tw):
                    continue
                br = prelie_derived_bracket(tw)
                for kind in (K.BiHomLie, K.LeftBiHomLie, K.RightBiHomLie):
                    assert check_kind(br, kind) == [], (br.name, kind)
                if tw.alpha.is_identity() and tw.beta.is_identity():
                    c = obj_array([[list(v) for v in row] for row in tw.product.coeffs])
                    comm = c - c.transpose(1, 0, 2)
                    got = obj_array([[list(v) for v in row] for row in br.product.coeffs])
                    assert (got == comm).all()
                n += 1
        return f"{n} instances"
    gate("prelie-bracket-replay", 1, body, capsys)


# -- mutation soundness ------------------------------------------------------

def mutation_positions():
    """Every structure constant of every catalog entry, in catalog order."""
    out = []
    for cid in catalog_list():
        a = catalog_get(cid).instance
        for label in sorted(a.products):
            for i in range(a.dim):
                for j in range(a.dim):
                    for k in range(a.dim):
                        out.append((cid, label, i, j, k))
    return out


def mutate(cid, label, i, j, k):
    a = catalog_get(cid).instance
    m = a.products[label]
    return a.with_product(m.with_entry(i, j, k, m.coeffs[i][j][k] + 1), label)


MUTATIONS = random.Random(0).sample(mutation_positions(), 50)


def mutation_outcome(pos):
    """(witnesses, whether every witness re-evaluates to its reported nonzero residual)."""
    a = mutate(*pos)
    wit = check_kind(a)
    o = Oracle(a)
    sweeps = {}
    sound = True
    for w in wit:
        name = LABEL_TO_ORACLE.get(w.identity_label)
        if name is None:
            continue  # preamble clauses; maps are identities on catalog entries
        if name not in sweeps:
            sweeps[name] = o.basis_residuals(name)
        r = sweeps[name].get(w.basis_indices)
        sound &= r is not None and any(r) and r == w.residual
    return wit, sound


@pytest.mark.xfail(strict=True, reason="one sampled mutant of leibniz2l is again a left "
                   "Leibniz algebra, so no checker can flag it; see README")
def test_mutation_soundness(capsys):
    def body():
        missed = []
        for pos in MUTATIONS:
            wit, sound = mutation_outcome(pos)
            assert sound, pos
            if not wit:
                missed.append(pos)
        assert not missed, f"undetected mutations: {missed}"
    gate("mutation-soundness", 5, body, capsys)


def test_undetected_mutations_are_valid_algebras():
    """Analysis behind the expected failure above: each undetected mutant
    satisfies every identity of its kind by the independent route."""
    missed = [pos for pos in MUTATIONS if not mutation_outcome(pos)[0]]
    # [e1, e1] = 2 e2, [e1, e2] = e2: rescaling e2 by 2 recovers leibniz2l itself
    assert missed == [("leibniz2l", "mu", 0, 0, 1)]
    for pos in missed:
        a = mutate(*pos)
        o = Oracle(a)
        assert all(o.holds(LABEL_TO_ORACLE[lbl]) for lbl in kind_identities(a.kind))


# -- basis completeness ------------------------------------------------------

def applicable_labels(a):
    dend = a.kind is K.BiHomDendriform
    return [lbl for lbl in LABEL_TO_ORACLE if lbl.startswith("dendriform") == dend]


def test_basis_completeness_audit(capsys):
    def body():
        rng = random.Random(0)
        n = 0
        for cid in catalog_list():
            a = catalog_get(cid).instance
            for label in applicable_labels(a):
                if run_identity(label, a):
                    continue
                arity = IDENTITIES[label].arity
                for _ in range(100):
                    vs = [tuple(random_rational_vector(rng, a.dim)) for _ in range(arity)]
                    assert not any(evaluate_identity(label, a, vs)), (cid, label, vs)
                n += 1
        return f"{n} (entry, identity) pairs x 100 vectors"
    gate("basis-completeness-audit", 5, body, capsys)


# -- file round trip and reproducible reports --------------------------------

def test_io_round_trip(tmp_path, capsys):
    def body():
        for cid in catalog_list():
            a = catalog_get(cid).instance
            text = serialize_algebra(a)
            assert parse_algebra_file(text) == a, cid
            assert serialize_algebra(parse_algebra_file(text)) == text, cid
            (tmp_path / f"{cid}.json").write_text(text)
        paths = sorted(str(p) for p in tmp_path.glob("*.json"))
        for argv in (["check", *paths], ["check", "--json", *paths]):
            first, second = run(argv), run(argv)
            assert first == second
            assert first[0] == 0
        return f"{len(paths)} entries"
    gate("io-round-trip", 1, body, capsys)
