"""Universal and existential quantifiers on finite NM-algebras.

A universal quantifier is a self-map validated against four conditions
(U1-U4 below); the derived existential map is neg-forall-neg.  The module
also covers the alternative two-map axiom system (W1-W5), modal operators
(M1-M5 plus a fixedness condition), derived-property suites, rough
approximation spaces, and exhaustive quantifier enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .core import (
    FiniteNmAlgebra,
    MalformedInputError,
    PropertyReport,
    PropertyResult,
    is_boolean,
    is_subalgebra_set,
)


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom pass/fail with the lexicographically first witness tuple."""

    results: tuple[tuple[str, bool, tuple[int, ...] | None], ...]

    @property
    def all_pass(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def passed(self, axiom: str) -> bool:
        for name, ok, _ in self.results:
            if name == axiom:
                return ok
        raise KeyError(axiom)

    def witness(self, axiom: str) -> tuple[int, ...] | None:
        for name, _, w in self.results:
            if name == axiom:
                return w
        raise KeyError(axiom)

    def to_dict(self, names=None) -> dict:
        out = {}
        for name, ok, w in self.results:
            cell: dict = {"ok": ok}
            if w is not None:
                cell["witness"] = [names[i] if names else i for i in w]
            out[name] = cell
        return out


def _check_image(a: FiniteNmAlgebra, image) -> tuple[int, ...]:
    image = tuple(image)
    if len(image) != a.size:
        raise MalformedInputError("quantifier image length does not match the algebra size")
    for v in image:
        a._check_index(v)
    return image


def _axiom_scan(name, pred, tuples, results):
    for t in tuples:
        if not pred(*t):
            results.append((name, False, t))
            return
    results.append((name, True, None))


def check_universal(a: FiniteNmAlgebra, image) -> AxiomReport:
    """Validate U1-U4 for a candidate self-map.

    U1: q(x) <= x.
    U2: q(neg x -> q y) = neg q(x) -> q(y).
    U3: q(q x -> y) = q(x) -> q(y).
    U4: q(x v q y) = q(x) v q(y).

    Invalid maps are data, not errors; only malformed input raises.
    """
    q = _check_image(a, image)
    imp, join, leq, neg = a.imp, a.join, a.leq, a.neg_table
    rng = range(a.size)
    pairs = tuple(itertools.product(rng, rng))
    results: list = []
    _axiom_scan("U1", lambda x: leq[q[x]][x], tuple((x,) for x in rng), results)
    _axiom_scan("U2", lambda x, y: q[imp[neg[x]][q[y]]] == imp[neg[q[x]]][q[y]], pairs, results)
    _axiom_scan("U3", lambda x, y: q[imp[q[x]][y]] == imp[q[x]][q[y]], pairs, results)
    _axiom_scan("U4", lambda x, y: q[join[x][q[y]]] == join[q[x]][q[y]], pairs, results)
    return AxiomReport(tuple(results))


def check_strong(a: FiniteNmAlgebra, image) -> tuple[bool, tuple[int, int] | None]:
    """The unrestricted join law q(x v y) = q(x) v q(y), all pairs."""
    q = _check_image(a, image)
    for x in a.elements:
        for y in a.elements:
            if q[a.join[x][y]] != a.join[q[x]][q[y]]:
                return False, (x, y)
    return True, None


def exists_image(a: FiniteNmAlgebra, forall) -> tuple[int, ...]:
    q = _check_image(a, forall)
    neg = a.neg_table
    return tuple(neg[q[neg[x]]] for x in a.elements)


def check_existential(a: FiniteNmAlgebra, image) -> AxiomReport:
    """The dual axioms E1-E4 for an existential map."""
    e = _check_image(a, image)
    mul, meet, leq, neg = a.mul, a.meet, a.leq, a.neg_table
    rng = range(a.size)
    pairs = tuple(itertools.product(rng, rng))
    results: list = []
    _axiom_scan("E1", lambda x: leq[x][e[x]], tuple((x,) for x in rng), results)
    _axiom_scan("E2", lambda x, y: e[mul[neg[x]][e[y]]] == mul[e[neg[x]]][e[y]], pairs, results)
    _axiom_scan("E3", lambda x, y: e[mul[neg[e[x]]][neg[y]]] == mul[neg[e[x]]][e[neg[y]]], pairs, results)
    _axiom_scan("E4", lambda x, y: e[meet[x][e[y]]] == meet[e[x]][e[y]], pairs, results)
    return AxiomReport(tuple(results))


class InvalidQuantifierError(ValueError):
    def __init__(self, report: AxiomReport):
        failed = [name for name, ok, _ in report.results if not ok]
        super().__init__(f"map is not a universal quantifier; failing: {', '.join(failed)}")
        self.report = report


@dataclass(frozen=True)
class MonadicNmAlgebra:
    """An NM-algebra together with a validated universal quantifier."""

    algebra: FiniteNmAlgebra
    forall: tuple[int, ...]

    @cached_property
    def exists(self) -> tuple[int, ...]:
        return exists_image(self.algebra, self.forall)

    @cached_property
    def fixpoints(self) -> frozenset[int]:
        return frozenset(x for x in self.algebra.elements if self.forall[x] == x)

    @cached_property
    def is_strong(self) -> bool:
        return check_strong(self.algebra, self.forall)[0]

    @property
    def size(self) -> int:
        return self.algebra.size

    def __repr__(self) -> str:  # pragma: no cover
        return f"MonadicNmAlgebra({self.algebra!r}, forall={self.forall})"


def monadic_algebra(a: FiniteNmAlgebra, forall, validate: bool = True) -> MonadicNmAlgebra:
    image = _check_image(a, forall)
    if validate:
        report = check_universal(a, image)
        if not report.all_pass:
            raise InvalidQuantifierError(report)
    return MonadicNmAlgebra(a, image)


def identity_quantifier(a: FiniteNmAlgebra) -> tuple[int, ...]:
    return tuple(a.elements)


def exists_of(m: MonadicNmAlgebra) -> tuple[tuple[int, ...], AxiomReport]:
    """The derived existential map together with its E1-E4 report."""
    e = m.exists
    return e, check_existential(m.algebra, e)


def check_w_axioms(a: FiniteNmAlgebra, forall, exists=None) -> AxiomReport:
    """The five-axiom system on a (forall, exists) pair of maps.

    W1: q(x) <= x.
    W2: x <= e(x).
    W3: q(x -> q y) = e(x) -> q(y).
    W4: q(e x -> y) = e(x) -> q(y).
    W5: q(x v e y) = q(x) v e(y).

    When ``exists`` is omitted it is derived as neg-forall-neg.
    """
    q = _check_image(a, forall)
    e = exists_image(a, q) if exists is None else _check_image(a, exists)
    imp, join, leq = a.imp, a.join, a.leq
    rng = range(a.size)
    pairs = tuple(itertools.product(rng, rng))
    results: list = []
    _axiom_scan("W1", lambda x: leq[q[x]][x], tuple((x,) for x in rng), results)
    _axiom_scan("W2", lambda x: leq[x][e[x]], tuple((x,) for x in rng), results)
    _axiom_scan("W3", lambda x, y: q[imp[x][q[y]]] == imp[e[x]][q[y]], pairs, results)
    _axiom_scan("W4", lambda x, y: q[imp[e[x]][y]] == imp[e[x]][q[y]], pairs, results)
    _axiom_scan("W5", lambda x, y: q[join[x][e[y]]] == join[q[x]][e[y]], pairs, results)
    return AxiomReport(tuple(results))


def check_modal(a: FiniteNmAlgebra, image) -> AxiomReport:
    """M1-M5 plus the fixedness condition on images of the operator.

    M1: t(1) = 1.              M2: t(x v y) <= t(x) v t(y).
    M3: t(x -> y) <= t(x) -> t(y).   M4: t(x) <= t(t(x)).
    M5: t(x) <= x.             star: t(t x -> t y) = t(x) -> t(y).
    """
    t = _check_image(a, image)
    imp, join, leq = a.imp, a.join, a.leq
    rng = range(a.size)
    pairs = tuple(itertools.product(rng, rng))
    results: list = []
    _axiom_scan("M1", lambda: t[a.top] == a.top, ((),), results)
    _axiom_scan("M2", lambda x, y: leq[t[join[x][y]]][join[t[x]][t[y]]], pairs, results)
    _axiom_scan("M3", lambda x, y: leq[t[imp[x][y]]][imp[t[x]][t[y]]], pairs, results)
    _axiom_scan("M4", lambda x: leq[t[x]][t[t[x]]], tuple((x,) for x in rng), results)
    _axiom_scan("M5", lambda x: leq[t[x]][x], tuple((x,) for x in rng), results)
    _axiom_scan("star", lambda x, y: t[imp[t[x]][t[y]]] == imp[t[x]][t[y]], pairs, results)
    return AxiomReport(tuple(results))


def _deflationary_maps(a: FiniteNmAlgebra):
    """All self-maps with q(x) <= x, built from the down-sets."""
    return itertools.product(*[a.down_sets[x] for x in a.elements])


def g_pairs(a: FiniteNmAlgebra) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(forall, derived exists) pairs for every U1-U4 quantifier."""
    return {
        (q, exists_image(a, q)) for q in enumerate_quantifiers(a)
    }


def h_pairs(a: FiniteNmAlgebra) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(forall, exists) pairs satisfying W1-W5, by exhaustive search.

    W3 at y = bottom forces e = neg-forall-neg (using W1 for q(bottom) =
    bottom and the involution of the algebra), so candidate pairs with any
    other exists-component cannot satisfy the system; enumeration ranges over
    deflationary forall candidates with the derived exists-component.
    """
    out = set()
    for q in _deflationary_maps(a):
        if q[a.top] != a.top:
            continue
        e = exists_image(a, q)
        if check_w_axioms(a, q, e).all_pass:
            out.add((q, e))
    return out


def verify_g_h_equivalence(a: FiniteNmAlgebra) -> bool:
    """Whether the U-system and the W-system carve out the same map pairs."""
    return g_pairs(a) == h_pairs(a)


def modal_operators(a: FiniteNmAlgebra) -> list[tuple[int, ...]]:
    """All maps satisfying M1-M5 plus the fixedness condition."""
    out = []
    for t in _deflationary_maps(a):
        if t[a.top] != a.top:
            continue
        if check_modal(a, t).all_pass:
            out.append(t)
    return sorted(out)


def modal_strong_equivalence(a: FiniteNmAlgebra) -> bool:
    """Modal operators with the fixedness condition are exactly the strong quantifiers."""
    return modal_operators(a) == enumerate_quantifiers(a, strong_only=True)


def quantifier_properties(m: MonadicNmAlgebra) -> PropertyReport:
    """Exhaustive check of the derived laws of forall and exists.

    Equalities are checked as equalities, inequalities as inequalities; for
    the two one-sided laws that can be strict (oplus superdistributivity of
    forall and the neg/exists exchange), the first strict witness is recorded
    as well.
    """
    a = m.algebra
    q, e = m.forall, m.exists
    imp, mul, meet, join, leq = a.imp, a.mul, a.meet, a.join, a.leq
    neg = a.neg_table
    top, bottom = a.top, a.bottom
    rng = range(a.size)
    pairs = tuple(itertools.product(rng, rng))
    results: list[PropertyResult] = []

    def scan(name, pred, tuples):
        for t in tuples:
            if not pred(*t):
                results.append(PropertyResult(name, False, t))
                return
        results.append(PropertyResult(name, True))

    def scan_with_strictness(name, holds, strict, tuples):
        witness = None
        strict_at = None
        for t in tuples:
            if witness is None and not holds(*t):
                witness = t
            if strict_at is None and strict(*t):
                strict_at = t
        results.append(PropertyResult(name, witness is None, witness, strict_at))

    singles = tuple((x,) for x in rng)

    # Laws of the universal map.
    scan("forall_bottom", lambda: q[bottom] == bottom, ((),))
    scan("forall_top", lambda: q[top] == top, ((),))
    scan("forall_idempotent", lambda x: q[q[x]] == q[x], singles)
    scan("forall_monotone", lambda x, y: (not leq[x][y]) or leq[q[x]][q[y]], pairs)
    scan("forall_imp_subdistributive", lambda x, y: leq[q[imp[x][y]]][imp[q[x]][q[y]]], pairs)
    scan("forall_le_iff", lambda x, y: leq[q[x]][y] == leq[q[x]][q[y]], pairs)
    scan("imp_of_fixpoints_fixed", lambda x, y: q[imp[q[x]][q[y]]] == imp[q[x]][q[y]], pairs)
    scan("neg_of_forall_fixed", lambda x: q[neg[q[x]]] == neg[q[x]], singles)
    scan("forall_meet_distributive", lambda x, y: q[meet[x][y]] == meet[q[x]][q[y]], pairs)
    scan("forall_mul_superdistributive", lambda x, y: leq[mul[q[x]][q[y]]][q[mul[x][y]]], pairs)
    scan(
        "oplus_of_fixpoints_fixed",
        lambda x, y: q[a.oplus(q[x], q[y])] == a.oplus(q[x], q[y]),
        pairs,
    )
    scan_with_strictness(
        "forall_oplus_superdistributive",
        lambda x, y: leq[a.oplus(q[x], q[y])][q[a.oplus(x, y)]],
        lambda x, y: leq[a.oplus(q[x], q[y])][q[a.oplus(x, y)]]
        and q[a.oplus(x, y)] != a.oplus(q[x], q[y]),
        pairs,
    )
    scan("mul_of_fixpoints_fixed", lambda x, y: q[mul[q[x]][q[y]]] == mul[q[x]][q[y]], pairs)
    range_q = frozenset(q)
    scan("range_equals_fixpoints", lambda: range_q == m.fixpoints, ((),))
    scan("fixpoints_subalgebra", lambda: is_subalgebra_set(a, m.fixpoints), ((),))

    # Laws of the derived existential map.
    scan("exists_bottom", lambda: e[bottom] == bottom, ((),))
    scan("exists_top", lambda: e[top] == top, ((),))
    scan("exists_idempotent", lambda x: e[e[x]] == e[x], singles)
    scan("exists_monotone", lambda x, y: (not leq[x][y]) or leq[e[x]][e[y]], pairs)
    scan("mul_of_exists_fixed", lambda x, y: e[mul[e[x]][e[y]]] == mul[e[x]][e[y]], pairs)
    scan("neg_of_exists_fixed", lambda x: e[neg[e[x]]] == neg[e[x]], singles)
    scan_with_strictness(
        "neg_exists_le_exists_neg",
        lambda x: leq[neg[e[x]]][e[neg[x]]],
        lambda x: leq[neg[e[x]]][e[neg[x]]] and neg[e[x]] != e[neg[x]],
        singles,
    )
    scan("exists_join_distributive", lambda x, y: e[join[x][y]] == join[e[x]][e[y]], pairs)
    scan("exists_le_iff", lambda x, y: leq[x][e[y]] == leq[e[x]][e[y]], pairs)
    scan("forall_exists_absorption", lambda x: q[e[x]] == e[x], singles)
    scan("exists_forall_absorption", lambda x: e[q[x]] == q[x], singles)
    scan("fixpoint_sets_coincide", lambda x: (q[x] == x) == (e[x] == x), singles)
    range_e = frozenset(e)
    scan("exists_range_equals_fixpoints", lambda: range_e == frozenset(x for x in rng if e[x] == x), ((),))
    scan("ranges_coincide", lambda: range_e == range_q, ((),))
    scan("galois_adjunction", lambda x, y: leq[e[x]][y] == leq[x][q[y]], pairs)
    scan("imp_of_exists_fixed", lambda x, y: q[imp[e[x]][e[y]]] == imp[e[x]][e[y]], pairs)
    scan(
        "oplus_of_exists_fixed",
        lambda x, y: e[a.oplus(e[x], e[y])] == a.oplus(e[x], e[y]),
        pairs,
    )
    return PropertyReport(tuple(results))


@dataclass(frozen=True)
class MonadicBooleanReport:
    """Whether the monadic algebra is Boolean, with the distribution identities.

    On a Boolean algebra every quantifier turns meets into muls and joins
    into strong sums; off Boolean algebras a particular quantifier may still
    satisfy both identities, so the algebra witness is the decisive one.
    """

    boolean: bool
    algebra_witness: tuple[int, int] | None
    meet_mul_identity_holds: bool
    meet_mul_witness: tuple[int, int] | None
    join_oplus_identity_holds: bool
    join_oplus_witness: tuple[int, int] | None


def is_monadic_boolean(m: MonadicNmAlgebra) -> MonadicBooleanReport:
    a = m.algebra
    q = m.forall
    boolean, algebra_witness = is_boolean(a)
    meet_w = None
    join_w = None
    for x in a.elements:
        for y in a.elements:
            if meet_w is None and q[a.meet[x][y]] != a.mul[q[x]][q[y]]:
                meet_w = (x, y)
            if join_w is None and q[a.join[x][y]] != a.oplus(q[x], q[y]):
                join_w = (x, y)
    if boolean and (meet_w is not None or join_w is not None):
        raise RuntimeError("internal error: Boolean algebra with a quantifier breaking the identities")
    return MonadicBooleanReport(
        boolean=boolean,
        algebra_witness=algebra_witness,
        meet_mul_identity_holds=meet_w is None,
        meet_mul_witness=meet_w,
        join_oplus_identity_holds=join_w is None,
        join_oplus_witness=join_w,
    )


@dataclass(frozen=True)
class RoughApproximationSpace:
    """Inner/upper approximation structure induced by the two quantifiers.

    ``lower`` maps each element to its greatest inner-definable element below,
    ``upper`` to the least upper-definable element above.  ``collisions``
    groups distinct elements sharing the same (lower, upper) pair.
    """

    lower: tuple[int, ...]
    upper: tuple[int, ...]
    inner_definable: frozenset[int]
    upper_definable: frozenset[int]
    inner_adjunction_ok: bool
    upper_adjunction_ok: bool
    collisions: tuple[tuple[int, ...], ...]

    def rough_pair(self, x: int) -> tuple[int, int]:
        return (self.lower[x], self.upper[x])


def rough_space(m: MonadicNmAlgebra) -> RoughApproximationSpace:
    a = m.algebra
    q, e = m.forall, m.exists
    fix = m.fixpoints
    efix = frozenset(x for x in a.elements if e[x] == x)
    inner_ok = all(
        a.leq[x][y] == a.leq[x][q[y]] for x in fix for y in a.elements
    )
    upper_ok = all(
        a.leq[x][y] == a.leq[e[x]][y] for x in a.elements for y in efix
    )
    groups: dict[tuple[int, int], list[int]] = {}
    for x in a.elements:
        groups.setdefault((q[x], e[x]), []).append(x)
    collisions = tuple(
        tuple(v) for _, v in sorted(groups.items()) if len(v) > 1
    )
    return RoughApproximationSpace(
        lower=q,
        upper=e,
        inner_definable=fix,
        upper_definable=efix,
        inner_adjunction_ok=inner_ok,
        upper_adjunction_ok=upper_ok,
        collisions=collisions,
    )


ENUMERATION_SIZE_LIMIT = 10
NAIVE_SIZE_LIMIT = 7


def _relatively_complete_interior(a: FiniteNmAlgebra, members: frozenset[int]):
    """Map each element to the greatest member of the subset below it, if any."""
    image = []
    for x in a.elements:
        below = [s for s in members if a.leq[s][x]]
        best = None
        for s in below:
            if all(a.leq[t][s] for t in below):
                best = s
                break
        if best is None:
            return None
        image.append(best)
    return tuple(image)


def enumerate_quantifiers(a: FiniteNmAlgebra, strong_only: bool = False) -> list[tuple[int, ...]]:
    """Every universal quantifier on the algebra, canonically sorted.

    A quantifier is deflationary, monotone and idempotent, so it is the
    interior operator of its fixpoint set, which is a subalgebra admitting
    a greatest member below every element.  Candidates are therefore built
    from such subalgebras and post-filtered by U2-U4 (and the unrestricted
    join law when ``strong_only`` is set); U1 holds by construction.
    """
    n = a.size
    if n > ENUMERATION_SIZE_LIMIT:
        raise MalformedInputError(
            f"quantifier enumeration is limited to {ENUMERATION_SIZE_LIMIT} elements"
        )
    interior = [x for x in a.elements if x not in (a.bottom, a.top)]
    out = []
    for k in range(len(interior) + 1):
        for extra in itertools.combinations(interior, k):
            members = frozenset(extra) | {a.bottom, a.top}
            if not is_subalgebra_set(a, members):
                continue
            image = _relatively_complete_interior(a, members)
            if image is None:
                continue
            report = check_universal(a, image)
            if not report.all_pass:
                continue
            if strong_only and not check_strong(a, image)[0]:
                continue
            out.append(image)
    return sorted(out)


def enumerate_quantifiers_naive(a: FiniteNmAlgebra, strong_only: bool = False) -> list[tuple[int, ...]]:
    """Oracle enumeration: filter all n**n self-maps by the axioms directly."""
    n = a.size
    if n > NAIVE_SIZE_LIMIT:
        raise MalformedInputError(
            f"naive enumeration is limited to {NAIVE_SIZE_LIMIT} elements"
        )
    leq = a.leq
    out = []
    for image in itertools.product(range(n), repeat=n):
        if any(not leq[image[x]][x] for x in range(n)):
            continue
        if not check_universal(a, image).all_pass:
            continue
        if strong_only and not check_strong(a, image)[0]:
            continue
        out.append(image)
    return sorted(out)
