"""Finite NM-algebras: table validation, derived operations, filters,
congruences, quotients, and the exact-rational standard algebra on [0,1].

An NM-algebra is a bounded lattice with a commutative monoid operation ``mul``
and a residuum ``imp`` satisfying adjointness, prelinearity, the weak
nilpotent minimum identity, and an involutive negation.  All algebras here are
finite, immutable after validation, and safe for concurrent reads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property


class MalformedInputError(ValueError):
    """Structurally bad input: non-square tables, unknown labels, bad indices.

    Distinct from axiom failure, which is reported, not raised.
    """


class InvalidAlgebraError(ValueError):
    """Raised when tables that were required to be a valid NM-algebra are not."""

    def __init__(self, report: "ValidationReport", message: str = "tables do not define an NM-algebra"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Check:
    """Outcome of one axiom (or axiom part) over all element tuples."""

    clause: str
    part: str
    ok: bool
    witness: tuple[int, ...] | None = None
    skipped: bool = False

    def describe(self, names: tuple[str, ...] | None = None) -> str:
        status = "skipped" if self.skipped else ("ok" if self.ok else "FAIL")
        out = f"clause {self.clause} [{self.part}]: {status}"
        if self.witness is not None:
            if names:
                shown = ",".join(names[i] for i in self.witness)
            else:
                shown = ",".join(str(i) for i in self.witness)
            out += f" at ({shown})"
        return out


@dataclass(frozen=True)
class ValidationReport:
    """Per-clause verdicts for the six defining conditions of an NM-algebra."""

    ok: bool
    checks: tuple[Check, ...]
    algebra: "FiniteNmAlgebra | None" = None

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.ok and not c.skipped)

    def failed_clauses(self) -> tuple[str, ...]:
        seen: list[str] = []
        for c in self.failures():
            if c.clause not in seen:
                seen.append(c.clause)
        return tuple(seen)

    def find(self, clause: str, part: str | None = None) -> tuple[Check, ...]:
        return tuple(
            c for c in self.checks if c.clause == clause and (part is None or c.part == part)
        )

    def to_dict(self, names: tuple[str, ...] | None = None) -> dict:
        def witness_labels(w):
            if w is None:
                return None
            return [names[i] if names else i for i in w]

        return {
            "ok": self.ok,
            "checks": [
                {
                    "clause": c.clause,
                    "part": c.part,
                    "ok": c.ok,
                    "skipped": c.skipped,
                    "witness": witness_labels(c.witness),
                }
                for c in self.checks
            ],
        }


@dataclass(frozen=True)
class PropertyResult:
    name: str
    ok: bool
    witness: tuple[int, ...] | None = None
    strict_witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class PropertyReport:
    results: tuple[PropertyResult, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> tuple[PropertyResult, ...]:
        return tuple(r for r in self.results if not r.ok)


@dataclass(frozen=True)
class FiniteNmAlgebra:
    """A validated finite NM-algebra.

    Elements are the indices ``0..size-1``; ``names`` carries their labels.
    ``bottom`` and ``top`` are the indices of the least and greatest element.
    Instances are immutable; derived tables are cached on first use.
    """

    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    imp: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise MalformedInputError(f"unknown element label {label!r}") from None

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def neg(self, x: int) -> int:
        self._check_index(x)
        return self.imp[x][self.bottom]

    def oplus(self, x: int, y: int) -> int:
        self._check_index(x)
        self._check_index(y)
        return self.imp[self.neg(x)][y]

    def power(self, x: int, n: int) -> int:
        """n-fold mul of x with itself; the empty product is top."""
        self._check_index(x)
        if n < 0:
            raise MalformedInputError("negative exponent")
        out = self.top
        for _ in range(n):
            nxt = self.mul[out][x]
            if nxt == out:
                return out
            out = nxt
        return out

    def _check_index(self, x: int) -> None:
        if not (isinstance(x, int) and 0 <= x < self.size):
            raise MalformedInputError(f"element index {x!r} out of range")

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.imp[x][self.bottom] for x in self.elements)

    @cached_property
    def down_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(y for y in self.elements if self.leq[y][x]) for x in self.elements
        )

    @cached_property
    def up_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(y for y in self.elements if self.leq[x][y]) for x in self.elements
        )

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        out = []
        for x in self.elements:
            m = 0
            for y in self.up_sets[x]:
                m |= 1 << y
            out.append(m)
        return tuple(out)

    @cached_property
    def is_chain(self) -> bool:
        n = self.size
        return all(self.leq[x][y] or self.leq[y][x] for x in range(n) for y in range(x + 1, n))

    @cached_property
    def coatoms(self) -> tuple[int, ...]:
        out = []
        for x in self.elements:
            if x == self.top:
                continue
            covers = [y for y in self.up_sets[x] if y != x]
            if covers == [self.top]:
                out.append(x)
        return tuple(out)

    def labels(self, members) -> tuple[str, ...]:
        return tuple(self.names[i] for i in sorted(members))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FiniteNmAlgebra({len(self.names)} elements: {','.join(self.names)})"


def set_key(members) -> tuple[int, tuple[int, ...]]:
    """Canonical sort key for element subsets: cardinality, then index pattern."""
    t = tuple(sorted(members))
    return (len(t), t)


def sort_sets(sets) -> list[frozenset[int]]:
    return sorted((frozenset(s) for s in sets), key=set_key)


def _shape_check(names, leq, mul, imp) -> int:
    n = len(names)
    if n < 2:
        raise MalformedInputError("an NM-algebra needs at least 2 elements")
    if len(set(names)) != n:
        raise MalformedInputError("element labels must be distinct")
    for label, table in (("leq", leq), ("mul", mul), ("imp", imp)):
        if len(table) != n or any(len(row) != n for row in table):
            raise MalformedInputError(f"{label} table is not {n}x{n}")
    for label, table in (("mul", mul), ("imp", imp)):
        for row in table:
            for v in row:
                if not (isinstance(v, int) and 0 <= v < n):
                    raise MalformedInputError(f"{label} entry {v!r} is not a valid index")
    return n


def _derive_lattice(leq: tuple[tuple[bool, ...], ...]):
    """Derive meet/join tables from the order, reporting every broken part."""
    n = len(leq)
    checks: list[Check] = []

    refl = next((x for x in range(n) if not leq[x][x]), None)
    checks.append(Check("1", "reflexivity", refl is None, (refl,) if refl is not None else None))

    antisym = None
    for x in range(n):
        for y in range(x + 1, n):
            if leq[x][y] and leq[y][x]:
                antisym = (x, y)
                break
        if antisym:
            break
    checks.append(Check("1", "antisymmetry", antisym is None, antisym))

    trans = None
    for x in range(n):
        for y in range(n):
            if not leq[x][y]:
                continue
            for z in range(n):
                if leq[y][z] and not leq[x][z]:
                    trans = (x, y, z)
                    break
            if trans:
                break
        if trans:
            break
    checks.append(Check("1", "transitivity", trans is None, trans))

    if refl is not None or antisym is not None or trans is not None:
        return None, None, None, None, checks

    bottoms = [x for x in range(n) if all(leq[x][y] for y in range(n))]
    tops = [x for x in range(n) if all(leq[y][x] for y in range(n))]
    checks.append(Check("1", "bounds", len(bottoms) == 1 and len(tops) == 1, None))
    if len(bottoms) != 1 or len(tops) != 1:
        return None, None, None, None, checks

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    glb_missing = None
    lub_missing = None
    for x in range(n):
        for y in range(n):
            lower = [z for z in range(n) if leq[z][x] and leq[z][y]]
            glb = [z for z in lower if all(leq[w][z] for w in lower)]
            if len(glb) != 1:
                glb_missing = glb_missing or (x, y)
            else:
                meet[x][y] = glb[0]
            upper = [z for z in range(n) if leq[x][z] and leq[y][z]]
            lub = [z for z in upper if all(leq[z][w] for w in upper)]
            if len(lub) != 1:
                lub_missing = lub_missing or (x, y)
            else:
                join[x][y] = lub[0]
    checks.append(Check("1", "meets-exist", glb_missing is None, glb_missing))
    checks.append(Check("1", "joins-exist", lub_missing is None, lub_missing))
    if glb_missing is not None or lub_missing is not None:
        return None, None, None, None, checks

    meet_t = tuple(tuple(row) for row in meet)
    join_t = tuple(tuple(row) for row in join)
    return meet_t, join_t, bottoms[0], tops[0], checks


def validate_nm(names, leq, mul, imp) -> ValidationReport:
    """Check all six defining conditions; derive meet/join from the order.

    Returns a report listing every violated clause with a first witness.  On
    success the report carries the validated algebra.  Structural problems
    (bad shapes, bad indices) raise :class:`MalformedInputError` instead.
    """
    names = tuple(names)
    leq = tuple(tuple(bool(v) for v in row) for row in leq)
    mul = tuple(tuple(row) for row in mul)
    imp = tuple(tuple(row) for row in imp)
    n = _shape_check(names, leq, mul, imp)

    meet, join, bottom, top, checks = _derive_lattice(leq)
    lattice_ok = meet is not None

    def first_fail(pred, tuples):
        for t in tuples:
            if not pred(*t):
                return t
        return None

    rng = range(n)
    pairs = tuple(itertools.product(rng, rng))
    triples = tuple(itertools.product(rng, rng, rng))

    if lattice_ok:
        # Clause 2: commutative monoid with unit top.
        w = first_fail(lambda x, y: mul[x][y] == mul[y][x], pairs)
        checks.append(Check("2", "commutativity", w is None, w))
        w = first_fail(lambda x, y, z: mul[mul[x][y]][z] == mul[x][mul[y][z]], triples)
        checks.append(Check("2", "associativity", w is None, w))
        w = next(((x, top) for x in rng if mul[x][top] != x), None)
        checks.append(Check("2", "unit", w is None, w))

        # Clause 3: adjointness mul(x,y) <= z  iff  x <= imp(y,z).
        w = first_fail(lambda x, y, z: leq[mul[x][y]][z] == leq[x][imp[y][z]], triples)
        checks.append(Check("3", "adjointness", w is None, w))

        # Clause 4: prelinearity.
        w = first_fail(lambda x, y: join[imp[x][y]][imp[y][x]] == top, pairs)
        checks.append(Check("4", "prelinearity", w is None, w))

        # Clause 5: weak nilpotent minimum.
        def wnm(x, y):
            p = mul[x][y]
            return join[imp[p][bottom]][imp[meet[x][y]][p]] == top

        w = first_fail(wnm, pairs)
        checks.append(Check("5", "weak-nilpotent-minimum", w is None, w))

        # Clause 6: involutive negation.
        w = next(
            ((x,) for x in rng if imp[imp[x][bottom]][bottom] != x),
            None,
        )
        checks.append(Check("6", "involution", w is None, w))
    else:
        for clause, part in (
            ("2", "commutativity"),
            ("2", "associativity"),
            ("2", "unit"),
            ("3", "adjointness"),
            ("4", "prelinearity"),
            ("5", "weak-nilpotent-minimum"),
            ("6", "involution"),
        ):
            checks.append(Check(clause, part, False, None, skipped=True))

    ok = all(c.ok for c in checks if not c.skipped) and lattice_ok
    algebra = None
    if ok:
        algebra = FiniteNmAlgebra(names, leq, meet, join, mul, imp, bottom, top)
    return ValidationReport(ok, tuple(checks), algebra)


def nm_algebra(names, leq, mul, imp) -> FiniteNmAlgebra:
    """Validate and return the algebra, raising on any axiom failure."""
    report = validate_nm(names, leq, mul, imp)
    if not report.ok:
        raise InvalidAlgebraError(report)
    assert report.algebra is not None
    return report.algebra


def check_basic_properties(a: FiniteNmAlgebra) -> PropertyReport:
    """Exhaustively evaluate the twelve standard arithmetic laws."""
    n = a.size
    rng = range(n)
    mul, imp, meet, join, leq = a.mul, a.imp, a.meet, a.join, a.leq
    top, bottom = a.top, a.bottom
    neg = a.neg_table
    results: list[PropertyResult] = []

    def scan(name, pred, tuples):
        for t in tuples:
            if not pred(*t):
                results.append(PropertyResult(name, False, t))
                return
        results.append(PropertyResult(name, True))

    pairs = tuple(itertools.product(rng, rng))
    triples = tuple(itertools.product(rng, rng, rng))

    scan("le_iff_imp_top", lambda x, y: leq[x][y] == (imp[x][y] == top), pairs)
    scan("weakening", lambda x, y: leq[x][imp[y][x]], pairs)
    scan(
        "imp_antitone_left",
        lambda x, y, z: (not leq[x][y]) or leq[imp[y][z]][imp[x][z]],
        triples,
    )
    scan(
        "imp_monotone_right",
        lambda x, y, z: (not leq[x][y]) or leq[imp[z][x]][imp[z][y]],
        triples,
    )
    scan(
        "join_from_imp",
        lambda x, y: join[x][y] == meet[imp[imp[x][y]][y]][imp[imp[y][x]][x]],
        pairs,
    )
    scan(
        "neg_complement",
        lambda x: mul[x][neg[x]] == bottom and imp[neg[x]][neg[x]] == top
        and a.oplus(x, neg[x]) == top,
        tuple((x,) for x in rng),
    )
    scan("currying", lambda x, y, z: imp[mul[x][y]][z] == imp[x][imp[y][z]], triples)
    scan("imp_meet_absorb", lambda x, y: imp[x][y] == imp[x][meet[x][y]], pairs)
    scan(
        "imp_meet_distributive",
        lambda x, y, z: imp[x][meet[y][z]] == meet[imp[x][y]][imp[x][z]],
        triples,
    )
    scan(
        "join_imp_distributive",
        lambda x, y, z: imp[join[x][y]][z] == meet[imp[x][z]][imp[y][z]],
        triples,
    )

    # Powers of any element stabilize by the square, so n in {1, 2} is exhaustive.
    def power_prelinearity(x, y):
        u, v = imp[x][y], imp[y][x]
        return all(join[a.power(u, k)][a.power(v, k)] == top for k in (1, 2))

    scan("power_prelinearity", power_prelinearity, pairs)
    scan(
        "meet_imp_distributive",
        lambda x, y, z: imp[meet[x][y]][z] == join[imp[x][z]][imp[y][z]],
        triples,
    )
    return PropertyReport(tuple(results))


def is_boolean(a: FiniteNmAlgebra) -> tuple[bool, tuple[int, int] | None]:
    """True iff mul coincides with meet; returns the first failing pair otherwise.

    The dual test (oplus against join) is evaluated too; the two can only
    disagree through an implementation bug, so a mismatch raises.
    """
    witness_mul = None
    witness_oplus = None
    for x in a.elements:
        for y in a.elements:
            if witness_mul is None and a.mul[x][y] != a.meet[x][y]:
                witness_mul = (x, y)
            if witness_oplus is None and a.oplus(x, y) != a.join[x][y]:
                witness_oplus = (x, y)
    if (witness_mul is None) != (witness_oplus is None):
        raise RuntimeError("internal error: mul/meet and oplus/join verdicts disagree")
    return witness_mul is None, witness_mul


def filter_violation(a: FiniteNmAlgebra, members) -> tuple[str, tuple[int, ...]] | None:
    """None if members is a filter, else (reason, witness)."""
    s = frozenset(members)
    if not s:
        return ("empty", ())
    if a.top not in s:
        return ("missing-top", (a.top,))
    for x in s:
        for y in a.up_sets[x]:
            if y not in s:
                return ("not-upward-closed", (x, y))
    for x in s:
        for y in s:
            if a.mul[x][y] not in s:
                return ("not-mul-closed", (x, y))
    return None


def is_filter(a: FiniteNmAlgebra, members) -> bool:
    return filter_violation(a, members) is None


def filter_generated(a: FiniteNmAlgebra, xs) -> frozenset[int]:
    """Smallest filter containing xs: mul-closure followed by upward closure."""
    seed = frozenset(xs)
    if not seed:
        raise MalformedInputError("cannot generate a filter from the empty set")
    for x in seed:
        a._check_index(x)
    current = set(seed)
    current.add(a.top)
    while True:
        nxt = set(current)
        for x in current:
            nxt.update(a.up_sets[x])
            for y in current:
                nxt.add(a.mul[x][y])
        if nxt == current:
            return frozenset(current)
        current = nxt


def all_filters(a: FiniteNmAlgebra, method: str = "auto") -> list[frozenset[int]]:
    """All filters, canonically sorted.

    ``subsets`` scans every subset (only sensible up to 12 elements);
    ``closure`` builds the filter lattice from principal filters by joins.
    ``auto`` picks by size.  Both methods agree; tests pin that down.
    """
    if method == "auto":
        method = "subsets" if a.size <= 12 else "closure"
    if method == "subsets":
        return _all_filters_subsets(a)
    if method == "closure":
        return _all_filters_closure(a)
    raise MalformedInputError(f"unknown filter enumeration method {method!r}")


def _all_filters_subsets(a: FiniteNmAlgebra) -> list[frozenset[int]]:
    n = a.size
    if n > 16:
        raise MalformedInputError("subset scan is limited to 16 elements")
    up_masks = a.up_masks
    mul = a.mul
    out = []
    top_bit = 1 << a.top
    for mask in range(1 << n):
        if not mask & top_bit:
            continue
        members = [i for i in range(n) if mask >> i & 1]
        ok = True
        for x in members:
            if up_masks[x] & ~mask:
                ok = False
                break
        if not ok:
            continue
        for x in members:
            for y in members:
                if not mask >> mul[x][y] & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(frozenset(members))
    return sort_sets(out)


def _all_filters_closure(a: FiniteNmAlgebra) -> list[frozenset[int]]:
    found = {frozenset([a.top])}
    worklist = [filter_generated(a, [x]) for x in a.elements]
    found.update(worklist)
    changed = True
    while changed:
        changed = False
        current = list(found)
        for f in current:
            for g in current:
                j = filter_generated(a, f | g)
                if j not in found:
                    found.add(j)
                    changed = True
    return sort_sets(found)


def _require_filter(a: FiniteNmAlgebra, f) -> frozenset[int]:
    s = frozenset(f)
    violation = filter_violation(a, s)
    if violation is not None:
        raise MalformedInputError(f"not a filter: {violation[0]} at {violation[1]}")
    return s


def is_prime_filter(a: FiniteNmAlgebra, f) -> bool:
    """Proper, and every join landing in the filter has a factor inside."""
    s = _require_filter(a, f)
    if len(s) == a.size:
        return False
    for x in a.elements:
        for y in a.elements:
            if a.join[x][y] in s and x not in s and y not in s:
                return False
    return True


def is_maximal_filter(a: FiniteNmAlgebra, f) -> bool:
    s = _require_filter(a, f)
    if len(s) == a.size:
        return False
    for other in all_filters(a):
        if s < other and len(other) < a.size:
            return False
    return True


def prime_filters(a: FiniteNmAlgebra) -> list[frozenset[int]]:
    return [f for f in all_filters(a) if len(f) < a.size and is_prime_filter(a, f)]


def ortho_complement(a: FiniteNmAlgebra, x: int) -> frozenset[int]:
    """Elements joining with x to the top."""
    a._check_index(x)
    return frozenset(y for y in a.elements if a.join[x][y] == a.top)


@dataclass(frozen=True)
class MinimalPrimeReport:
    """Minimality of a prime filter, by definition and by both ortho-union readings.

    ``union_over_excluded`` collects the ortho-complements of elements outside
    the filter; ``union_over_members`` does the same for elements inside.  The
    definitional verdict (no prime strictly below) is authoritative; the two
    set characterizations are reported so they can be compared against it.
    """

    minimal: bool
    union_over_excluded: frozenset[int]
    union_over_members: frozenset[int]
    matches_union_over_excluded: bool
    matches_union_over_members: bool


def is_minimal_prime(a: FiniteNmAlgebra, p) -> MinimalPrimeReport:
    s = _require_filter(a, p)
    if not is_prime_filter(a, s):
        raise MalformedInputError("is_minimal_prime requires a prime filter")
    minimal = not any(q < s for q in prime_filters(a))
    excluded = frozenset().union(*[ortho_complement(a, x) for x in a.elements if x not in s]) \
        if len(s) < a.size else frozenset()
    members = frozenset().union(*[ortho_complement(a, x) for x in s])
    return MinimalPrimeReport(
        minimal=minimal,
        union_over_excluded=excluded,
        union_over_members=members,
        matches_union_over_excluded=excluded == s,
        matches_union_over_members=members == s,
    )


def minimal_prime_filters(a: FiniteNmAlgebra) -> list[frozenset[int]]:
    primes = prime_filters(a)
    return [p for p in primes if not any(q < p for q in primes)]


@dataclass(frozen=True)
class Congruence:
    """Partition of the universe compatible with all four operations."""

    blocks: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.blocks)

    def size(self) -> int:
        return len(self.blocks)


def congruence_from_filter(a: FiniteNmAlgebra, f) -> Congruence:
    """The congruence identifying x and y when both residua land in the filter."""
    s = _require_filter(a, f)

    def related(x, y):
        return a.imp[x][y] in s and a.imp[y][x] in s

    class_of = [-1] * a.size
    blocks: list[tuple[int, ...]] = []
    for x in a.elements:
        if class_of[x] >= 0:
            continue
        block = tuple(y for y in a.elements if related(x, y))
        idx = len(blocks)
        blocks.append(block)
        for y in block:
            class_of[y] = idx
    cong = Congruence(tuple(blocks), tuple(class_of))
    _check_congruence(a, cong)
    return cong


def _check_congruence(a: FiniteNmAlgebra, cong: Congruence) -> None:
    cls = cong.class_of
    for table in (a.meet, a.join, a.mul, a.imp):
        for block in cong.blocks:
            x0 = block[0]
            for x in block[1:]:
                for y in a.elements:
                    if cls[table[x0][y]] != cls[table[x][y]] or cls[table[y][x0]] != cls[table[y][x]]:
                        raise InvalidAlgebraError(
                            ValidationReport(False, ()),
                            "operations are not well defined on the blocks; the input was not a filter",
                        )


@dataclass(frozen=True)
class QuotientResult:
    algebra: FiniteNmAlgebra
    projection: tuple[int, ...]
    congruence: Congruence


def quotient(a: FiniteNmAlgebra, f) -> QuotientResult:
    """Quotient algebra by a filter, re-validated from scratch."""
    cong = congruence_from_filter(a, f)
    reps = cong.representatives
    k = len(reps)
    cls = cong.class_of
    names = tuple("[" + a.names[min(block)] + "]" for block in cong.blocks)
    # Quotient order: [x] <= [y] iff x -> y lands in the filter.
    s = frozenset(f)
    leq = tuple(tuple(a.imp[reps[i]][reps[j]] in s for j in range(k)) for i in range(k))
    mul = tuple(tuple(cls[a.mul[reps[i]][reps[j]]] for j in range(k)) for i in range(k))
    imp = tuple(tuple(cls[a.imp[reps[i]][reps[j]]] for j in range(k)) for i in range(k))
    report = validate_nm(names, leq, mul, imp)
    if not report.ok:
        raise InvalidAlgebraError(report, "quotient by a filter failed to re-validate")
    assert report.algebra is not None
    return QuotientResult(report.algebra, tuple(cls), cong)


def is_simple_nm(a: FiniteNmAlgebra) -> bool:
    return len(all_filters(a)) == 2


def is_si_nm(a: FiniteNmAlgebra) -> bool:
    """Subdirectly irreducible: the nontrivial filters have a least member."""
    trivial = frozenset([a.top])
    nontrivial = [f for f in all_filters(a) if f != trivial]
    if not nontrivial:
        return False
    common = frozenset(a.elements)
    for f in nontrivial:
        common &= f
    return common != trivial


@dataclass(frozen=True)
class RepresentabilityReport:
    representable: bool
    witness: tuple[frozenset[int], ...] | None


def is_representable(a: FiniteNmAlgebra) -> RepresentabilityReport:
    """Search prime filter sets whose intersection is the top singleton."""
    primes = prime_filters(a)
    target = frozenset([a.top])
    for size in range(1, len(primes) + 1):
        for combo in itertools.combinations(primes, size):
            common = frozenset(a.elements)
            for f in combo:
                common &= f
            if common == target:
                return RepresentabilityReport(True, tuple(combo))
    return RepresentabilityReport(False, None)


def extract_subalgebra(a: FiniteNmAlgebra, members) -> tuple[FiniteNmAlgebra, tuple[int, ...]]:
    """Restriction of the algebra to a closed subset, plus the inclusion map."""
    sub = tuple(sorted(frozenset(members)))
    pos = {x: i for i, x in enumerate(sub)}
    for x in sub:
        for y in sub:
            for table in (a.meet, a.join, a.mul, a.imp):
                if table[x][y] not in pos:
                    raise MalformedInputError("subset is not closed under the operations")
    names = tuple(a.names[x] for x in sub)
    leq = tuple(tuple(a.leq[x][y] for y in sub) for x in sub)
    mul = tuple(tuple(pos[a.mul[x][y]] for y in sub) for x in sub)
    imp = tuple(tuple(pos[a.imp[x][y]] for y in sub) for x in sub)
    return nm_algebra(names, leq, mul, imp), sub


def is_subalgebra_set(a: FiniteNmAlgebra, members) -> bool:
    s = frozenset(members)
    if a.bottom not in s or a.top not in s:
        return False
    for x in s:
        for y in s:
            for table in (a.meet, a.join, a.mul, a.imp):
                if table[x][y] not in s:
                    return False
    return True


# Exact-rational standard algebra on the unit interval.

_STANDARD_OPS = ("mul", "imp", "meet", "join", "neg")


def _check_unit_interval(x: Fraction) -> Fraction:
    x = Fraction(x)
    if x < 0 or x > 1:
        raise MalformedInputError(f"rational {x} outside [0,1]")
    return x


def standard_nm(x, y=None, op: str = "mul") -> Fraction:
    """Evaluate one standard-algebra operation at exact rational points.

    mul(x,y) is 0 when x <= 1-y and min(x,y) otherwise; imp(x,y) is 1 when
    x <= y and max(1-x, y) otherwise.  No floating point is involved.
    """
    if op not in _STANDARD_OPS:
        raise MalformedInputError(f"unknown op {op!r}; expected one of {_STANDARD_OPS}")
    x = _check_unit_interval(x)
    if op == "neg":
        return 1 - x
    if y is None:
        raise MalformedInputError(f"op {op!r} needs two arguments")
    y = _check_unit_interval(y)
    if op == "mul":
        return Fraction(0) if x <= 1 - y else min(x, y)
    if op == "imp":
        return Fraction(1) if x <= y else max(1 - x, y)
    if op == "meet":
        return min(x, y)
    return max(x, y)
