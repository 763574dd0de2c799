"""Grothendieck group of a commutative monoid, exactly.

A class is an ordered pair [a, b] read as "a minus b"; two pairs are
identified when (a+d) + m = (b+c) + m for some witness m.  Three decision
strategies cover the supported families:

* cancellative-cross-sum: test a+d = b+c directly (witness never needed),
* finite-witness-enumeration: scan every m in a finite carrier,
* presentation-lattice: membership of (a+d) - (b+c) in the integer row
  lattice of the relation matrix, decided through Smith normal form.

All integer linear algebra uses arbitrary-precision Python ints.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import gcd, lcm
from typing import Callable, NamedTuple

from .errors import (
    AxiomViolationError,
    InvalidInputError,
    PreconditionError,
    StrategyUnavailableError,
    TorsionWitnessError,
    UnsupportedFamilyError,
)
from .monoid import (
    CayleyMonoid,
    CommutativeMonoid,
    FreeCommutativeMonoid,
    IntegerLatticeMonoid,
    MonoidPresentation,
    DirectSumMonoid,
    MonoidValue,
    base_monoid,
    is_cancellative,
)


class GrothElement(NamedTuple):
    """Formal difference first - second; no canonical form is ever stored."""

    first: MonoidValue
    second: MonoidValue


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SNFResult:
    """D = U * A * V with U, V unimodular and D diagonal.

    ``invariant_factors`` lists the diagonal of D (length min(nrows, ncols)),
    nonnegative, each entry dividing the next, zeros trailing.
    """

    D: list
    U: list
    V: list
    invariant_factors: list
    nrows: int
    ncols: int


def _eye(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a: list, b: list) -> list:
    if not a or not b:
        return [[] for _ in a]
    cols = len(b[0])
    inner = len(b)
    return [
        [sum(row[i] * b[i][j] for i in range(inner)) for j in range(cols)]
        for row in a
    ]


def smith_normal_form(rows, ncols: int | None = None) -> SNFResult:
    """Diagonalize an integer matrix over Z, tracking both transforms.

    Pivoting always promotes a minimum-|value| entry, which keeps
    intermediate entries small; arithmetic is exact regardless.
    ``ncols`` is required when ``rows`` is empty.
    """
    A = [[int(x) for x in row] for row in rows]
    m = len(A)
    if m:
        n = len(A[0])
        if any(len(row) != n for row in A):
            raise InvalidInputError("ragged matrix")
        if ncols is not None and ncols != n:
            raise InvalidInputError("ncols disagrees with row length")
    else:
        if ncols is None:
            raise InvalidInputError("empty matrix needs an explicit ncols")
        n = ncols
    orig = [row[:] for row in A]
    U = _eye(m)
    V = _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        asrc, adst = A[src], A[dst]
        for k in range(n):
            adst[k] += q * asrc[k]
        usrc, udst = U[src], U[dst]
        for k in range(m):
            udst[k] += q * usrc[k]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(t, piv[0])
        if piv[1] != t:
            swap_cols(t, piv[1])
        if A[t][t] < 0:
            negate_row(t)
        while True:
            dirty = False
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    q = v // A[t][t]
                    if q:
                        add_row(t, i, -q)
                    if A[i][t]:
                        # remainder beats the pivot; promote it
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                v = A[t][j]
                if v:
                    q = v // A[t][t]
                    if q:
                        add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # row and column t are clear; force the divisibility chain
            d = A[t][t]
            culprit = None
            for i in range(t + 1, m):
                if any(A[i][j] % d for j in range(t + 1, n)):
                    culprit = i
                    break
            if culprit is None:
                break
            add_row(culprit, t, 1)
        t += 1

    check = _matmul(_matmul(U, orig), V)
    if check != A:
        raise AssertionError("transform bookkeeping broke: U*A*V != D")
    diag = [A[i][i] for i in range(limit)]
    return SNFResult(D=A, U=U, V=V, invariant_factors=diag, nrows=m, ncols=n)


# ---------------------------------------------------------------------------
# group structure records


@dataclass(frozen=True)
class FGAbelianStructure:
    """Finitely generated abelian group Z^free_rank + sum of Z/d_i.

    torsion_invariants is an ascending divisibility chain with every d >= 2.
    """

    free_rank: int
    torsion_invariants: tuple

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion_invariants:
            n *= d
        return n


def is_torsion_free(s: FGAbelianStructure) -> bool:
    return not s.torsion_invariants


def presentation_matrix(p: MonoidPresentation) -> list:
    """One row u - v per relation, over the generator coordinates."""
    return [
        [ui - vi for ui, vi in zip(u, v)]
        for u, v in p.relations
    ]


def structure_from_snf(snf: SNFResult) -> FGAbelianStructure:
    nonzero = [d for d in snf.invariant_factors if d != 0]
    torsion = tuple(d for d in nonzero if d > 1)
    return FGAbelianStructure(snf.ncols - len(nonzero), torsion)


def groth_of_presentation(p: MonoidPresentation) -> FGAbelianStructure:
    """Grothendieck group of a presented monoid: Z^k modulo relation rows."""
    snf = smith_normal_form(presentation_matrix(p), ncols=p.generators)
    return structure_from_snf(snf)


# ---------------------------------------------------------------------------
# the group itself


class GrothendieckGroup:
    """Pairs over a base monoid with a decidable identification."""

    def __init__(self, base: CommutativeMonoid):
        base = base_monoid(base)
        self.base = base
        self._snf = None
        if isinstance(base, MonoidPresentation):
            self.strategy = "presentation-lattice"
            self._snf = smith_normal_form(
                presentation_matrix(base), ncols=base.generators
            )
        else:
            try:
                cancellative = is_cancellative(base)
            except UnsupportedFamilyError:
                cancellative = False
            if cancellative:
                self.strategy = "cancellative-cross-sum"
            elif base.is_finite:
                self.strategy = "finite-witness-enumeration"
            else:
                raise StrategyUnavailableError(
                    "no exact equality strategy for an infinite "
                    f"non-cancellative {type(base).__name__}"
                )

    # -- construction

    def element(self, a: MonoidValue, b: MonoidValue) -> GrothElement:
        return GrothElement(self.base.validate(a), self.base.validate(b))

    def zero(self) -> GrothElement:
        e = self.base.identity
        return GrothElement(e, e)

    def canonical(self, m: MonoidValue) -> GrothElement:
        """The image of a monoid element: [m, 0]."""
        return GrothElement(self.base.validate(m), self.base.identity)

    # -- arithmetic

    def add(self, x: GrothElement, y: GrothElement) -> GrothElement:
        m = self.base
        return GrothElement(m.op(x.first, y.first), m.op(x.second, y.second))

    def neg(self, x: GrothElement) -> GrothElement:
        return GrothElement(x.second, x.first)

    def sub(self, x: GrothElement, y: GrothElement) -> GrothElement:
        return self.add(x, self.neg(y))

    def nmul(self, n: int, x: GrothElement) -> GrothElement:
        if n < 0:
            return self.nmul(-n, self.neg(x))
        acc = self.zero()
        for _ in range(n):
            acc = self.add(acc, x)
        return acc

    # -- equality

    def eq(self, x: GrothElement, y: GrothElement) -> bool:
        m = self.base
        lhs = m.op(x.first, y.second)
        rhs = m.op(x.second, y.first)
        if self.strategy == "cancellative-cross-sum":
            return lhs == rhs
        if self.strategy == "finite-witness-enumeration":
            if lhs == rhs:
                return True
            return any(m.op(lhs, w) == m.op(rhs, w) for w in m.elements())
        w = tuple(p - q for p, q in zip(lhs, rhs))
        return self._in_relation_lattice(w)

    def _in_relation_lattice(self, w: tuple) -> bool:
        snf = self._snf
        k = snf.ncols
        V = snf.V
        y = [sum(w[i] * V[i][j] for i in range(k)) for j in range(k)]
        diag = snf.invariant_factors
        for j in range(k):
            d = diag[j] if j < len(diag) else 0
            if d == 0:
                if y[j] != 0:
                    return False
            elif y[j] % d:
                return False
        return True

    def is_zero(self, x: GrothElement) -> bool:
        return self.eq(x, self.zero())

    def is_trivial(self) -> bool:
        """Whether every class collapses to zero."""
        if self.strategy == "presentation-lattice":
            s = structure_from_snf(self._snf)
            return s.free_rank == 0 and not s.torsion_invariants
        if self.base.is_finite:
            return all(self.is_zero(self.canonical(a)) for a in self.base.elements())
        # infinite cancellative: trivial only for the trivial monoid
        return False


def canonical_map(group: GrothendieckGroup) -> Callable:
    return group.canonical


def canonical_map_injective(group: GrothendieckGroup) -> bool:
    """Whether m -> [m, 0] is injective; exhaustive on finite carriers."""
    base = group.base
    if base.is_finite:
        elems = list(base.elements())
        for i, a in enumerate(elems):
            for b in elems[i + 1:]:
                if group.eq(group.canonical(a), group.canonical(b)):
                    return False
        return True
    if isinstance(base, (FreeCommutativeMonoid, IntegerLatticeMonoid)):
        # [a,0] = [b,0] means a + m = b + m for some m, hence a = b
        return True
    if isinstance(base, DirectSumMonoid):
        return all(
            canonical_map_injective(GrothendieckGroup(c)) for c in base.components
        )
    raise UnsupportedFamilyError(
        f"injectivity is not decided for {type(base).__name__}"
    )


def groth_classes(group: GrothendieckGroup) -> list:
    """Representatives of all classes over a finite base, first-seen order."""
    base = group.base
    if not base.is_finite:
        raise UnsupportedFamilyError("class enumeration needs a finite base")
    reps = []
    for a in base.elements():
        for b in base.elements():
            x = GrothElement(a, b)
            if not any(group.eq(x, r) for r in reps):
                reps.append(x)
    return reps


def class_index(group: GrothendieckGroup, reps: list, x: GrothElement) -> int:
    for i, r in enumerate(reps):
        if group.eq(x, r):
            return i
    raise AxiomViolationError("class-cover", (x,))


# ---------------------------------------------------------------------------
# universal property


def is_abelian_group(m: CayleyMonoid) -> bool:
    """Every element of the (validated commutative) table has an inverse."""
    e = m.identity
    return all(any(m.op(a, b) == e for b in m.elements()) for a in m.elements())


def universal_extend(group: GrothendieckGroup, g, target: CayleyMonoid,
                     samples: int = 200, seed: int = 0) -> Callable:
    """Extend a monoid morphism g: M -> H to h: G(M) -> H.

    h([a, b]) = g(a) - g(b).  The morphism law for g is verified first,
    exhaustively when the base is finite and by sampling otherwise.
    """
    from .monoid import sample_element
    from .rng import Lcg64

    if not is_abelian_group(target):
        raise PreconditionError("target table is not a group")
    gf = g.__getitem__ if isinstance(g, dict) else g
    base = group.base
    if gf(base.identity) != target.identity:
        raise AxiomViolationError("morphism-identity", (base.identity,))
    if base.is_finite:
        pairs = itertools.combinations_with_replacement(list(base.elements()), 2)
    else:
        rng = Lcg64(seed)
        pairs = (
            (sample_element(base, rng), sample_element(base, rng))
            for _ in range(samples)
        )
    for a, b in pairs:
        if gf(base.op(a, b)) != target.op(gf(a), gf(b)):
            raise AxiomViolationError("morphism", (a, b))
    inv = {}
    e = target.identity
    for a in target.elements():
        for b in target.elements():
            if target.op(a, b) == e:
                inv[a] = b
                break

    def h(x: GrothElement):
        return target.op(gf(x.first), inv[gf(x.second)])

    return h


# ---------------------------------------------------------------------------
# structure of finite Grothendieck groups


def _divisor_chains(n: int, prev: int = 1):
    """Ascending divisibility chains (d1 | d2 | ...), all >= 2, product n."""
    if n == 1:
        yield ()
        return
    for d in range(max(prev, 2), n + 1):
        if n % d == 0 and d % prev == 0:
            for rest in _divisor_chains(n // d, d):
                yield (d,) + rest


def _order_multiset(chain: tuple) -> Counter:
    counts = Counter()
    for combo in itertools.product(*(range(d) for d in chain)):
        o = 1
        for x, d in zip(combo, chain):
            o = lcm(o, d // gcd(x, d))
        counts[o] += 1
    return counts


def finite_groth_structure(m: CommutativeMonoid) -> FGAbelianStructure:
    """Invariant-factor decomposition of G(M) for finite M.

    Classes are enumerated outright; the chain is recovered by matching the
    multiset of element orders against every candidate divisor chain.
    """
    m = base_monoid(m)
    group = GrothendieckGroup(m)
    reps = groth_classes(group)
    n = len(reps)
    orders = Counter()
    for r in reps:
        acc = r
        k = 1
        while not group.is_zero(acc):
            acc = group.add(acc, r)
            k += 1
        orders[k] += 1
    for chain in _divisor_chains(n):
        if _order_multiset(chain) == orders:
            return FGAbelianStructure(0, chain)
    raise AxiomViolationError("abelian-classification", (n, tuple(sorted(orders.items()))))


def monoid_groth_structure(m: CommutativeMonoid) -> FGAbelianStructure:
    """Structure of G(M) for any supported family, dispatching as needed."""
    m = base_monoid(m)
    if isinstance(m, MonoidPresentation):
        return groth_of_presentation(m)
    if isinstance(m, FreeCommutativeMonoid):
        return FGAbelianStructure(m.rank, ())
    if isinstance(m, IntegerLatticeMonoid):
        return FGAbelianStructure(m.rank, ())
    if m.is_finite:
        return finite_groth_structure(m)
    if isinstance(m, DirectSumMonoid):
        return direct_sum_groth(monoid_groth_structure(c) for c in m.components)
    raise UnsupportedFamilyError(
        f"no structure computation for {type(m).__name__}"
    )


def direct_sum_groth(parts) -> FGAbelianStructure:
    """Combine component structures; torsion is re-chained via gcd/lcm swaps."""
    parts = list(parts)
    free = sum(s.free_rank for s in parts)
    pool = [d for s in parts for d in s.torsion_invariants]
    changed = True
    while changed:
        changed = False
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                a, b = pool[i], pool[j]
                if a % b and b % a:
                    pool[i], pool[j] = gcd(a, b), lcm(a, b)
                    changed = True
    pool = sorted(d for d in pool if d > 1)
    return FGAbelianStructure(free, tuple(pool))


# ---------------------------------------------------------------------------
# total orders


def order_from_monoid_order(group: GrothendieckGroup, compare) -> Callable:
    """Transport a compatible total order on M to G(M): [a,b] < [c,d] iff a+d < b+c."""
    if not is_cancellative(group.base):
        raise PreconditionError("order transport needs a cancellative base")

    def cmp(x: GrothElement, y: GrothElement) -> int:
        m = group.base
        return compare(m.op(x.first, y.second), m.op(x.second, y.first))

    return cmp


class GrothOrder:
    """Total order on a torsion-free presented Grothendieck group.

    Classes are mapped to Z^r coordinates through the SNF column transform
    (the certificate); comparison is lexicographic on those coordinates.
    """

    def __init__(self, snf: SNFResult, free_positions: list):
        self.snf = snf
        self.free_positions = list(free_positions)
        k = snf.ncols
        self._v_is_identity = snf.V == _eye(k)

    def coords(self, x: GrothElement) -> tuple:
        k = self.snf.ncols
        w = [a - b for a, b in zip(x.first, x.second)]
        if self._v_is_identity:
            y = w
        else:
            V = self.snf.V
            y = [sum(w[i] * V[i][j] for i in range(k)) for j in range(k)]
        return tuple(y[j] for j in self.free_positions)

    def compare(self, x: GrothElement, y: GrothElement) -> int:
        cx = self.coords(x)
        cy = self.coords(y)
        return (cx > cy) - (cx < cy)

    def __call__(self, x: GrothElement, y: GrothElement) -> int:
        return self.compare(x, y)


def build_total_order(structure: FGAbelianStructure, snf: SNFResult) -> GrothOrder:
    """Lexicographic order on the free coordinates; torsion is a hard stop.

    On torsion the error carries a concrete element (coordinates in the
    reported structure, free slots first) of minimal order n >= 2.
    """
    if structure.torsion_invariants:
        n = structure.torsion_invariants[0]
        witness = (0,) * structure.free_rank + (1,) + (0,) * (
            len(structure.torsion_invariants) - 1
        )
        raise TorsionWitnessError(witness, n)
    diag = snf.invariant_factors
    free_positions = [
        j for j in range(snf.ncols)
        if j >= len(diag) or diag[j] == 0
    ]
    return GrothOrder(snf, free_positions)
