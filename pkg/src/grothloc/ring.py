"""Base rings, monoid rings with their grading, and group rings.

A monoid-ring element is a finite-support coefficient map degree -> coeff
with zero coefficients pruned eagerly, so structural dict equality is
semantic equality.  Group-ring keys are Grothendieck classes, which have no
canonical form; group-ring terms are therefore merged by semantic key
equality instead of hashing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import (
    BaseMismatchError,
    InvalidInputError,
    MalformedElementError,
    NotHomogeneousError,
    PreconditionError,
    UnsupportedFamilyError,
)
from .grothendieck import GrothElement, GrothendieckGroup
from .monoid import CommutativeMonoid, base_monoid, is_cancellative


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class IntegerRing:
    """Z with machine-independent exact arithmetic."""

    is_finite = False
    is_field = False
    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        return a + b

    def mul(self, a: int, b: int) -> int:
        return a * b

    def neg(self, a: int) -> int:
        return -a

    def sub(self, a: int, b: int) -> int:
        return a - b

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def is_zero(self, a: int) -> bool:
        return a == 0

    def validate(self, a) -> int:
        if not isinstance(a, int) or isinstance(a, bool):
            raise MalformedElementError(f"expected integer, got {a!r}")
        return a

    def elements(self):
        raise UnsupportedFamilyError("Z is not enumerable")

    def sample(self, rng, bound: int = 9) -> int:
        return rng.randint(-bound, bound)

    def sample_nonzero(self, rng, bound: int = 9) -> int:
        v = rng.randint(1, bound)
        return v if rng.below(2) == 0 else -v

    def to_dict(self) -> dict:
        return {"kind": "Z"}

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "IntegerRing()"


class ModRing:
    """Z/n with representatives 0..n-1; a field exactly when n is prime."""

    is_finite = True

    def __init__(self, n: int):
        if n < 2:
            raise InvalidInputError("modulus must be at least 2")
        self.n = n
        self.is_field = _is_prime(n)
        self.zero = 0
        self.one = 1 % n

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.n

    def neg(self, a: int) -> int:
        return (-a) % self.n

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.n

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def is_zero(self, a: int) -> bool:
        return a == 0

    def validate(self, a) -> int:
        if not isinstance(a, int) or isinstance(a, bool):
            raise MalformedElementError(f"expected integer, got {a!r}")
        return a % self.n

    def elements(self):
        return range(self.n)

    def units(self) -> list:
        return [a for a in range(1, self.n) if gcd(a, self.n) == 1]

    def sample(self, rng, bound: int = 9) -> int:
        return rng.below(self.n)

    def sample_nonzero(self, rng, bound: int = 9) -> int:
        return 1 + rng.below(self.n - 1)

    def to_dict(self) -> dict:
        return {"kind": "Zmod", "n": self.n}

    def __eq__(self, other):
        return isinstance(other, ModRing) and self.n == other.n

    def __hash__(self):
        return hash(("Zmod", self.n))

    def __repr__(self):
        return f"ModRing({self.n})"


def ring_from_dict(data: dict):
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidInputError("ring description needs a 'kind' field")
    kind = data["kind"]
    if kind == "Z":
        return IntegerRing()
    if kind == "Zmod":
        try:
            return ModRing(int(data["n"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed Zmod description: {exc}") from exc
    raise InvalidInputError(f"unknown ring kind {kind!r}")


def _deg_sort_key(d):
    if isinstance(d, tuple):
        return tuple(_deg_sort_key(x) for x in d)
    return d


def _deg_to_json(d):
    if isinstance(d, tuple):
        return [_deg_to_json(x) for x in d]
    return d


def _deg_from_json(d):
    if isinstance(d, list):
        return tuple(_deg_from_json(x) for x in d)
    if isinstance(d, int):
        return d
    raise InvalidInputError(f"bad degree {d!r}")


class MRElement:
    """Finite-support element of a monoid ring; coeffs maps degree -> coeff."""

    __slots__ = ("ring", "monoid", "coeffs")

    def __init__(self, ring, monoid, coeffs: dict):
        self.ring = ring
        self.monoid = monoid
        self.coeffs = coeffs

    def support(self) -> list:
        return sorted(self.coeffs, key=_deg_sort_key)

    def items(self) -> list:
        return [(d, self.coeffs[d]) for d in self.support()]

    def _check_base(self, other: "MRElement"):
        if self.ring != other.ring or self.monoid != other.monoid:
            raise BaseMismatchError("operands live over different monoid rings")

    def __add__(self, other):
        self._check_base(other)
        ring = self.ring
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = ring.add(out.get(d, ring.zero), c)
            if ring.is_zero(s):
                out.pop(d, None)
            else:
                out[d] = s
        return MRElement(ring, self.monoid, out)

    def __neg__(self):
        ring = self.ring
        return MRElement(
            ring, self.monoid, {d: ring.neg(c) for d, c in self.coeffs.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_base(other)
        ring = self.ring
        monoid = self.monoid
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = monoid.op(d1, d2)
                s = ring.add(out.get(d, ring.zero), ring.mul(c1, c2))
                if ring.is_zero(s):
                    out.pop(d, None)
                else:
                    out[d] = s
        return MRElement(ring, monoid, out)

    def __eq__(self, other):
        if not isinstance(other, MRElement):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.monoid == other.monoid
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(tuple((d, self.coeffs[d]) for d in self.support()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "MR(0)"
        parts = [f"{c}*e{d!r}" for d, c in self.items()]
        return "MR(" + " + ".join(parts) + ")"


class MonoidRing:
    """R[M]: the ring of finite-support maps M -> R under convolution."""

    is_field = False

    def __init__(self, coeff_ring, monoid: CommutativeMonoid):
        self.coeff_ring = coeff_ring
        self.monoid = base_monoid(monoid)
        self.is_finite = coeff_ring.is_finite and self.monoid.is_finite
        self.zero = MRElement(coeff_ring, self.monoid, {})
        self.one = self.epsilon(self.monoid.identity)

    def element(self, coeffs: dict) -> MRElement:
        ring = self.coeff_ring
        out = {}
        for d, c in coeffs.items():
            d = self.monoid.validate(d)
            c = ring.validate(c)
            if not ring.is_zero(c):
                s = ring.add(out.get(d, ring.zero), c) if d in out else c
                if ring.is_zero(s):
                    out.pop(d, None)
                else:
                    out[d] = s
        return MRElement(ring, self.monoid, out)

    def epsilon(self, m) -> MRElement:
        """The monomial basis element at degree m."""
        m = self.monoid.validate(m)
        return MRElement(self.coeff_ring, self.monoid, {m: self.coeff_ring.one})

    def scalar(self, c) -> MRElement:
        c = self.coeff_ring.validate(c)
        if self.coeff_ring.is_zero(c):
            return self.zero
        return MRElement(
            self.coeff_ring, self.monoid, {self.monoid.identity: c}
        )

    # ring-protocol surface shared with the base rings

    def add(self, f: MRElement, g: MRElement) -> MRElement:
        return f + g

    def mul(self, f: MRElement, g: MRElement) -> MRElement:
        return f * g

    def neg(self, f: MRElement) -> MRElement:
        return -f

    def sub(self, f: MRElement, g: MRElement) -> MRElement:
        return f - g

    def eq(self, f: MRElement, g: MRElement) -> bool:
        return f == g

    def is_zero(self, f: MRElement) -> bool:
        return f.is_zero()

    def validate(self, f) -> MRElement:
        if not isinstance(f, MRElement):
            raise MalformedElementError(f"expected monoid-ring element, got {f!r}")
        if f.ring != self.coeff_ring or f.monoid != self.monoid:
            raise BaseMismatchError("element belongs to a different monoid ring")
        return f

    def elements(self):
        if not self.is_finite:
            raise UnsupportedFamilyError("monoid ring is not finite")
        degs = list(self.monoid.elements())
        coeff_vals = list(self.coeff_ring.elements())
        for combo in itertools.product(coeff_vals, repeat=len(degs)):
            yield MRElement(
                self.coeff_ring,
                self.monoid,
                {d: c for d, c in zip(degs, combo) if not self.coeff_ring.is_zero(c)},
            )

    def size(self) -> int:
        if not self.is_finite:
            raise UnsupportedFamilyError("monoid ring is not finite")
        return len(list(self.coeff_ring.elements())) ** self.monoid.size()

    def sample(self, rng, max_support: int = 4, exp_bound: int = 6,
               coeff_bound: int = 9) -> MRElement:
        from .monoid import sample_element

        out = {}
        for _ in range(rng.below(max_support + 1)):
            d = sample_element(self.monoid, rng, exp_bound)
            out[d] = self.coeff_ring.sample_nonzero(rng, coeff_bound)
        return self.element(out)

    def to_list(self, f: MRElement) -> list:
        return [[c, _deg_to_json(d)] for d, c in f.items()]

    def from_list(self, data) -> MRElement:
        if not isinstance(data, list):
            raise InvalidInputError("element serialization must be a list")
        out = {}
        for entry in data:
            if not isinstance(entry, list) or len(entry) != 2:
                raise InvalidInputError(f"bad term {entry!r}")
            c, d = entry
            d = _deg_from_json(d)
            out[d] = self.coeff_ring.add(
                out.get(d, self.coeff_ring.zero), self.coeff_ring.validate(c)
            )
        return self.element(out)

    def __eq__(self, other):
        return (
            isinstance(other, MonoidRing)
            and self.coeff_ring == other.coeff_ring
            and self.monoid == other.monoid
        )

    def __hash__(self):
        return hash((self.coeff_ring, self.monoid))

    def __repr__(self):
        return f"MonoidRing({self.coeff_ring!r}, {self.monoid!r})"


# ---------------------------------------------------------------------------
# grading


@dataclass
class HomogeneousPart:
    degree: object
    value: MRElement


def homogeneous_components(f: MRElement) -> list:
    """Split by degree; parts are returned in sorted-degree order and sum to f."""
    return [
        HomogeneousPart(d, MRElement(f.ring, f.monoid, {d: f.coeffs[d]}))
        for d in f.support()
    ]


def degree_of(f: MRElement):
    """Degree of a homogeneous nonzero element."""
    if f.is_zero():
        from .errors import ZeroDegreeError

        raise ZeroDegreeError("the zero element has no degree")
    if len(f.coeffs) != 1:
        raise NotHomogeneousError(f"support has {len(f.coeffs)} degrees")
    return next(iter(f.coeffs))


def regrade(f: MRElement, group: GrothendieckGroup) -> list:
    """Regroup the M-grading along classes [m, 0] of the Grothendieck group.

    Returns (class key, part) pairs with keys pairwise distinct in the group;
    for non-cancellative M several M-degrees can land in one part.
    """
    acc = []
    for d in f.support():
        key = group.canonical(d)
        for slot in acc:
            if group.eq(slot[0], key):
                slot[1][d] = f.coeffs[d]
                break
        else:
            acc.append([key, {d: f.coeffs[d]}])
    return [(key, MRElement(f.ring, f.monoid, part)) for key, part in acc]


# ---------------------------------------------------------------------------
# zero-divisor and injectivity sweeps (exhaustive, finite carriers only)


def _require_finite_modring(mring: MonoidRing):
    if not isinstance(mring.coeff_ring, ModRing):
        raise UnsupportedFamilyError("exhaustive sweeps need Z/n coefficients")
    if not mring.monoid.is_finite:
        raise UnsupportedFamilyError("exhaustive sweeps need a finite monoid")


def monomial_is_nonzerodivisor(mring: MonoidRing, m) -> bool:
    """Whether eps_m * f = 0 forces f = 0, by scanning every f in R[M]."""
    _require_finite_modring(mring)
    monoid = mring.monoid
    n = mring.coeff_ring.n
    elems = list(monoid.elements())
    m = monoid.validate(m)
    pos = {x: i for i, x in enumerate(elems)}
    fibers = {}
    for x in elems:
        fibers.setdefault(monoid.op(m, x), []).append(pos[x])
    fiber_list = list(fibers.values())
    for f in itertools.product(range(n), repeat=len(elems)):
        if not any(f):
            continue
        if all(sum(f[i] for i in fiber) % n == 0 for fiber in fiber_list):
            return False
    return True


def all_monomials_nonzerodivisors(mring: MonoidRing) -> bool:
    return all(monomial_is_nonzerodivisor(mring, m) for m in mring.monoid.elements())


def group_ring_map_injective(mring: MonoidRing, group: GrothendieckGroup | None = None) -> bool:
    """Whether R[M] -> R[G(M)] (coefficients summed per class) kills only 0."""
    _require_finite_modring(mring)
    monoid = mring.monoid
    if group is None:
        group = GrothendieckGroup(monoid)
    n = mring.coeff_ring.n
    elems = list(monoid.elements())
    # precompute the class partition of the canonical images
    class_of = []
    reps = []
    for x in elems:
        key = group.canonical(x)
        for i, r in enumerate(reps):
            if group.eq(key, r):
                class_of.append(i)
                break
        else:
            class_of.append(len(reps))
            reps.append(key)
    nclasses = len(reps)
    for f in itertools.product(range(n), repeat=len(elems)):
        if not any(f):
            continue
        sums = [0] * nclasses
        for i, c in enumerate(f):
            sums[class_of[i]] += c
        if all(s % n == 0 for s in sums):
            return False
    return True


# ---------------------------------------------------------------------------
# group ring over Grothendieck classes


class GroupRingElement:
    """Terms (class key, coeff); keys pairwise distinct semantically."""

    __slots__ = ("context", "terms")

    def __init__(self, context: "GroupRing", terms: list):
        self.context = context
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def keys(self) -> list:
        return [k for k, _ in self.terms]

    def __repr__(self):
        if not self.terms:
            return "GR(0)"
        return "GR(" + " + ".join(f"{c!r}*e{k!r}" for k, c in self.terms) + ")"


class GroupRing:
    """(coefficients)[G] for a Grothendieck group G and pluggable coefficients.

    ``coeff`` must expose add/neg/mul/eq/is_zero/zero/one; both base rings
    and localized rings qualify, so this single context serves R[G] and
    (S^-1 R)[G].
    """

    def __init__(self, group: GrothendieckGroup, coeff):
        self.group = group
        self.coeff = coeff

    def zero(self) -> GroupRingElement:
        return GroupRingElement(self, [])

    def monomial(self, key: GrothElement, c=None) -> GroupRingElement:
        if c is None:
            c = self.coeff.one
        return self.from_terms([(key, c)])

    def from_terms(self, pairs) -> GroupRingElement:
        group = self.group
        coeff = self.coeff
        acc = []
        for key, c in pairs:
            for slot in acc:
                if group.eq(slot[0], key):
                    slot[1] = coeff.add(slot[1], c)
                    break
            else:
                acc.append([key, c])
        return GroupRingElement(
            self, [(k, c) for k, c in acc if not coeff.is_zero(c)]
        )

    def add(self, u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
        return self.from_terms(list(u.terms) + list(v.terms))

    def neg(self, u: GroupRingElement) -> GroupRingElement:
        return GroupRingElement(
            self, [(k, self.coeff.neg(c)) for k, c in u.terms]
        )

    def sub(self, u, v):
        return self.add(u, self.neg(v))

    def mul(self, u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
        pairs = [
            (self.group.add(k1, k2), self.coeff.mul(c1, c2))
            for k1, c1 in u.terms
            for k2, c2 in v.terms
        ]
        return self.from_terms(pairs)

    def is_zero(self, u: GroupRingElement) -> bool:
        return not u.terms

    def eq(self, u: GroupRingElement, v: GroupRingElement) -> bool:
        return self.is_zero(self.sub(u, v))

    def one(self) -> GroupRingElement:
        return self.monomial(self.group.zero())


def canonical_to_group_ring(f: MRElement, gring: GroupRing) -> GroupRingElement:
    """R[M] -> R[G(M)]: send eps_m to the basis element at class [m, 0]."""
    group = gring.group
    return gring.from_terms(
        [(group.canonical(d), c) for d, c in f.items()]
    )


# ---------------------------------------------------------------------------
# degree submonoids


def degrees_submonoid(gens, depth: int = 8) -> set:
    """Degrees of a homogeneous generating set, closed under <= depth+1 sums.

    Generators must be homogeneous and nonzero; the ambient monoid must be
    cancellative so degrees of products add.  The identity degree (of 1) is
    always included.
    """
    gens = list(gens)
    if not gens:
        raise PreconditionError("need at least one generator")
    monoid = gens[0].monoid
    if not is_cancellative(monoid):
        raise PreconditionError("degree bookkeeping needs a cancellative monoid")
    gen_degs = {degree_of(g) for g in gens}
    degs = {monoid.identity} | set(gen_degs)
    frontier = set(degs)
    for _ in range(depth):
        frontier = {
            monoid.op(x, g) for x in frontier for g in gen_degs
        } - degs
        if not frontier:
            break
        degs |= frontier
    return degs
