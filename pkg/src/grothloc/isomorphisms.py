"""The graded isomorphism between T^-1(R[M]) and (S^-1 R)[G(M)].

T is the multiplicative set {s * eps_m : s in S, m in M} inside R[M].  The
forward map sends a fraction with denominator s * eps_n to the group-ring
element whose [m, n]-term has coefficient r_m / s; the inverse clears all
coefficient denominators over one common monomial denominator.  No gcd
reduction is attempted anywhere; equalities are semantic.
"""
from __future__ import annotations

from .errors import MalformedDenominatorError, PreconditionError
from .grothendieck import GrothElement, GrothendieckGroup
from .localization import Fraction, LocalizedRing, MultiplicativeSet
from .monoid import (
    FreeCommutativeMonoid,
    IntegerLatticeMonoid,
    base_monoid,
    is_cancellative,
    sample_element,
)
from .ring import GroupRing, MonoidRing, MRElement
from .rng import Lcg64


class HMapContext:
    """Everything both directions of the map need, built once.

    T generators are laid out as the lifted S generators followed by the
    monomial generators (every eps_m for a finite monoid, the unit-vector
    eps's for a free monoid), so denominator witnesses compose positionally.
    """

    def __init__(self, ring, monoid, sgens, *, nzd: bool | None = None,
                 depth: int = 8):
        self.ring = ring
        self.monoid = base_monoid(monoid)
        self.sset = MultiplicativeSet(ring, sgens, nzd=nzd, depth=depth)
        self.loc = LocalizedRing(ring, self.sset)
        self.mring = MonoidRing(ring, self.monoid)
        self.group = GrothendieckGroup(self.monoid)
        self.group_ring = GroupRing(self.group, self.loc)

        lifted = [self.mring.scalar(g) for g in self.sset.generators]
        self._mono_offset = len(lifted)
        self._mono_index = None
        if self.monoid.is_finite:
            elems = list(self.monoid.elements())
            self._mono_index = {m: i for i, m in enumerate(elems)}
            mono_gens = [self.mring.epsilon(m) for m in elems]
        elif isinstance(self.monoid, FreeCommutativeMonoid):
            mono_gens = [
                self.mring.epsilon(
                    tuple(1 if j == i else 0 for j in range(self.monoid.rank))
                )
                for i in range(self.monoid.rank)
            ]
        else:
            raise PreconditionError(
                f"no T generator layout for {type(self.monoid).__name__}"
            )
        try:
            cancellative = is_cancellative(self.monoid)
        except Exception:
            cancellative = False
        t_nzd = True if (self.sset.nzd_flag and cancellative) else None
        self.tset = MultiplicativeSet(
            self.mring, lifted + mono_gens, nzd=t_nzd, depth=depth
        )
        self.tloc = LocalizedRing(self.mring, self.tset)

    # -- witness plumbing

    def lift_witness(self, s_witness: tuple) -> tuple:
        # lifted S generators sit at the same indices inside T
        return tuple(s_witness)

    def monomial_witness(self, n) -> tuple:
        if self._mono_index is not None:
            return (self._mono_offset + self._mono_index[n],)
        return tuple(
            self._mono_offset + j
            for j, e in enumerate(n)
            for _ in range(e)
        )

    def monomial_fraction(self, num: MRElement, s, n) -> Fraction:
        """num over the denominator s * eps_n; s must be in the S closure."""
        s = self.ring.validate(s)
        if not self.sset.contains(s):
            raise MalformedDenominatorError(f"{s!r} is not a recognized S element")
        n = self.monoid.validate(n)
        den = self.mring.element({n: s})
        wit = self.lift_witness(self.sset.witness(s)) + self.monomial_witness(n)
        return Fraction(self.mring.validate(num), den, wit)


def h_forward(ctx: HMapContext, f: Fraction):
    """T^-1(R[M]) -> (S^-1 R)[G]: split the numerator by degree.

    The denominator must be a monomial s * eps_n; the part of the numerator
    in degree m contributes coefficient r_m / s at the class [m, n].
    """
    den = f.den
    if den.is_zero() or len(den.coeffs) != 1:
        raise MalformedDenominatorError(
            f"denominator support has {len(den.coeffs)} degrees; need exactly 1"
        )
    ((n, s),) = den.coeffs.items()
    if not ctx.sset.contains(s):
        raise MalformedDenominatorError(
            f"denominator coefficient {s!r} is not a recognized S element"
        )
    s_wit = ctx.sset.witness(s)
    terms = []
    for m, c in f.num.items():
        terms.append((GrothElement(m, n), Fraction(c, s, s_wit)))
    return ctx.group_ring.from_terms(terms)


def h_inverse(ctx: HMapContext, u) -> Fraction:
    """(S^-1 R)[G] -> T^-1(R[M]): clear coefficients over a common denominator.

    For terms (r_i / s_i) at [m_i, n_i] the common denominator is the
    product of the s_i * eps_{n_i}; the numerator is the matching mixed sum.
    No reduction is performed.
    """
    mring = ctx.mring
    if not u.terms:
        return Fraction(mring.zero, mring.one, ())
    factors = []
    nums = []
    for key, c in u.terms:
        nums.append(mring.element({key.first: c.num}))
        den_i = mring.element({key.second: c.den})
        wit_i = ctx.lift_witness(c.den_witness) + ctx.monomial_witness(key.second)
        factors.append((den_i, wit_i))
    total_den = mring.one
    total_wit = ()
    for den_i, wit_i in factors:
        total_den = total_den * den_i
        total_wit = total_wit + wit_i
    num = mring.zero
    for i, base in enumerate(nums):
        term = base
        for j, (den_j, _) in enumerate(factors):
            if j != i:
                term = term * den_j
        num = num + term
    return Fraction(num, total_den, total_wit)


# ---------------------------------------------------------------------------
# sampling


def sample_t_fraction(ctx: HMapContext, rng: Lcg64, max_support: int = 3,
                      exp_bound: int = 4, coeff_bound: int = 9,
                      max_s_powers: int = 2) -> Fraction:
    """Random numerator over a random monomial denominator s * eps_n."""
    num = ctx.mring.sample(
        rng, max_support=max_support, exp_bound=exp_bound, coeff_bound=coeff_bound
    )
    k = rng.below(max_s_powers + 1) if ctx.sset.generators else 0
    s = ctx.ring.one
    for _ in range(k):
        s = ctx.ring.mul(s, rng.choice(ctx.sset.generators))
    n = sample_element(ctx.monoid, rng, exp_bound)
    return ctx.monomial_fraction(num, s, n)


def sample_group_ring_element(ctx: HMapContext, rng: Lcg64, max_terms: int = 3,
                              exp_bound: int = 4, coeff_bound: int = 9,
                              max_s_powers: int = 2):
    terms = []
    for _ in range(rng.below(max_terms + 1)):
        a = sample_element(ctx.monoid, rng, exp_bound)
        b = sample_element(ctx.monoid, rng, exp_bound)
        r = ctx.ring.sample_nonzero(rng, coeff_bound)
        k = rng.below(max_s_powers + 1) if ctx.sset.generators else 0
        s = ctx.ring.one
        for _ in range(k):
            s = ctx.ring.mul(s, rng.choice(ctx.sset.generators))
        coeff = Fraction(r, s, ctx.sset.witness(s))
        terms.append((GrothElement(a, b), coeff))
    return ctx.group_ring.from_terms(terms)


# ---------------------------------------------------------------------------
# verification batteries (each returns a plain report dict)


def verify_isomorphism(ctx: HMapContext, samples: int = 200, seed: int = 0,
                       kernel_samples: int | None = None) -> dict:
    """Homomorphism law, both round-trips, and homogeneous kernel triviality."""
    rng = Lcg64(seed)
    gr = ctx.group_ring
    hom_ok = True
    for _ in range(samples):
        f = sample_t_fraction(ctx, rng)
        g = sample_t_fraction(ctx, rng)
        add_match = gr.eq(
            h_forward(ctx, ctx.tloc.add(f, g)),
            gr.add(h_forward(ctx, f), h_forward(ctx, g)),
        )
        mul_match = gr.eq(
            h_forward(ctx, ctx.tloc.mul(f, g)),
            gr.mul(h_forward(ctx, f), h_forward(ctx, g)),
        )
        if not (add_match and mul_match):
            hom_ok = False
    back_ok = True
    for _ in range(samples):
        f = sample_t_fraction(ctx, rng)
        if not ctx.tloc.eq(h_inverse(ctx, h_forward(ctx, f)), f):
            back_ok = False
    forth_ok = True
    for _ in range(samples):
        u = sample_group_ring_element(ctx, rng)
        if not gr.eq(h_forward(ctx, h_inverse(ctx, u)), u):
            forth_ok = False
    if kernel_samples is None:
        kernel_samples = samples
    kernel_ok = True
    zero_hits = 0
    for _ in range(kernel_samples):
        m = sample_element(ctx.monoid, rng)
        n = sample_element(ctx.monoid, rng)
        r = ctx.ring.sample(rng)
        k = rng.below(3) if ctx.sset.generators else 0
        s = ctx.ring.one
        for _ in range(k):
            s = ctx.ring.mul(s, rng.choice(ctx.sset.generators))
        f = ctx.monomial_fraction(ctx.mring.element({m: r}), s, n)
        if gr.is_zero(h_forward(ctx, f)):
            zero_hits += 1
            if not ctx.tloc.is_zero(f):
                kernel_ok = False
    return {
        "samples": samples,
        "hom_ok": hom_ok,
        "roundtrip_back_ok": back_ok,
        "roundtrip_forth_ok": forth_ok,
        "kernel_samples": kernel_samples,
        "kernel_zero_hits": zero_hits,
        "kernel_trivial_ok": kernel_ok,
        "all_ok": hom_ok and back_ok and forth_ok and kernel_ok,
    }


def group_ring_specialization(ring, monoid, samples: int = 200, seed: int = 0,
                              depth: int = 8) -> dict:
    """S = {1}: T^-1(R[M]) against R[G(M)], plus the degree bookkeeping law."""
    ctx = HMapContext(ring, monoid, [], depth=depth)
    report = verify_isomorphism(ctx, samples=samples, seed=seed)
    rng = Lcg64(seed + 1)
    degree_ok = True
    for _ in range(samples):
        m = sample_element(ctx.monoid, rng)
        n = sample_element(ctx.monoid, rng)
        r = ctx.ring.sample_nonzero(rng)
        f = ctx.monomial_fraction(ctx.mring.element({m: r}), ctx.ring.one, n)
        u = h_forward(ctx, f)
        if u.terms:
            if len(u.terms) != 1 or not ctx.group.eq(
                u.terms[0][0], GrothElement(m, n)
            ):
                degree_ok = False
    report["degree_law_ok"] = degree_ok
    report["all_ok"] = report["all_ok"] and degree_ok
    return report


def laurent_iso(ring, rank: int, samples: int = 200, seed: int = 0,
                exp_bound: int = 4, depth: int = 12) -> dict:
    """R[Z^k] as the monomial localization of R[N^k], round-tripped exactly.

    A Laurent element embeds by clearing negative exponents with one common
    eps_d; its image must be the group-ring element with the matching keys,
    and products must carry over.
    """
    lat = IntegerLatticeMonoid(rank)
    lring = MonoidRing(ring, lat)
    ctx = HMapContext(ring, FreeCommutativeMonoid(rank), [], depth=depth)
    rng = Lcg64(seed)

    def embed(u: MRElement) -> Fraction:
        if u.coeffs:
            shift = tuple(
                max(0, max(-d[i] for d in u.coeffs)) for i in range(rank)
            )
        else:
            shift = (0,) * rank
        num = ctx.mring.element(
            {
                tuple(x + s for x, s in zip(d, shift)): c
                for d, c in u.coeffs.items()
            }
        )
        return ctx.monomial_fraction(num, ctx.ring.one, shift)

    def expected(u: MRElement):
        terms = []
        for d, c in u.coeffs.items():
            pos = tuple(max(x, 0) for x in d)
            neg = tuple(max(-x, 0) for x in d)
            terms.append((GrothElement(pos, neg), Fraction(c, ctx.ring.one, ())))
        return ctx.group_ring.from_terms(terms)

    roundtrip_ok = True
    key_match_ok = True
    product_ok = True
    for _ in range(samples):
        u = lring.sample(rng, max_support=4, exp_bound=exp_bound)
        f = embed(u)
        image = h_forward(ctx, f)
        if not ctx.group_ring.eq(image, expected(u)):
            key_match_ok = False
        if not ctx.tloc.eq(h_inverse(ctx, image), f):
            roundtrip_ok = False
        v = lring.sample(rng, max_support=3, exp_bound=exp_bound)
        lhs = h_forward(ctx, embed(u * v))
        rhs = ctx.group_ring.mul(h_forward(ctx, embed(u)), h_forward(ctx, embed(v)))
        if not ctx.group_ring.eq(lhs, rhs):
            product_ok = False
    return {
        "rank": rank,
        "samples": samples,
        "roundtrip_ok": roundtrip_ok,
        "key_match_ok": key_match_ok,
        "product_ok": product_ok,
        "all_ok": roundtrip_ok and key_match_ok and product_ok,
    }
