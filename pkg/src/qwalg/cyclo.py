"""Coefficient arithmetic for the rewrite engine.

A coefficient is a Laurent polynomial in the declared free symbols with
coefficients in the cyclotomic field Q(zeta_e), divided by a product of
tracked denominator atoms (the finitely many polynomials the engine has
been asked to invert, e.g. q - 1 during localization).  Zero tests and
equality are exact: the numerator is reduced modulo the e-th cyclotomic
polynomial and denominators are compared by cross multiplication.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .scalars import Scalar, ScalarGroup

# ---------------------------------------------------------------------------
# Integer polynomial helpers for cyclotomic polynomials (dense, low-to-high).


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact division")
        q = c // den[-1]
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    if any(num):
        raise ArithmeticError("inexact division")
    return out


def cyclotomic_poly(e: int) -> list[int]:
    """Coefficients of the e-th cyclotomic polynomial, constant term first."""
    poly = [-1] + [0] * (e - 1) + [1]  # x^e - 1
    for d in range(1, e):
        if e % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return poly


class CoeffRing:
    """Arithmetic context for one scalar group: Q(zeta_e)-Laurent in m symbols."""

    _cache: dict[ScalarGroup, "CoeffRing"] = {}

    def __new__(cls, group: ScalarGroup):
        if group not in cls._cache:
            obj = super().__new__(cls)
            obj._init(group)
            cls._cache[group] = obj
        return cls._cache[group]

    def _init(self, group: ScalarGroup):
        self.group = group
        self.e = group.torsion_order
        self.m = group.rank
        phi_poly = cyclotomic_poly(self.e)
        self.phi = len(phi_poly) - 1
        # Power table zeta^k for 0 <= k <= max(e, 2*phi) reduced to the basis.
        top = [Fraction(-c) for c in phi_poly[:-1]]
        table = []
        for k in range(max(self.e, 2 * self.phi) + 1):
            if k < self.phi:
                row = [Fraction(0)] * self.phi
                row[k] = Fraction(1)
            else:
                prev = table[k - 1]
                row = [Fraction(0)] + prev[:-1]
                if prev[-1]:
                    row = [a + prev[-1] * b for a, b in zip(row, top)]
            table.append(row)
        self.pow_table = [tuple(r) for r in table]
        self.cy_zero = tuple([Fraction(0)] * self.phi)
        self.cy_one = self.pow_table[0]

    # -- cyclotomic numbers: tuples of Fractions in the power basis ---------

    def cy_add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def cy_neg(self, a):
        return tuple(-x for x in a)

    def cy_scale(self, a, r: Fraction):
        return tuple(x * r for x in a)

    def cy_mul(self, a, b):
        out = [Fraction(0)] * self.phi
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                row = self.pow_table[i + j]
                for k in range(self.phi):
                    if row[k]:
                        out[k] += x * y * row[k]
        return tuple(out)

    def cy_from_rational(self, r) -> tuple:
        out = [Fraction(0)] * self.phi
        out[0] = Fraction(r)
        return tuple(out)

    def cy_root(self, t: int) -> tuple:
        return self.pow_table[t % self.e]

    def cy_inv(self, a):
        """Inverse in Q(zeta_e) by the extended Euclidean algorithm."""
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        if self.phi == 1:
            return (1 / a[0],)
        phi_poly = [Fraction(c) for c in cyclotomic_poly(self.e)]
        r0, r1 = phi_poly, [Fraction(x) for x in a]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                out = [Fraction(0)] * self.phi
                for i, c in enumerate(s1):
                    if c:
                        row = self.pow_table[i]
                        for k in range(self.phi):
                            out[k] += c * inv * row[k]
                return tuple(out)
            q, rem = _qpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))


def _qpoly_divmod(a, b):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i in range(len(b)):
            a[k + i] -= c * b[i]
        while a and not a[-1]:
            a.pop()
    return q, a if a else [Fraction(0)]


def _qpoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# ---------------------------------------------------------------------------
# Laurent polynomials: dict[exponent tuple -> cyclotomic number].


def lp_zero() -> dict:
    return {}

def lp_add(ring, a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = ring.cy_add(out.get(k, ring.cy_zero), v)
        if any(s):
            out[k] = s
        else:
            out.pop(k, None)
    return out


def lp_neg(ring, a: dict) -> dict:
    return {k: ring.cy_neg(v) for k, v in a.items()}


def lp_mul(ring, a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = ring.cy_add(out.get(k, ring.cy_zero), ring.cy_mul(va, vb))
            if any(s):
                out[k] = s
            else:
                out.pop(k, None)
    return out


def lp_eq(a: dict, b: dict) -> bool:
    return a == b


def lp_key(a: dict) -> tuple:
    return tuple(sorted(a.items()))


def lp_divexact(ring, a: dict, b: dict) -> dict | None:
    """Exact quotient a/b in the Laurent ring, or None when b does not divide a.

    Shift both to honest polynomials (Laurent units are monomials) and run
    lex-ordered division; a failed leading-term division certifies
    non-divisibility because leading terms are multiplicative.
    """
    if not b:
        raise ZeroDivisionError
    if not a:
        return {}
    m = ring.m

    def shift(p):
        mins = [min(k[i] for k in p) for i in range(m)]
        return {tuple(x - y for x, y in zip(k, mins)): v for k, v in p.items()}, tuple(mins)

    if m == 0:
        # Constants: single-coefficient division.
        va, vb = a[()], b[()]
        return {(): ring.cy_mul(va, ring.cy_inv(vb))}
    pa, sa = shift(a)
    pb, sb = shift(b)
    lead_b = max(pb)
    inv_lb = ring.cy_inv(pb[lead_b])
    quot: dict = {}
    rem = dict(pa)
    guard = 0
    while rem:
        guard += 1
        if guard > 10000:
            return None
        lead_r = max(rem)
        exp = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(x < 0 for x in exp):
            return None
        c = ring.cy_mul(rem[lead_r], inv_lb)
        quot[exp] = c
        for kb, vb in pb.items():
            k = tuple(x + y for x, y in zip(exp, kb))
            s = ring.cy_add(rem.get(k, ring.cy_zero), ring.cy_neg(ring.cy_mul(c, vb)))
            if any(s):
                rem[k] = s
            else:
                rem.pop(k, None)
    offset = tuple(x - y for x, y in zip(sa, sb))
    return {tuple(x + y for x, y in zip(k, offset)): v for k, v in quot.items()}


# ---------------------------------------------------------------------------
# Coefficients with tracked denominators.


class Coeff:
    """num / prod(den atoms); den atoms are canonical Laurent polynomials."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: CoeffRing, num: dict, den: Counter | None = None):
        self.ring = ring
        self.num = num
        self.den = den if den is not None else Counter()
        if not num:
            self.den = Counter()

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(ring: CoeffRing) -> "Coeff":
        return Coeff(ring, {})

    @staticmethod
    def one(ring: CoeffRing) -> "Coeff":
        return Coeff(ring, {(0,) * ring.m: ring.cy_one})

    @staticmethod
    def from_rational(ring: CoeffRing, r) -> "Coeff":
        r = Fraction(r)
        if r == 0:
            return Coeff.zero(ring)
        return Coeff(ring, {(0,) * ring.m: ring.cy_from_rational(r)})

    @staticmethod
    def from_scalar(ring: CoeffRing, s: Scalar) -> "Coeff":
        if s.group != ring.group:
            raise ValueError("scalar outside the coefficient ring's group")
        return Coeff(ring, {tuple(s.free): ring.cy_root(s.torsion)})

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coeff):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        ring = self.ring
        left = self.num
        for atom, k in other.den.items():
            for _ in range(k):
                left = lp_mul(ring, left, dict(atom))
        right = other.num
        for atom, k in self.den.items():
            for _ in range(k):
                right = lp_mul(ring, right, dict(atom))
        return left == right

    def __hash__(self):
        raise TypeError("Coeff is not hashable")

    # -- arithmetic -----------------------------------------------------------

    def _with(self, num, den) -> "Coeff":
        return Coeff(self.ring, num, den)._cancel()

    def _cancel(self) -> "Coeff":
        if not self.num or not self.den:
            return self
        num = self.num
        den = Counter(self.den)
        for atom in list(den):
            while den[atom] > 0:
                q = lp_divexact(self.ring, num, dict(atom))
                if q is None:
                    break
                num = q
                den[atom] -= 1
            if den[atom] == 0:
                del den[atom]
        return Coeff(self.ring, num, den)

    def add(self, other: "Coeff") -> "Coeff":
        ring = self.ring
        if self.den == other.den:
            num = lp_add(ring, self.num, other.num)
            return self._with(num, Counter(self.den)) if num else Coeff.zero(ring)
        union = self.den | other.den
        left = self.num
        for atom, k in (union - self.den).items():
            for _ in range(k):
                left = lp_mul(ring, left, dict(atom))
        right = other.num
        for atom, k in (union - other.den).items():
            for _ in range(k):
                right = lp_mul(ring, right, dict(atom))
        return self._with(lp_add(ring, left, right), union)

    def neg(self) -> "Coeff":
        return Coeff(self.ring, lp_neg(self.ring, self.num), Counter(self.den))

    def sub(self, other: "Coeff") -> "Coeff":
        return self.add(other.neg())

    def mul(self, other: "Coeff") -> "Coeff":
        if self.is_zero() or other.is_zero():
            return Coeff.zero(self.ring)
        num = lp_mul(self.ring, self.num, other.num)
        den = self.den + other.den
        if not den:
            return Coeff(self.ring, num)
        return self._with(num, den)

    def inv(self) -> "Coeff":
        """Exact inverse; non-unit content becomes a tracked denominator atom."""
        ring = self.ring
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero coefficient")
        num: dict = {(0,) * ring.m: ring.cy_one}
        for atom, k in self.den.items():
            for _ in range(k):
                num = lp_mul(ring, num, dict(atom))
        if len(self.num) == 1:
            (exp, cy), = self.num.items()
            unit = {tuple(-x for x in exp): ring.cy_inv(cy)}
            return Coeff(ring, lp_mul(ring, num, unit))
        atom, unit = _atomize(ring, self.num)
        return Coeff(ring, lp_mul(ring, num, unit), Counter({atom: 1}))._cancel()

    def divide(self, other: "Coeff") -> "Coeff":
        return self.mul(other.inv())


def _atomize(ring: CoeffRing, p: dict) -> tuple[tuple, dict]:
    """Split p = unit * atom with the atom shifted to exponent >= 0 and monic
    leading coefficient; returns (atom key, inverse-of-unit as Laurent)."""
    m = ring.m
    mins = [min(k[i] for k in p) for i in range(m)]
    shifted = {tuple(x - y for x, y in zip(k, mins)): v for k, v in p.items()}
    lead = max(shifted)
    lc = shifted[lead]
    lc_inv = ring.cy_inv(lc)
    atom_lp = {k: ring.cy_mul(v, lc_inv) for k, v in shifted.items()}
    atom = lp_key(atom_lp)
    # p = (lc * x^mins) * atom, so 1/unit = lc^{-1} * x^{-mins}
    unit_inv = {tuple(-x for x in mins): lc_inv}
    return atom, unit_inv


def format_coeff(c: Coeff) -> str:
    """Compact rendering: cyclotomic-combination coefficients on monomials,
    with tracked denominators appended."""
    ring = c.ring
    names = ring.group.free_symbols
    root = ring.group.root_symbol or "zeta"

    def mono(k) -> str:
        return " ".join(n if e == 1 else f"{n}^{e}"
                        for n, e in zip(names, k) if e)

    def cyc(v) -> str:
        terms = []
        for i, x in enumerate(v):
            if not x:
                continue
            base = "" if i == 0 else (root if i == 1 else f"{root}^{i}")
            if not base:
                terms.append(str(x))
            elif x == 1:
                terms.append(base)
            else:
                terms.append(f"{x}*{base}")
        return " + ".join(terms) if terms else "0"

    def lp(p) -> str:
        parts = []
        for k, v in sorted(p.items()):
            m = mono(k)
            cy = cyc(v)
            if not m:
                parts.append(cy if "+" not in cy else f"({cy})")
            elif cy == "1":
                parts.append(m)
            else:
                parts.append(f"({cy}) {m}")
        return " + ".join(parts) if parts else "0"

    out = lp(c.num)
    for atom, k in sorted(c.den.items()):
        out += f" / ({lp(dict(atom))})" + (f"^{k}" if k > 1 else "")
    return out


def coeff_to_scalar(c: Coeff) -> Scalar | None:
    """Recognize a coefficient as an element of the scalar group, if it is one."""
    if c.den or len(c.num) != 1:
        return None
    ring = c.ring
    (exp, cy), = c.num.items()
    for t in range(ring.e):
        if cy == ring.cy_root(t):
            return Scalar(ring.group, t, tuple(exp))
    return None
