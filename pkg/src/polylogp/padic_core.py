"""Capped-precision arithmetic in Z_p, Q_p and W(F_{p^k}) mod p^A.

Values are tracked as intervals p^s * u + O(p^N): a unit representative with
an explicit certified absolute precision.  Three states are distinguished:

* exact zero            -- provably 0 (infinite valuation),
* approximate zero      -- 0 + O(p^N): nothing known below p^N,
* unit form             -- p^scale * u with u a unit mod p^prec.

The distinction matters for valuation assertions: a unit form certifies its
valuation exactly, an approximate zero only certifies a lower bound, and
comparisons are always "equal to certified precision".  No operation returns
digits beyond what it can certify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .finite_poly import FiniteField, FpkElement, lowest_irreducible


class PrecisionError(ArithmeticError):
    """A certification was requested that the tracked precision cannot give."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def int_val(c: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if c == 0:
        raise ValueError("valuation of 0")
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


class UnramifiedCtx:
    """W(F_{p^k}) mod p^A in the polynomial basis (Z/p^A)[x]/(h).

    ``hbar`` is the lowest-lexicographic monic irreducible of degree k over
    F_p and ``h`` its coefficient-wise lift with entries in [0, p), so a
    context is fully determined by (p, k, A) and runs reproduce exactly.
    """

    def __init__(self, p: int, k: int, A: int):
        if p % 2 == 0 or not _is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if A < 1:
            raise ValueError(f"precision must be >= 1, got {A}")
        self.p = p
        self.k = k
        self.A = A
        self.hbar = lowest_irreducible(p, k)  # (c_0, ..., c_{k-1}, 1)
        self.h = self.hbar  # lift with coefficients in [0, p)
        self.pA = p**A
        self.residue_field = FiniteField(p, k, self.hbar)
        self._pow_p = [p**i for i in range(A + 1)]

    def __eq__(self, other):
        return (
            isinstance(other, UnramifiedCtx)
            and (self.p, self.k, self.A) == (other.p, other.k, other.A)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.A))

    def __repr__(self):
        return f"UnramifiedCtx(p={self.p}, k={self.k}, A={self.A})"

    # -- raw polynomial-basis arithmetic on coefficient tuples -------------

    def vec_mul(self, a: tuple, b: tuple, pm: int) -> tuple:
        k = self.k
        if k == 1:
            return ((a[0] * b[0]) % pm,)
        if k == 2:
            h0, h1 = self.h[0], self.h[1]
            t = a[1] * b[1] % pm
            return (
                (a[0] * b[0] - t * h0) % pm,
                (a[0] * b[1] + a[1] * b[0] - t * h1) % pm,
            )
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % pm
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * self.h[j]
        return tuple(c % pm for c in prod[:k])

    def vec_pow(self, a: tuple, e: int, pm: int) -> tuple:
        result = (1,) + (0,) * (self.k - 1)
        base = a
        while e:
            if e & 1:
                result = self.vec_mul(result, base, pm)
            base = self.vec_mul(base, base, pm)
            e >>= 1
        return result

    def vec_inv(self, a: tuple, r: int) -> tuple:
        """Inverse of a unit vector mod p^r: residue-field inverse, Newton-lifted."""
        pm = self.p**r
        abar = self.residue_field.element([c % self.p for c in a])
        x = tuple(abar.inverse().coeffs)
        # x_{i+1} = x_i (2 - a x_i) doubles the number of correct digits
        prec = 1
        while prec < r:
            ax = self.vec_mul(a, x, pm)
            two_minus = tuple((-c) % pm for c in ax)
            two_minus = ((two_minus[0] + 2) % pm,) + two_minus[1:]
            x = self.vec_mul(x, two_minus, pm)
            prec *= 2
        return tuple(c % pm for c in x)

    # -- constructors -------------------------------------------------------

    def make(self, scale: int, vec, rel: int) -> "WittApprox":
        """Normalize p^scale * vec + O(p^{scale+rel}) into canonical form."""
        rel = min(rel, self.A)
        if rel <= 0:
            return WittApprox(self, scale + rel, _ZVEC[self.k], 0, False)
        pm = self.p**rel
        vec = tuple(c % pm for c in vec)
        j = rel
        for c in vec:
            if c:
                j = min(j, int_val(c, self.p))
                if j == 0:
                    break
        if j >= rel:
            return WittApprox(self, scale + rel, _ZVEC[self.k], 0, False)
        if j:
            pj = self.p**j
            pmj = self.p ** (rel - j)
            vec = tuple((c // pj) % pmj for c in vec)
        return WittApprox(self, scale + j, vec, rel - j, False)

    def from_int(self, c: int) -> "WittApprox":
        if c == 0:
            return self.exact_zero()
        j = int_val(c, self.p)
        u = c // self._pow(j)
        vec = (u % self.pA,) + (0,) * (self.k - 1)
        return WittApprox(self, j, vec, self.A, False)

    def from_rational(self, q: Fraction | int) -> "WittApprox":
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ValueError(
                f"denominator {q.denominator} is divisible by p={self.p}"
            )
        if q == 0:
            return self.exact_zero()
        return self.from_int(q.numerator) * self.from_int(q.denominator).inv()

    def from_vec(self, vec, scale: int = 0) -> "WittApprox":
        """Unit-or-zero element from k residues mod p^A, known to full precision."""
        return self.make(scale, tuple(vec), self.A)

    def exact_zero(self) -> "WittApprox":
        return WittApprox(self, 0, _ZVEC[self.k], 0, True)

    def zero_approx(self, abs_prec: int) -> "WittApprox":
        return WittApprox(self, abs_prec, _ZVEC[self.k], 0, False)

    def one(self) -> "WittApprox":
        return self.from_int(1)

    def _pow(self, j: int) -> int:
        if 0 <= j <= self.A:
            return self._pow_p[j]
        return self.p**j

    def metadata(self) -> dict:
        return {"p": self.p, "k": self.k, "A": self.A, "hbar": list(self.hbar)}


class _ZeroVecs(dict):
    def __missing__(self, k):
        self[k] = (0,) * k
        return self[k]


_ZVEC = _ZeroVecs()


def make_ctx(p: int, k: int, A: int) -> UnramifiedCtx:
    """Context for W(F_{p^k}) mod p^A with the deterministic modulus choice."""
    return UnramifiedCtx(p, k, A)


@dataclass(frozen=True)
class WittApprox:
    """p^scale * coeffs + O(p^{scale+prec}), coeffs a unit vector mod p^prec.

    ``prec == 0`` encodes an approximate zero O(p^scale); ``exact`` a proven
    zero.  Instances are immutable; all operations return new values.
    """

    ctx: UnramifiedCtx
    scale: int
    coeffs: tuple
    prec: int
    exact: bool

    # -- state predicates ----------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.exact

    @property
    def is_unit_form(self) -> bool:
        return not self.exact and self.prec > 0

    @property
    def abs_prec(self):
        """Certified absolute precision (None means exact)."""
        return None if self.exact else self.scale + self.prec

    def valuation(self):
        """Exact p-adic valuation; raises if only a lower bound is known."""
        if self.exact:
            return math.inf
        if self.prec == 0:
            raise PrecisionError(
                f"valuation undetermined: value is O(p^{self.scale})"
            )
        return self.scale

    @property
    def min_valuation(self):
        """Certified lower bound on the valuation (inf for exact zero)."""
        if self.exact:
            return math.inf
        return self.scale

    def valuation_ge(self, n: int) -> bool:
        """Certified test v_p(self) >= n; raises when undecidable."""
        if self.exact:
            return True
        if self.prec > 0:
            return self.scale >= n
        if self.scale >= n:
            return True
        raise PrecisionError(
            f"cannot certify valuation >= {n}: value is O(p^{self.scale})"
        )

    def is_zero_to(self, n: int) -> bool:
        """Certified test self = 0 mod p^n; raises when undecidable."""
        if self.exact:
            return True
        if self.prec > 0:
            return self.scale >= n
        if self.scale >= n:
            return True
        raise PrecisionError(
            f"cannot decide vanishing mod p^{n}: value is O(p^{self.scale})"
        )

    # -- ring operations -----------------------------------------------------

    def _check(self, other: "WittApprox"):
        if self.ctx != other.ctx:
            raise ValueError("operands from different contexts")

    def __add__(self, other: "WittApprox") -> "WittApprox":
        self._check(other)
        ctx = self.ctx
        if self.exact:
            return other
        if other.exact:
            return self
        a, b = self, other
        na, nb = a.abs_prec, b.abs_prec
        n = min(na, nb)
        if a.prec == 0 and b.prec == 0:
            return ctx.zero_approx(n)
        if a.prec == 0:
            a, b = b, a
        if b.prec == 0:
            # unit + O(p^n)
            if a.scale >= n:
                return ctx.zero_approx(n)
            return ctx.make(a.scale, a.coeffs, n - a.scale)
        s = min(a.scale, b.scale)
        digits = n - s
        pm = ctx.p**digits
        fa = ctx._pow(a.scale - s) if a.scale > s else 1
        fb = ctx._pow(b.scale - s) if b.scale > s else 1
        vec = tuple((fa * x + fb * y) % pm for x, y in zip(a.coeffs, b.coeffs))
        return ctx.make(s, vec, digits)

    def __neg__(self) -> "WittApprox":
        if self.exact or self.prec == 0:
            return self
        pm = self.ctx.p**self.prec
        return WittApprox(
            self.ctx, self.scale, tuple((-c) % pm for c in self.coeffs), self.prec, False
        )

    def __sub__(self, other: "WittApprox") -> "WittApprox":
        return self + (-other)

    def __mul__(self, other) -> "WittApprox":
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        self._check(other)
        ctx = self.ctx
        if self.exact or other.exact:
            return ctx.exact_zero()
        if self.prec == 0 or other.prec == 0:
            return ctx.zero_approx(self.min_valuation + other.min_valuation)
        r = min(self.prec, other.prec)
        vec = ctx.vec_mul(self.coeffs, other.coeffs, ctx.p**r)
        return WittApprox(ctx, self.scale + other.scale, vec, r, False)

    __rmul__ = __mul__

    def inv(self) -> "WittApprox":
        if self.exact:
            raise ZeroDivisionError("inverse of exact zero")
        if self.prec == 0:
            raise PrecisionError(
                f"cannot invert: value indistinguishable from zero, O(p^{self.scale})"
            )
        ctx = self.ctx
        vec = ctx.vec_inv(self.coeffs, self.prec)
        return WittApprox(ctx, -self.scale, vec, self.prec, False)

    def __truediv__(self, other: "WittApprox") -> "WittApprox":
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return self * other.inv()

    def __pow__(self, e: int) -> "WittApprox":
        if e < 0:
            return self.inv() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, j: int) -> "WittApprox":
        """Multiply by p^j (exact: adjusts the scale only)."""
        if self.exact:
            return self
        return WittApprox(self.ctx, self.scale + j, self.coeffs, self.prec, self.exact)

    def cap_abs(self, n: int) -> "WittApprox":
        """Absorb an O(p^n) error term: the result certifies at most n digits.

        Exact zeros are downgraded too, because the error term is about the
        quantity being approximated, not about the computed representative.
        """
        if self.exact:
            return self.ctx.zero_approx(n)
        if self.abs_prec <= n:
            return self
        if self.prec == 0:
            return self.ctx.zero_approx(min(self.scale, n))
        if self.scale >= n:
            return self.ctx.zero_approx(n)
        return self.ctx.make(self.scale, self.coeffs, n - self.scale)

    # -- reductions and comparisons -------------------------------------------

    def residue_elem(self) -> FpkElement:
        """Reduction mod p into F_{p^k}; requires an integral value."""
        field = self.ctx.residue_field
        if self.exact:
            return field.zero()
        if self.prec == 0:
            if self.scale >= 1:
                return field.zero()
            raise PrecisionError("residue of a value only known as O(p^0) or worse")
        if self.scale < 0:
            raise ValueError("residue of a non-integral value (negative scale)")
        if self.scale > 0:
            return field.zero()
        return field.element([c % self.ctx.p for c in self.coeffs])

    def eq_to_prec(self, other: "WittApprox", digits: int | None = None) -> bool:
        """Equality to certified precision (optionally at least ``digits``)."""
        diff = self - other
        if digits is None:
            if diff.exact:
                return True
            if diff.prec == 0:
                return True  # equal to the full shared certified precision
            # difference certified nonzero only if its valuation is below the
            # shared certified precision, which holds by construction
            return False
        return diff.is_zero_to(digits)

    def to_record(self) -> dict:
        return {
            "p": self.ctx.p,
            "k": self.ctx.k,
            "A": self.ctx.A,
            "scale": self.scale,
            "coeffs": list(self.coeffs),
            "prec": self.prec,
            "exactZero": self.exact,
        }

    def __repr__(self):
        p = self.ctx.p
        if self.exact:
            return "Witt(0 exact)"
        if self.prec == 0:
            return f"Witt(O({p}^{self.scale}))"
        body = " + ".join(
            f"{c}*x^{i}" if i else f"{c}"
            for i, c in enumerate(self.coeffs)
            if c or i == 0
        )
        return f"Witt({p}^{self.scale}*({body}) + O({p}^{self.abs_prec}))"


def add(a: WittApprox, b: WittApprox) -> WittApprox:
    return a + b


def mul(a: WittApprox, b: WittApprox) -> WittApprox:
    return a * b


def neg(a: WittApprox) -> WittApprox:
    return -a


def inv(a: WittApprox) -> WittApprox:
    return a.inv()


def div(a: WittApprox, b: WittApprox) -> WittApprox:
    return a / b


def teichmuller(ctx: UnramifiedCtx, a: FpkElement) -> WittApprox:
    """Root of unity congruent to ``a``: the fixed point of x -> x^{p^k}.

    Lifts the residue and applies x -> x^{p^k} exactly A times; each
    application gains at least one digit of agreement with the fixed point.
    """
    if a.is_zero():
        raise ValueError("Teichmuller lift of 0 is not defined here")
    if a.field != ctx.residue_field:
        raise ValueError("residue from a different field")
    q = ctx.p**ctx.k
    pm = ctx.pA
    vec = tuple(c % pm for c in a.coeffs)
    for _ in range(ctx.A):
        vec = ctx.vec_pow(vec, q, pm)
    return WittApprox(ctx, 0, vec, ctx.A, False)


@lru_cache(maxsize=None)
def _log_cutoff(p: int, A: int) -> int:
    # beyond M, every series term m satisfies m - v_p(m) >= A
    return A + int(math.floor(math.log(A, p))) + 1


def padic_log(u: WittApprox) -> WittApprox:
    """log on 1 + pW: sum of (-1)^{m+1} (u-1)^m / m, certified truncation."""
    ctx = u.ctx
    t = u - ctx.one()
    if not t.valuation_ge(1):
        raise ValueError("padic_log requires u = 1 mod p")
    if t.exact:
        return ctx.exact_zero()
    cutoff = _log_cutoff(ctx.p, ctx.A)
    acc = ctx.exact_zero()
    power = ctx.one()
    for m in range(1, cutoff + 1):
        power = power * t
        term = power / ctx.from_int(m)
        acc = acc + (term if m % 2 else -term)
    return acc


def residue(z: WittApprox) -> FpkElement:
    """Coefficient-wise reduction W -> F_{p^k}."""
    return z.residue_elem()


# -- scalar capped-relative p-adics (degree-one specialization) --------------


@dataclass(frozen=True)
class PadicApprox:
    """p^v * unit + O(p^{v+r}) in Q_p, unit coprime to p (or a tagged zero).

    Independent of WittApprox (no shared arithmetic), so the two can serve
    as cross-checking implementations at k = 1.
    """

    p: int
    v: int
    unit: int
    r: int
    exact: bool = False

    @staticmethod
    def exact_zero(p: int) -> "PadicApprox":
        return PadicApprox(p, 0, 0, 0, True)

    @staticmethod
    def from_int(p: int, c: int, r: int) -> "PadicApprox":
        if c == 0:
            return PadicApprox.exact_zero(p)
        v = int_val(c, p)
        return PadicApprox(p, v, (c // p**v) % p**r, r)

    @staticmethod
    def from_rational(p: int, q: Fraction, r: int) -> "PadicApprox":
        q = Fraction(q)
        if q == 0:
            return PadicApprox.exact_zero(p)
        vn = int_val(q.numerator, p)
        vd = int_val(q.denominator, p)
        pr = p**r
        num = (q.numerator // p**vn) % pr
        den = (q.denominator // p**vd) % pr
        return PadicApprox(p, vn - vd, num * pow(den, -1, pr) % pr, r)

    @property
    def abs_prec(self):
        return None if self.exact else self.v + self.r

    def _norm(self, v: int, x: int, digits: int) -> "PadicApprox":
        if digits <= 0:
            return PadicApprox(self.p, v + digits, 0, 0)
        pm = self.p**digits
        x %= pm
        if x == 0:
            return PadicApprox(self.p, v + digits, 0, 0)
        j = int_val(x, self.p)
        return PadicApprox(self.p, v + j, (x // self.p**j) % self.p ** (digits - j),
                           digits - j)

    def __add__(self, other: "PadicApprox") -> "PadicApprox":
        assert self.p == other.p
        if self.exact:
            return other
        if other.exact:
            return self
        n = min(self.abs_prec, other.abs_prec)
        if self.r == 0 and other.r == 0:
            return PadicApprox(self.p, n, 0, 0)
        s = min(self.v, other.v) if (self.r and other.r) else (
            self.v if self.r else other.v
        )
        if s >= n:
            return PadicApprox(self.p, n, 0, 0)
        x = 0
        for t in (self, other):
            if t.r:
                x += t.unit * self.p ** (t.v - s)
        return self._norm(s, x, n - s)

    def __neg__(self) -> "PadicApprox":
        if self.exact or self.r == 0:
            return self
        return PadicApprox(self.p, self.v, (-self.unit) % self.p**self.r, self.r)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "PadicApprox") -> "PadicApprox":
        assert self.p == other.p
        if self.exact or other.exact:
            return PadicApprox.exact_zero(self.p)
        if self.r == 0 or other.r == 0:
            return PadicApprox(self.p, self.v + other.v, 0, 0)
        r = min(self.r, other.r)
        return PadicApprox(self.p, self.v + other.v,
                           (self.unit * other.unit) % self.p**r, r)

    def inv(self) -> "PadicApprox":
        if self.exact:
            raise ZeroDivisionError("inverse of exact zero")
        if self.r == 0:
            raise PrecisionError("cannot invert a value indistinguishable from zero")
        return PadicApprox(self.p, -self.v, pow(self.unit, -1, self.p**self.r), self.r)

    def is_zero_to(self, n: int) -> bool:
        if self.exact:
            return True
        if self.r > 0:
            return self.v >= n
        if self.v >= n:
            return True
        raise PrecisionError(f"cannot decide vanishing mod p^{n}")

    def to_witt(self, ctx: UnramifiedCtx) -> WittApprox:
        if self.p != ctx.p:
            raise ValueError("prime mismatch")
        if self.exact:
            return ctx.exact_zero()
        if self.r == 0:
            return ctx.zero_approx(self.v)
        return ctx.make(self.v, (self.unit,) + (0,) * (ctx.k - 1), self.r)
