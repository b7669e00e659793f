"""p-adic polylogarithms on the locus |z| = |z-1| = 1 and their congruences.

Three computation routes, kept deliberately separate so they can check each
other:

* the measure Riemann sum for the Frobenius-corrected polylogarithm
  Li_n(z) - Li_n(z^p)/p^n  (integral of x^{-n} against the cell measure
  z^a / (1 - z^{p^m}), certified error p^-m),
* the closed finite sum for Li_n at a Teichmuller point, and
* the disc expansion of p^{-n} Li_n(alpha(1+pw)) as a series in w, built by
  integrating the weight-(n-1) series against 1/(1+pw).

On top sit the log-weighted combinations L_n and F_n, the operator
D = z(1-z) d/dz applied to F_n in closed form, and the verification
drivers that compare everything against finite-field arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .finite_poly import FpkElement, li_finite, sigma
from .identities import a_coeffs
from .padic_core import (
    PrecisionError,
    UnramifiedCtx,
    WittApprox,
    padic_log,
    residue,
    teichmuller,
)
from .power_series import TruncSeries
from .rng import SplitMix64
from . import report as report_mod

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a declared dependency
    _np = None

_VECTOR_THRESHOLD = 20_000  # below this many cells the plain loop wins


def default_precision(n: int) -> int:
    """Working digits A for weight-n verification: n plus guard digits."""
    return n + 4


def default_riemann_m(n: int) -> int:
    """Riemann-sum modulus: certified error p^-m with m = n + 2."""
    return n + 2


def default_series_order(p: int, n: int, target: int) -> int:
    # tail slope of the disc series is 1 - 1/(p-1); solve for >= target digits
    need = Fraction((target + n) * (p - 1), p - 2)
    return int(math.ceil(need)) + 2


@dataclass(frozen=True)
class XPoint:
    """A point z = alpha (1 + p w) with alpha a root of unity, zbar not 0 or 1."""

    ctx: UnramifiedCtx
    z: WittApprox
    alpha: WittApprox
    w: WittApprox
    zbar: FpkElement

    @staticmethod
    def from_alpha_w(ctx: UnramifiedCtx, alpha: WittApprox, w: WittApprox) -> "XPoint":
        zbar = residue(alpha)
        if zbar.is_zero() or zbar.is_one():
            raise ValueError("residue must avoid 0 and 1 on this locus")
        if not w.is_exact_zero and w.min_valuation < 0:
            raise ValueError("the disc coordinate w must be integral")
        z = alpha * (ctx.one() + w.shift(1))
        return XPoint(ctx, z, alpha, w, zbar)

    @staticmethod
    def from_z(ctx: UnramifiedCtx, z: WittApprox) -> "XPoint":
        zbar = residue(z)
        if zbar.is_zero() or zbar.is_one():
            raise ValueError("residue must avoid 0 and 1 on this locus")
        alpha = teichmuller(ctx, zbar)
        w = (z * alpha.inv() - ctx.one()).shift(-1)
        return XPoint(ctx, z, alpha, w, zbar)

    def inverse_point(self) -> "XPoint":
        """The point 1/z, with Teichmuller part alpha^{-1}."""
        ctx = self.ctx
        t = (ctx.one() + self.w.shift(1)).inv()
        w_inv = (t - ctx.one()).shift(-1)
        return XPoint.from_alpha_w(ctx, self.alpha.inv(), w_inv)

    @property
    def is_teichmuller(self) -> bool:
        return self.w.is_exact_zero


@dataclass(frozen=True)
class PolylogValue:
    n: int
    value: WittApprox

    @property
    def certified_precision(self):
        return self.value.abs_prec


def measure_value(z: WittApprox, a: int, m: int) -> WittApprox:
    """Mass of the cell a + p^m Z_p under the measure attached to z."""
    ctx = z.ctx
    if not 0 <= a < ctx.p**m:
        raise ValueError("cell index out of range")
    if residue(z).is_zero() or residue(z).is_one():
        raise ValueError("measure requires |z| = |z-1| = 1")
    return z**a * (ctx.one() - z ** (ctx.p**m)).inv()


# -- coefficient tables for the Riemann sums ----------------------------------

_np_table_cache: dict = {"key": None, "inv": None, "tables": {}}


def _np_coeff_table(p: int, m: int, n: int):
    """x -> x^{-n} mod p^m on [0, p^m), zero on multiples of p (numpy int64).

    The inverse table is built once per (p, m) with a Fermat power mod p and
    vectorized Newton lifting; higher weights are one multiply each.
    """
    key = (p, m)
    if _np_table_cache["key"] != key:
        _np_table_cache["key"] = key
        _np_table_cache["inv"] = None
        _np_table_cache["tables"] = {}
    tables = _np_table_cache["tables"]
    if n in tables:
        return tables[n]
    P = p**m
    if _np_table_cache["inv"] is None:
        arr = _np.arange(P, dtype=_np.int64)
        x = arr % p
        # x^{p-2} mod p on the residues
        result = _np.ones(P, dtype=_np.int64)
        e = p - 2
        while e:
            if e & 1:
                result = result * x % p
            x = x * x % p
            e >>= 1
        result[arr % p == 0] = 0
        digits = 1
        while digits < m:
            digits = min(2 * digits, m)
            pm = p**digits
            ax = arr % pm * result % pm
            result = result * (2 - ax) % pm
        _np_table_cache["inv"] = result
    inv = _np_table_cache["inv"]
    if n == 0:
        tables[0] = (inv != 0).astype(_np.int64)
    elif n == 1:
        tables[1] = inv
    else:
        tables[n] = _np_coeff_table(p, m, n - 1) * inv % P
    return tables[n]


@lru_cache(maxsize=32)
def _py_coeff_table(p: int, m: int, n: int) -> tuple:
    P = p**m
    return tuple(
        pow(a, -n, P) if a % p else 0 for a in range(P)
    )


def _int64_safe(p: int, A: int, m: int) -> bool:
    pA = p**A
    return 2 * pA * pA + pA * p < 2**62 and (p**m) * pA < 2**62


class PolylogEvaluator:
    """Caches and drives polylogarithm computation for one context.

    ``riemann_m`` fixes the measure-sum modulus (certified error p^-m);
    ``max_weight`` is the largest weight the run needs, so one pass over a
    point's measure cells serves every weight at once.
    """

    def __init__(
        self,
        ctx: UnramifiedCtx,
        riemann_m: int,
        max_weight: int = 4,
        series_order: int | None = None,
        trace=None,
    ):
        if riemann_m < 1:
            raise ValueError("riemann modulus must be >= 1")
        self.ctx = ctx
        self.m = riemann_m
        self.max_weight = max_weight
        self.series_order = series_order
        self.trace = trace
        self._teich: dict = {}
        self._lip: dict = {}
        self._litilde: dict = {}
        self._g: dict = {}

    # -- Teichmuller points ---------------------------------------------------

    def teich(self, zbar: FpkElement) -> WittApprox:
        key = zbar.coeffs
        if key not in self._teich:
            self._teich[key] = teichmuller(self.ctx, zbar)
        return self._teich[key]

    def xpoint(self, zbar: FpkElement, w: WittApprox) -> XPoint:
        return XPoint.from_alpha_w(self.ctx, self.teich(zbar), w)

    # -- measure Riemann sums ---------------------------------------------------

    def li_p_riemann(self, z: WittApprox, n: int, m: int | None = None) -> PolylogValue:
        """Riemann sum for the Frobenius-corrected weight-n polylogarithm.

        The integrand x^{-n} is constant mod p^m on each cell and the measure
        takes integral values here, so the certified absolute error is p^-m.
        """
        if n < 0:
            raise ValueError("weight must be >= 0")
        m = self.m if m is None else m
        key = (z.scale, z.coeffs, z.prec, m)
        cached = self._lip.setdefault(key, {})
        if n not in cached:
            want = set(range(0, max(n, self.max_weight) + 1)) - set(cached)
            want.add(n)
            sums = self._measure_sums(z, sorted(want), m)
            ctx = self.ctx
            inv_factor = (ctx.one() - z ** (ctx.p**m)).inv()
            certified = min(m, z.prec)
            for nn, vec in sums.items():
                raw = ctx.make(0, vec, ctx.A)
                cached[nn] = (raw * inv_factor).cap_abs(certified)
        return PolylogValue(n, cached[n])

    def _measure_sums(self, z: WittApprox, ns: list, m: int) -> dict:
        ctx = self.ctx
        if z.scale != 0:
            raise ValueError("measure requires a unit z")
        if residue(z).is_zero() or residue(z).is_one():
            raise ValueError("measure requires |z| = |z-1| = 1")
        P = ctx.p**m
        use_np = (
            _np is not None
            and ctx.k <= 2
            and P >= _VECTOR_THRESHOLD
            and _int64_safe(ctx.p, ctx.A, m)
        )
        if use_np:
            return self._measure_sums_np(z, ns, m)
        return self._measure_sums_py(z, ns, m)

    def _measure_sums_py(self, z: WittApprox, ns: list, m: int) -> dict:
        ctx = self.ctx
        p, pA, k = ctx.p, ctx.pA, ctx.k
        P = p**m
        tables = {n: _py_coeff_table(p, m, n) for n in ns}
        acc = {n: [0] * k for n in ns}
        zvec = z.coeffs
        power = (1,) + (0,) * (k - 1)
        for a in range(1, P):
            power = ctx.vec_mul(power, zvec, pA)
            if a % p == 0:
                continue
            for n in ns:
                c = tables[n][a]
                row = acc[n]
                for i in range(k):
                    row[i] = (row[i] + c * power[i]) % pA
        return {n: tuple(acc[n]) for n in ns}

    def _measure_sums_np(self, z: WittApprox, ns: list, m: int) -> dict:
        ctx = self.ctx
        p, pA, k = ctx.p, ctx.pA, ctx.k
        m1 = (m + 1) // 2
        P1, P2 = p**m1, p ** (m - m1)
        zvec = z.coeffs
        # z^r for r < P1, one column per basis coordinate
        ztab = _np.empty((P1, k), dtype=_np.int64)
        cur = (1,) + (0,) * (k - 1)
        for r in range(P1):
            ztab[r] = cur
            cur = ctx.vec_mul(cur, zvec, pA)
        zP1 = cur
        # Z^q for q < P2
        Ztab = _np.empty((P2, k), dtype=_np.int64)
        cur = (1,) + (0,) * (k - 1)
        for q in range(P2):
            Ztab[q] = cur
            cur = ctx.vec_mul(cur, zP1, pA)
        # a plain integer matmul is safe when row sums cannot overflow int64
        direct = (p**m - 1) * (pA - 1) * P1 < 2**63
        out = {}
        for n in ns:
            ctab = _np_coeff_table(p, m, n).reshape(P2, P1)
            if direct:
                inner = (ctab @ ztab) % pA
            else:
                inner = _np.empty((P2, k), dtype=_np.int64)
                for c in range(k):
                    prods = ctab * ztab[:, c][None, :] % pA
                    inner[:, c] = prods.sum(axis=1) % pA
            if k == 1:
                total = (int((inner[:, 0] * Ztab[:, 0] % pA).sum()) % pA,)
            else:
                h0, h1 = ctx.h[0], ctx.h[1]
                a0, a1 = inner[:, 0], inner[:, 1]
                b0, b1 = Ztab[:, 0], Ztab[:, 1]
                t = a1 * b1 % pA
                c0 = (a0 * b0 % pA - t * h0) % pA
                c1 = (a0 * b1 % pA + a1 * b0 % pA - t * h1) % pA
                total = (int(c0.sum()) % pA, int(c1.sum()) % pA)
            out[n] = total
        return out

    # -- Teichmuller closed formula ---------------------------------------------

    def li_n_teich(self, alpha: WittApprox, n: int, m: int | None = None) -> PolylogValue:
        """Li_n at a root of unity via the finite Frobenius-orbit sum.

        Computes p^n/(p^{kn}-1) * sum_i p^{(k-1-i)n} Li^{(p)}_n(alpha^{p^i})
        over the orbit, and certifies the valuation is at least n.
        """
        if n < 1:
            raise ValueError("weight must be >= 1 here; weight 0 is z/(1-z)")
        ctx = self.ctx
        p, k = ctx.p, ctx.k
        acc = ctx.exact_zero()
        zi = alpha
        for i in range(k):
            lip = self.li_p_riemann(zi, n, m).value
            acc = acc + lip.shift((k - 1 - i) * n)
            if i + 1 < k:
                zi = zi**p
        value = acc.shift(n) * ctx.from_int(p ** (k * n) - 1).inv()
        if not value.valuation_ge(n):
            raise ArithmeticError(
                f"internal error: Li_{n} at a root of unity has valuation < {n}"
            )
        return PolylogValue(n, value)

    def li_tilde(self, alpha: WittApprox, n: int, m: int | None = None) -> WittApprox:
        """p^{-n} Li_n(alpha); weight 0 is alpha/(1-alpha)."""
        key = (alpha.coeffs, n, self.m if m is None else m)
        if key not in self._litilde:
            if n == 0:
                val = alpha * (self.ctx.one() - alpha).inv()
            else:
                val = self.li_n_teich(alpha, n, m).value.shift(-n)
            self._litilde[key] = val
        return self._litilde[key]

    # -- the disc series ----------------------------------------------------------

    def g_series(
        self,
        alpha: WittApprox,
        n: int,
        M: int | None = None,
        m: int | None = None,
    ) -> TruncSeries:
        """Series in w for p^{-n} Li_n(alpha(1+pw)) on the closed unit disc.

        Built by n dlog-weighted integrations from the weight-0 closed form,
        with constants injected from the Teichmuller route; coefficient j
        carries the certified bound v_p >= j - n - v_p(j!).
        """
        ctx = self.ctx
        mm = self.m if m is None else m
        if M is None:
            M = self.series_order or default_series_order(
                ctx.p, max(n, self.max_weight), ctx.A
            )
        store = self._g.setdefault((alpha.coeffs, M, mm), {})
        if n in store:
            return store[n]
        one = ctx.one()
        slope = 1 - Fraction(1, ctx.p - 1)
        if 0 not in store:
            lead = alpha * (one - alpha).inv()  # alpha/(1-alpha)
            geo = TruncSeries.geometric(ctx, "w", lead.shift(1), M)
            lin = TruncSeries.from_coeffs(
                ctx, "w", [one, ctx.from_int(ctx.p)], order=M, slope=1
            )
            g0 = geo.scalar_mul(lead) * lin
            store[0] = g0.with_tail(slope, 0)
            if self.trace is not None:
                self.trace({"series": "disc-series", "weight": 0, **store[0].debug_info()})
        start = max(j for j in store if j <= n)
        g = store[start]
        kernel = TruncSeries.geometric(ctx, "w", ctx.from_int(-ctx.p), M)
        for j in range(start + 1, n + 1):
            integrated = (g * kernel).integrate()
            coeffs = list(integrated.coeffs[: M + 1])
            coeffs[0] = self.li_tilde(alpha, j, mm)
            g = TruncSeries(ctx, "w", coeffs, integrated.tail).with_tail(slope, -j)
            store[j] = g
            if self.trace is not None:
                self.trace({"series": "disc-series", "weight": j, **g.debug_info()})
        return store[n]

    # -- point values ---------------------------------------------------------------

    def li_n_at(self, x: XPoint, n: int, min_digits: int = 1) -> PolylogValue:
        """Li_n(z) via the disc series; weight 0 is z/(1-z) directly."""
        if n < 0:
            raise ValueError("weight must be >= 0")
        ctx = self.ctx
        if n == 0:
            return PolylogValue(0, x.z * (ctx.one() - x.z).inv())
        g = self.g_series(x.alpha, n)
        val = g.eval_at(x.w, target=min_digits)
        return PolylogValue(n, val.shift(n))

    def log_at(self, x: XPoint) -> WittApprox:
        """log z; the Teichmuller factor contributes 0."""
        return padic_log(self.ctx.one() + x.w.shift(1))

    def big_l_at(self, x: XPoint, n: int, min_digits: int = 1) -> PolylogValue:
        """sum_{m=0}^{n-1} (-1)^m/m! Li_{n-m}(z) log^m(z); needs p > n."""
        ctx = self.ctx
        if ctx.p <= n:
            raise ValueError(f"needs p > n, got p={ctx.p}, n={n}")
        logz = self.log_at(x)
        acc = ctx.exact_zero()
        logpow = ctx.one()
        for mm in range(n):
            term = ctx.from_rational(Fraction((-1) ** mm, math.factorial(mm)))
            acc = acc + term * self.li_n_at(x, n - mm, min_digits).value * logpow
            logpow = logpow * logz
        return PolylogValue(n, acc)

    def f_n_at(self, x: XPoint, n: int, min_digits: int = 1) -> PolylogValue:
        """The weight-n combination sum_k a_k log^k(z) Li_{n-k}(z); p > n+1."""
        ctx = self.ctx
        if ctx.p <= n + 1:
            raise ValueError(f"needs p > n+1, got p={ctx.p}, n={n}")
        coeffs = a_coeffs(n)
        logz = self.log_at(x)
        acc = ctx.exact_zero()
        logpow = ctx.one()
        for k, ak in enumerate(coeffs):
            acc = acc + ctx.from_rational(ak) * logpow * self.li_n_at(x, n - k, min_digits).value
            logpow = logpow * logz
        return PolylogValue(n, acc)

    def df_n_at(self, x: XPoint, n: int, min_digits: int = 1) -> PolylogValue:
        """D F_n in closed form: (1-z) sum_k log^k Li_{n-k-1} (a_k + (k+1)a_{k+1})."""
        ctx = self.ctx
        if ctx.p <= n + 1:
            raise ValueError(f"needs p > n+1, got p={ctx.p}, n={n}")
        coeffs = a_coeffs(n) + [Fraction(0)]  # a_n = 0
        logz = self.log_at(x)
        acc = ctx.exact_zero()
        logpow = ctx.one()
        for k in range(n):
            factor = coeffs[k] + (k + 1) * coeffs[k + 1]
            acc = acc + ctx.from_rational(factor) * logpow * self.li_n_at(
                x, n - k - 1, min_digits
            ).value
            logpow = logpow * logz
        return PolylogValue(n, (ctx.one() - x.z) * acc)


# -- sampling ---------------------------------------------------------------------


def sample_zbar(ctx: UnramifiedCtx, rng: SplitMix64) -> FpkElement:
    """Uniform residue avoiding 0 and 1."""
    t = 2 + rng.below(ctx.p**ctx.k - 2)
    return ctx.residue_field.from_int(t)


def sample_w(ctx: UnramifiedCtx, rng: SplitMix64) -> WittApprox:
    """Uniform integral disc coordinate mod p^A."""
    vec = tuple(rng.below(ctx.pA) for _ in range(ctx.k))
    if all(c == 0 for c in vec):
        return ctx.exact_zero()
    return ctx.make(0, vec, ctx.A)


def sample_xpoint(ev: PolylogEvaluator, rng: SplitMix64) -> XPoint:
    return ev.xpoint(sample_zbar(ev.ctx, rng), sample_w(ev.ctx, rng))


# -- verification drivers ------------------------------------------------------------


def verify_theorem(
    p: int,
    n: int,
    k: int = 1,
    samples: int = 20,
    seed: int = 0,
    A: int | None = None,
    m: int | None = None,
    M: int | None = None,
    jobs: int = 1,
    points: list | None = None,
    trace=None,
) -> dict:
    """Valuation bound and finite-side reduction of D F_n over sampled points.

    Asserts v_p(DF_n(z)) >= n-1 with certified arithmetic and compares the
    reduction p^{1-n} DF_n(z) mod p against the inverse-Frobenius finite
    polylogarithm computed entirely in F_{p^k}.  Also pairs two points with
    the same residue and different disc coordinates to witness that the
    reduction is independent of w.
    """
    if p <= n + 1:
        raise report_mod.ConfigError(f"theorem needs p > n+1, got p={p}, n={n}")
    A = default_precision(n) if A is None else A
    m = default_riemann_m(n) if m is None else m
    ctx = UnramifiedCtx(p, k, A)
    ev = PolylogEvaluator(ctx, m, max_weight=n, series_order=M, trace=trace)
    rng = SplitMix64(seed)

    def reduction(x: XPoint):
        df = ev.df_n_at(x, n)
        val_ok = df.value.valuation_ge(n - 1)
        return val_ok, residue(df.value.shift(1 - n))

    def one_sample(i: int) -> dict:
        if points is not None:
            zbar, w = report_mod.point_from_record(ctx, points[i])
        else:
            r = rng.fork(i)
            zbar, w = sample_zbar(ctx, r), sample_w(ctx, r)
        x = ev.xpoint(zbar, w)
        rec = {"index": i, "zbar": list(zbar.coeffs), "w": w.to_record()}
        try:
            val_ok, lhs = reduction(x)
            rhs = li_finite(n - 1, sigma(zbar))
            rec["valuationOk"] = val_ok
            rec["lhsResidue"] = list(lhs.coeffs)
            rec["rhsResidue"] = list(rhs.coeffs)
            rec["pass"] = val_ok and lhs == rhs
        except PrecisionError as e:
            rec["precisionShortfall"] = str(e)
            rec["pass"] = False
        return rec

    count = len(points) if points is not None else samples
    records = report_mod.run_samples(count, one_sample, jobs)
    # w-independence: same residue, two different disc coordinates
    zbar0 = ctx.residue_field.element(records[0]["zbar"])
    w1 = sample_w(ctx, rng.fork(count))
    w2 = sample_w(ctx, rng.fork(count + 1))
    bump = 2
    while w2.eq_to_prec(w1):
        w2 = sample_w(ctx, rng.fork(count + bump))
        bump += 1
    _, r1 = reduction(ev.xpoint(zbar0, w1))
    _, r2 = reduction(ev.xpoint(zbar0, w2))
    windep = {
        "zbar": list(zbar0.coeffs),
        "w1": w1.to_record(),
        "w2": w2.to_record(),
        "residue1": list(r1.coeffs),
        "residue2": list(r2.coeffs),
        "pass": r1 == r2,
    }
    return report_mod.assemble(
        "theorem",
        {"p": p, "n": n, "k": k, "A": A, "m": m,
         "M": M if M is not None else default_series_order(p, n, A),
         "samples": count, "seed": seed},
        ctx,
        records,
        extra={"wIndependence": windep, "pass": windep["pass"]},
    )


def check_prop_reduction(
    p: int,
    n: int,
    k: int = 1,
    samples: int = 50,
    seed: int = 0,
    A: int | None = None,
    m: int | None = None,
    jobs: int = 1,
    points: list | None = None,
) -> dict:
    """Riemann-sum integral mod p against li_n(zbar)/(1 - zbar^p) in F_{p^k}."""
    if n < 0:
        raise report_mod.ConfigError("weight must be >= 0")
    A = default_precision(n) if A is None else A
    m = default_riemann_m(n) if m is None else m
    ctx = UnramifiedCtx(p, k, A)
    ev = PolylogEvaluator(ctx, m, max_weight=n)
    field = ctx.residue_field
    rng = SplitMix64(seed)

    def one_sample(i: int) -> dict:
        if points is not None:
            zbar, w = report_mod.point_from_record(ctx, points[i])
        else:
            r = rng.fork(i)
            zbar, w = sample_zbar(ctx, r), sample_w(ctx, r)
        x = ev.xpoint(zbar, w)
        rec = {"index": i, "zbar": list(zbar.coeffs), "w": w.to_record()}
        try:
            lip = ev.li_p_riemann(x.z, n)
            lhs = residue(lip.value)
            rhs = li_finite(n, zbar) * (field.one() - zbar**p).inverse()
            rec["lhsResidue"] = list(lhs.coeffs)
            rec["rhsResidue"] = list(rhs.coeffs)
            rec["pass"] = lhs == rhs
        except PrecisionError as e:
            rec["precisionShortfall"] = str(e)
            rec["pass"] = False
        return rec

    count = len(points) if points is not None else samples
    records = report_mod.run_samples(count, one_sample, jobs)
    return report_mod.assemble(
        "proposition1",
        {"p": p, "n": n, "k": k, "A": A, "m": m, "samples": count, "seed": seed},
        ctx,
        records,
    )


def check_corollary(
    p: int,
    k: int = 1,
    ns: tuple = (1, 2, 3),
    A: int | None = None,
    m: int = 2,
    jobs: int = 1,
) -> dict:
    """Exhaustive root-of-unity check: v_p(Li_n(alpha)) >= n and the mod-p
    value -li_n(sigma(alphabar))/(1-alphabar), for every residue not 0 or 1.

    At alphabar = -1 with n even the finite side vanishes, which forces one
    extra digit of valuation; that sharpening is asserted as well.
    """
    A = default_precision(max(ns)) if A is None else A
    ctx = UnramifiedCtx(p, k, A)
    ev = PolylogEvaluator(ctx, m, max_weight=max(ns))
    field = ctx.residue_field
    minus_one = -field.one()
    jobs_records = []
    index = 0
    for t in range(2, p**k):
        alphabar = field.from_int(t)
        alpha = ev.teich(alphabar)
        for n in ns:
            rec = {"index": index, "alphabar": list(alphabar.coeffs), "n": n}
            index += 1
            try:
                li = ev.li_n_teich(alpha, n)
                tilde = li.value.shift(-n)
                rec["valuationOk"] = li.value.valuation_ge(n)
                lhs = residue(tilde)
                rhs = -(li_finite(n, sigma(alphabar)) * (field.one() - alphabar).inverse())
                rec["lhsResidue"] = list(lhs.coeffs)
                rec["rhsResidue"] = list(rhs.coeffs)
                rec["pass"] = rec["valuationOk"] and lhs == rhs
                if alphabar == minus_one and n % 2 == 0:
                    extra = li.value.valuation_ge(n + 1)
                    rec["extraValuationOk"] = extra
                    rec["pass"] = rec["pass"] and extra
            except PrecisionError as e:
                rec["precisionShortfall"] = str(e)
                rec["pass"] = False
            jobs_records.append(rec)
    return report_mod.assemble(
        "corollary",
        {"p": p, "k": k, "ns": list(ns), "A": A, "m": m},
        ctx,
        jobs_records,
    )


def check_maincong(
    p: int,
    n: int,
    k: int = 1,
    samples: int = 50,
    seed: int = 0,
    A: int | None = None,
    m: int | None = None,
    M: int | None = None,
    jobs: int = 1,
    points: list | None = None,
) -> dict:
    """Disc expansion mod p: series evaluation against the finite-field sum
    of scaled Teichmuller values times w^j/j!."""
    if p <= n + 1:
        raise report_mod.ConfigError(f"maincong needs p > n+1, got p={p}, n={n}")
    A = default_precision(n) if A is None else A
    m = default_riemann_m(n) if m is None else m
    ctx = UnramifiedCtx(p, k, A)
    ev = PolylogEvaluator(ctx, m, max_weight=n, series_order=M)
    field = ctx.residue_field
    rng = SplitMix64(seed)
    inv_fact = [field.element(math.factorial(j) % p).inverse() for j in range(n + 1)]

    def one_sample(i: int) -> dict:
        if points is not None:
            zbar, w = report_mod.point_from_record(ctx, points[i])
        else:
            r = rng.fork(i)
            zbar, w = sample_zbar(ctx, r), sample_w(ctx, r)
        x = ev.xpoint(zbar, w)
        rec = {"index": i, "zbar": list(zbar.coeffs), "w": w.to_record()}
        try:
            lhs = residue(ev.li_n_at(x, n).value.shift(-n))
            wbar = residue(w)
            rhs = field.zero()
            wpow = field.one()
            for j in range(n + 1):
                rhs = rhs + residue(ev.li_tilde(x.alpha, n - j)) * wpow * inv_fact[j]
                wpow = wpow * wbar
            rec["lhsResidue"] = list(lhs.coeffs)
            rec["rhsResidue"] = list(rhs.coeffs)
            rec["pass"] = lhs == rhs
        except PrecisionError as e:
            rec["precisionShortfall"] = str(e)
            rec["pass"] = False
        return rec

    count = len(points) if points is not None else samples
    records = report_mod.run_samples(count, one_sample, jobs)
    return report_mod.assemble(
        "maincong",
        {"p": p, "n": n, "k": k, "A": A, "m": m, "samples": count, "seed": seed},
        ctx,
        records,
    )


def factorial_valuation(j: int, p: int) -> int:
    """v_p(j!) by Legendre's formula."""
    total = 0
    q = p
    while q <= j:
        total += j // q
        q *= p
    return total


def check_g_valuations(
    p: int,
    n: int,
    k: int = 1,
    count: int = 5,
    seed: int = 0,
    A: int | None = None,
    m: int | None = None,
    M: int | None = None,
) -> dict:
    """Certified coefficient bound of the disc series: degree j has
    v_p >= j - n - v_p(j!), checked on every stored coefficient."""
    if p <= n + 1:
        raise report_mod.ConfigError(f"needs p > n+1, got p={p}, n={n}")
    A = default_precision(n) if A is None else A
    m = default_riemann_m(n) if m is None else m
    ctx = UnramifiedCtx(p, k, A)
    ev = PolylogEvaluator(ctx, m, max_weight=n, series_order=M)
    rng = SplitMix64(seed)
    total = p**k - 2
    if total <= count:
        residues = [ctx.residue_field.from_int(t) for t in range(2, p**k)]
    else:
        seen = []
        while len(seen) < count:
            zb = sample_zbar(ctx, rng)
            if all(zb != s for s in seen):
                seen.append(zb)
        residues = seen
    records = []
    for idx, zbar in enumerate(residues):
        g = ev.g_series(ev.teich(zbar), n)
        bad = []
        for j, c in enumerate(g.coeffs):
            bound = j - n - factorial_valuation(j, p)
            mv = c.min_valuation
            if mv is not math.inf and mv < bound:
                bad.append({"j": j, "certified": int(mv), "bound": bound})
        records.append(
            {
                "index": idx,
                "zbar": list(zbar.coeffs),
                "order": g.order,
                "violations": bad,
                "pass": not bad,
            }
        )
    return report_mod.assemble(
        "g-valuation",
        {"p": p, "n": n, "k": k, "A": A, "m": m, "count": len(residues), "seed": seed},
        ctx,
        records,
    )


def check_functional_equation(
    p: int,
    n: int,
    k: int = 1,
    samples: int = 20,
    seed: int = 0,
    A: int | None = None,
    m: int | None = None,
    jobs: int = 1,
    points: list | None = None,
    check_digits: int = 3,
) -> dict:
    """F_n(z) + (-1)^n F_n(1/z) = 0 and F_n = -n L_n - L_{n-1} log z."""
    if p <= n + 1:
        raise report_mod.ConfigError(f"needs p > n+1, got p={p}, n={n}")
    A = default_precision(n) if A is None else A
    m = default_riemann_m(n) if m is None else m
    ctx = UnramifiedCtx(p, k, A)
    ev = PolylogEvaluator(ctx, m, max_weight=n)
    sign = (-1) ** n
    rng = SplitMix64(seed)

    def one_sample(i: int) -> dict:
        if points is not None:
            zbar, w = report_mod.point_from_record(ctx, points[i])
        else:
            r = rng.fork(i)
            zbar, w = sample_zbar(ctx, r), sample_w(ctx, r)
        x = ev.xpoint(zbar, w)
        rec = {"index": i, "zbar": list(zbar.coeffs), "w": w.to_record()}
        try:
            fz = ev.f_n_at(x, n).value
            finv = ev.f_n_at(x.inverse_point(), n).value
            total = fz + ctx.from_int(sign) * finv
            rec["inversionOk"] = total.is_zero_to(check_digits)
            logz = ev.log_at(x)
            viaL = (
                ctx.from_int(-n) * ev.big_l_at(x, n).value
                - ev.big_l_at(x, n - 1).value * logz
            )
            rec["lRouteOk"] = (fz - viaL).is_zero_to(check_digits)
            rec["pass"] = rec["inversionOk"] and rec["lRouteOk"]
        except PrecisionError as e:
            rec["precisionShortfall"] = str(e)
            rec["pass"] = False
        return rec

    count = len(points) if points is not None else samples
    records = report_mod.run_samples(count, one_sample, jobs)
    return report_mod.assemble(
        "functional-equation",
        {"p": p, "n": n, "k": k, "A": A, "m": m, "samples": count, "seed": seed,
         "checkDigits": check_digits},
        ctx,
        records,
    )
