"""
Exact truncated power series in one variable and the counting series built on them.

Coefficients are Python integers, or ``Fraction`` once a division needs it;
every counting series is checked for integrality before being returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Mapping, Sequence


class SeriesError(ArithmeticError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class PowerSeries:
    """Coefficients of z^0..z^order; everything beyond is unknown."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [_norm(Fraction(x) if not isinstance(x, (int, Fraction)) else x) for x in coeffs]
        if order is not None:
            cs = (cs + [0] * (order + 1))[: order + 1]
        if not cs:
            raise SeriesError("series needs at least one coefficient")
        self.c = tuple(cs)

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, a, order: int) -> "PowerSeries":
        return cls([a], order)

    @classmethod
    def var(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    # basics -----------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.c) - 1

    def __getitem__(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else self._beyond(k)

    def _beyond(self, k):
        if k < 0:
            return 0
        raise SeriesError(f"coefficient {k} is beyond the truncation order {self.order}")

    def coefficients(self) -> list:
        return list(self.c)

    def valuation(self) -> int | None:
        return next((k for k, x in enumerate(self.c) if x != 0), None)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return PowerSeries(self.c[: order + 1])

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self.c)

    def integral(self) -> "PowerSeries":
        if not self.is_integral():
            raise SeriesError("series has non-integer coefficients")
        return self

    def __repr__(self) -> str:
        return f"PowerSeries({list(self.c)})"

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        n = min(self.order, o.order)
        return self.c[: n + 1] == o.c[: n + 1]

    def __hash__(self):
        return hash(self.c)

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries.const(other, self.order)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = min(self.order, o.order)
        return PowerSeries([self.c[k] + o.c[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([x * other for x in self.c])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = min(self.order, o.order)
        a, b = self.c, o.c
        out = [0] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return PowerSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise SeriesError("only non-negative integer powers")
        result = PowerSeries.const(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by z^k (k may be negative when the low coefficients vanish)."""
        if k >= 0:
            return PowerSeries([0] * k + list(self.c[: len(self.c) - k]))
        if any(self.c[:-k]):
            raise SeriesError("cannot divide by z: low coefficients do not vanish")
        return PowerSeries(list(self.c[-k:]))

    def reciprocal(self) -> "PowerSeries":
        a0 = self.c[0]
        if a0 == 0:
            raise SeriesError("reciprocal of a series with zero constant term")
        inv0 = a0 if a0 in (1, -1) else Fraction(1, 1) / a0
        out = [inv0]
        for k in range(1, len(self.c)):
            s = sum(self.c[j] * out[k - j] for j in range(1, k + 1))
            out.append(_norm(-s * inv0))
        return PowerSeries(out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([_norm(Fraction(x) / other) for x in self.c])
        o = self._coerce(other)
        v = o.valuation()
        if v is None:
            raise SeriesError("division by zero series")
        if v:
            # both numerator and denominator lose v orders of precision
            return self.shift(-v) / o.shift(-v)
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return PowerSeries.const(other, self.order) / self

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(z)); ``inner`` must have zero constant term."""
        if inner.c[0] != 0:
            raise SeriesError("composition needs an inner series with zero constant term")
        n = min(self.order, inner.order)
        result = PowerSeries.const(self.c[n], n)
        inner = inner.truncate(n)
        for k in range(n - 1, -1, -1):
            result = result * inner + self.c[k]
        return result


def z(order: int) -> PowerSeries:
    return PowerSeries.var(order)


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a + b


def mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def pow(a: PowerSeries, k: int) -> PowerSeries:  # noqa: A001
    return a ** k


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    return outer.compose(inner)


def reciprocal(a: PowerSeries) -> PowerSeries:
    return a.reciprocal()


def fixed_point(F: Callable, order: int, start=None, max_iter: int | None = None):
    """Solve ``y = F(y)`` by iteration from zero.

    ``y`` may be a single series or a tuple of series.  Each round must fix
    at least one more coefficient; stalling raises ``SeriesError``.
    """
    y = start if start is not None else PowerSeries.const(0, order)
    limit = max_iter if max_iter is not None else 2 * (order + 2) * 4
    for _ in range(limit):
        nxt = F(y)
        if nxt == y:
            return nxt
        y = nxt
    raise SeriesError("fixed point iteration did not converge")


def h_poly(j: int, ws: Sequence):
    """Sum over compositions of j of the products of the matching w's."""
    if j < 0:
        raise SeriesError("h_j needs j >= 0")
    m = len(ws)
    h = [1]
    for k in range(1, j + 1):
        total = 0
        for i in range(1, min(k, m) + 1):
            total = total + ws[i - 1] * h[k - i]
        h.append(total)
    return h[j]


def multinomial(n: int, parts: Sequence[int]) -> int:
    if sum(parts) != n or any(p < 0 for p in parts):
        return 0
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


# systems for the planar part ---------------------------------------------------------


@dataclass(frozen=True)
class SeriesSystem:
    """Solution of one of the planar systems, keyed by variable index."""

    values: dict
    annulus: PowerSeries
    residual_ok: bool


def _w_equations(d: int, x: Mapping[int, int], order: int):
    zz = z(order)
    idx = list(range(-1, d))

    def F(vals):
        W = dict(zip(idx, vals))
        ws = [W[i] for i in range(1, d)]
        out = []
        X = 1 + W[0]
        Y = W[-1]
        for j in idx:
            if j <= d - 3:
                out.append(zz * h_poly(j + 2, ws))
                continue
            total = PowerSeries.const(0, order)
            for i, xi in x.items():
                if xi == 0 or i < d:
                    continue
                # [u^(j+2)] u^i (X + Y/u + 1/u^2)^(i-1)
                for c in range(0, i):
                    bb = i - j - 2 - 2 * c
                    if bb < 0:
                        break
                    a = i - 1 - bb - c
                    if a < 0:
                        continue
                    total = total + (X ** a) * (Y ** bb) * (xi * multinomial(i - 1, (a, bb, c)))
            out.append(total)
        return tuple(out)

    return idx, F


def solve_W_system(d: int, x: Mapping[int, int], order: int) -> SeriesSystem:
    """Solve the system for W_{-1}..W_{d-1}; ``annulus`` is (1+W_0)^d.

    ``x`` maps face degrees to their weights; its finite support is the
    degree cap.
    """
    if d < 1:
        raise SeriesError("d must be positive")
    idx, F = _w_equations(d, x, order)
    zero = tuple(PowerSeries.const(0, order) for _ in idx)
    sol = fixed_point(lambda v: F(v), order, start=zero, max_iter=4 * (order + 3))
    ok = all(a == c for a, c in zip(F(sol), sol))
    W = dict(zip(idx, sol))
    return SeriesSystem(W, (1 + W[0]) ** d, ok)


def _v_equations(b: int, x: Mapping[int, int], order: int):
    zz = z(order)
    idx = list(range(0, b))

    def F(vals):
        V = dict(zip(idx, vals))
        vs = [V[i] for i in range(1, b)]
        out = []
        for j in idx:
            if j <= b - 2:
                out.append(zz * h_poly(j + 1, vs))
                continue
            total = PowerSeries.const(0, order)
            for deg, xi in x.items():
                if xi == 0 or deg % 2 or deg // 2 < b:
                    continue
                i = deg // 2
                total = total + (1 + V[0]) ** (b + i - 1) * (xi * comb(2 * i - 1, i - b))
            out.append(total)
        return tuple(out)

    return idx, F


def solve_V_system(b: int, x: Mapping[int, int], order: int) -> SeriesSystem:
    """Solve the bipartite system for V_0..V_{b-1}; ``annulus`` is (1+V_0)^(2b).

    ``x`` maps even face degrees 2i to their weights.
    """
    if b < 1:
        raise SeriesError("b must be positive")
    idx, F = _v_equations(b, x, order)
    zero = tuple(PowerSeries.const(0, order) for _ in idx)
    sol = fixed_point(lambda v: F(v), order, start=zero, max_iter=4 * (order + 3))
    ok = all(a == c for a, c in zip(F(sol), sol))
    V = dict(zip(idx, sol))
    return SeriesSystem(V, (1 + V[0]) ** (2 * b), ok)


# closed forms ---------------------------------------------------------------------------

CLOSED_FORMS = ("T", "Q", "F", "G")


def closed_form_series(which: str, order: int) -> PowerSeries:
    """Counting series of the four toroidal families, by number of vertices."""
    zz = z(order)
    one = PowerSeries.const(1, order)
    if which == "T":
        r = fixed_point(lambda r: zz * (1 + r) ** 4, order)
        out = r / (1 - 3 * r) ** 2
    elif which == "Q":
        r = fixed_point(lambda r: zz * (1 + r) ** 3, order)
        out = r ** 2 / ((1 + 2 * r) * (1 - 2 * r) ** 2)
    elif which == "F":
        r = fixed_point(lambda r: zz * (1 + 3 * r) ** 2, order)
        out = r ** 2 * (1 + 3 * r) / ((1 + r) * (1 - 3 * r) ** 2)
    elif which == "G":
        r = fixed_point(lambda r: zz * (1 + 2 * r) ** 3, order)
        out = r * (1 + 2 * r) / (one - 4 * r) ** 2
    else:
        raise SeriesError(f"unknown series {which!r}")
    return out.integral()


# mobile routes ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangulationRoute:
    R: PowerSeries
    S: PowerSeries
    t: PowerSeries
    U: PowerSeries
    B: PowerSeries
    N_ww: PowerSeries
    N_bb: PowerSeries
    N_bw: PowerSeries
    N: PowerSeries
    T: PowerSeries


def _walk_sum(terms: Callable[[int], PowerSeries], span: int, parity: int | None, order: int):
    total = PowerSeries.const(0, order)
    for i in range(-span, span + 1):
        if parity is not None and i % 2 != parity:
            continue
        total = total + terms(i)
    return total


def mobile_route_triangulation(order: int) -> TriangulationRoute:
    """Series of essentially simple toroidal triangulations via balanced 3-regular mobiles."""
    zz = z(order)
    sysW = solve_W_system(3, {3: 1}, order)
    R = 1 + sysW.values[0]
    S = sysW.values[1]
    t = zz * R * S
    U = fixed_point(lambda u: t * (1 + u) ** 2, order)
    B = 1 / (1 - 2 * t * (1 + U))
    P = {}

    def p(i):
        k = abs(i)
        if k not in P:
            P[k] = B * (1 + U) ** k * t ** (k // 2)
        return P[k]

    span = 2 * order + 3
    odd = _walk_sum(lambda i: p(i) ** 3, span, 1, order)
    even = _walk_sum(lambda i: p(i) ** 3, span, 0, order)
    N_ww = zz ** 2 * R ** 3 * odd
    N_bb = zz ** 3 * S ** 3 * odd
    N_bw = zz * even
    N = N_bb + 2 * N_bw + N_ww
    T = R ** 3 * N / 2
    route = TriangulationRoute(R, S, t, U, B, N_ww, N_bb, N_bw, N, T.integral())
    if route.T != closed_form_series("T", order):
        raise SeriesError("triangulation mobile route disagrees with the closed form")
    return route


@dataclass(frozen=True)
class QuadrangulationRoute:
    R: PowerSeries
    t: PowerSeries
    U: PowerSeries
    B: PowerSeries
    N_I_a: PowerSeries
    N_I_b: PowerSeries
    N_I: PowerSeries
    N_II: PowerSeries
    Q: PowerSeries


def mobile_route_quadrangulation(order: int) -> QuadrangulationRoute:
    """Series of essentially simple bipartite toroidal quadrangulations via (4,2)-regular mobiles."""
    zz = z(order)
    sysV = solve_V_system(2, {4: 1}, order)
    R = 1 + sysV.values[0]
    t = zz * R ** 2
    U = fixed_point(lambda u: t * (1 + u + u ** 2), order)
    B = 1 / (1 - t - 2 * t * U)
    P = {}

    def p(i):
        k = abs(i)
        if k not in P:
            P[k] = B * U ** k
        return P[k]

    span = order + 2
    N_II = zz ** 2 * B ** 2
    N_I_b = 3 * zz ** 3 * R ** 2 * _walk_sum(lambda i: p(i) ** 3, span, None, order)
    N_I_a = 3 * zz ** 3 * R ** 2 * _walk_sum(lambda i: p(i) ** 2 * p(i - 1), span, None, order)
    N_I = 2 * N_I_a + N_I_b
    Q = R ** 4 * (N_I * Fraction(2, 3) + N_II)
    route = QuadrangulationRoute(R, t, U, B, N_I_a, N_I_b, N_I, N_II, Q.integral())
    if route.Q != closed_form_series("Q", order):
        raise SeriesError("quadrangulation mobile route disagrees with the closed form")
    return route


def assemble_Md(d: int, A: PowerSeries, G: PowerSeries, H: PowerSeries) -> PowerSeries:
    """Rooted maps of essential girth d from the annulus series and the two kernel types."""
    return d * A * (G * Fraction(1, 6) + H * Fraction(1, 4))


def assemble_hatM2b(b: int, A: PowerSeries, G: PowerSeries, H: PowerSeries) -> PowerSeries:
    return assemble_Md(2 * b, A, G, H)


# lattice paths ---------------------------------------------------------------------------


def path_counts(steps: Sequence[int], length: int) -> list[dict[int, int]]:
    """counts[n][h] = number of walks of n steps from 0 ending at height h."""
    out = [{0: 1}]
    for _ in range(length):
        nxt: dict[int, int] = {}
        for h, c in out[-1].items():
            for s in steps:
                nxt[h + s] = nxt.get(h + s, 0) + c
        out.append(nxt)
    return out


def dyck_bridge_series(i: int, order: int) -> PowerSeries:
    """Closed expression for walks with steps +-1 ending at i, t marking half the length."""
    t = z(order)
    U = fixed_point(lambda u: t * (1 + u) ** 2, order)
    B = 1 / (1 - 2 * t * (1 + U))
    k = abs(i)
    return B * (1 + U) ** k * t ** (k // 2)


def motzkin_bridge_series(i: int, order: int) -> PowerSeries:
    """Closed expression for walks with steps -1, 0, +1 ending at i, t marking the length."""
    t = z(order)
    U = fixed_point(lambda u: t * (1 + u + u ** 2), order)
    B = 1 / (1 - t - 2 * t * U)
    return B * U ** abs(i)
