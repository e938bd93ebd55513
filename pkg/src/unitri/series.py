"""Truncated power-series automorphisms t -> t + sum a_j t^j of F_q[[t]].

These are the Nottingham-group elements.  Composition acts on the right:
u * v means "apply u, then v", so the matrix embedding below is a
homomorphism.  Row i of the embedded matrix lists the coefficients of
(t u)^i, which is why images are determined by their first row.
"""

from __future__ import annotations

from math import comb

from .matrices import UniTriWindow
from .rings import Ring, RingElem


class SeriesAut:
    """t + a_2 t^2 + ... + a_N t^N modulo t^(N+1); a_1 = 1 implicitly."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs):
        if not ring.is_field:
            raise ValueError("series automorphisms need field coefficients")
        self.ring = ring
        self.coeffs = tuple(ring.elem(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) + 1

    def coeff(self, j: int) -> RingElem:
        """Coefficient of t^j; j = 1 gives 1."""
        if j == 1:
            return self.ring.one
        if 2 <= j <= self.degree:
            return self.coeffs[j - 2]
        raise ValueError(f"coefficient {j} beyond truncation degree {self.degree}")

    def poly(self):
        """Dense [0, 1, a_2, ..., a_N] coefficient list for t*u."""
        zero = self.ring.zero
        return [zero, self.ring.one] + list(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, SeriesAut) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, tuple(c.val for c in self.coeffs)))

    def __repr__(self):
        terms = ["t"]
        for j, c in enumerate(self.coeffs, start=2):
            if not c.is_zero():
                terms.append(f"({c!r})t^{j}")
        return " + ".join(terms) + f" (mod t^{self.degree + 1})"

    def __mul__(self, other):
        return compose(self, other)

    def inv(self):
        return invert(self)

    def to_json(self):
        return {"q": self.ring.to_json(),
                "coeffs": [self.ring.format_value(c) for c in self.coeffs]}

    @staticmethod
    def from_json(d) -> "SeriesAut":
        ring = Ring.from_json(d["q"])
        return SeriesAut(ring, [ring.elem(c) for c in d["coeffs"]])


def identity_series(ring: Ring, degree: int) -> SeriesAut:
    return SeriesAut(ring, [0] * (degree - 1))


def generator(ring: Ring, r: int, alpha, degree: int) -> SeriesAut:
    """t -> t + alpha t^(r+1), the depth-r generator."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r + 1 > degree:
        raise ValueError(f"generator degree {r + 1} exceeds truncation {degree}")
    coeffs = [ring.zero] * (degree - 1)
    coeffs[r - 1] = ring.elem(alpha)
    return SeriesAut(ring, coeffs)


def _poly_mul_trunc(a, b, N, zero):
    out = [zero] * (N + 1)
    for i, ai in enumerate(a):
        if i > N or ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if i + j > N:
                break
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def _substitute(outer, inner, N, zero):
    """outer(inner(t)) truncated at degree N; inner has zero constant term."""
    result = [zero] * (N + 1)
    power = inner[: N + 1] + [zero] * max(0, N + 1 - len(inner))
    for k in range(1, len(outer)):
        ck = outer[k]
        if k > N:
            break
        if not ck.is_zero():
            for d in range(k, N + 1):
                if not power[d].is_zero():
                    result[d] = result[d] + ck * power[d]
        if k < len(outer) - 1:
            power = _poly_mul_trunc(power, inner, N, zero)
    return result


def compose(u: SeriesAut, v: SeriesAut) -> SeriesAut:
    """Apply u, then v: substitute t*v for t in the series of t*u."""
    if u.ring != v.ring:
        raise ValueError("mismatched coefficient fields")
    if u.degree != v.degree:
        raise ValueError("mismatched truncation degrees")
    N = u.degree
    zero = u.ring.zero
    res = _substitute(u.poly(), v.poly(), N, zero)
    assert res[1] == u.ring.one
    return SeriesAut(u.ring, res[2:])


def invert(u: SeriesAut) -> SeriesAut:
    """Series reversion: the unique v with u * v = identity."""
    N = u.degree
    ring = u.ring
    zero = ring.zero
    coeffs = [zero] * (N - 1)
    for k in range(2, N + 1):
        v = SeriesAut(ring, coeffs)
        err = compose(u, v).coeff(k)
        if not err.is_zero():
            coeffs[k - 2] = -err
    return SeriesAut(ring, coeffs)


def series_matrix(u: SeriesAut, m: int) -> UniTriWindow:
    """The matrix with row i holding the coefficients of (t u)^i.

    Requires truncation degree >= m; the result window is m.  The map is
    multiplicative: series_matrix(u * v) = series_matrix(u) * series_matrix(v).
    """
    if u.degree < m:
        raise ValueError(f"series degree {u.degree} too small for window {m}")
    ring = u.ring
    zero = ring.zero
    base = u.poly()[: m + 1] + [zero] * max(0, m + 1 - u.degree - 1)
    entries = {}
    power = base
    for i in range(1, m + 1):
        assert power[i] == ring.one
        for j in range(i + 1, m + 1):
            if not power[j].is_zero():
                entries[(i, j)] = power[j]
        if i < m:
            power = _poly_mul_trunc(power, base, m, zero)
    return UniTriWindow(ring, m, entries)


def generator_matrix(ring: Ring, r: int, alpha, m: int) -> UniTriWindow:
    """Closed form for the embedded depth-r generator.

    Entry (i, j) is binom(i, (j-i)/r) alpha^((j-i)/r) whenever r divides
    j - i; binomial vanishing cuts the support at j <= i(r+1), which matches
    the row expansion of (t + alpha t^(r+1))^i.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    alpha = ring.elem(alpha)
    p = ring.p
    entries = {}
    if not alpha.is_zero():
        for i in range(1, m + 1):
            apow = ring.one
            for k in range(1, i + 1):
                j = i + r * k
                if j > m:
                    break
                apow = apow * alpha
                c = comb(i, k) % p
                if c:
                    entries[(i, j)] = apow * c
    return UniTriWindow(ring, m, entries)


def series_from_first_row(x: UniTriWindow) -> SeriesAut:
    """The series read off the first row of a window."""
    return SeriesAut(x.ring, [x.get(1, j) for j in range(2, x.n + 1)])


def first_row_determined(x: UniTriWindow) -> bool:
    """True iff x is the embedded image of the series in its own first row."""
    return x == series_matrix(series_from_first_row(x), x.n)
