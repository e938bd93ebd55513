"""Scalar restriction and extension between windows over F_q and F_p.

Restriction replaces each entry by its regular representation block, an
injective continuous homomorphism landing f times deeper in the filtration;
extension includes prime-field entries into the bigger field.  The linear
centralizer solver realizes C(.) inside a window: commuting with a fixed
element is a linear condition on the strictly upper entries.
"""

from __future__ import annotations

from fractions import Fraction

from .matrices import UniTriWindow
from .rings import Ring, regular_rep


class EmbeddingContext:
    """Fixed (p, f) pair with the extension field's basis pinned down.

    The restriction map depends on the basis choice; contexts with different
    bases give conjugate but unequal images, so the basis is serialized with
    every output.
    """

    def __init__(self, p: int, f: int, modulus=None, basis=None):
        self.ring_q = Ring.ext_field(p, f, modulus, basis)
        self.ring_p = Ring.prime_field(p)
        self.p = p
        self.f = f

    def to_json(self):
        return {"p": self.p, "f": self.f,
                "modulus": list(self.ring_q.modulus),
                "basis": [list(b) for b in self.ring_q.basis]}

    def __repr__(self):
        return f"EmbeddingContext(p={self.p}, f={self.f})"


def restrict_scalars(ctx: EmbeddingContext, x: UniTriWindow) -> UniTriWindow:
    """Window n over F_q -> window n*f over F_p, blockwise regular rep."""
    if x.ring != ctx.ring_q:
        raise ValueError("element not over the context's extension field")
    f = ctx.f
    entries = {}
    for (i, j), v in x.items():
        block = regular_rep(v)
        for bi in range(f):
            for bj in range(f):
                c = block[bi][bj]
                if c:
                    entries[((i - 1) * f + bi + 1, (j - 1) * f + bj + 1)] = c
    return UniTriWindow(ctx.ring_p, x.n * f, entries)


def extend_scalars(ctx: EmbeddingContext, x: UniTriWindow) -> UniTriWindow:
    """Entrywise inclusion F_p -> F_q on the same window."""
    if x.ring != ctx.ring_p:
        raise ValueError("element not over the context's prime field")
    return UniTriWindow(ctx.ring_q, x.n,
                        {pos: ctx.ring_q.elem(v.val) for pos, v in x.items()})


def restricted_image_log_order(ctx: EmbeddingContext, n: int) -> int:
    """Exact log_p of the restricted image in the window-n quotient over F_p.

    With n = r f + s: the full blocks contribute f r(r-1)/2 and any partial
    block column determines its extension entry completely, adding f r more.
    """
    r, s = divmod(n, ctx.f)
    e = ctx.f * (r * (r - 1) // 2)
    if s >= 1:
        e += ctx.f * r
    return e


def sandwich_bounds(f: int, n: int):
    """Rational bounds enclosing the restricted image's dimension ratio."""
    r = n // f
    den = n * (n - 1)
    return Fraction(f * r * (r - 1), den), Fraction(f * r * (r + 1), den)


def extension_image_ratio(f: int) -> Fraction:
    """log_q of the prime-subfield image over log_q of the window group."""
    return Fraction(1, f)


# -- linear centralizer solver --

def _solve_nullspace(rows, positions, ring):
    """Nullspace basis of a sparse linear system over a field ring.

    rows are dicts position -> coefficient; returns (dimension, basis) with
    basis vectors as dicts over positions.
    """
    pos_index = {pos: k for k, pos in enumerate(positions)}
    nvars = len(positions)
    mat = []
    for row in rows:
        dense = [ring.zero] * nvars
        for pos, c in row.items():
            dense[pos_index[pos]] = dense[pos_index[pos]] + c
        if any(not c.is_zero() for c in dense):
            mat.append(dense)
    pivots = {}
    rank = 0
    for col in range(nvars):
        piv = next((r for r in range(rank, len(mat)) if not mat[r][col].is_zero()), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col].inv()
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and not mat[r][col].is_zero():
                c = mat[r][col]
                mat[r] = [v - c * w for v, w in zip(mat[r], mat[rank])]
        pivots[col] = rank
        rank += 1
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fc in free:
        vec = {positions[fc]: ring.one}
        for col, r in pivots.items():
            c = mat[r][fc]
            if not c.is_zero():
                vec[positions[col]] = -c
        basis.append(vec)
    return len(free), basis


def centralizer_solve(gens, ring: Ring, n: int):
    """Centralizer of a generator set inside the window group.

    x y = y x is linear in the strictly upper entries of x for fixed y, so
    the centralizer is the nullspace of the stacked systems.  Returns
    (log_q order, basis windows); each basis window commutes with all
    generators, and together they span the solution set.
    """
    if not ring.is_field:
        raise ValueError("centralizer solver needs field coefficients")
    positions = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    rows = []
    for y in gens:
        if y.ring != ring or y.n != n:
            raise ValueError("generator window/ring mismatch")
        for i in range(1, n + 1):
            for k in range(i + 1, n + 1):
                row = {}
                for j in range(i + 1, k):
                    yjk = y.get(j, k)
                    if not yjk.is_zero():
                        row[(i, j)] = row.get((i, j), ring.zero) + yjk
                    yij = y.get(i, j)
                    if not yij.is_zero():
                        row[(j, k)] = row.get((j, k), ring.zero) - yij
                row = {pos: c for pos, c in row.items() if not c.is_zero()}
                if row:
                    rows.append(row)
    dim, basis = _solve_nullspace(rows, positions, ring)
    mats = [UniTriWindow(ring, n, vec) for vec in basis]
    return dim, mats
