"""Partition diagrams and partition subgroups.

A diagram is a set of strictly upper squares closed under completing the
rectangle: (i,j) and (j,k) present force (i,k).  The subgroup it carves out
consists of all matrices supported on those squares.  Finite windows carry a
tail descriptor for the columns beyond the window:

    empty        no squares beyond the window
    const(d)     every later column is the top segment of height d
    affine(c0)   column j is the top segment of height j - c0

Every named family in scope (lower central and derived series, congruence
levels, rectangular and staircase subgroups) is expressible this way.
Operations whose true result has no expressible tail return a windowed
diagram flagged tail_exact=False; asking such a diagram about columns beyond
its window raises TailUndetermined rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import UniTriWindow, elementary, mat_inv, mat_mul

EMPTY = "empty"
CONST = "const"
AFFINE = "affine"


class TailUndetermined(ValueError):
    pass


@dataclass(frozen=True)
class Tail:
    kind: str
    value: int = 0

    @staticmethod
    def empty() -> "Tail":
        return Tail(EMPTY)

    @staticmethod
    def const(d: int) -> "Tail":
        if d < 0:
            raise ValueError("constant tail height must be >= 0")
        return Tail(EMPTY) if d == 0 else Tail(CONST, d)

    @staticmethod
    def affine(c0: int) -> "Tail":
        if c0 < 1:
            raise ValueError("affine tail offset must be >= 1")
        return Tail(AFFINE, c0)

    def height(self, j: int) -> int:
        """Column height for a column beyond the window."""
        if self.kind == EMPTY:
            return 0
        if self.kind == CONST:
            return self.value
        return j - self.value

    def to_json(self):
        if self.kind == EMPTY:
            return {"kind": "empty"}
        if self.kind == CONST:
            return {"kind": "const", "d": self.value}
        return {"kind": "affine", "c0": self.value}

    @staticmethod
    def from_json(d) -> "Tail":
        if d is None or d["kind"] == "empty":
            return Tail.empty()
        if d["kind"] == "const":
            return Tail.const(d["d"])
        return Tail.affine(d["c0"])


TAIL_EMPTY = Tail.empty()


class _IntSet:
    """Finite or upward-cofinite set of positive integers."""

    __slots__ = ("finite", "from_")

    def __init__(self, finite=(), from_=None):
        self.from_ = from_
        self.finite = frozenset(i for i in finite if from_ is None or i < from_)

    def __contains__(self, i):
        return i in self.finite or (self.from_ is not None and i >= self.from_)

    def is_empty(self):
        return not self.finite and self.from_ is None

    def max_finite(self):
        return max(self.finite) if self.finite else 0

    def suffix_start(self):
        """Least s with self == [s, oo), or None if not an exact suffix."""
        if self.from_ is None:
            return None
        s = self.from_
        while s - 1 in self.finite:
            s -= 1
        if any(i < s for i in self.finite):
            return None
        return s


def sum_range(lo: int, hi: int) -> int:
    """Sum of the integers in [max(lo, 0), hi]."""
    lo = max(lo, 0)
    if hi < lo:
        return 0
    return (hi * (hi + 1) - (lo - 1) * lo) // 2


def _check_rect_closed(squares):
    by_row = {}
    for (r, c) in squares:
        by_row.setdefault(r, set()).add(c)
    for (i, j) in squares:
        for k in by_row.get(j, ()):
            if (i, k) not in squares:
                raise ValueError(f"square set not rectangle closed: "
                                 f"{(i, j)} and {(j, k)} need {(i, k)}")


class PartitionDiagram:
    """Rectangle-closed square set on a window, plus a tail descriptor."""

    def __init__(self, window: int, squares, tail: Tail = TAIL_EMPTY,
                 tail_exact: bool = True, _trusted: bool = False):
        # _trusted skips the closure check for internally produced square
        # sets that are closed by construction (top-segment columns etc.)
        if window < 2:
            raise ValueError("window must be >= 2")
        if not _trusted:
            squares = frozenset((int(r), int(c)) for r, c in squares)
            for (r, c) in squares:
                if not (1 <= r < c <= window):
                    raise ValueError(f"square {(r, c)} outside window {window}")
            _check_rect_closed(squares)
        elif not isinstance(squares, frozenset):
            squares = frozenset(squares)
        if tail.kind == CONST and tail.value > window:
            raise ValueError("constant tail height exceeds window")
        if tail.kind == AFFINE and tail.value > window + 1:
            raise ValueError("affine tail offset exceeds window + 1")
        self.window = window
        self.squares = squares
        self.tail = tail
        self.tail_exact = bool(tail_exact)
        self._canon = None
        self._cols = None

    # -- basic queries --

    def _columns(self):
        if self._cols is None:
            cols = {}
            for (r, c) in self.squares:
                cols.setdefault(c, set()).add(r)
            self._cols = cols
        return self._cols

    def column(self, j: int):
        """Set of rows present in column j (tail-aware)."""
        if j <= self.window:
            return set(self._columns().get(j, ()))
        self._need_tail(f"column {j}")
        return set(range(1, max(self.tail.height(j), 0) + 1))

    def has_square(self, i: int, j: int) -> bool:
        if j <= self.window:
            return (i, j) in self.squares
        self._need_tail(f"square {(i, j)}")
        return 1 <= i <= self.tail.height(j)

    def count_upto(self, n: int) -> int:
        """Number of squares in columns 2..n."""
        if n < 2:
            return 0
        cols = self._columns()
        total = sum(len(rows) for c, rows in cols.items() if c <= n)
        if n > self.window:
            self._need_tail("count beyond the window")
            t = self.tail
            if t.kind == CONST:
                total += t.value * (n - self.window)
            elif t.kind == AFFINE:
                total += sum_range(self.window + 1 - t.value, n - t.value)
        return total

    def quotient_order(self, n: int, q: int) -> int:
        """Order of the image of the partition subgroup in the window-n quotient."""
        return q ** self.count_upto(n)

    def is_partition(self) -> bool:
        """Every windowed column is a full top segment."""
        return all(max(rows) == len(rows) for rows in self._columns().values())

    def heights(self):
        """Column heights for j = 2..window; error if not a partition."""
        if not self.is_partition():
            raise ValueError("diagram is not a partition")
        cols = self._columns()
        return [len(cols.get(j, ())) for j in range(2, self.window + 1)]

    def rows_used(self) -> _IntSet:
        rows = {r for (r, _) in self.squares}
        t = self.tail
        if t.kind == CONST:
            return _IntSet(rows | set(range(1, t.value + 1)))
        if t.kind == AFFINE:
            return _IntSet(rows, from_=1)
        return _IntSet(rows)

    def cols_used(self) -> _IntSet:
        cols = {c for (_, c) in self.squares}
        t = self.tail
        if t.kind == CONST:
            return _IntSet(cols, from_=self.window + 1)
        if t.kind == AFFINE:
            return _IntSet(cols, from_=max(self.window + 1, t.value + 1))
        return _IntSet(cols)

    def _need_tail(self, what):
        if not self.tail_exact:
            raise TailUndetermined(f"{what} lies beyond an undetermined tail")

    # -- canonical form, equality --

    def _canonical(self):
        if self._canon is None:
            w, squares, t = self.window, set(self.squares), self.tail
            if self.tail_exact:
                while w > 2:
                    col = {r for (r, c) in squares if c == w}
                    if col != set(range(1, max(t.height(w), 0) + 1)):
                        break
                    if t.kind == CONST and t.value > w - 1:
                        break
                    if t.kind == AFFINE and t.value > w:
                        break
                    squares = {s for s in squares if s[1] != w}
                    w -= 1
            self._canon = (w, tuple(sorted(squares)), self.tail, self.tail_exact)
        return self._canon

    def __eq__(self, other):
        return (isinstance(other, PartitionDiagram)
                and self._canonical() == other._canonical())

    def __hash__(self):
        return hash(self._canonical())

    def __repr__(self):
        w, sq, t, exact = self._canonical()
        tail = "" if t.kind == EMPTY else f", tail={t.kind}:{t.value}"
        flag = "" if exact else ", tail undetermined"
        return f"<diagram window {w}, squares {sorted(sq)}{tail}{flag}>"

    def materialize(self, w: int) -> "PartitionDiagram":
        """Re-window to w >= window, filling tail columns explicitly."""
        if w < self.window:
            raise ValueError("materialize only enlarges the window")
        if w == self.window:
            return self
        self._need_tail("materialize")
        squares = set(self.squares)
        for j in range(self.window + 1, w + 1):
            squares.update((i, j) for i in range(1, max(self.tail.height(j), 0) + 1))
        # appending top-segment columns cannot break closure
        return PartitionDiagram(w, squares, self.tail, True, _trusted=True)

    def with_exact(self, exact: bool) -> "PartitionDiagram":
        return PartitionDiagram(self.window, self.squares, self.tail, exact)

    def is_subset(self, other: "PartitionDiagram") -> bool:
        w = max(self.window, other.window)
        if not self.materialize(w).squares <= other.materialize(w).squares:
            return False
        return _tail_le(self.tail, other.tail)

    # -- structure --

    def max_subpartition(self) -> "Partition":
        """The unique maximal subpartition: longest full top segments."""
        cols = self._columns()
        parts = []
        for j in range(2, self.window + 1):
            rows = cols.get(j, set())
            h = 0
            while h + 1 in rows:
                h += 1
            parts.append(h)
        return Partition(parts, self.tail, tail_exact=self.tail_exact)

    def orthogonal(self) -> "PartitionDiagram":
        """Squares (k,l) with k never a column index and l never a row index.

        Carrier of the centralizer of the partition subgroup.  Computed on an
        enlarged window; flagged windowed-only when the true continuation is
        not a top-segment family.
        """
        self._need_tail("orthogonal")
        bad_rows = self.cols_used()
        bad_cols = self.rows_used()
        w = max(2 * self.window, bad_rows.max_finite() + 1, bad_cols.max_finite() + 1)
        squares = {(k, l) for k in range(1, w + 1) for l in range(k + 1, w + 1)
                   if k not in bad_rows and l not in bad_cols}
        if bad_cols.from_ is not None:
            exact = bad_cols.from_ <= w + 1
            return PartitionDiagram(w, squares, TAIL_EMPTY, exact)
        if bad_rows.is_empty():
            return PartitionDiagram(w, squares, Tail.affine(1), True)
        s = bad_rows.suffix_start()
        if s is not None:
            return PartitionDiagram(w, squares, Tail.const(s - 1), True)
        return PartitionDiagram(w, squares, TAIL_EMPTY, False)

    def centre(self) -> "PartitionDiagram":
        """Intersection with the orthogonal diagram: support of Z(P_mu)."""
        self._need_tail("centre")
        bad_rows = self.cols_used()
        bad_cols = self.rows_used()
        w = max(self.window, bad_rows.max_finite() + 1, bad_cols.max_finite() + 1)
        base = self.materialize(w)
        squares = {(i, j) for (i, j) in base.squares
                   if i not in bad_rows and j not in bad_cols}
        tail, exact = _filtered_tail(self.tail, bad_rows, bad_cols, w)
        return PartitionDiagram(w, squares, tail, exact)

    def normal_core(self) -> "Partition":
        """Largest normal partition subgroup contained in this one.

        Column j receives the largest height h such that rows 1..h are
        present in every column k >= j; the infimum runs through the tail.
        """
        self._need_tail("normal core")
        lam = self.max_subpartition().parts
        t = self.tail
        if t.kind == EMPTY:
            tail_inf = 0
        elif t.kind == CONST:
            tail_inf = t.value
        else:
            tail_inf = self.window + 1 - t.value
        parts = []
        run = tail_inf
        for h in reversed(lam):
            run = min(run, h)
            parts.append(run)
        parts.reverse()
        return Partition(parts, t if t.kind != EMPTY else TAIL_EMPTY)

    def normal_closure(self) -> "Partition":
        """Smallest normal partition subgroup containing this one.

        Adds every square weakly covered by a present square, i.e. all (i,j)
        with i <= r and j >= c for some present (r,c).
        """
        self._need_tail("normal closure")
        cols = self._columns()
        rowmax = [max(cols.get(j, (0,))) for j in range(2, self.window + 1)]
        run = 0
        parts = []
        for h in rowmax:
            run = max(run, h)
            parts.append(run)
        t = self.tail
        if t.kind == AFFINE:
            w = max(self.window, run + t.value)
            for j in range(self.window + 1, w + 1):
                run = max(run, j - t.value)
                parts.append(run)
            return Partition(parts, Tail.affine(t.value))
        top = max(run, t.value if t.kind == CONST else 0)
        return Partition(parts, Tail.const(top))

    def is_normal(self) -> bool:
        """Partition with non-decreasing heights, tail included."""
        self._need_tail("normality")
        if not self.is_partition():
            return False
        hs = self.heights()
        if any(a > b for a, b in zip(hs, hs[1:])):
            return False
        last = hs[-1] if hs else 0
        if self.tail.kind == EMPTY:
            return last == 0
        return last <= self.tail.height(self.window + 1)

    def is_open(self) -> bool:
        """All sufficiently late columns full: affine tail with offset 1."""
        self._need_tail("openness")
        return self.tail.kind == AFFINE and self.tail.value == 1

    def __or__(self, other):
        return lattice_union(self, other)

    def __and__(self, other):
        return lattice_intersect(self, other)

    def to_json(self):
        return {"window": self.window,
                "squares": sorted([r, c] for (r, c) in self.squares),
                "tail": self.tail.to_json(),
                "exact": self.tail_exact}

    @staticmethod
    def from_json(d) -> "PartitionDiagram":
        if "parts" in d:
            return Partition(d["parts"], Tail.from_json(d.get("tail")))
        return PartitionDiagram(d["window"], [tuple(s) for s in d["squares"]],
                                Tail.from_json(d.get("tail")), d.get("exact", True))


class Partition(PartitionDiagram):
    """Diagram whose columns are full top segments, stored by heights."""

    def __init__(self, parts, tail: Tail = TAIL_EMPTY, tail_exact: bool = True):
        parts = [int(h) for h in parts]
        squares = set()
        for idx, h in enumerate(parts):
            j = idx + 2
            if not 0 <= h <= j - 1:
                raise ValueError(f"part {h} out of range for column {j}")
            squares.update((i, j) for i in range(1, h + 1))
        # full top segments are closed under completing the rectangle
        super().__init__(max(len(parts) + 1, 2), squares, tail, tail_exact,
                         _trusted=True)

    @property
    def parts(self):
        return self.heights()


def _tail_le(a: Tail, b: Tail) -> bool:
    """a's heights eventually <= b's heights."""
    if a.kind == EMPTY:
        return True
    if a.kind == CONST:
        return b.kind == AFFINE or (b.kind == CONST and a.value <= b.value)
    return b.kind == AFFINE and a.value >= b.value


def _filtered_tail(t: Tail, bad_rows: _IntSet, bad_cols: _IntSet, w: int):
    """Tail of {(i,j) : i <= h_t(j), i ok, j ok} for columns beyond w."""
    if t.kind == EMPTY:
        return TAIL_EMPTY, True
    if bad_cols.from_ is not None:
        return TAIL_EMPTY, bad_cols.from_ <= w + 1
    if bad_rows.is_empty():
        return t, True
    if t.kind == CONST:
        inside = sorted(r for r in range(1, t.value + 1) if r in bad_rows)
        if not inside:
            return t, True
        if inside == list(range(inside[0], t.value + 1)):
            return Tail.const(inside[0] - 1), True
        return TAIL_EMPTY, False
    s = bad_rows.suffix_start()
    if s is not None:
        return Tail.const(s - 1), True
    return TAIL_EMPTY, False


def rect_closure(squares, window: int, tail: Tail = TAIL_EMPTY) -> PartitionDiagram:
    """Least rectangle-closed superset within the window; idempotent."""
    squares = {(int(r), int(c)) for r, c in squares}
    by_row = {}
    by_col = {}
    for s in squares:
        by_row.setdefault(s[0], set()).add(s)
        by_col.setdefault(s[1], set()).add(s)
    for (r, c) in squares:
        if not (1 <= r < c <= window):
            raise ValueError(f"square {(r, c)} outside window {window}")
    work = list(squares)
    while work:
        (i, j) = work.pop()
        new = [(i, k) for (_, k) in by_row.get(j, ())]
        new += [(h, j) for (h, _) in by_col.get(i, ())]
        for s in new:
            if s not in squares:
                squares.add(s)
                work.append(s)
                by_row.setdefault(s[0], set()).add(s)
                by_col.setdefault(s[1], set()).add(s)
    return PartitionDiagram(window, squares, tail, _trusted=True)


def _combine_window(m1: PartitionDiagram, m2: PartitionDiagram) -> int:
    # mixed const/affine tails agree with a pure tail past the crossover
    w = max(m1.window, m2.window)
    for a, b in ((m1.tail, m2.tail), (m2.tail, m1.tail)):
        if a.kind == CONST and b.kind == AFFINE:
            w = max(w, a.value + b.value)
    return w


def lattice_union(m1: PartitionDiagram, m2: PartitionDiagram) -> PartitionDiagram:
    """Smallest diagram containing both: set union then rectangle completion."""
    if not (m1.tail_exact and m2.tail_exact):
        w = min(m1.window, m2.window)
        sq = {s for s in m1.squares | m2.squares if s[1] <= w}
        return rect_closure(sq, w).with_exact(False)
    w = _combine_window(m1, m2)
    a, b = m1.materialize(w), m2.materialize(w)
    t1, t2 = m1.tail, m2.tail
    if t1.kind == EMPTY:
        tail = t2
    elif t2.kind == EMPTY:
        tail = t1
    elif t1.kind == t2.kind:
        tail = Tail.const(max(t1.value, t2.value)) if t1.kind == CONST \
            else Tail.affine(min(t1.value, t2.value))
    else:
        tail = t1 if t1.kind == AFFINE else t2
    return rect_closure(a.squares | b.squares, w, tail)


def lattice_intersect(m1: PartitionDiagram, m2: PartitionDiagram) -> PartitionDiagram:
    if not (m1.tail_exact and m2.tail_exact):
        w = min(m1.window, m2.window)
        sq = {s for s in m1.squares & m2.squares if s[1] <= w}
        return PartitionDiagram(w, sq).with_exact(False)
    w = _combine_window(m1, m2)
    a, b = m1.materialize(w), m2.materialize(w)
    t1, t2 = m1.tail, m2.tail
    if t1.kind == EMPTY or t2.kind == EMPTY:
        tail = TAIL_EMPTY
    elif t1.kind == t2.kind:
        tail = Tail.const(min(t1.value, t2.value)) if t1.kind == CONST \
            else Tail.affine(max(t1.value, t2.value))
    else:
        tail = t1 if t1.kind == CONST else t2
    return PartitionDiagram(w, a.squares & b.squares, tail)


# -- named families --

def lower_central(d: int, window: int | None = None) -> Partition:
    """Support of the d-th term of the lower central series (d >= 1)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    w = max(window or 0, d, 2)
    return Partition([max(j - d, 0) for j in range(2, w + 1)], Tail.affine(d))


def derived_series(d: int, window: int | None = None) -> Partition:
    """Support of the d-th derived subgroup (d >= 1): lower central with
    offset 2^(d-1)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return lower_central(2 ** (d - 1), window)


def congruence_level(c: int, window: int | None = None) -> Partition:
    """Identity leading c x c block: the c-th principal congruence subgroup."""
    if c < 1:
        raise ValueError("c must be >= 1")
    w = max(window or 0, c, 2)
    return Partition([j - 1 if j > c else 0 for j in range(2, w + 1)], Tail.affine(1))


def rectangular(c: int, d: int) -> Partition:
    """Heights 0 through column c+1, then constant d, with 0 < d <= c."""
    if not 0 < d <= c:
        raise ValueError("rectangular family needs 0 < d <= c")
    return Partition([0] * c, Tail.const(d))


def staircase(blocks) -> Partition:
    """Cross-block squares of a block-diagonal splitting.

    Heights step up at each block boundary.  The final listed block is
    treated as extending indefinitely, which matches the windowed content.
    """
    blocks = [int(b) for b in blocks]
    if not blocks or any(b < 1 for b in blocks):
        raise ValueError("blocks must be positive")
    starts = [1]
    for b in blocks:
        starts.append(starts[-1] + b)
    total = starts[-1] - 1
    parts = []
    for j in range(2, total + 1):
        blk = max(i for i, s in enumerate(starts[:-1]) if s <= j)
        parts.append(starts[blk] - 1)
    tail = Tail.const(starts[-2] - 1) if len(blocks) > 1 else TAIL_EMPTY
    return Partition(parts, tail)


def family(kind: str, *args) -> PartitionDiagram:
    """Dispatch by family name, mainly for the CLI."""
    table = {
        "lower-central": lower_central,
        "derived": derived_series,
        "level": congruence_level,
        "rectangular": rectangular,
        "staircase": lambda *a: staircase(a),
    }
    if kind not in table:
        raise ValueError(f"unknown family {kind!r}")
    return table[kind](*args)


# -- normal-subgroup calculus --

def commutator_with_group(mu: Partition) -> Partition:
    """[P_mu, G] for normal mu: keep exactly the strictly covered squares.

    On heights this reads m'_j = max(m_{j-1}, m_j - 1): corner squares are
    deleted.  Iterating from the full diagram walks the lower central series.
    """
    _require_normal(mu)
    t = mu.tail
    hs = mu.parts + [max(t.height(mu.window + 1), 0)]
    prev = 0
    parts = []
    for h in hs:
        parts.append(max(prev, h - 1))
        prev = h
    if t.kind == AFFINE:
        return Partition(parts, Tail.affine(t.value + 1))
    return Partition(parts, Tail.const(t.value) if t.kind == CONST else TAIL_EMPTY)


def centre_preimage(mu: Partition) -> Partition:
    """Preimage of the centre of G/P_mu: squares all of whose strictly
    covered squares lie in mu.  On heights: min(m_j + 1, m_{j+1}, j - 1)."""
    _require_normal(mu)
    t = mu.tail
    hs = mu.parts + [max(t.height(mu.window + 1), 0)]
    parts = []
    for idx in range(len(hs) - 1):
        j = idx + 2
        parts.append(min(hs[idx] + 1, hs[idx + 1], j - 1))
    if t.kind == AFFINE:
        return Partition(parts, Tail.affine(max(t.value - 1, 1)))
    return Partition(parts, Tail.const(t.value) if t.kind == CONST else TAIL_EMPTY)


def _require_normal(mu):
    if not isinstance(mu, PartitionDiagram) or not mu.is_normal():
        raise ValueError("operation requires a normal partition")


# -- matrices against diagrams --

def membership(x: UniTriWindow, mu: PartitionDiagram) -> bool:
    """True iff every nonzero entry of x lies on a square of mu."""
    return all(mu.has_square(i, j) for (i, j), _ in x.items())


def subgroup_generators(mu: PartitionDiagram, ring, n: int):
    """Elementary generators 1 + a e_(r,c) over a coefficient basis, one per
    square of mu inside window n."""
    coeffs = ring.basis_elems() if ring.kind == "ext" else [ring.one]
    gens = []
    for j in range(2, n + 1):
        for i in sorted(mu.column(j)):
            gens.extend(elementary(ring, n, i, j, a) for a in coeffs)
    return gens


def string_decompose(x: UniTriWindow, blocks):
    """Split x = p * s with s the block-diagonal part and p supported on the
    cross-block staircase; the decomposition is unique."""
    blocks = [int(b) for b in blocks]
    if sum(blocks) != x.n:
        raise ValueError("block sizes must sum to the window size")
    starts = [1]
    for b in blocks:
        starts.append(starts[-1] + b)

    def blk(i):
        return max(t for t, s in enumerate(starts) if s <= i)

    s_entries = {pos: v for pos, v in x.items() if blk(pos[0]) == blk(pos[1])}
    s = UniTriWindow(x.ring, x.n, s_entries)
    p = mat_mul(x, mat_inv(s))
    return p, s


# -- text and JSON formats --

def format_partition(mu: Partition) -> str:
    """Run-length text form, e.g. (0^2,1^2,2^3|tail=const:2)."""
    runs = []
    for h in mu.parts:
        if runs and runs[-1][0] == h:
            runs[-1][1] += 1
        else:
            runs.append([h, 1])
    body = ",".join(f"{h}^{c}" if c > 1 else str(h) for h, c in runs)
    t = mu.tail
    if t.kind == EMPTY:
        return f"({body})"
    return f"({body}|tail={t.kind}:{t.value})"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError("partition text must be parenthesised")
    inner = text[1:-1]
    tail = TAIL_EMPTY
    if "|" in inner:
        inner, tail_text = inner.split("|", 1)
        if not tail_text.startswith("tail="):
            raise ValueError("expected |tail=kind:value")
        kind, _, val = tail_text[5:].partition(":")
        if kind in ("const", "constant"):
            tail = Tail.const(int(val))
        elif kind == "affine":
            tail = Tail.affine(int(val))
        elif kind == "empty":
            tail = TAIL_EMPTY
        else:
            raise ValueError(f"unknown tail kind {kind!r}")
    parts = []
    inner = inner.strip()
    if inner:
        for tok in inner.split(","):
            tok = tok.strip()
            if "^" in tok:
                h, c = tok.split("^")
                parts.extend([int(h)] * int(c))
            else:
                parts.append(int(tok))
    return Partition(parts, tail)


def parse_squares(text: str):
    """Square list like "(3,4) (1,2)" or "(3,4);(1,2)"."""
    out = []
    for tok in text.replace(";", " ").split(")"):
        tok = tok.strip().lstrip(",").strip().lstrip("(")
        if not tok:
            continue
        r, c = tok.split(",")
        out.append((int(r), int(c)))
    return out
