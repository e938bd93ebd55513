"""Truncated-integer windows: subgroups of matrices over Z/p^k.

The doubly indexed congruence subgroups ask for p^k-divisible entries in a
leading block; the diagonal members (window n, divisibility p^n) form the
filtration every dimension sequence here is measured against.  Ideal
partition subgroups are generated by 1 + p^k e_(i,j) over the squares of a
diagram; their computed dimension sequences are reported together with a
flag comparing them against the claimed zero limit, which positive-density
diagrams visibly contradict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrices import ClosureCapExceeded, UniTriWindow, closure_dense, elementary
from .partitions import PartitionDiagram
from .rings import Ring

DEFAULT_IDEAL_CLOSURE_CAP = 200_000


def level(x: UniTriWindow) -> int:
    if x.ring.kind != "zmod":
        raise ValueError("not a truncated-integer window")
    return x.ring.k


def u_membership(x: UniTriWindow, n: int, k: int) -> bool:
    """Entries of the leading n x n block all divisible by p^k."""
    if k > level(x):
        raise ValueError(f"divisibility by p^{k} undetectable at level {level(x)}")
    if n > x.n:
        raise ValueError("block exceeds the window")
    pk = x.ring.p ** k
    return all(v.val % pk == 0 for (i, j), v in x.items() if j <= n)


def v_valuation(x: UniTriWindow) -> int:
    """Largest n <= min(window, level) with p^n dividing the leading n-block."""
    top = min(x.n, level(x))
    val = 0
    for n in range(1, top + 1):
        if u_membership(x, n, n):
            val = n
        else:
            break
    return val


def reduce_window_level(x: UniTriWindow, n: int, k: int) -> UniTriWindow:
    """Truncate to window n and reduce entries mod p^k; a homomorphism."""
    if k > level(x):
        raise ValueError("cannot lift to a finer level")
    if n > x.n:
        raise ValueError("cannot enlarge the window")
    ring = Ring.integers_mod(x.ring.p, k)
    return UniTriWindow(ring, n,
                        {pos: v.val for pos, v in x.items() if pos[1] <= n})


def ideal_partition_generators(mu: PartitionDiagram, k: int, n: int, p: int):
    """Generators 1 + p^k e_(i,j) over the squares of mu, in G_n(Z/p^n)."""
    ring = Ring.integers_mod(p, n)
    pk = p ** k
    gens = []
    for j in range(2, n + 1):
        for i in sorted(mu.column(j)):
            gens.append(elementary(ring, n, i, j, pk))
    return gens


@dataclass(frozen=True)
class IdealOrderResult:
    log_order: int
    verified: bool
    method: str  # "closure" or "formula"


def ideal_partition_log_order(mu: PartitionDiagram, k: int, n: int, p: int,
                              cap: int = DEFAULT_IDEAL_CLOSURE_CAP) -> IdealOrderResult:
    """log_p order of the ideal partition subgroup's image at level n.

    The digit count predicts (n - k) per square; BFS closure both measures
    the order and confirms the group is the full supported set.  When the
    predicted order exceeds the cap the formula value is returned unverified.
    """
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    count = mu.count_upto(n)
    predicted = (n - k) * count
    if count == 0:
        return IdealOrderResult(0, True, "closure")
    if p ** predicted <= cap:
        gens = ideal_partition_generators(mu, k, n, p)
        try:
            ops, seen = closure_dense(gens, cap=cap)
        except ClosureCapExceeded:
            return IdealOrderResult(predicted, False, "formula")
        order = len(seen)
        e = 0
        while order % p == 0:
            order //= p
            e += 1
        if order != 1:
            raise AssertionError("subgroup order is not a p power")
        verified = p ** e == p ** predicted and _equals_supported_set(
            ops, seen, mu, k, n, p)
        return IdealOrderResult(e, verified, "closure")
    return IdealOrderResult(predicted, False, "formula")


def _equals_supported_set(ops, seen, mu, k, n, p):
    pk = p ** k
    for key in seen:
        x = ops.decode(key)
        for (i, j), v in x.items():
            if v.val % pk or not mu.has_square(i, j):
                return False
    return True


@dataclass
class PadicDimReport:
    mu: PartitionDiagram
    k: int
    terms: list          # Fractions, indexed from n = 2
    verified: list       # bool per term
    discrepancy_flag: bool

    def rows(self):
        for idx, t in enumerate(self.terms):
            yield idx + 2, t, self.verified[idx]

    def to_csv(self) -> str:
        lines = ["n,log_order,a_n_num,a_n_den,decimal,verified"]
        for n, t, ver in self.rows():
            log_order = t * n * n * (n - 1) // 2
            lines.append(f"{n},{log_order},{t.numerator},{t.denominator},"
                         f"{float(t):.12g},{int(ver)}")
        lines.append(f"# claimed_zero_limit_discrepancy,{int(self.discrepancy_flag)}")
        return "\n".join(lines) + "\n"


def dim_sequence_padic(mu: PartitionDiagram, k: int, N: int, p: int,
                       cap: int = DEFAULT_IDEAL_CLOSURE_CAP) -> PadicDimReport:
    """a_n = log_p|image| / log_p|G_n(Z/p^n)| for n = 2..N, exact.

    For a proper ideal (k >= 1) the claimed limit of zero is flagged whenever
    the computed sequence is not visibly decaying: positive-density diagrams
    keep a_n near their density instead.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    terms = []
    verified = []
    for n in range(2, N + 1):
        if k >= n:
            terms.append(Fraction(0))
            verified.append(True)
            continue
        res = ideal_partition_log_order(mu, k, n, p, cap)
        terms.append(Fraction(2 * res.log_order, n * n * (n - 1)))
        verified.append(res.verified)
    flag = False
    if k >= 1 and terms[-1] > 0 and N >= 4:
        mid = terms[(N // 2) - 2]
        flag = terms[-1] * 10 >= mid * 9
    return PadicDimReport(mu, k, terms, verified, flag)
