"""Buchberger's algorithm on packed monomials.

A monomial is a single Python int: the high bits hold the order's weight
vector (so integer comparison is the monomial order) and the low bits hold
the exponents with one guard bit per field (so divisibility is one
subtraction and a mask).  Multiplying monomials is integer addition.

Pairs are processed by sugar degree, then by lcm, with the Gebauer-Moller
update (product and chain criteria).
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import logging
from dataclasses import dataclass

from .poly import MonomialOrder

log = logging.getLogger(__name__)

EXP_BITS = 16
ROW_BITS = 24
MAX_EXPONENT = (1 << (EXP_BITS - 1)) - 1


class BudgetExhausted(RuntimeError):
    """A Groebner computation hit its configured pair or degree cap."""


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 400_000
    max_degree: int = 200

    def __post_init__(self):
        if self.max_pairs <= 0 or self.max_degree <= 0:
            raise ValueError("budget caps must be positive")


_BUDGET: contextvars.ContextVar[Budget] = contextvars.ContextVar("gb_budget", default=Budget())


def current_budget() -> Budget:
    return _BUDGET.get()


@contextlib.contextmanager
def budget(max_pairs: int | None = None, max_degree: int | None = None):
    """Temporarily change the caps for every GB computed in this context."""
    old = _BUDGET.get()
    new = Budget(
        max_pairs if max_pairs is not None else old.max_pairs,
        max_degree if max_degree is not None else old.max_degree,
    )
    token = _BUDGET.set(new)
    try:
        yield new
    finally:
        _BUDGET.reset(token)


class Encoder:
    """Packs exponent tuples for a fixed arity and monomial order."""

    def __init__(self, n: int, order: MonomialOrder, grading=None):
        self.n = n
        self.order = order
        rows = order.weight_rows(n)
        m = len(rows)
        self.ebits = EXP_BITS * n
        self.emask = (1 << self.ebits) - 1
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(n))
        self.fmask = (1 << EXP_BITS) - 1
        self.colval = []
        for i in range(n):
            key = 0
            for r, row in enumerate(rows):
                key |= row[i] << (ROW_BITS * (m - 1 - r))
            self.colval.append((key << self.ebits) | (1 << (EXP_BITS * i)))
        self.grading = tuple(grading) if grading is not None else (1,) * n

    def encode(self, exps) -> int:
        m = 0
        for e, c in zip(exps, self.colval):
            if e:
                if e > MAX_EXPONENT:
                    raise BudgetExhausted(f"exponent {e} exceeds the packed range")
                m += e * c
        return m

    def decode(self, m: int) -> tuple:
        W, mask = EXP_BITS, self.fmask
        return tuple((m >> (W * i)) & mask for i in range(self.n))

    def degree(self, m: int) -> int:
        W, mask = EXP_BITS, self.fmask
        return sum(g * ((m >> (W * i)) & mask) for i, g in enumerate(self.grading))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return (((b & self.emask) | g) - (a & self.emask)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode(tuple(map(max, self.decode(a), self.decode(b))))

    def coprime(self, a: int, b: int) -> bool:
        return (a & b & self.emask) == 0 and not any(
            x and y for x, y in zip(self.decode(a), self.decode(b))
        )


def _monic(terms: list, p: int) -> list:
    lc = terms[0][1]
    if p:
        if lc == 1:
            return terms
        inv = pow(lc, -1, p)
        return [(m, c * inv % p) for m, c in terms]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(m, c * inv) for m, c in terms]


def reduce_full(f: dict, lows: list, polys: list, enc: Encoder, p: int) -> dict:
    """Complete reduction of ``f`` (mutated) by monic sorted term lists."""
    heap = [-m for m in f]
    heapq.heapify(heap)
    rem: dict = {}
    G, EM = enc.guard, enc.emask
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = -pop(heap)
        c = f.get(m)
        if c is None:
            continue
        low = (m & EM) | G
        j = -1
        for idx, a in enumerate(lows):
            if (low - a) & G == G:
                j = idx
                break
        del f[m]
        if j < 0:
            rem[m] = c
            continue
        g = polys[j]
        q = m - g[0][0]
        if p:
            for gm, gc in g[1:]:
                nm = gm + q
                v = f.get(nm)
                if v is None:
                    f[nm] = (-c * gc) % p
                    push(heap, -nm)
                else:
                    v = (v - c * gc) % p
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
        else:
            for gm, gc in g[1:]:
                nm = gm + q
                v = f.get(nm)
                if v is None:
                    f[nm] = -c * gc
                    push(heap, -nm)
                else:
                    v = v - c * gc
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
    return rem


def _sorted_terms(d: dict) -> list:
    return sorted(d.items(), reverse=True)


def buchberger(inputs: list[dict], enc: Encoder, p: int) -> list[list]:
    """Reduced Groebner basis of packed polynomials (dicts monomial -> coeff).

    Returns monic sorted term lists, ordered by increasing leading monomial.
    """
    cap = current_budget()
    polys: list[list] = []
    lt: list[int] = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: dict = {}
    heap: list = []
    processed = 0

    def act_lows():
        return [lt[i] & enc.emask for i in active], [polys[i] for i in active]

    state = {"lows": [], "polys": []}

    def refresh():
        state["lows"], state["polys"] = act_lows()

    def add(terms: list, s: int):
        h = len(polys)
        polys.append(terms)
        lt.append(terms[0][0])
        sugar.append(s)
        lh = lt[h]
        deg_h = enc.degree(lh)
        # Gebauer-Moller update
        cand = []
        for g in active:
            L = enc.lcm(lh, lt[g])
            cand.append((g, L, enc.coprime(lh, lt[g])))
        kept = []
        for idx, (g, L, cop) in enumerate(cand):
            if cop:
                kept.append((g, L, cop))
                continue
            redundant = False
            for _, L2, _ in cand[idx + 1 :]:
                if enc.divides(L2, L):
                    redundant = True
                    break
            if not redundant:
                for _, L2, _ in kept:
                    if enc.divides(L2, L):
                        redundant = True
                        break
            if not redundant:
                kept.append((g, L, cop))
        for key in list(pairs):
            i, j = key
            L = pairs[key][1]
            if enc.divides(lh, L) and enc.lcm(lt[i], lh) != L and enc.lcm(lt[j], lh) != L:
                del pairs[key]
        for g, L, cop in kept:
            if cop:
                continue
            dL = enc.degree(L)
            s_new = max(sugar[g] + dL - enc.degree(lt[g]), s + dL - deg_h)
            key = (g, h)
            pairs[key] = (s_new, L)
            heapq.heappush(heap, (s_new, L, g, h))
        active[:] = [g for g in active if not enc.divides(lh, lt[g])]
        active.append(h)
        refresh()

    seeds = []
    for f in inputs:
        if f:
            seeds.append((max(f), f))
    seeds.sort(key=lambda t: t[0])
    for _, f in seeds:
        s = max(enc.degree(m) for m in f)
        r = reduce_full(dict(f), state["lows"], state["polys"], enc, p)
        if r:
            add(_monic(_sorted_terms(r), p), s)
            if r and len(r) == 1 and not (next(iter(r)) & enc.emask):
                return [[(0, polys[-1][0][1])]]

    while heap:
        s, L, i, j = heapq.heappop(heap)
        if pairs.pop((i, j), None) is None:
            continue
        processed += 1
        if processed > cap.max_pairs:
            raise BudgetExhausted(f"more than {cap.max_pairs} S-pairs")
        if s > cap.max_degree:
            raise BudgetExhausted(f"sugar degree {s} exceeds cap {cap.max_degree}")
        f: dict = {}
        gi, gj = polys[i], polys[j]
        qi = L - gi[0][0]
        qj = L - gj[0][0]
        for m, c in gi[1:]:
            f[m + qi] = c
        if p:
            for m, c in gj[1:]:
                nm = m + qj
                v = (f.get(nm, 0) - c) % p
                if v:
                    f[nm] = v
                else:
                    f.pop(nm, None)
        else:
            for m, c in gj[1:]:
                nm = m + qj
                v = f.get(nm, 0) - c
                if v:
                    f[nm] = v
                else:
                    f.pop(nm, None)
        r = reduce_full(f, state["lows"], state["polys"], enc, p)
        if r:
            terms = _monic(_sorted_terms(r), p)
            if not (terms[0][0] & enc.emask):
                return [[(0, terms[0][1])]]
            add(terms, s)
    if processed:
        log.debug("buchberger: %d pairs, %d basis elements", processed, len(active))

    # inter-reduce tails
    basis = sorted(active, key=lambda i: lt[i])
    out = []
    for idx, i in enumerate(basis):
        others = [k for k in basis if k != i]
        lows = [lt[k] & enc.emask for k in others]
        ps = [polys[k] for k in others]
        head_m, head_c = polys[i][0]
        tail = dict(polys[i][1:])
        r = reduce_full(tail, lows, ps, enc, p)
        out.append([(head_m, head_c)] + _sorted_terms(r))
    return out
