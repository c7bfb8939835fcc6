"""Generalized minors on the reduced double Bruhat cell of SL_n and their tropicalization.

Matrices are sympy ``DomainMatrix`` objects over a rational function field.
Tropical points are evaluated by substituting ``a_k = t^{A_k}`` and reading off
the order of vanishing in t.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from sympy import QQ, symbols
from sympy.polys.matrices import DomainMatrix

from .highest import is_in_Pw
from .polytope import BZData, MVPolytope, _chamber_table, bz_from_lusztig, chamber_weight, edge_value
from .weyl import (
    CartanData,
    WeylElement,
    bruhat_leq,
    build_cartan,
    elements,
    is_reduced,
    longest_element,
    rmul,
    v_w,
    weak_leq,
    word_to_element,
)


class CellError(ArithmeticError):
    """A leading principal minor vanished where the cell requires it not to."""


class UndefinedValuation(ArithmeticError):
    """Valuation of the zero function."""


@functools.lru_cache(maxsize=None)
def t_field():
    """``QQ(t)`` and its generator."""
    K = QQ.frac_field(symbols("t"))
    return K, K.gens[0]


@functools.lru_cache(maxsize=None)
def symbolic_field(m: int, name: str = "a"):
    """``QQ(a_1, ..., a_m)`` and its generators."""
    if m == 0:
        K = QQ.frac_field(symbols("_z"))
        return K, ()
    K = QQ.frac_field(*symbols(f"{name}1:{m + 1}"))
    return K, tuple(K.gens)


def sl(n: int) -> CartanData:
    return build_cartan("A", n - 1)


# --- matrices -------------------------------------------------------------------


def eye(n: int, K) -> DomainMatrix:
    return DomainMatrix.eye(n, K)


def _with_entries(n: int, K, entries: dict) -> DomainMatrix:
    rows = [[K.one if r == c else K.zero for c in range(n)] for r in range(n)]
    for (r, c), v in entries.items():
        rows[r][c] = K.convert(v)
    return DomainMatrix(rows, (n, n), K)


def x_elem(n: int, i: int, f, K) -> DomainMatrix:
    """``x_i(f)``: the identity plus f in entry (i, i+1)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"index {i} out of range for SL_{n}")
    return _with_entries(n, K, {(i - 1, i): f})


def y_elem(n: int, i: int, f, K) -> DomainMatrix:
    if not 1 <= i <= n - 1:
        raise ValueError(f"index {i} out of range for SL_{n}")
    return _with_entries(n, K, {(i, i - 1): f})


def s_bar(n: int, i: int, K) -> DomainMatrix:
    """``y_i(1) x_i(-1) y_i(1)``, the block [[0, -1], [1, 0]] at (i, i+1)."""
    return _with_entries(n, K, {(i - 1, i - 1): 0, (i, i): 0, (i - 1, i): -1, (i, i - 1): 1})


def _product(n: int, K, factors) -> DomainMatrix:
    out = eye(n, K)
    for f in factors:
        out = out * f
    return out


@functools.lru_cache(maxsize=None)
def _w_rep(n: int, word: tuple[int, ...], K) -> DomainMatrix:
    return _product(n, K, [s_bar(n, i, K) for i in word])


def w_rep(n: int, word: Sequence[int], K=None) -> DomainMatrix:
    """The lift of a Weyl element along a reduced word; equal for all reduced words of the element."""
    K = K if K is not None else t_field()[0]
    word = tuple(word)
    c = sl(n)
    if not is_reduced(c, word):
        raise ValueError(f"{word} is not reduced")
    rep = _w_rep(n, word, K)
    canon = word_to_element(c, word).word
    if canon != word and _w_rep(n, canon, K) != rep:
        raise AssertionError(f"lifts of {word} and {canon} differ")
    return rep


def chart_point(n: int, word: Sequence[int], A: Sequence[int]) -> DomainMatrix:
    """``x_{i_1}(t^{A_1}) ... x_{i_m}(t^{A_m})`` over ``QQ(t)``."""
    if len(word) != len(A):
        raise ValueError("chart word and exponent vector differ in length")
    K, t = t_field()
    return _product(n, K, [x_elem(n, i, t ** int(a), K) for i, a in zip(word, A)])


def symbolic_chart(n: int, word: Sequence[int]):
    """``x_{i_1}(a_1) ... x_{i_m}(a_m)`` over ``QQ(a_1..a_m)``; returns (K, gens, matrix)."""
    K, gens = symbolic_field(len(word))
    return K, gens, _product(n, K, [x_elem(n, i, a, K) for i, a in zip(word, gens)])


def iota(g: DomainMatrix) -> DomainMatrix:
    """The anti-automorphism fixing every ``x_i(f)``: ``D g^-1 D`` with ``D = diag(1, -1, 1, ...)``."""
    n = g.shape[0]
    K = g.domain
    D = DomainMatrix([[K.convert((-1) ** r) if r == c else K.zero for c in range(n)] for r in range(n)], (n, n), K)
    return D * g.inv() * D


def unit_upper_factor(M: DomainMatrix) -> DomainMatrix:
    """U in ``M = L U`` with L lower triangular and U unit upper triangular."""
    L, _, swaps = M.transpose().lu()
    if swaps:
        raise CellError("a leading principal minor vanishes")
    return L.transpose()


def eta(w: WeylElement, g: DomainMatrix) -> DomainMatrix:
    """``eta_{w^-1}(g)``: the unipotent element of ``B_- lift(w^-1) g^T``."""
    n = g.shape[0]
    rep = w_rep(n, w.inverse().word, g.domain)
    return unit_upper_factor(rep * g.transpose())


def eta_inv(w: WeylElement, z: DomainMatrix) -> DomainMatrix:
    """``eta_{w^-1}^{-1}(z) = iota(eta_w(iota(z)))``."""
    return iota(eta(w.inverse(), iota(z)))


# --- minors ---------------------------------------------------------------------


def permutation(w: WeylElement) -> tuple[int, ...]:
    """``p`` with ``p[x - 1] = w(x)`` for the action of W(A_{n-1}) on {1..n}."""
    n = w.cartan.rank + 1
    out = []
    for x in range(1, n + 1):
        for i in reversed(w.word):
            if x == i:
                x = i + 1
            elif x == i + 1:
                x = i
        out.append(x)
    return tuple(out)


def index_set(w: WeylElement, i: int) -> tuple[int, ...]:
    """``w({1..i})`` sorted; the subset labelling ``w omega_i``."""
    p = permutation(w)
    return tuple(sorted(p[x - 1] for x in range(1, i + 1)))


def subset_to_weight(n: int, subset: Sequence[int]) -> tuple[int, ...]:
    """Fundamental-weight coordinates of the weight ``e_S``."""
    e = [1 if x in subset else 0 for x in range(1, n + 1)]
    return tuple(e[k] - e[k + 1] for k in range(n - 1))


def weight_to_subset(n: int, weight: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`subset_to_weight` on chamber weights."""
    # partial sums from the right recover e_S up to a constant
    e = [0] * n
    for k in range(n - 2, -1, -1):
        e[k] = e[k + 1] + weight[k]
    lo = min(e)
    e = [x - lo for x in e]
    if any(x not in (0, 1) for x in e) or not 0 < sum(e) < n:
        raise ValueError(f"{tuple(weight)} is not a chamber weight of SL_{n}")
    return tuple(x + 1 for x in range(n) if e[x])


def minor(g: DomainMatrix, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the submatrix on 1-based sorted rows and columns."""
    if len(rows) != len(cols):
        raise ValueError("row and column sets differ in size")
    return g.extract([r - 1 for r in rows], [c - 1 for c in cols]).det()


def gen_minor(g: DomainMatrix, u: WeylElement, v: WeylElement, i: int):
    """``Delta_{u omega_i, v omega_i}(g)``: rows ``u{1..i}``, columns ``v{1..i}``."""
    return minor(g, index_set(u, i), index_set(v, i))


@functools.lru_cache(maxsize=None)
def new_row_set(w: WeylElement, gamma: tuple[int, ...]) -> tuple[int, ...]:
    """Row set of ``Delta^new_gamma``: ``(v_w^-1 v){1..i}`` for any v with ``v omega_i = gamma``.

    Every such v is tried and all must agree.
    """
    c = w.cartan
    cw = _chamber_table(c)[gamma]
    i = cw.index
    target = index_set(cw.representative, i)
    found = set()
    for v in elements(c):
        if index_set(v, i) == target:
            found.add(index_set(v_w(v, w).inverse() * v, i))
    if len(found) != 1:
        raise AssertionError(f"row set of the new minor at {gamma} depends on the representative: {sorted(found)}")
    return found.pop()


def delta_new(g: DomainMatrix, v: WeylElement, i: int, w: WeylElement):
    """``Delta_{v_w^-1 v omega_i, v omega_i}(g)``."""
    return gen_minor(g, v_w(v, w).inverse() * v, v, i)


def delta_new_at(g: DomainMatrix, gamma: Sequence[int], w: WeylElement):
    c = w.cartan
    cw = _chamber_table(c)[tuple(gamma)]
    return minor(g, new_row_set(w, cw.weight), index_set(cw.representative, cw.index))


# --- tropicalization --------------------------------------------------------------


def _ord(p) -> int:
    return min(m[0] for m in p.monoms())


def valuation(f) -> int:
    """Order of vanishing at t = 0: ``ord(num) - ord(den)``."""
    if not f:
        raise UndefinedValuation("valuation of zero")
    return _ord(f.numer) - _ord(f.denom)


def chi_trop_nonneg(A: Sequence[int]) -> bool:
    return all(a >= 0 for a in A)


def default_chart_word(w: WeylElement) -> tuple[int, ...]:
    """A reduced word of ``w^-1``: the canonical word of w reversed."""
    return tuple(reversed(w.word))


def _check_chart(w: WeylElement, chart: Sequence[int], A: Sequence[int]):
    chart = tuple(chart)
    if len(chart) != len(A):
        raise ValueError("chart word and A differ in length")
    if word_to_element(w.cartan, chart) != w.inverse() or not is_reduced(w.cartan, chart):
        raise ValueError(f"{chart} is not a reduced word of w^-1 = {w.inverse()}")
    return chart


def cell_element(w: WeylElement, chart: Sequence[int], A: Sequence[int]) -> DomainMatrix:
    """``eta_{w^-1}^{-1}`` of the chart point; the matrix whose new minors give M."""
    n = w.cartan.rank + 1
    chart = _check_chart(w, chart, A)
    return eta_inv(w, chart_point(n, chart, A))


def m_gamma(w: WeylElement, chart: Sequence[int], A: Sequence[int], gamma: Sequence[int]) -> int:
    return valuation(delta_new_at(cell_element(w, chart, A), gamma, w))


def oracle_bz(w: WeylElement, A: Sequence[int], chart: Sequence[int] | None = None) -> BZData:
    """All ``M_gamma`` at the tropical point A, by valuation."""
    chart = default_chart_word(w) if chart is None else tuple(chart)
    z = cell_element(w, chart, A)
    values = {g: valuation(delta_new_at(z, g, w)) for g in _chamber_table(w.cartan)}
    return BZData(w.cartan, values)


def lusztig_of_chart(w: WeylElement, chart: Sequence[int], A: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduced word of w0 and Lusztig data matched to a tropical point.

    The chart word of ``w^-1`` read backwards spells w; its k-th letter from the
    end carries ``A_k``.  The word is completed by the canonical word of ``w^-1 w0``.
    """
    c = w.cartan
    chart = _check_chart(w, chart, A)
    rest = (w.inverse() * longest_element(c)).word
    word = tuple(reversed(chart)) + rest
    n = tuple(reversed(tuple(A))) + (0,) * len(rest)
    return word, n


def combinatorial_bz(w: WeylElement, A: Sequence[int], chart: Sequence[int] | None = None) -> BZData:
    chart = default_chart_word(w) if chart is None else tuple(chart)
    word, n = lusztig_of_chart(w, chart, A)
    return bz_from_lusztig(w.cartan, word, n)


@dataclass
class Counterexample:
    w: tuple[int, ...]
    chart: tuple[int, ...]
    A: tuple[int, ...]
    gamma: tuple[int, ...]
    oracle: int | None
    bz: int | None

    def to_json(self) -> dict:
        return {"w": list(self.w), "chart": list(self.chart), "A": list(self.A),
                "gamma": list(self.gamma), "oracle": self.oracle, "bz": self.bz}


def theorem_b_check(w: WeylElement, A: Sequence[int], chart: Sequence[int] | None = None) -> list[Counterexample]:
    """Compare the valuation oracle with the BZ datum built from Lusztig data; returns mismatches."""
    if not chi_trop_nonneg(A):
        raise ValueError("tropical point is not nonnegative")
    chart = default_chart_word(w) if chart is None else tuple(chart)
    got = oracle_bz(w, A, chart)
    want = combinatorial_bz(w, A, chart)
    out = [
        Counterexample(w.word, chart, tuple(A), g, got[g], want[g])
        for g in sorted(want.values) if got[g] != want[g]
    ]
    if not is_in_Pw(MVPolytope(want), w):
        out.append(Counterexample(w.word, chart, tuple(A), (), None, None))
    return out


# --- symbolic identities ------------------------------------------------------------


def gamma_w(w: WeylElement) -> set[tuple[int, ...]]:
    """Chamber weights ``v omega_j`` with ``v <= w`` in the Bruhat order.

    These are exactly the weights whose principal-row minors survive on the cell.
    """
    c = w.cartan
    return {chamber_weight(v, j) for v in elements(c) if bruhat_leq(v, w) for j in c.index_set}


def _zero(f) -> bool:
    return not f


def vanishing_scan(w: WeylElement, chart: Sequence[int] | None = None) -> dict:
    """Symbolic checks on a generic chart point of the cell for w.

    Returns counts of confirmed instances and the list of failures for the
    cell equations, the two vanishing families and the new minors' nonvanishing.
    """
    c = w.cartan
    n = c.rank + 1
    chart = default_chart_word(w) if chart is None else tuple(chart)
    _check_chart(w, chart, chart)
    K, gens, g = symbolic_chart(n, chart)
    e = word_to_element(c, ())
    w0 = longest_element(c)
    gw = gamma_w(w)
    report = {"w": list(w.word), "chart": list(chart), "confirmed": {}, "failures": []}

    def record(kind, ok, detail):
        report["confirmed"].setdefault(kind, 0)
        if ok:
            report["confirmed"][kind] += 1
        else:
            report["failures"].append({"kind": kind, **detail})

    table = _chamber_table(c)
    for gamma, cw in sorted(table.items()):
        i = cw.index
        cols = index_set(cw.representative, i)
        val = minor(g, tuple(range(1, i + 1)), cols)
        if gamma == tuple(c.fundamental_weight(i)):
            record("principal-minor-one", val == K.one, {"gamma": list(gamma)})
        if gamma not in gw:
            record("cell-vanishing", _zero(val), {"gamma": list(gamma), "value": str(val)})
        record("new-minor-nonzero", not _zero(minor(g, new_row_set(w, gamma), cols)), {"gamma": list(gamma)})
    for i in c.index_set:
        val = gen_minor(g, e, w, i)
        record("top-minor-nonzero", not _zero(val), {"i": i})

    rest = w.inverse() * w0
    for u in elements(c):
        if not weak_leq(u, rest, "R"):
            continue
        for i in c.index_set:
            wus = rmul(w * u, i)
            if wus.length != w.length + u.length + 1:
                continue
            val = gen_minor(g, u, wus, i)
            record("corner-vanishing", _zero(val), {"u": list(u.word), "i": i, "value": str(val)})

    for v in elements(c):
        vw = v_w(v, w)
        u = vw.inverse() * v
        for i in c.index_set:
            if i in v.right_descents():
                continue
            vs = rmul(v, i)
            if v_w(vs, w) != vw:
                continue
            val = gen_minor(g, u, vs, i)
            record("conjectured-vanishing", _zero(val), {"v": list(v.word), "i": i, "value": str(val)})
    return report


def conjecture_edge_scan(w: WeylElement, A: Sequence[int], chart: Sequence[int] | None = None) -> dict:
    """Edge equalities of the oracle values along every edge that collapses in ``P_w``.

    An edge ``v -> v s_i`` collapses when ``(v s_i)_w = v_w``.  It is counted as
    conjectural unless ``v_w`` is v or w, the two cases with a known proof; it is
    counted as outside when its new weight ``v s_i omega_i`` lies outside ``Gamma^w``.
    """
    c = w.cartan
    chart = default_chart_word(w) if chart is None else tuple(chart)
    bz = oracle_bz(w, A, chart)
    gw = gamma_w(w)
    out = {"checked": 0, "conjectural": 0, "outside": 0, "failures": []}
    for v in elements(c):
        vw = v_w(v, w)
        for i in c.index_set:
            if i in v.right_descents():
                continue
            vs = rmul(v, i)
            if v_w(vs, w) != vw:
                continue
            conj = vw != v and vw != w
            outside = chamber_weight(vs, i) not in gw
            out["checked"] += 1
            out["conjectural"] += conj
            out["outside"] += outside
            val = edge_value(bz, v, i)
            if val != 0:
                out["failures"].append({"w": list(w.word), "chart": list(chart), "A": list(A),
                                        "v": list(v.word), "i": i, "edge": val,
                                        "conjectural": conj, "outside": outside})
    return out


def plucker_identity_check(n: int, u: WeylElement, w: WeylElement, i: int, g: DomainMatrix) -> bool:
    """``D(u, wu) D(us, wus) = D(us, wu) D(u, wus) + prod_{j != i} D_j(u, wu)^{-a_ji}`` at g."""
    c = u.cartan
    us, wu = rmul(u, i), w * u
    wus = rmul(wu, i)
    lhs = gen_minor(g, u, wu, i) * gen_minor(g, us, wus, i)
    rhs = gen_minor(g, us, wu, i) * gen_minor(g, u, wus, i)
    prod = g.domain.one
    for j in c.index_set:
        if j != i and c.a(j, i):
            prod *= gen_minor(g, u, wu, j) ** (-c.a(j, i))
    return lhs == rhs + prod


def generic_element(n: int):
    """A generic point of the big cell: lower unipotent times torus times upper unipotent, symbolic."""
    c = sl(n)
    word = longest_element(c).word
    m = len(word)
    K, gens = symbolic_field(2 * m + n - 1, "g")
    ys = [y_elem(n, i, gens[k], K) for k, i in enumerate(word)]
    xs = [x_elem(n, i, gens[m + k], K) for k, i in enumerate(word)]
    diag = [gens[2 * m + k] for k in range(n - 1)]
    entries = []
    prev = K.one
    for k in range(n):
        cur = diag[k] if k < n - 1 else K.one
        entries.append(cur / prev)
        prev = cur
    H = DomainMatrix([[entries[r] if r == col else K.zero for col in range(n)] for r in range(n)], (n, n), K)
    return _product(n, K, ys + [H] + xs)


def weight_leq(n: int, lo: Sequence[int], hi: Sequence[int]) -> bool:
    """``hi - lo`` is a nonnegative combination of simple roots (weights given as subsets of equal size)."""
    e = [(1 if x in hi else 0) - (1 if x in lo else 0) for x in range(1, n + 1)]
    total = 0
    for k in range(n - 1):
        total += e[k]
        if total < 0:
            return False
    return True


def support_scan(w: WeylElement, chart: Sequence[int] | None = None) -> dict:
    """Minors ``Delta_{u lambda, mu}`` with ``mu`` not above ``wu lambda`` vanish on the cell (wu reduced)."""
    c = w.cartan
    n = c.rank + 1
    chart = default_chart_word(w) if chart is None else tuple(chart)
    K, gens, g = symbolic_chart(n, chart)
    out = {"checked": 0, "failures": []}
    for u in elements(c):
        wu = w * u
        if wu.length != w.length + u.length:
            continue
        for i in c.index_set:
            rows = index_set(u, i)
            top = index_set(wu, i)
            for cols in {index_set(v, i) for v in elements(c)}:
                if weight_leq(n, top, cols):
                    continue
                out["checked"] += 1
                if minor(g, rows, cols):
                    out["failures"].append({"u": list(u.word), "i": i, "cols": list(cols)})
    return out


__all__ = [
    "CellError", "Counterexample", "UndefinedValuation", "cell_element", "chart_point",
    "chi_trop_nonneg", "combinatorial_bz", "conjecture_edge_scan", "default_chart_word",
    "delta_new", "delta_new_at", "eta", "eta_inv", "gamma_w", "gen_minor", "generic_element",
    "index_set", "iota", "lusztig_of_chart", "m_gamma", "minor", "new_row_set", "oracle_bz",
    "permutation", "plucker_identity_check", "s_bar", "subset_to_weight", "support_scan",
    "symbolic_chart", "t_field", "theorem_b_check", "unit_upper_factor", "valuation",
    "vanishing_scan", "w_rep", "weight_leq", "weight_to_subset", "x_elem", "y_elem",
]
