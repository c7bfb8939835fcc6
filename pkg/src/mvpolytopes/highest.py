"""Polytopes whose highest vertex is already reached at ``mu_w``.

Membership, forced zeros of Lusztig data, the vertex collapse ``mu_v = mu_{v_w}``
and the inequalities and partitions that go with them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .crystal import b0, epsilon_star, saito_star, sigma
from .polytope import MVPolytope, edge_value, lusztig_from_bz, polytope_from_lusztig
from .weyl import (
    CartanData,
    WeylElement,
    bruhat_leq,
    elements,
    lmul,
    longest_element,
    reduced_word_through,
    reduced_words,
    rightmost_subword,
    rmul,
    star,
    v_w,
    weak_leq,
    word_to_element,
)


@dataclass
class Report:
    check: str
    w: WeylElement | None
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "w": list(self.w.word) if self.w is not None else None,
            "passed": self.passed,
            "violations": self.violations,
        }


def _vec(v):
    return list(v)


def is_in_Pw(P: MVPolytope, w: WeylElement) -> bool:
    return P.mu(w) == P.mu(longest_element(P.cartan))


def _require(P: MVPolytope, w: WeylElement):
    if not is_in_Pw(P, w):
        raise ValueError(f"polytope is not in P_{w}")


def generate_Pw(w: WeylElement, word: Sequence[int] | None = None, bound: int = 2) -> Iterator[MVPolytope]:
    """Every polytope whose Lusztig data on ``word`` is supported on the w-prefix, with entries at most ``bound``.

    The default word is a reduced word of w followed by one of ``w^-1 w0``.
    """
    c = w.cartan
    word = reduced_word_through(w) if word is None else tuple(word)
    k = w.length
    if word_to_element(c, word[:k]) != w or len(word[:k]) != k:
        raise ValueError(f"the first {k} letters of {word} do not spell a reduced word of {w}")
    tail = (0,) * (len(word) - k)
    for head in itertools.product(range(bound + 1), repeat=k):
        yield polytope_from_lusztig(c, word, head + tail)


def sample_Pw(w: WeylElement, rng: random.Random, bound: int = 3, word: Sequence[int] | None = None) -> MVPolytope:
    c = w.cartan
    word = reduced_word_through(w) if word is None else tuple(word)
    k = w.length
    n = tuple(rng.randint(0, bound) for _ in range(k)) + (0,) * (len(word) - k)
    return polytope_from_lusztig(c, word, n)


def _words_of_w0(c: CartanData, rng: random.Random | None, samples: int):
    words = list(reduced_words(longest_element(c), allow_large=True))
    if c.rank <= 3 or rng is None or len(words) <= samples:
        return words
    return rng.sample(words, samples)


def zero_pattern_check(P: MVPolytope, w: WeylElement, words=None, rng: random.Random | None = None, samples: int = 24) -> Report:
    """Lusztig data vanish on the rightmost subword for ``w^-1 w0`` in every reduced word of w0."""
    _require(P, w)
    c = P.cartan
    rest = w.inverse() * longest_element(c)
    rep = Report("zeros", w)
    for word in words if words is not None else _words_of_w0(c, rng, samples):
        n = lusztig_from_bz(P.bz, word).n
        for k in rightmost_subword(word, rest):
            if n[k - 1] != 0:
                rep.violations.append({"word": list(word), "position": k, "value": n[k - 1]})
    return rep


def theorem_a_check(P: MVPolytope, w: WeylElement) -> Report:
    """``mu_v = mu_{v_w}`` for all v, and every vertex is some ``mu_u`` with u below w."""
    _require(P, w)
    c = P.cartan
    rep = Report("theorem-a", w)
    for v in elements(c):
        u = v_w(v, w)
        if P.mu(v) != P.mu(u):
            rep.violations.append({"v": list(v.word), "v_w": list(u.word), "mu_v": _vec(P.mu(v)), "mu_v_w": _vec(P.mu(u))})
    below = {P.mu(u) for u in elements(c) if bruhat_leq(u, w)}
    for v in elements(c):
        if P.mu(v) not in below:
            rep.violations.append({"v": list(v.word), "mu_v": _vec(P.mu(v)), "reason": "vertex outside conv{mu_u : u <= w}"})
    return rep


def generalized_diagonal_check(P: MVPolytope) -> Report:
    """``<mu_w - mu_{s_j w}, omega_k> <= 0`` whenever ``s_j w < w`` and ``k != j``."""
    c = P.cartan
    rep = Report("diagonals", None)
    for w in elements(c):
        for j in w.left_descents():
            diff = [a - b for a, b in zip(P.mu(w), P.mu(lmul(j, w)))]
            for k in c.index_set:
                # coweights are in coroot coordinates, so pairing with omega_k reads coordinate k
                if k != j and diff[k - 1] > 0:
                    rep.violations.append({"w": list(w.word), "j": j, "k": k, "pairing": diff[k - 1]})
    return rep


def s_jw_check(P: MVPolytope, w: WeylElement) -> Report:
    """``mu_{s_j w} = mu_{w0 s_{j*}}`` for each left descent j of w."""
    _require(P, w)
    c = P.cartan
    w0 = longest_element(c)
    rep = Report("s_jw", w)
    for j in sorted(w.left_descents()):
        a, b = lmul(j, w), rmul(w0, star(c, j))
        if P.mu(a) != P.mu(b):
            rep.violations.append({"j": j, "s_jw": list(a.word), "w0s_j*": list(b.word)})
    return rep


def edge_equality_check(P: MVPolytope, w: WeylElement, words=None) -> Report:
    """Along every reduced word of ``w^-1 w0`` each edge leaving ``mu_w`` has length zero."""
    c = P.cartan
    rest = w.inverse() * longest_element(c)
    rep = Report("edge-equalities", w)
    for word in words if words is not None else reduced_words(rest, allow_large=True):
        x = w
        for i in word:
            if edge_value(P.bz, x, i) != 0:
                rep.violations.append({"word": list(word), "at": list(x.word), "i": i, "value": edge_value(P.bz, x, i)})
            x = rmul(x, i)
    return rep


def membership_equivalence_check(P: MVPolytope, w: WeylElement) -> Report:
    """Three characterizations of ``P in P_w`` agree: the vertex condition, vanishing starred
    string lengths along a reduced word of ``w^-1 w0``, and ``sigma_{w^-1} P = b0``."""
    c = P.cartan
    rest = (w.inverse() * longest_element(c)).word
    m = len(rest)
    by_vertex = is_in_Pw(P, w)
    by_strings = True
    for k in range(m, 0, -1):
        # sigma* along s_{i*_{k+1}} ... s_{i*_m}, the last letter acting first
        Q = P
        for i in reversed(rest[k:]):
            Q = saito_star(Q, star(c, i))
        if epsilon_star(Q, star(c, rest[k - 1])) != 0:
            by_strings = False
            break
    by_saito = sigma(P, w.inverse()) == b0(c)
    rep = Report("membership", w)
    if not by_vertex == by_strings == by_saito:
        rep.violations.append({"vertex": by_vertex, "strings": by_strings, "saito": by_saito})
    return rep


def transport_check(P: MVPolytope, w: WeylElement) -> Report:
    """``sigma*_{j*}`` sends ``P_w`` to ``P_{s_{j*} w}`` when ``s_j`` is a right descent of ``w^-1 w0``, else into ``P_w``."""
    _require(P, w)
    c = P.cartan
    rest = w.inverse() * longest_element(c)
    rep = Report("transport", w)
    for j in c.index_set:
        js = star(c, j)
        Q = saito_star(P, js)
        target = lmul(js, w) if j in rest.right_descents() else w
        if not is_in_Pw(Q, target):
            rep.violations.append({"j": j, "target": list(target.word)})
    return rep


def fan_partition(c: CartanData, w: WeylElement) -> dict[WeylElement, list[WeylElement]]:
    """Group W by ``u -> u_w``; keys are the elements below w."""
    classes: dict[WeylElement, list[WeylElement]] = {}
    for u in elements(c):
        classes.setdefault(v_w(u, w), []).append(u)
    return classes


def coarsening_check(P: MVPolytope, w: WeylElement) -> bool:
    """Whether equal ``u_w`` always means equal vertices."""
    for members in fan_partition(P.cartan, w).values():
        if len({P.mu(u) for u in members}) != 1:
            return False
    return True


def weak_monotonicity_check(P: MVPolytope) -> Report:
    """``mu_v - mu_u`` is a nonnegative combination of simple coroots when ``u <=_R v``."""
    rep = Report("weak-monotone", None)
    els = elements(P.cartan)
    for u in els:
        for v in els:
            if weak_leq(u, v, "R") and any(a < b for a, b in zip(P.mu(v), P.mu(u))):
                rep.violations.append({"u": list(u.word), "v": list(v.word)})
    return rep


def certificate(P: MVPolytope, w: WeylElement) -> dict:
    """The collapse map ``v -> v_w`` with the zero positions on each reduced word of w0."""
    _require(P, w)
    c = P.cartan
    rest = w.inverse() * longest_element(c)
    return {
        "w": list(w.word),
        "vertex_map": {repr(v): repr(v_w(v, w)) for v in elements(c)},
        "zero_positions": {
            ",".join(map(str, word)): rightmost_subword(word, rest)
            for word in reduced_words(longest_element(c), allow_large=True)
        },
    }


__all__ = [
    "Report", "certificate", "coarsening_check", "edge_equality_check", "fan_partition",
    "generalized_diagonal_check", "generate_Pw", "is_in_Pw", "membership_equivalence_check",
    "s_jw_check", "sample_Pw", "theorem_a_check", "transport_check", "weak_monotonicity_check", "zero_pattern_check",
]
