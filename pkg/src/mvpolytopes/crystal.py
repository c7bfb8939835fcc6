"""Bicrystal structure on MV polytopes and Saito reflections.

Crystal elements are the polytopes themselves; the crystal zero is ``BOTTOM``.
"""

from __future__ import annotations

import functools
from typing import Sequence

from .polytope import (
    InvariantFailure,
    MVPolytope,
    bz_from_lusztig,
    lusztig_from_bz,
    point_polytope,
)
from .weyl import (
    CartanData,
    Vector,
    WeylElement,
    elements,
    lmul,
    longest_element,
    pair,
    rmul,
    star,
)


class _Bottom:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __bool__(self):
        return False


BOTTOM = _Bottom()


@functools.lru_cache(maxsize=None)
def word_starting_with(c: CartanData, j: int) -> tuple[int, ...]:
    """A reduced word of w0 whose first letter is j."""
    return (j,) + lmul(j, longest_element(c)).word


@functools.lru_cache(maxsize=None)
def word_ending_with(c: CartanData, j: int) -> tuple[int, ...]:
    """A reduced word of w0 whose last letter is j."""
    return rmul(longest_element(c), j).word + (j,)


def _rebuild(P: MVPolytope, word, n) -> MVPolytope:
    return MVPolytope(bz_from_lusztig(P.cartan, word, n))


def _check_shift(P: MVPolytope, Q: MVPolytope, j: int, k: int, top: bool):
    """Q must have the vertex data the crystal theorem prescribes for a shift by ``k alpha_j^vee``."""
    c = P.cartan
    delta = tuple(k * x for x in c.simple_coroot(j))
    w0 = longest_element(c)
    for w in elements(c):
        if top:
            if w == w0:
                want = tuple(a + b for a, b in zip(P.mu(w), delta))
            elif j not in w.left_descents():
                want = P.mu(w)
            else:
                continue
        else:
            if w.is_identity():
                want = P.mu(w)
            elif j in w.left_descents():
                want = tuple(a + b for a, b in zip(P.mu(w), delta))
            else:
                continue
        if Q.mu(w) != want:
            raise InvariantFailure(f"shifted polytope has mu_{w} = {Q.mu(w)}, expected {want}")


def _shift_bottom(P: MVPolytope, j: int, k: int):
    word = word_starting_with(P.cartan, j)
    n = list(lusztig_from_bz(P.bz, word).n)
    if n[0] + k < 0:
        return BOTTOM
    n[0] += k
    Q = _rebuild(P, word, n)
    _check_shift(P, Q, j, k, top=False)
    return Q


def _shift_top(P: MVPolytope, j: int, k: int):
    word = word_ending_with(P.cartan, star(P.cartan, j))
    n = list(lusztig_from_bz(P.bz, word).n)
    if n[-1] + k < 0:
        return BOTTOM
    n[-1] += k
    Q = _rebuild(P, word, n)
    _check_shift(P, Q, j, k, top=True)
    return Q


def f_op(P: MVPolytope, j: int, k: int = 1) -> MVPolytope:
    """``f_j^k``: move every vertex above the first j-edge by ``k alpha_j^vee``."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    return _shift_bottom(P, j, k)


def e_op(P: MVPolytope, j: int, k: int = 1):
    """``e_j^k``, or ``BOTTOM`` when it leaves the crystal."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    return _shift_bottom(P, j, -k)


def f_star(P: MVPolytope, j: int, k: int = 1) -> MVPolytope:
    if k < 0:
        raise ValueError("power must be nonnegative")
    return _shift_top(P, j, k)


def e_star(P: MVPolytope, j: int, k: int = 1):
    if k < 0:
        raise ValueError("power must be nonnegative")
    return _shift_top(P, j, -k)


def epsilon(P: MVPolytope, j: int) -> int:
    return lusztig_from_bz(P.bz, word_starting_with(P.cartan, j)).n[0]


def epsilon_star(P: MVPolytope, j: int) -> int:
    return lusztig_from_bz(P.bz, word_ending_with(P.cartan, star(P.cartan, j))).n[-1]


def wt(P: MVPolytope) -> Vector:
    return tuple(-x for x in P.mu(longest_element(P.cartan)))


def phi(P: MVPolytope, j: int) -> int:
    return epsilon(P, j) + pair(wt(P), P.cartan.simple_root(j))


def phi_star(P: MVPolytope, j: int) -> int:
    return epsilon_star(P, j) + pair(wt(P), P.cartan.simple_root(j))


def _power(x: int, what: str) -> int:
    if x < 0:
        raise InvariantFailure(f"{what} is negative ({x}) where a Saito reflection needs it")
    return x


def saito(P: MVPolytope, j: int) -> MVPolytope:
    """``sigma_j``."""
    a = e_op(P, j, epsilon(P, j))
    k = _power(phi_star(a, j), "phi*")
    b = e_star(a, j, epsilon_star(a, j))
    return f_op(b, j, k)


def saito_star(P: MVPolytope, j: int) -> MVPolytope:
    """``sigma*_j``."""
    a = e_star(P, j, epsilon_star(P, j))
    k = _power(phi(a, j), "phi")
    b = e_op(a, j, epsilon(a, j))
    return f_star(b, j, k)


def saito_word(P: MVPolytope, word: Sequence[int]) -> MVPolytope:
    """``sigma_{i_1} ... sigma_{i_m}`` applied to P, so the last letter acts first."""
    for i in reversed(tuple(word)):
        P = saito(P, i)
    return P


def saito_star_word(P: MVPolytope, word: Sequence[int]) -> MVPolytope:
    for i in reversed(tuple(word)):
        P = saito_star(P, i)
    return P


def sigma(P: MVPolytope, w: WeylElement) -> MVPolytope:
    return saito_word(P, w.word)


def mu_via_saito(P: MVPolytope, w: WeylElement) -> Vector:
    """``w . wt(sigma_{w^-1}(P)) - wt(P)``."""
    top = wt(sigma(P, w.inverse()))
    moved = w.act_coweight(top)
    base = wt(P)
    return tuple(a - b for a, b in zip(moved, base))


def b0(c: CartanData) -> MVPolytope:
    return point_polytope(c)


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def crystal_axioms_check(P: MVPolytope) -> list[dict]:
    """Both crystal structures at P: inverse pairs, weight and string-length shifts, and ``epsilon`` as a maximum."""
    c = P.cartan
    out = []
    ops = (
        ("", f_op, e_op, epsilon, phi),
        ("*", f_star, e_star, epsilon_star, phi_star),
    )
    for j in c.index_set:
        aj = c.simple_coroot(j)
        for tag, f, e, eps, ph in ops:
            Q = f(P, j)
            if e(Q, j) != P:
                out.append({"op": f"e{tag}f{tag}", "j": j})
            if wt(Q) != _sub(wt(P), aj):
                out.append({"op": f"wt f{tag}", "j": j})
            if eps(Q, j) != eps(P, j) + 1 or ph(Q, j) != ph(P, j) - 1:
                out.append({"op": f"eps/phi f{tag}", "j": j})
            R = e(P, j)
            if R is BOTTOM:
                if eps(P, j) != 0:
                    out.append({"op": f"e{tag} bottom", "j": j})
            else:
                if f(R, j) != P or wt(R) != tuple(a + b for a, b in zip(wt(P), aj)):
                    out.append({"op": f"f{tag}e{tag}", "j": j})
            k = eps(P, j)
            if e(P, j, k) is BOTTOM or e(P, j, k + 1) is not BOTTOM:
                out.append({"op": f"eps{tag} maximal", "j": j})
    w0 = longest_element(c)
    if wt(P) != tuple(-x for x in P.mu(w0)) or any(x > 0 for x in wt(P)):
        out.append({"op": "wt in -Q+"})
    return out


def saito_shift_check(P: MVPolytope, word: Sequence[int]) -> list[dict]:
    """Lusztig data rotate under ``sigma_{i_1}`` and ``sigma*_{i_m*}``."""
    c = P.cartan
    word = tuple(word)
    n = lusztig_from_bz(P.bz, word).n
    out = []
    first, last = word[0], word[-1]
    left = word[1:] + (star(c, first),)
    got = lusztig_from_bz(saito(P, first).bz, left).n
    if got != n[1:] + (0,):
        out.append({"op": "sigma", "word": list(word), "got": list(got)})
    right = (star(c, last),) + word[:-1]
    got = lusztig_from_bz(saito_star(P, star(c, last)).bz, right).n
    if got != (0,) + n[:-1]:
        out.append({"op": "sigma*", "word": list(word), "got": list(got)})
    return out


def vertex_formula_check(P: MVPolytope) -> list[dict]:
    """``mu_w = w . wt(sigma_{w^-1} P) - wt(P)`` and ``mu_{w s_j} - mu_w = eps_j(sigma_{w^-1} P) w alpha_j^vee``."""
    c = P.cartan
    out = []
    for w in elements(c):
        if mu_via_saito(P, w) != P.mu(w):
            out.append({"w": list(w.word), "mu": list(P.mu(w)), "saito": list(mu_via_saito(P, w))})
        S = sigma(P, w.inverse())
        for j in c.index_set:
            if j in w.right_descents():
                continue
            edge = _sub(P.mu(rmul(w, j)), P.mu(w))
            want = tuple(epsilon(S, j) * x for x in w.act_coweight(c.simple_coroot(j)))
            if edge != want:
                out.append({"w": list(w.word), "j": j, "edge": list(edge), "expected": list(want)})
    return out


__all__ = [
    "BOTTOM", "b0", "crystal_axioms_check", "e_op", "e_star", "epsilon", "epsilon_star", "f_op", "f_star",
    "mu_via_saito", "phi", "phi_star", "saito", "saito_star", "saito_star_word",
    "saito_shift_check", "saito_word", "sigma", "vertex_formula_check", "word_ending_with", "word_starting_with", "wt",
]
