"""Root data, Weyl group arithmetic and the Coxeter combinatorics used by MV polytopes.

Conventions
-----------
* ``cartan[i][j] = <alpha_i^vee, alpha_j>`` (0-based in code, 1-based in words).
* Weights are integer vectors in the fundamental-weight basis, so the simple
  root ``alpha_j`` is column ``j`` of the Cartan matrix.
* Coweights (vertex data of MV polytopes) are integer vectors in the simple
  coroot basis.  Since ``<alpha_i^vee, omega_j> = delta_ij`` the pairing of a
  coweight with a weight is the plain dot product.
* Words are tuples of 1-based generator indices, read left to right as the
  product ``s_{i_1} s_{i_2} ... s_{i_k}``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

DEFAULT_RANK_CAP = 4


class UnsupportedType(ValueError):
    pass


class RankCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class CartanData:
    kind: str
    rank: int
    cartan: Matrix

    def __post_init__(self):
        n = self.rank
        a = self.cartan
        if len(a) != n or any(len(row) != n for row in a):
            raise ValueError("cartan matrix must be rank x rank")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError("diagonal entries must be 2")
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise ValueError("off-diagonal entries must be <= 0")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError("a_ij = 0 must imply a_ji = 0")
                if a[i][j] * a[j][i] not in (0, 1, 2):
                    raise UnsupportedType(
                        "G2 tropical Plücker relations out of scope "
                        f"(a_{i + 1}{j + 1} * a_{j + 1}{i + 1} = {a[i][j] * a[j][i]})"
                    )

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def index_set(self) -> range:
        return range(1, self.rank + 1)

    def a(self, i: int, j: int) -> int:
        """Cartan entry ``a_ij`` with 1-based indices."""
        return self.cartan[i - 1][j - 1]

    def simple_root(self, j: int) -> Vector:
        return tuple(self.cartan[k][j - 1] for k in range(self.rank))

    def simple_coroot(self, j: int) -> Vector:
        return tuple(int(k == j - 1) for k in range(self.rank))

    def fundamental_weight(self, i: int) -> Vector:
        return tuple(int(k == i - 1) for k in range(self.rank))

    def bond(self, i: int, j: int) -> int:
        """Order m_ij of s_i s_j."""
        if i == j:
            return 1
        return {0: 2, 1: 3, 2: 4}[self.a(i, j) * self.a(j, i)]

    def to_json(self) -> dict:
        return {"kind": self.kind, "rank": self.rank}


def pair(coweight: Sequence[int], weight: Sequence[int]) -> int:
    """``<coweight, weight>`` for a coweight in coroot coordinates and a weight in omega coordinates."""
    return sum(x * y for x, y in zip(coweight, weight))


def _cartan_matrix(kind: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if kind == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif kind == "B":
        if n < 2:
            raise UnsupportedType("B_n needs rank >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif kind == "C":
        if n < 2:
            raise UnsupportedType("C_n needs rank >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif kind == "D":
        if n < 4:
            raise UnsupportedType("D_n needs rank >= 4")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif kind == "E":
        if n not in (6, 7, 8):
            raise UnsupportedType("E_n needs rank 6, 7 or 8")
        # Bourbaki labelling: 1-3-4-5-6(-7-8), 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif kind == "F":
        if n != 4:
            raise UnsupportedType("F_n needs rank 4")
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif kind == "G":
        raise UnsupportedType("G2 tropical Plücker relations out of scope")
    else:
        raise UnsupportedType(f"unknown Cartan type {kind!r}")
    return a


@functools.lru_cache(maxsize=None)
def build_cartan(kind: str, rank: int | None = None) -> CartanData:
    """Standard Cartan data; ``build_cartan("B2")`` and ``build_cartan("B", 2)`` agree.

    The B2 orientation is a_12 = -1, a_21 = -2.
    """
    if rank is None:
        label = kind.strip().upper()
        if len(label) < 2 or not label[1:].isdigit():
            raise UnsupportedType(f"cannot parse Cartan type {kind!r}")
        kind, rank = label[0], int(label[1:])
    kind = kind.upper()
    if rank < 1:
        raise UnsupportedType("rank must be >= 1")
    mat = _cartan_matrix(kind, rank)
    return CartanData(kind, rank, tuple(tuple(row) for row in mat))


def cartan_from_json(obj: dict) -> CartanData:
    return build_cartan(str(obj["kind"]), int(obj["rank"]))


def reflect(c: CartanData, i: int, beta: Sequence[int]) -> Vector:
    """``s_i(beta) = beta - <alpha_i^vee, beta> alpha_i`` for a weight in omega coordinates."""
    k = beta[i - 1]
    if k == 0:
        return tuple(beta)
    return tuple(b - k * c.cartan[r][i - 1] for r, b in enumerate(beta))


def reflect_coweight(c: CartanData, i: int, beta: Sequence[int]) -> Vector:
    """``s_i(beta) = beta - <beta, alpha_i> alpha_i^vee`` for a coweight in coroot coordinates."""
    k = sum(beta[r] * c.cartan[r][i - 1] for r in range(c.rank))
    if k == 0:
        return tuple(beta)
    out = list(beta)
    out[i - 1] -= k
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _generator_matrix(c: CartanData, i: int) -> Matrix:
    n = c.rank
    cols = [reflect(c, i, c.fundamental_weight(j)) for j in range(1, n + 1)]
    return tuple(tuple(cols[col][row] for col in range(n)) for row in range(n))


def _matmul(x: Matrix, y: Matrix) -> Matrix:
    n = len(x)
    return tuple(
        tuple(sum(x[r][k] * y[k][col] for k in range(n)) for col in range(n)) for r in range(n)
    )


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(r == col) for col in range(n)) for r in range(n))


def _apply(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in m)


def _descent_word(c: CartanData, rho_image: Vector) -> tuple[int, ...]:
    # i is a left descent of w iff <alpha_i^vee, w rho> < 0
    word = []
    v = rho_image
    while True:
        for i in range(c.rank):
            if v[i] < 0:
                word.append(i + 1)
                v = reflect(c, i + 1, v)
                break
        else:
            return tuple(word)


@dataclass(frozen=True)
class WeylElement:
    """An element of W, identified by its action matrix on the weight lattice."""

    cartan: CartanData
    action: Matrix
    word: tuple[int, ...] = field(compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if other.cartan != self.cartan:
            raise ValueError("elements of different Weyl groups")
        return _from_action(self.cartan, _matmul(self.action, other.action))

    def inverse(self) -> "WeylElement":
        return word_to_element(self.cartan, self.word[::-1])

    def is_identity(self) -> bool:
        return not self.word

    def act(self, weight: Sequence[int]) -> Vector:
        return _apply(self.action, weight)

    def act_coweight(self, coweight: Sequence[int]) -> Vector:
        v = tuple(coweight)
        for i in reversed(self.word):
            v = reflect_coweight(self.cartan, i, v)
        return v

    def left_descents(self) -> frozenset[int]:
        v = self.act((1,) * self.cartan.rank)
        return frozenset(i + 1 for i, x in enumerate(v) if x < 0)

    def right_descents(self) -> frozenset[int]:
        return self.inverse().left_descents()

    def __repr__(self) -> str:
        if not self.word:
            return "e"
        return "".join(f"s{i}" for i in self.word)

    def to_json(self) -> dict:
        return {"word": list(self.word)}


def _from_action(c: CartanData, action: Matrix) -> WeylElement:
    rho = _apply(action, (1,) * c.rank)
    return WeylElement(c, action, _descent_word(c, rho))


@functools.lru_cache(maxsize=200_000)
def word_to_element(c: CartanData, word: tuple[int, ...] | Sequence[int]) -> WeylElement:
    word = tuple(word)
    m = _identity(c.rank)
    for i in word:
        if not 1 <= i <= c.rank:
            raise ValueError(f"generator index {i} outside 1..{c.rank}")
        m = _matmul(m, _generator_matrix(c, i))
    return _from_action(c, m)


def identity(c: CartanData) -> WeylElement:
    return word_to_element(c, ())


def simple_reflection(c: CartanData, i: int) -> WeylElement:
    return word_to_element(c, (i,))


def element_from_json(c: CartanData, obj) -> WeylElement:
    word = obj["word"] if isinstance(obj, dict) else obj
    return word_to_element(c, tuple(int(x) for x in word))


def length(w: WeylElement) -> int:
    return w.length


def is_reduced(c: CartanData, word: Sequence[int]) -> bool:
    return len(word) == word_to_element(c, tuple(word)).length


def descents(w: WeylElement, side: str = "L") -> frozenset[int]:
    if side.upper() == "L":
        return w.left_descents()
    if side.upper() == "R":
        return w.right_descents()
    raise ValueError("side must be 'L' or 'R'")


@functools.lru_cache(maxsize=None)
def lmul(i: int, w: WeylElement) -> WeylElement:
    """``s_i w``."""
    return simple_reflection(w.cartan, i) * w


@functools.lru_cache(maxsize=None)
def rmul(w: WeylElement, i: int) -> WeylElement:
    """``w s_i``."""
    return w * simple_reflection(w.cartan, i)


@functools.lru_cache(maxsize=None)
def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Strong Bruhat order, by the lifting-property recursion."""
    if u.length > w.length:
        return False
    if w.is_identity():
        return u.is_identity()
    if u.is_identity():
        return True
    i = min(w.left_descents())
    if i in u.left_descents():
        return bruhat_leq(lmul(i, u), lmul(i, w))
    return bruhat_leq(u, lmul(i, w))


def weak_leq(u: WeylElement, w: WeylElement, side: str = "R") -> bool:
    """``u <=_R w`` iff ``l(u) + l(u^-1 w) = l(w)``; the left order uses ``l(w u^-1) + l(u)``."""
    if side.upper() == "R":
        return u.length + (u.inverse() * w).length == w.length
    if side.upper() == "L":
        return (w * u.inverse()).length + u.length == w.length
    raise ValueError("side must be 'L' or 'R'")


@functools.lru_cache(maxsize=None)
def longest_element(c: CartanData) -> WeylElement:
    x = identity(c)
    while True:
        up = [i for i in c.index_set if i not in x.right_descents()]
        if not up:
            return x
        x = rmul(x, up[0])


@functools.lru_cache(maxsize=None)
def star(c: CartanData, i: int) -> int:
    """The index ``i*`` with ``s_{i*} = w0 s_i w0``."""
    w0 = longest_element(c)
    target = w0 * simple_reflection(c, i) * w0
    for j in c.index_set:
        if simple_reflection(c, j) == target:
            return j
    raise AssertionError("w0 s_i w0 is not simple")


def star_element(w: WeylElement) -> WeylElement:
    return word_to_element(w.cartan, tuple(star(w.cartan, i) for i in w.word))


def demazure(u: WeylElement, w: WeylElement) -> WeylElement:
    """Demazure product ``u * w`` with ``s_i * x = max(x, s_i x)``."""
    x = w
    for i in reversed(u.word):
        if i not in x.left_descents():
            x = lmul(i, x)
    return x


def v_w(v: WeylElement, w: WeylElement) -> WeylElement:
    """The longest element of ``[e, v]_R`` meet ``[e, w]``, via ``(v w0)((w0 v^-1) * w)``."""
    w0 = longest_element(v.cartan)
    return (v * w0) * demazure(w0 * v.inverse(), w)


def right_weak_interval(v: WeylElement) -> set[WeylElement]:
    """All prefixes ``x <=_R v``."""
    out = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for x in frontier:
            for i in x.right_descents():
                y = rmul(x, i)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def v_w_bruteforce(v: WeylElement, w: WeylElement) -> WeylElement:
    """Same as :func:`v_w`, by scanning the interval; raises if the maximum is not unique."""
    cands = [x for x in right_weak_interval(v) if bruhat_leq(x, w)]
    top = max(x.length for x in cands)
    best = [x for x in cands if x.length == top]
    if len(best) != 1:
        raise AssertionError(f"longest element of [e,{v}]_R meet [e,{w}] is not unique: {best}")
    return best[0]


def _check_rank(c: CartanData, allow_large: bool):
    if c.rank > DEFAULT_RANK_CAP and not allow_large:
        raise RankCapExceeded(
            f"rank {c.rank} exceeds the enumeration cap {DEFAULT_RANK_CAP}; pass allow_large=True"
        )


def interval(w: WeylElement, allow_large: bool = False) -> set[WeylElement]:
    """All ``x <= w``: products of subwords of one reduced word of ``w``."""
    c = w.cartan
    _check_rank(c, allow_large)
    out = {identity(c)}
    for i in w.word:
        s = simple_reflection(c, i)
        out |= {x * s for x in out}
    return out


@functools.lru_cache(maxsize=None)
def _elements(c: CartanData) -> tuple[WeylElement, ...]:
    return tuple(sorted(interval(longest_element(c), allow_large=True), key=sort_key))


def elements(c: CartanData, allow_large: bool = False) -> tuple[WeylElement, ...]:
    """All of W, sorted by (length, word)."""
    _check_rank(c, allow_large)
    return _elements(c)


def sort_key(w: WeylElement):
    return (w.length, w.word)


def reduced_words(w: WeylElement, allow_large: bool = False) -> Iterator[tuple[int, ...]]:
    """All reduced words of ``w``, in lexicographic order."""
    _check_rank(w.cartan, allow_large)
    yield from _reduced_words(w)


@functools.lru_cache(maxsize=4096)
def _reduced_words_cached(w: WeylElement) -> tuple[tuple[int, ...], ...]:
    if w.is_identity():
        return ((),)
    out = []
    for i in sorted(w.left_descents()):
        for rest in _reduced_words_cached(lmul(i, w)):
            out.append((i,) + rest)
    return tuple(out)


def _reduced_words(w: WeylElement) -> Iterator[tuple[int, ...]]:
    yield from _reduced_words_cached(w)


def braid_neighbors(c: CartanData, word: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """Words reachable by one commutation or one rank-2 braid move, with the 0-based start position."""
    return list(_braid_neighbors(c, tuple(word)))


@functools.lru_cache(maxsize=None)
def _braid_neighbors(c: CartanData, word: tuple[int, ...]) -> tuple[tuple[int, tuple[int, ...]], ...]:
    out = []
    for p in range(len(word) - 1):
        i, j = word[p], word[p + 1]
        if i == j:
            continue
        m = c.bond(i, j)
        if p + m > len(word):
            continue
        seg = word[p:p + m]
        alt = tuple(i if k % 2 == 0 else j for k in range(m))
        if seg == alt:
            swapped = tuple(j if k % 2 == 0 else i for k in range(m))
            out.append((p, word[:p] + swapped + word[p + m:]))
    return tuple(out)


def rightmost_subword(word_of_w0: Sequence[int], w: WeylElement) -> list[int]:
    """1-based positions of the reverse-lexicographically first reduced subword for ``w``.

    Scans right to left, taking position k whenever ``s_{i_k}`` is a right
    descent of what is still to be produced.
    """
    word = tuple(word_of_w0)
    rest = w
    picked = []
    for k in range(len(word), 0, -1):
        if rest.is_identity():
            break
        i = word[k - 1]
        if i in rest.right_descents():
            picked.append(k)
            rest = rmul(rest, i)
    if not rest.is_identity():
        raise ValueError(f"{w} is not a subword of {word}")
    return sorted(picked)


def rightmost_subword_bruteforce(word_of_w0: Sequence[int], w: WeylElement) -> list[int]:
    """Literal definition: scan index sets of size l(w) in reverse-lexicographic order."""
    word = tuple(word_of_w0)
    c = w.cartan
    m, k = len(word), w.length
    combos = list(itertools.combinations(range(1, m + 1), k))
    combos.sort(key=lambda s: tuple(reversed(s)), reverse=True)
    for positions in combos:
        if word_to_element(c, tuple(word[p - 1] for p in positions)) == w:
            return list(positions)
    raise ValueError(f"{w} is not a subword of {word}")


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    return tuple(int(x) for x in text.split(","))


def reduced_word_through(w: WeylElement) -> tuple[int, ...]:
    """A reduced word of w0 whose first l(w) letters are ``w.word``."""
    w0 = longest_element(w.cartan)
    rest = w.inverse() * w0
    return w.word + rest.word

