"""MV polytopes as BZ data, vertex data and Lusztig data.

A polytope is stored as its hyperplane data ``M_gamma`` (a :class:`BZData`)
keyed by chamber weight vectors.  Vertices ``mu_w`` are coweights in simple
coroot coordinates and are derived on demand.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .weyl import (
    CartanData,
    Vector,
    WeylElement,
    braid_neighbors,
    cartan_from_json,
    elements,
    identity,
    is_reduced,
    longest_element,
    pair,
    rmul,
    word_to_element,
)


class InvalidPolytope(ValueError):
    """Input data does not describe a GGMS / MV polytope."""


class InvariantFailure(AssertionError):
    """A computation contradicted a theorem it relies on."""


@dataclass(frozen=True)
class ChamberWeight:
    weight: Vector
    index: int
    representative: WeylElement = field(compare=False)


@functools.lru_cache(maxsize=None)
def _chamber_table(c: CartanData) -> dict[Vector, ChamberWeight]:
    table: dict[Vector, ChamberWeight] = {}
    for v in elements(c):
        for i in c.index_set:
            gamma = v.act(c.fundamental_weight(i))
            if gamma not in table:
                table[gamma] = ChamberWeight(gamma, i, v)
    return table


def chamber_weights(c: CartanData) -> list[ChamberWeight]:
    """The set of all ``v omega_i``, deduplicated by weight vector and sorted."""
    table = _chamber_table(c)
    return [table[g] for g in sorted(table)]


@functools.lru_cache(maxsize=None)
def chamber_weight(v: WeylElement, i: int) -> Vector:
    return v.act(v.cartan.fundamental_weight(i))


@dataclass(frozen=True, eq=False)
class BZData:
    """A total map from chamber weights to integers."""

    cartan: CartanData
    values: Mapping[Vector, int]

    def __post_init__(self):
        expected = set(_chamber_table(self.cartan))
        if set(self.values) != expected:
            missing = expected - set(self.values)
            extra = set(self.values) - expected
            raise InvalidPolytope(f"BZ data must cover exactly the chamber weights (missing {sorted(missing)[:3]}, extra {sorted(extra)[:3]})")

    def __getitem__(self, gamma: Sequence[int]) -> int:
        return self.values[tuple(gamma)]

    def at(self, v: WeylElement, i: int) -> int:
        """``M_{v omega_i}``."""
        return self.values[chamber_weight(v, i)]

    def items(self):
        return sorted(self.values.items())

    def __eq__(self, other):
        return isinstance(other, BZData) and self.cartan == other.cartan and dict(self.values) == dict(other.values)

    def __hash__(self):
        return hash((self.cartan, tuple(self.items())))

    def to_json(self) -> dict:
        return {
            "cartan": self.cartan.to_json(),
            "bz": [{"weight": list(g), "value": m} for g, m in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BZData":
        c = cartan_from_json(obj["cartan"])
        values = {tuple(int(x) for x in e["weight"]): int(e["value"]) for e in obj["bz"]}
        return cls(c, values)


def zero_datum(c: CartanData) -> BZData:
    return BZData(c, {g: 0 for g in _chamber_table(c)})


@dataclass(frozen=True)
class LusztigDatum:
    word: tuple[int, ...]
    n: tuple[int, ...]

    def __post_init__(self):
        if len(self.word) != len(self.n):
            raise ValueError("word and n must have equal length")
        if any(x < 0 for x in self.n):
            raise ValueError("Lusztig data must be nonnegative")

    def to_json(self) -> dict:
        return {"word": list(self.word), "n": list(self.n)}

    @classmethod
    def from_json(cls, obj: dict) -> "LusztigDatum":
        return cls(tuple(int(x) for x in obj["word"]), tuple(int(x) for x in obj["n"]))


# --- vertices <-> hyperplanes -------------------------------------------------


@functools.lru_cache(maxsize=None)
def _coroot_image(w: WeylElement, i: int) -> Vector:
    return w.act_coweight(w.cartan.simple_coroot(i))


def bz_to_vertices(bz: BZData) -> dict[WeylElement, Vector]:
    """``mu_w = sum_i M_{w omega_i} w alpha_i^vee``."""
    c = bz.cartan
    out = {}
    for w in elements(c):
        mu = [0] * c.rank
        for i in c.index_set:
            m = bz.at(w, i)
            if m:
                for k, x in enumerate(_coroot_image(w, i)):
                    mu[k] += m * x
        out[w] = tuple(mu)
    return out


def vertices_to_bz(c: CartanData, mu: Mapping[WeylElement, Sequence[int]]) -> BZData:
    """``M_{w omega_i} = <mu_w, w omega_i>``, after checking the family is GGMS."""
    ws = elements(c)
    if set(mu) != set(ws):
        raise InvalidPolytope("vertex data must be indexed by all of W")
    values: dict[Vector, int] = {}
    for w in ws:
        for i in c.index_set:
            g = chamber_weight(w, i)
            m = pair(mu[w], g)
            if values.setdefault(g, m) != m:
                raise InvalidPolytope(f"inconsistent hyperplane value at chamber weight {g}")
    # mu_w must minimise every w omega_i over the vertex set
    for w in ws:
        for i in c.index_set:
            g = chamber_weight(w, i)
            for v in ws:
                if pair(mu[v], g) < values[g]:
                    raise InvalidPolytope(f"mu_{v} lies below the hyperplane {g} of mu_{w}")
    return BZData(c, values)


@dataclass(frozen=True, eq=False)
class MVPolytope:
    """A polytope given by hyperplane data, with vertex data cached."""

    bz: BZData

    @property
    def cartan(self) -> CartanData:
        return self.bz.cartan

    @functools.cached_property
    def vertices(self) -> dict[WeylElement, Vector]:
        return bz_to_vertices(self.bz)

    def mu(self, w: WeylElement | Sequence[int]) -> Vector:
        if not isinstance(w, WeylElement):
            w = word_to_element(self.cartan, tuple(w))
        return self.vertices[w]

    def lusztig(self, word: Sequence[int]) -> tuple[int, ...]:
        return lusztig_from_bz(self.bz, word).n

    def __eq__(self, other):
        return isinstance(other, MVPolytope) and self.bz == other.bz

    def __hash__(self):
        return hash(self.bz)

    def __repr__(self):
        w0 = longest_element(self.cartan)
        return f"MVPolytope({self.cartan.label}, n{w0.word}={self.lusztig(w0.word)})"


# --- checks ---------------------------------------------------------------------


def edge_value(bz: BZData, w: WeylElement, i: int) -> int:
    """``M_{w s_i omega_i} + M_{w omega_i} + sum_{j != i} a_ji M_{w omega_j}`` (minus the edge length)."""
    c = bz.cartan
    total = bz.at(rmul(w, i), i) + bz.at(w, i)
    for j in c.index_set:
        if j != i:
            total += c.a(j, i) * bz.at(w, j)
    return total


def check_edge_inequalities(bz: BZData) -> list[dict]:
    out = []
    for w in elements(bz.cartan):
        for i in bz.cartan.index_set:
            val = edge_value(bz, w, i)
            if val > 0:
                out.append({"relation": "edge", "w": list(w.word), "i": i, "value": val})
    return out


def _plucker_terms(c: CartanData, M, i: int, j: int):
    """Left side and min-candidates of every tropical Plücker relation on an (i, j) face.

    ``M(word, k)`` returns ``M_{w x omega_k}`` where ``x`` is the product of ``word``.
    """
    aij, aji = c.a(i, j), c.a(j, i)
    if aij == 0:
        return []
    if aij == -1 and aji == -1:
        return [(
            M((i,), i) + M((j,), j),
            [M((), i) + M((i, j), j), M((j, i), i) + M((), j)],
        )]
    if aij == -1 and aji == -2:
        return [
            (
                M((j,), j) + M((i, j), j) + M((i,), i),
                [
                    2 * M((i, j), j) + M((), i),
                    2 * M((), j) + M((i, j, i), i),
                    # M_{w omega_j}, not M_{omega_j}, keeps the relation translation invariant
                    M((), j) + M((j, i, j), j) + M((i,), i),
                ],
            ),
            (
                M((j, i), i) + 2 * M((i, j), j) + M((i,), i),
                [
                    2 * M((), j) + 2 * M((i, j, i), i),
                    # doubled; a single M_{w s_i omega_i} breaks translation invariance
                    2 * M((j, i, j), j) + 2 * M((i,), i),
                    M((i, j, i), i) + 2 * M((i, j), j) + M((), i),
                ],
            ),
        ]
    if aij == -2 and aji == -1:
        return [
            (
                M((j, i), i) + M((i,), i) + M((i, j), j),
                [
                    2 * M((i,), i) + M((j, i, j), j),
                    2 * M((i, j, i), i) + M((), j),
                    M((i, j, i), i) + M((), i) + M((i, j), j),
                ],
            ),
            (
                M((j,), j) + 2 * M((i,), i) + M((i, j), j),
                [
                    2 * M((i, j, i), i) + 2 * M((), j),
                    2 * M((), i) + 2 * M((i, j), j),
                    M((), j) + 2 * M((i,), i) + M((j, i, j), j),
                ],
            ),
        ]
    raise InvariantFailure(f"unsupported bond a_ij={aij}, a_ji={aji}")


def _face_getter(bz: BZData, w: WeylElement):
    def M(word, k):
        x = w
        for letter in word:
            x = rmul(x, letter)
        return bz.at(x, k)
    return M


def check_tropical_plucker(bz: BZData) -> list[dict]:
    c = bz.cartan
    out = []
    for w in elements(c):
        desc = w.right_descents()
        for i in c.index_set:
            for j in c.index_set:
                if i == j or i in desc or j in desc:
                    continue
                for k, (lhs, cands) in enumerate(_plucker_terms(c, _face_getter(bz, w), i, j)):
                    if lhs != min(cands):
                        out.append({
                            "relation": "plucker", "w": list(w.word), "i": i, "j": j,
                            "which": k, "lhs": lhs, "rhs": min(cands),
                        })
    return out


def _literal_case2_terms(c: CartanData, M, Me, i: int, j: int):
    """The two relations of the (a_ij, a_ji) = (-1, -2) case under the literal reading.

    ``Me(k)`` returns ``M_{omega_k}`` at the identity.  The first relation uses
    ``M_{omega_j}`` in its last candidate and the second has a single
    ``M_{w s_i omega_i}`` in its middle candidate.
    """
    return [
        (
            M((j,), j) + M((i, j), j) + M((i,), i),
            [2 * M((i, j), j) + M((), i), 2 * M((), j) + M((i, j, i), i), Me(j) + M((j, i, j), j) + M((i,), i)],
        ),
        (
            M((j, i), i) + 2 * M((i, j), j) + M((i,), i),
            [2 * M((), j) + 2 * M((i, j, i), i), 2 * M((j, i, j), j) + M((i,), i), M((i, j, i), i) + 2 * M((i, j), j) + M((), i)],
        ),
    ]


def literal_reading_report(bz: BZData) -> list[dict]:
    """Faces where the literal-reading relations disagree with the ones checked by :func:`check_tropical_plucker`."""
    c = bz.cartan
    out = []

    def Me(k):
        return bz[c.fundamental_weight(k)]

    for w in elements(c):
        desc = w.right_descents()
        for i in c.index_set:
            for j in c.index_set:
                if i == j or i in desc or j in desc or (c.a(i, j), c.a(j, i)) != (-1, -2):
                    continue
                M = _face_getter(bz, w)
                ours = _plucker_terms(c, M, i, j)
                literal = _literal_case2_terms(c, M, Me, i, j)
                for k, ((l1, r1), (l2, r2)) in enumerate(zip(ours, literal)):
                    if (l1 == min(r1)) != (l2 == min(r2)):
                        out.append({
                            "w": list(w.word), "i": i, "j": j, "relation": k,
                            "checked_holds": l1 == min(r1), "literal_holds": l2 == min(r2),
                        })
    return out


def is_bz_datum(bz: BZData) -> bool:
    c = bz.cartan
    if any(bz[c.fundamental_weight(i)] != 0 for i in c.index_set):
        return False
    return not check_edge_inequalities(bz) and not check_tropical_plucker(bz)


def coweight(bz: BZData) -> Vector:
    """``mu_{w0}``."""
    return MVPolytope(bz).mu(longest_element(bz.cartan))


# --- Lusztig data ---------------------------------------------------------------


def lusztig_from_bz(bz: BZData, word: Sequence[int]) -> LusztigDatum:
    c = bz.cartan
    word = tuple(word)
    if not is_reduced(c, word):
        raise ValueError(f"{word} is not reduced")
    prefixes = _path(c, word)[0]
    n = [-edge_value(bz, x, i) for x, i in zip(prefixes, word)]
    if any(k < 0 for k in n):
        raise InvalidPolytope(f"negative edge length along {word}: {n}")
    return LusztigDatum(word, tuple(n))


@functools.lru_cache(maxsize=None)
def _path(c: CartanData, word: tuple[int, ...]) -> tuple[tuple[WeylElement, ...], tuple[Vector, ...]]:
    """Prefix elements ``w_0 .. w_m`` and edge directions ``w_{k-1} alpha_{i_k}^vee``."""
    x = identity(c)
    prefixes, betas = [x], []
    for i in word:
        betas.append(x.act_coweight(c.simple_coroot(i)))
        x = rmul(x, i)
        prefixes.append(x)
    return tuple(prefixes), tuple(betas)


def path_coroots(c: CartanData, word: Sequence[int]) -> list[Vector]:
    """``w_{k-1} alpha_{i_k}^vee`` along the word."""
    return list(_path(c, tuple(word))[1])


def coweight_of_lusztig(c: CartanData, word: Sequence[int], n: Sequence[int]) -> Vector:
    total = [0] * c.rank
    for k, beta in zip(n, path_coroots(c, word)):
        for r, b in enumerate(beta):
            total[r] += k * b
    return tuple(total)


def a2_braid_transition(n1: int, n2: int, n3: int) -> tuple[int, int, int]:
    """Lusztig data on (j, i, j) from data on (i, j, i) when a_ij = a_ji = -1."""
    p = min(n1, n3)
    return (n2 + n3 - p, p, n1 + n2 - p)


@functools.lru_cache(maxsize=None)
def _rank2(aij: int, aji: int) -> CartanData:
    return CartanData("B" if aij * aji == 2 else "A", 2, ((2, aij), (aji, 2)))


def _polygon_vertices(c: CartanData, left: Sequence[int], right: Sequence[int]) -> dict[WeylElement, Vector]:
    """Vertices of the rank 2 polygon with data ``left`` on (1,2,1,...) and ``right`` on (2,1,2,...)."""
    out: dict[WeylElement, Vector] = {}
    for start, n in ((1, left), (2, right)):
        word = tuple(start if k % 2 == 0 else 3 - start for k in range(len(n)))
        x = identity(c)
        mu = (0, 0)
        out[x] = mu
        for k, beta in enumerate(path_coroots(c, word)):
            mu = (mu[0] + n[k] * beta[0], mu[1] + n[k] * beta[1])
            x = rmul(x, word[k])
            out[x] = mu
    return out


@functools.lru_cache(maxsize=None)
def _word_weight(c: CartanData, word: tuple[int, ...], k: int) -> tuple[WeylElement, Vector]:
    x = word_to_element(c, word)
    return x, chamber_weight(x, k)


def _polygon_relations_hold(c: CartanData, left: Sequence[int], right: Sequence[int]) -> bool:
    mu = _polygon_vertices(c, left, right)

    def M(word, k):
        x, g = _word_weight(c, word, k)
        return pair(mu[x], g)

    for i, j in ((1, 2), (2, 1)):
        for lhs, cands in _plucker_terms(c, M, i, j):
            if lhs != min(cands):
                return False
    return True


@functools.lru_cache(maxsize=None)
def _b2_solve(aij: int, aji: int, n: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    c = _rank2(aij, aji)
    target = coweight_of_lusztig(c, (1, 2, 1, 2), n)
    betas = path_coroots(c, (2, 1, 2, 1))
    # every positive coroot has height >= 1, so no edge length exceeds the height of the coweight
    bound = sum(target)
    (p, q), (r, s) = betas[2], betas[3]
    det = p * s - q * r
    sols = []
    for m1, m2 in itertools.product(range(bound + 1), repeat=2):
        rx = target[0] - m1 * betas[0][0] - m2 * betas[1][0]
        ry = target[1] - m1 * betas[0][1] - m2 * betas[1][1]
        # solve m3 * beta3 + m4 * beta4 = (rx, ry)
        num3, num4 = rx * s - ry * r, p * ry - q * rx
        if num3 % det or num4 % det:
            continue
        m3, m4 = num3 // det, num4 // det
        if m3 < 0 or m4 < 0:
            continue
        # all eight edges lie on the two paths, so nonnegative lengths give the edge inequalities
        m = (m1, m2, m3, m4)
        if _polygon_relations_hold(c, n, m):
            sols.append(m)
    return tuple(sols)


def b2_transition_solutions(n: Sequence[int], orientation: tuple[int, int] = (-1, -2)) -> tuple[tuple[int, ...], ...]:
    """Every candidate found by the bounded search behind :func:`b2_braid_transition`."""
    n = tuple(int(x) for x in n)
    if len(n) != 4 or any(x < 0 for x in n):
        raise ValueError("need four nonnegative integers")
    if set(orientation) != {-1, -2}:
        raise ValueError("orientation must be (-1, -2) or (-2, -1)")
    return _b2_solve(orientation[0], orientation[1], n)


def b2_braid_transition(n: Sequence[int], orientation: tuple[int, int] = (-1, -2)) -> tuple[int, int, int, int]:
    """Lusztig data on (j, i, j, i) from data on (i, j, i, j), where ``orientation = (a_ij, a_ji)``.

    Solved by bounded search over the two-parameter family of edge lengths that
    conserve the coweight, keeping those whose polygon satisfies all four
    tropical Plücker relations.
    """
    sols = b2_transition_solutions(n, orientation)
    if len(sols) != 1:
        raise InvariantFailure(f"B2 transition for {n} with orientation {orientation} has {len(sols)} solutions")
    return sols[0]


def braid_transition(c: CartanData, word: Sequence[int], n: Sequence[int], position: int) -> tuple[int, ...]:
    """Lusztig data after the braid move on ``word`` starting at 0-based ``position``."""
    word, n = tuple(word), list(n)
    i, j = word[position], word[position + 1]
    m = c.bond(i, j)
    seg = n[position:position + m]
    if m == 2:
        new = seg[::-1]
    elif m == 3:
        new = list(a2_braid_transition(*seg))
    else:
        new = list(b2_braid_transition(seg, (c.a(i, j), c.a(j, i))))
    n[position:position + m] = new
    return tuple(n)


def _confluence_default(c: CartanData) -> bool:
    return c.rank <= 3


def bz_from_lusztig(c: CartanData, word: Sequence[int], n: Sequence[int], exhaustive: bool | None = None) -> BZData:
    """The unique BZ datum whose Lusztig data along ``word`` is ``n``.

    Walks the braid graph of reduced words of w0, transporting the Lusztig
    data across each move and recording the vertices on every minimal path.
    With ``exhaustive`` the whole graph is walked and every vertex reached by
    two routes is compared; otherwise the walk stops once all vertices are known.
    """
    word, n = tuple(word), tuple(int(x) for x in n)
    w0 = longest_element(c)
    if len(word) != w0.length or word_to_element(c, word) != w0:
        raise ValueError(f"{word} is not a reduced word of w0")
    if len(n) != len(word) or any(x < 0 for x in n):
        raise ValueError("Lusztig data must be nonnegative and match the word length")
    if exhaustive is None:
        exhaustive = _confluence_default(c)
    total = len(elements(c, allow_large=True))

    mu: dict[WeylElement, Vector] = {}
    seen: dict[tuple[int, ...], tuple[int, ...]] = {word: n}
    queue = deque([word])
    while queue:
        cur = queue.popleft()
        data = seen[cur]
        prefixes, betas = _path(c, cur)
        pt = (0,) * c.rank
        for k, x in enumerate(prefixes):
            old = mu.setdefault(x, pt)
            if old != pt:
                raise InvariantFailure(f"vertex {x} reached with {old} and {pt}")
            if k < len(cur):
                pt = tuple(a + data[k] * b for a, b in zip(pt, betas[k]))
        if not exhaustive and len(mu) == total:
            break
        for pos, nxt in braid_neighbors(c, cur):
            moved = braid_transition(c, cur, data, pos)
            if nxt in seen:
                if seen[nxt] != moved:
                    raise InvariantFailure(f"Lusztig data on {nxt} reached as {seen[nxt]} and {moved}")
                continue
            seen[nxt] = moved
            queue.append(nxt)

    if len(mu) != total:
        raise InvariantFailure("braid walk did not reach every vertex")
    return vertices_to_bz_unchecked(c, mu)


def vertices_to_bz_unchecked(c: CartanData, mu: Mapping[WeylElement, Sequence[int]]) -> BZData:
    values: dict[Vector, int] = {}
    for w, pt in mu.items():
        for i in c.index_set:
            g = chamber_weight(w, i)
            val = pair(pt, g)
            if values.setdefault(g, val) != val:
                raise InvariantFailure(f"inconsistent hyperplane value at {g}")
    return BZData(c, values)


def polytope_from_lusztig(c: CartanData, word: Sequence[int], n: Sequence[int]) -> MVPolytope:
    return MVPolytope(bz_from_lusztig(c, word, n))


def point_polytope(c: CartanData) -> MVPolytope:
    return MVPolytope(zero_datum(c))


def random_polytope(c: CartanData, rng, bound: int = 3, word: Sequence[int] | None = None) -> MVPolytope:
    word = tuple(word) if word is not None else longest_element(c).word
    n = [rng.randint(0, bound) for _ in word]
    return polytope_from_lusztig(c, word, n)


def convert_lusztig(c: CartanData, datum: LusztigDatum, target_word: Sequence[int]) -> LusztigDatum:
    bz = bz_from_lusztig(c, datum.word, datum.n)
    return lusztig_from_bz(bz, target_word)


__all__ = [
    "BZData", "ChamberWeight", "InvalidPolytope", "InvariantFailure", "LusztigDatum", "MVPolytope",
    "a2_braid_transition", "b2_braid_transition", "b2_transition_solutions", "braid_transition", "bz_from_lusztig",
    "bz_to_vertices", "chamber_weight", "chamber_weights", "check_edge_inequalities",
    "check_tropical_plucker", "convert_lusztig", "coweight", "coweight_of_lusztig",
    "edge_value", "is_bz_datum", "literal_reading_report", "lusztig_from_bz", "path_coroots", "point_polytope",
    "polytope_from_lusztig", "random_polytope", "vertices_to_bz", "zero_datum",
]
