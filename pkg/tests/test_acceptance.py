"""One exact check per acceptance criterion; run directly to print only the PASS/FAIL lines."""
import itertools
import json
import random
import sys
import tempfile
import time
from pathlib import Path

import pytest
from sympy import Matrix, symbols

from mvpolytopes.cli import main as cli_main
from mvpolytopes.crystal import (
    BOTTOM,
    crystal_axioms_check,
    e_op,
    e_star,
    f_op,
    f_star,
    saito_shift_check,
    vertex_formula_check,
)
from mvpolytopes.highest import (
    generalized_diagonal_check,
    generate_Pw,
    is_in_Pw,
    membership_equivalence_check,
    sample_Pw,
    theorem_a_check,
    transport_check,
)
from mvpolytopes.polytope import (
    b2_braid_transition,
    b2_transition_solutions,
    convert_lusztig,
    coweight_of_lusztig,
    LusztigDatum,
    polytope_from_lusztig,
    random_polytope,
)
from mvpolytopes.tropical import (
    delta_new,
    eta_inv,
    gen_minor,
    oracle_bz,
    symbolic_chart,
    theorem_b_check,
)
from mvpolytopes.weyl import (
    build_cartan,
    elements,
    longest_element,
    reduced_words,
    right_weak_interval,
    rightmost_subword,
    v_w,
    v_w_bruteforce,
    bruhat_leq,
    word_to_element,
)

A2, B2, A3 = (build_cartan(k) for k in ("A2", "B2", "A3"))


def el(c, word):
    return word_to_element(c, tuple(word))


def criterion_1():
    c = A2
    there = convert_lusztig(c, LusztigDatum((1, 2, 1), (1, 2, 2)), (2, 1, 2))
    back = convert_lusztig(c, there, (1, 2, 1))
    cw = (coweight_of_lusztig(c, (1, 2, 1), (1, 2, 2)), coweight_of_lusztig(c, (2, 1, 2), there.n))
    ok = there.n == (3, 1, 2) and back.n == (1, 2, 2) and cw == ((3, 4), (3, 4))
    return ok, f"(1,2,2) -> {there.n} -> {back.n}, coweights {cw}"


def criterion_2():
    P = polytope_from_lusztig(A2, (1, 2, 1), (1, 0, 2))
    lus = lambda Q, w: Q.lusztig(w)
    got = [
        lus(f_op(P, 1), (1, 2, 1)) == (2, 0, 2),
        lus(e_op(P, 1), (1, 2, 1)) == (0, 0, 2),
        lus(f_star(P, 2), (1, 2, 1)) == (1, 0, 3),
        lus(e_star(P, 2), (1, 2, 1)) == (1, 0, 1),
        lus(f_op(P, 2), (2, 1, 2)) == (2, 1, 0),
        lus(e_op(P, 2), (2, 1, 2)) == (0, 1, 0),
        lus(f_star(P, 1), (2, 1, 2)) == (1, 1, 1),
        e_star(P, 1) is BOTTOM,
        f_op(P, 2) == f_star(P, 2),
        e_op(P, 2) == e_star(P, 2),
    ]
    return all(got), f"{sum(got)}/{len(got)} table entries and coincidences reproduced"


TABLE_W = (1, 2, 3)
TABLE = {
    (1, 2, 3, 1, 2, 1): ((4, 5, 6), [[(1, 2, 3), (1, 2, 3, 1), (1, 2, 3, 1, 2), "w0"]]),
    (2, 3, 1, 2, 1, 3): ((3, 4, 5), [[(2, 3), (2, 3, 1), (2, 3, 1, 2), (2, 3, 1, 2, 1)]]),
    (1, 3, 2, 1, 3, 2): ((3, 4, 6), [[(1, 3), (1, 3, 2), (1, 3, 2, 1)], [(1, 2, 3, 2, 1), "w0"]]),
    # the zero at position 2 gives mu_3 = mu_32; s3s1 lies below w, so mu_31 is a separate vertex in general
    (3, 2, 1, 3, 2, 3): ((2, 3, 5), [[(3,), (3, 2), (3, 2, 1)], [(3, 2, 1, 3), (3, 2, 1, 3, 2)]]),
    (1, 2, 1, 3, 2, 1): ((3, 5, 6), [[(1, 2), (1, 2, 1)], [(1, 2, 3, 1), (1, 2, 3, 1, 2), "w0"]]),
    (2, 1, 3, 2, 1, 3): ((2, 4, 5), [[(2,), (2, 1)], [(2, 1, 3), (2, 1, 3, 2), (2, 1, 3, 2, 1)]]),
}
EXAMPLE_COLLAPSES = [[(2, 3, 1, 2, 1), (2, 3)], [(1, 3, 2, 1), (1, 3)], [(3, 2, 1), (3,)], [(1, 2, 1), (1, 2)], [(2, 1), (2,)]]


def criterion_3():
    w = el(A3, TABLE_W)
    rest = w.inverse() * longest_element(A3)
    w0 = longest_element(A3)
    groups = [g for _, gs in TABLE.values() for g in gs] + EXAMPLE_COLLAPSES
    groups = [[w0 if x == "w0" else el(A3, x) for x in g] for g in groups]
    bad = []
    for word, (zeros, _) in TABLE.items():
        got = tuple(rightmost_subword(word, rest))
        if got != zeros:
            bad.append(f"zeros of {word}: {got}")
    members = list(generate_Pw(w, word=(1, 2, 3, 1, 2, 1), bound=3))
    for P in members:
        if not is_in_Pw(P, w):
            bad.append(f"{P.lusztig((1, 2, 3, 1, 2, 1))} not in P_w")
        for word, (zeros, _) in TABLE.items():
            n = P.lusztig(word)
            if any(n[k - 1] for k in zeros):
                bad.append(f"{word}: {n} nonzero at a forced zero")
        for g in groups:
            if len({P.mu(x) for x in g}) != 1:
                bad.append(f"{P.lusztig((1, 2, 3, 1, 2, 1))} breaks {[x.word for x in g]}")
    split = sum(P.mu(el(A3, (3, 1))) != P.mu(el(A3, (3,))) for P in members)
    return not bad, (
        f"{len(members)} polytopes, 6 words, {len(groups)} equalities, {len(bad)} failures; mu_31 != mu_3 on {split}"
    )


def criterion_4():
    pairs, bad = 0, 0
    for c in (A3, B2):
        for v in elements(c):
            for w in elements(c):
                pairs += 1
                top = v_w(v, w)
                if v_w_bruteforce(v, w) != top:
                    bad += 1
                # certify independently that exactly one candidate has the maximal length
                cands = [x for x in right_weak_interval(v) if bruhat_leq(x, w)]
                longest = max(x.length for x in cands)
                if [x for x in cands if x.length == longest] != [top]:
                    bad += 1
    return bad == 0 and pairs == 576 + 64, f"{pairs} pairs, {bad} disagreements or non-unique maxima"


def criterion_5():
    count, bad = 0, 0
    for w in elements(A3):
        for P in generate_Pw(w, bound=2):
            count += 1
            bad += not theorem_a_check(P, w).passed
    return bad == 0, f"{count} polytopes over all 24 w, {bad} failures"


def criterion_6():
    W12 = el(A2, (1, 2))
    e, s1, s2, w0 = (el(A2, x) for x in ((), (1,), (2,), (1, 2, 1)))
    K, (b, a), g = symbolic_chart(3, (2, 1))
    minors = [gen_minor(g, e, s1, 1), gen_minor(g, e, s2, 2), gen_minor(g, e, W12, 2), gen_minor(g, e, e, 1), gen_minor(g, e, e, 2)]
    ok = minors == [a, b, a * b, K.one, K.one]
    ok &= gen_minor(g, e, w0, 1) == K.zero and delta_new(g, w0, 1, W12) == b
    Al, Be = symbols("a2 a1")
    ok &= eta_inv(W12, g).to_Matrix() == Matrix([[1, 1 / Al, 0], [0, 1, 1 / Be], [0, 0, 1]])
    for A, B in itertools.product(range(5), repeat=2):
        bz = oracle_bz(W12, (B, A))
        got = [bz.at(e, 1), bz.at(e, 2), bz.at(s1, 1), bz.at(W12, 2), bz.at(s2, 2)]
        ok &= got == [0, 0, -A, -A - B, -B]
    return ok, "minors, eta inverse and 25 valuation points"


def criterion_7():
    checks, bad = 0, []
    for w in elements(A2):
        for A in itertools.product(range(5), repeat=w.length):
            checks += 1
            bad += theorem_b_check(w, A)
    rng = random.Random(7)
    for w in elements(A3):
        for _ in range(100):
            checks += 1
            bad += theorem_b_check(w, [rng.randint(0, 4) for _ in range(w.length)])
    return not bad, f"{checks} points (all of A2 on 0..4, 100 per w for all 24 w in A3), {len(bad)} counterexamples"


def criterion_8():
    rng = random.Random(8)
    bad = 0
    for c in (A2, B2, A3):
        for _ in range(500):
            bad += not generalized_diagonal_check(random_polytope(c, rng, bound=3)).passed
    return bad == 0, f"1500 polytopes, {bad} failures"


def criterion_9():
    rng = random.Random(9)
    failures = {"axioms": 0, "vertex-formula": 0, "shift": 0, "membership": 0, "transport": 0}
    per_type = 200
    for c in (A2, B2, A3):
        ws = elements(c)
        words = list(reduced_words(longest_element(c)))
        for k in range(per_type):
            w = rng.choice(ws)
            # alternate unrestricted polytopes with members of P_w so both sides of the equivalence occur
            P = random_polytope(c, rng, bound=2) if k % 2 else sample_Pw(w, rng, bound=2)
            failures["axioms"] += bool(crystal_axioms_check(P))
            failures["vertex-formula"] += bool(vertex_formula_check(P))
            failures["shift"] += bool(saito_shift_check(P, rng.choice(words)))
            failures["membership"] += not membership_equivalence_check(P, w).passed
            if is_in_Pw(P, w):
                failures["transport"] += not transport_check(P, w).passed
    return not any(failures.values()), f"{per_type} polytopes per type, failures {failures}"


def criterion_10():
    reports = []
    with tempfile.TemporaryDirectory() as d:
        for argv in (["--kind", "A2", "--bound", "4"], ["--kind", "A3", "--bound", "4", "--samples", "20", "--seed", "10"]):
            out = Path(d) / "scan.json"
            rc = cli_main(["scan", "conjecture", *argv, "--out", str(out)])
            rep = json.loads(out.read_text())
            reports.append((rc, rep))
    ok = all(rc == 0 and rep["counterexamples"] == [] and "empirical" in rep["evidence"] for rc, rep in reports)
    sizes = [sum(r.get("points", 0) for r in rep["rows"]) for _, rep in reports]
    return ok, f"empirical scan, SL3 exhaustive ({sizes[0]} points) and SL4 sampled ({sizes[1]} points), 0 counterexamples" if ok else "counterexamples found"


def criterion_11():
    bad = []
    for n in itertools.product(range(5), repeat=4):
        sols = b2_transition_solutions(n)
        if len(sols) != 1:
            bad.append((n, len(sols)))
            continue
        m = sols[0]
        if b2_braid_transition(m, (-2, -1)) != n:
            bad.append((n, "not involutive"))
        if coweight_of_lusztig(B2, (1, 2, 1, 2), n) != coweight_of_lusztig(B2, (2, 1, 2, 1), m):
            bad.append((n, "coweight"))
    return not bad, f"625 inputs, {len(bad)} failures"


CRITERIA = [
    (1, "Lusztig round trip and coweight", 1, criterion_1),
    (2, "crystal operator table", 1, criterion_2),
    (3, "forced zeros and vertex equalities for w = s1s2s3", 30, criterion_3),
    (4, "v_w brute force vs Demazure formula", 10, criterion_4),
    (5, "collapse sweep over A3", 120, criterion_5),
    (6, "SL3 cell minors and valuations", 5, criterion_6),
    (7, "valuation oracle equals combinatorial BZ datum", 600, criterion_7),
    (8, "generalized diagonal inequalities", 120, criterion_8),
    (9, "crystal and Saito suite", 300, criterion_9),
    (10, "conjecture scan (empirical)", 1800, criterion_10),
    (11, "B2 transition solver", 60, criterion_11),
]


def run_criterion(num, title, limit, fn):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like any other
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {title}; {detail}; {elapsed:.2f}s (limit {limit}s)"
    return ok, line


@pytest.mark.parametrize("num,title,limit,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, limit, fn):
    from conftest import ACCEPTANCE_LINES

    ok, line = run_criterion(num, title, limit, fn)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line, flush=True)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
