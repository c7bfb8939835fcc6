"""Command line entry point: conversions, verification sweeps, scans and rank-2 polygons.

Exit codes: 0 pass, 1 violations found, 2 usage or schema error, 3 invalid mathematical input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction

from . import crystal, highest, tropical
from .polytope import (
    BZData,
    InvalidPolytope,
    LusztigDatum,
    MVPolytope,
    bz_from_lusztig,
    is_bz_datum,
    literal_reading_report,
    lusztig_from_bz,
    random_polytope,
)
from .weyl import (
    UnsupportedType,
    build_cartan,
    elements,
    longest_element,
    parse_word,
    reduced_words,
    rightmost_subword,
    word_to_element,
)

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3

CHECKS = ("theorem-a", "zeros", "diagonals", "crystal-axioms", "saito", "fan", "theorem-b", "conjecture-scan")


class UsageError(Exception):
    pass


class MathError(Exception):
    pass


# --- input ----------------------------------------------------------------------


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from exc


def _cartan(kind):
    try:
        return build_cartan(kind)
    except UnsupportedType as exc:
        raise UsageError(str(exc)) from exc


def _element(c, text):
    try:
        return word_to_element(c, parse_word(text))
    except ValueError as exc:
        raise UsageError(f"bad word {text!r}: {exc}") from exc


def _word(text):
    try:
        return parse_word(text)
    except ValueError as exc:
        raise UsageError(f"bad word {text!r}: {exc}") from exc


def _read_polytope(obj, kind) -> MVPolytope:
    """A polytope from Lusztig JSON ``{"word", "n"}`` or BZ JSON ``{"cartan", "bz"}``."""
    if not isinstance(obj, dict):
        raise UsageError("input must be a JSON object")
    try:
        if "bz" in obj:
            if "cartan" not in obj:
                if kind is None:
                    raise UsageError("BZ input needs a cartan entry or --kind")
                obj = dict(obj, cartan=_cartan(kind).to_json())
            bz = BZData.from_json(obj)
            if not is_bz_datum(bz):
                raise MathError("input is not a BZ datum")
            return MVPolytope(bz)
        if "word" in obj and "n" in obj:
            if "cartan" in obj:
                c = build_cartan(str(obj["cartan"]["kind"]), int(obj["cartan"]["rank"]))
            elif kind is not None:
                c = _cartan(kind)
            else:
                raise UsageError("Lusztig input needs a cartan entry or --kind")
            datum = LusztigDatum.from_json(obj)
            return MVPolytope(bz_from_lusztig(c, datum.word, datum.n))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"schema violation: {exc}") from exc
    except UnsupportedType as exc:
        raise UsageError(str(exc)) from exc
    except (InvalidPolytope, ValueError) as exc:
        raise MathError(str(exc)) from exc
    raise UsageError("input must have keys word/n or bz")


# --- output ---------------------------------------------------------------------


def _tsv_cell(x):
    if isinstance(x, (list, tuple)):
        return ",".join(str(y) for y in x)
    if isinstance(x, (dict,)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def _to_tsv(obj) -> str:
    rows = obj.get("rows") if isinstance(obj, dict) else None
    if rows is None:
        rows = [{"key": k, "value": v} for k, v in sorted(obj.items())]
    if not rows:
        return ""
    cols = sorted({k for r in rows for k in r})
    lines = ["\t".join(cols)]
    lines += ["\t".join(_tsv_cell(r.get(k, "")) for k in cols) for r in rows]
    return "\n".join(lines) + "\n"


def _emit(obj, args):
    text = _to_tsv(obj) if args.format == "tsv" else json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _word_text(w) -> str:
    return ",".join(map(str, w.word)) if w.word else "e"


# --- convert ----------------------------------------------------------------------


def cmd_convert(args) -> int:
    P = _read_polytope(_load_json(args.input), args.kind)
    c = P.cartan
    target = args.target
    if target == "bz":
        out = P.bz.to_json()
    elif target == "vertices":
        out = {
            "cartan": c.to_json(),
            "vertices": [{"w": list(w.word), "mu": list(P.mu(w))} for w in elements(c)],
        }
    else:
        word = _word(target)
        if word_to_element(c, word) != longest_element(c) or len(word) != longest_element(c).length:
            raise MathError(f"{word} is not a reduced word of w0")
        out = lusztig_from_bz(P.bz, word).to_json()
    _emit(out, args)
    return EXIT_OK


# --- verify -----------------------------------------------------------------------


def _targets(c, args):
    if args.w is not None:
        return [_element(c, args.w)]
    return list(elements(c))


def _polytopes_in(w, args, rng):
    if args.samples:
        return [highest.sample_Pw(w, rng, bound=args.bound) for _ in range(args.samples)]
    return list(highest.generate_Pw(w, bound=args.bound))


def _random_polytopes(c, args, rng):
    return [random_polytope(c, rng, bound=args.bound) for _ in range(args.samples or 50)]


def _lusztig_row(P):
    w0 = longest_element(P.cartan)
    return list(P.lusztig(w0.word))


def _run_verify(check, c, args):
    rng = random.Random(args.seed)
    rows, violations = [], []

    def add(row, bad):
        row["passed"] = not bad
        rows.append(row)
        violations.extend(bad)

    if check == "theorem-a":
        for w in _targets(c, args):
            for P in _polytopes_in(w, args, rng):
                rep = highest.theorem_a_check(P, w)
                add({"w": list(w.word), "lusztig": _lusztig_row(P)}, [dict(v, w=list(w.word)) for v in rep.violations])
    elif check == "zeros":
        for w in _targets(c, args):
            rest = w.inverse() * longest_element(c)
            for word in reduced_words(longest_element(c), allow_large=True):
                add({"w": list(w.word), "word": list(word), "zeros": rightmost_subword(word, rest)}, [])
            for P in _polytopes_in(w, args, rng):
                rep = highest.zero_pattern_check(P, w, rng=rng)
                add({"w": list(w.word), "lusztig": _lusztig_row(P)}, [dict(v, w=list(w.word)) for v in rep.violations])
    elif check == "diagonals":
        for P in _random_polytopes(c, args, rng):
            add({"lusztig": _lusztig_row(P)}, highest.generalized_diagonal_check(P).violations)
    elif check == "crystal-axioms":
        for P in _random_polytopes(c, args, rng):
            add({"lusztig": _lusztig_row(P)}, crystal.crystal_axioms_check(P))
    elif check == "saito":
        words = list(reduced_words(longest_element(c), allow_large=True))
        els = list(elements(c))
        for P in _random_polytopes(c, args, rng):
            w = rng.choice(els)
            bad = crystal.saito_shift_check(P, rng.choice(words)) + crystal.vertex_formula_check(P)
            bad += highest.membership_equivalence_check(P, w).violations
            Q = highest.sample_Pw(w, rng, bound=args.bound)
            bad += highest.membership_equivalence_check(Q, w).violations + highest.transport_check(Q, w).violations
            add({"lusztig": _lusztig_row(P), "w": list(w.word)}, bad)
    elif check == "fan":
        for w in _targets(c, args):
            classes = highest.fan_partition(c, w)
            for P in _polytopes_in(w, args, rng):
                bad = [] if highest.coarsening_check(P, w) else [{"w": list(w.word), "lusztig": _lusztig_row(P)}]
                add({"w": list(w.word), "lusztig": _lusztig_row(P), "classes": len(classes)}, bad)
    elif check == "theorem-b":
        _type_a(c)
        for w in _targets(c, args):
            if args.samples:
                points = [tuple(rng.randint(0, args.bound) for _ in range(w.length)) for _ in range(args.samples)]
            else:
                points = list(itertools.product(range(args.bound + 1), repeat=w.length))
            for A in points:
                bad = [x.to_json() for x in tropical.theorem_b_check(w, A)]
                add({"w": list(w.word), "A": list(A)}, bad)
    elif check == "conjecture-scan":
        return _run_scan(c, args)
    return rows, violations


def _type_a(c):
    if c.kind != "A" or c.rank > 3:
        raise UsageError("minor computations are implemented for types A1..A3")


def cmd_verify(args) -> int:
    c = _cartan(args.kind)
    rows, violations = _run_verify(args.check, c, args)
    report = {
        "check": args.check,
        "kind": f"{c.kind}{c.rank}",
        "instances": len(rows),
        "passed": not violations,
        "violations": violations,
        "rows": rows,
    }
    _emit(report, args)
    return EXIT_OK if not violations else EXIT_VIOLATIONS


# --- scan ---------------------------------------------------------------------------


def _run_scan(c, args):
    """Symbolic vanishing checks for every w, then edge equalities of the oracle values."""
    _type_a(c)
    rng = random.Random(args.seed)
    rows, violations = [], []
    for w in _targets(c, args):
        sym = tropical.vanishing_scan(w)
        support = tropical.support_scan(w)
        rows.append({"w": list(w.word), "kind": "symbolic", "confirmed": sym["confirmed"],
                     "support_checked": support["checked"],
                     "passed": not sym["failures"] and not support["failures"]})
        violations += sym["failures"] + support["failures"]
        if args.samples:
            points = [tuple(rng.randint(0, args.bound) for _ in range(w.length)) for _ in range(args.samples)]
        else:
            points = list(itertools.product(range(args.bound + 1), repeat=w.length))
        totals = {"checked": 0, "conjectural": 0, "outside": 0}
        bad = []
        for A in points:
            r = tropical.conjecture_edge_scan(w, A)
            for k in totals:
                totals[k] += r[k]
            bad += r["failures"]
        rows.append({"w": list(w.word), "kind": "edges", "points": len(points), **totals, "passed": not bad})
        violations += bad
    return rows, violations


def cmd_scan(args) -> int:
    c = _cartan(args.kind)
    if args.what == "plucker-readings":
        rng = random.Random(args.seed)
        rows, disagreements = [], 0
        for _ in range(args.samples or 20):
            P = random_polytope(c, rng, bound=args.bound)
            diffs = literal_reading_report(P.bz)
            disagreements += bool(diffs)
            rows.append({"lusztig": _lusztig_row(P), "differences": len(diffs)})
        report = {"scan": args.what, "kind": f"{c.kind}{c.rank}", "evidence": "empirical",
                  "polytopes": len(rows), "polytopes_with_differences": disagreements, "rows": rows}
        _emit(report, args)
        return EXIT_OK
    rows, violations = _run_scan(c, args)
    report = {
        "scan": args.what,
        "kind": f"{c.kind}{c.rank}",
        "evidence": "empirical; a finite scan is not a proof",
        "counterexamples": violations,
        "passed": not violations,
        "rows": rows,
    }
    _emit(report, args)
    return EXIT_OK if not violations else EXIT_VIOLATIONS


# --- polygon ------------------------------------------------------------------------


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _sqrt3(x: Fraction) -> str:
    if x == 0:
        return "0"
    if x in (1, -1):
        return "sqrt(3)" if x > 0 else "-sqrt(3)"
    return f"{_frac(x)}*sqrt(3)"


def embed(c, mu):
    """Planar coordinates of a rank-2 coweight given in coroot coordinates, as exact strings.

    A2 places the coroots at 120 degrees, so y is a rational multiple of sqrt(3);
    B2 places them at 135 degrees.
    """
    p, q = mu
    if c.kind == "A":
        return {"x": _frac(Fraction(p) - Fraction(q, 2)), "y": _sqrt3(Fraction(q, 2))}
    if c.kind == "B" or c.kind == "C":
        return {"x": _frac(Fraction(p - q)), "y": _frac(Fraction(q))}
    return {"x": _frac(Fraction(p)), "y": _frac(Fraction(q))}


def boundary(P: MVPolytope):
    """Vertices in boundary order, with coincident consecutive labels merged."""
    c = P.cartan
    w0 = longest_element(c)
    m = w0.length
    up = [word_to_element(c, tuple((1, 2) * m)[:k]) for k in range(m + 1)]
    down = [word_to_element(c, tuple((2, 1) * m)[:k]) for k in range(m - 1, 0, -1)]
    out = []
    for w in up + down:
        pt = P.mu(w)
        if out and out[-1]["coroot"] == list(pt):
            out[-1]["labels"].append(_word_text(w))
            continue
        out.append({"coroot": list(pt), "labels": [_word_text(w)], **embed(c, pt)})
    if len(out) > 1 and out[0]["coroot"] == out[-1]["coroot"]:
        out[0]["labels"] = out.pop()["labels"] + out[0]["labels"]
    return out


def cmd_polygon(args) -> int:
    P = _read_polytope(_load_json(args.input), args.kind)
    if P.cartan.rank != 2:
        raise UsageError("polygon needs a rank-2 type")
    pts = boundary(P)
    out = {"cartan": P.cartan.to_json(), "vertices": pts,
           "rows": [{"labels": p["labels"], "coroot": p["coroot"], "x": p["x"], "y": p["y"]} for p in pts]}
    _emit(out, args)
    return EXIT_OK


# --- main -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mvpolytopes", description="MV polytopes of highest vertex w.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", help="Cartan type, e.g. A2, B2, A3")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=2, help="largest Lusztig or tropical entry")
    common.add_argument("--samples", type=int, default=0, help="random samples instead of exhaustive enumeration")
    common.add_argument("--w", help="Weyl element as a comma-separated word; all of W when omitted")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", parents=[common], help="convert a polytope between encodings")
    p.add_argument("input", help="JSON file, or - for stdin")
    p.add_argument("--target", "--word", dest="target", required=True, help="'bz', 'vertices' or a reduced word of w0")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    p.add_argument("check", choices=CHECKS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("polygon", parents=[common], help="rank-2 boundary coordinates")
    p.add_argument("input", help="JSON file, or - for stdin")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("scan", parents=[common], help="empirical scans")
    p.add_argument("what", nargs="?", choices=("conjecture", "plucker-readings"), default="conjecture")
    p.set_defaults(func=cmd_scan)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    if args.command in ("verify", "scan") and not args.kind:
        sys.stderr.write("error: --kind is required\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except MathError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
