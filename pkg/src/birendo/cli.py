"""Command-line front end.

Exit codes: 0 ok, 1 parse error, 2 precondition violation, 3 out of
class, 4 stuck, 5 irrational or unresolved data, 6 self-test failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .bipoly import serialize
from .config import LineConfig, classify_corollary, generate_example
from .endo import DEFAULT_POINT_SEARCH, Line, PlaneEndo, fmt_point, report
from .errors import (
    IrrationalData,
    NotAutomorphism,
    NotRealizable,
    OutOfClass,
    ParseError,
    PreconditionError,
    Stuck,
    Unresolved,
)
from .genword import (
    GenWord,
    depth_of,
    parse_word,
    serialize_word,
    to_endo,
    word_invariants,
    word_n,
)
from .sacfactor import (
    NoPeel,
    classify,
    compare_normal_forms,
    equivalence_witness_check,
    left_peel,
    sac_factorize,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_OUT_OF_CLASS = 3
EXIT_STUCK = 4
EXIT_IRRATIONAL = 5
EXIT_SELFTEST = 6


class Report:
    """A JSON-able payload plus the plain-text rendering of it."""

    def __init__(self, data, text=None, code=EXIT_OK):
        self.data = data
        self.text = text
        self.code = code


def _emit(rep: Report, as_json: bool, stream=None):
    stream = stream or sys.stdout
    if as_json or rep.text is None:
        stream.write(json.dumps(rep.data, indent=2, sort_keys=True) + "\n")
    else:
        stream.write(rep.text.rstrip("\n") + "\n")


def _read_word(arg: str) -> GenWord:
    if arg == "-":
        return parse_word(sys.stdin.read())
    if not os.path.exists(arg):
        raise ParseError(f"no such word file: {arg}")
    with open(arg) as fh:
        return parse_word(fh.read())


def _read_map(arg: str) -> PlaneEndo:
    """A map given inline as 'P ; Q' or as a path to a word file."""
    if ";" not in arg and os.path.exists(arg):
        return to_endo(_read_word(arg))
    return PlaneEndo.parse(arg)


def _pt_text(pt):
    return "(" + ", ".join(pt) + ")"


def _sorted_curves(curves):
    return [serialize(C) for C in sorted(curves, key=lambda C: C.sort_key())]


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(args):
    f = PlaneEndo.parse(args.pair)
    data = {"map": str(f)}
    data.update(report(f, args.max_point_search))
    lines = [f"map: {f}", f"degree: {data['degree']}", f"jacobian: {data['jacobian']}"]
    for cf in data["contracting"]:
        to = _pt_text(cf["image_point"]) if cf["image_point"] else "?"
        lines.append(f"contracting: {cf['factor']} -> {to} (multiplicity {cf['multiplicity_in_jacobian']})")
    if data["non_contracted"]:
        lines.append("not birational, non-contracted Jacobian factors: " + ", ".join(data["non_contracted"]))
    else:
        lines.append(f"q = {data['q']}, c = {data['c']}, all missing curves lines: {data['all_missing_are_lines']}")
        for ln in data["missing_lines"]:
            coeffs = (Fraction(ln[k]) for k in ("a", "b", "c"))
            lines.append(f"missing line: {Line(*coeffs)}")
    return Report(data, "\n".join(lines))


def cmd_peel(args):
    f = _read_map(args.map)
    if args.once:
        step = left_peel(f, args.max_point_search)
        if isinstance(step, NoPeel):
            raise Stuck(f"no missing line of {f} is blown up only once", f, step.to_json())
        data = step.to_json()
        return Report(data, f"peel {data['line']} at {_pt_text(data['point'])}\nresidual: {data['residual']}")
    fac = sac_factorize(f, args.max_point_search)
    data = {
        "n": fac.n,
        "steps": fac.trace_json(),
        "automorphism": serialize_word(fac.automorphism),
        "word": serialize_word(fac.word),
    }
    lines = [f"n = {fac.n}"]
    for i, s in enumerate(data["steps"], 1):
        lines.append(f"{i}: peel {s['line']} at {_pt_text(s['point'])} -> {s['residual']}")
    lines.append("word:")
    lines.append(data["word"])
    return Report(data, "\n".join(lines))


def cmd_classify(args):
    f = _read_map(args.map)
    nf = classify(f, args.max_point_search)
    data = nf.to_json()
    data["config_type"] = nf.config_type
    data["notes"] = list(nf.notes)
    text = [f"class: {data['class']}", f"core: {data['core']}", f"verified: {data['verified']}"]
    if data["core_word"]:
        text.append("core word:\n" + data["core_word"].rstrip("\n"))
    if data["omega"]:
        text.append("omega:\n" + data["omega"].rstrip("\n"))
    if data["theta"]:
        text.append("theta:\n" + data["theta"].rstrip("\n"))
    return Report(data, "\n".join(text))


def cmd_compose(args):
    f = to_endo(_read_word(args.wordfile))
    return Report({"map": str(f)}, str(f))


def cmd_apply(args):
    f = PlaneEndo.parse(args.pair)
    try:
        pt = (Fraction(args.x0), Fraction(args.y0))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point: {exc}") from exc
    img = f(pt)
    return Report({"image": fmt_point(img)}, _pt_text(fmt_point(img)))


def cmd_config_check(args):
    cfg = LineConfig.parse(args.lines)
    cc = classify_corollary(cfg)
    data = cc.to_json()
    text = [
        f"admissible: {data['admissible']}",
        f"corollary type: {data['corollary_type']}",
        "concurrency point: " + ("none" if cc.point is None else _pt_text(data["concurrency_point"])),
        "canonical params: " + ", ".join(data["canonical_params"]),
    ]
    return Report(data, "\n".join(text))


def _parse_params(text):
    if text is None or not text.strip():
        return []
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad params {text!r}") from exc


def cmd_config_example(args):
    w = generate_example(args.type, _parse_params(args.params))
    text = serialize_word(w)
    return Report({"word": text}, text)


def _depths(w):
    """Depth of each missing curve, in the word itself or in its SAC factorization."""
    if not all(g.is_automorphism or g.n == 1 for g in w):
        try:
            w = sac_factorize(to_endo(w)).word
        except (Stuck, OutOfClass):
            return None
    miss, _, _ = word_invariants(w)
    return {serialize(C): depth_of(w, C) for C in sorted(miss, key=lambda C: C.sort_key())}


def cmd_word_invariants(args):
    w = _read_word(args.wordfile)
    miss, cont, cent = word_invariants(w)
    data = {
        "n": word_n(w),
        "miss": _sorted_curves(miss),
        "cont": _sorted_curves(cont),
        "cent": [fmt_point(p) for p in sorted(cent)],
        "depths": _depths(w),
    }
    text = [
        f"n = {data['n']}",
        "miss: " + ", ".join(data["miss"]),
        "cont: " + ", ".join(data["cont"]),
        "cent: " + ", ".join(_pt_text(p) for p in data["cent"]),
    ]
    if data["depths"] is not None:
        text.append("depths: " + ", ".join(f"{k} @ {v}" for k, v in data["depths"].items()))
    return Report(data, "\n".join(text))


def cmd_verify_equiv(args):
    f, g = _read_map(args.f), _read_map(args.g)
    if args.u is None or args.v is None:
        # no witnesses: compare normal forms instead
        verdict = compare_normal_forms(
            classify(f, args.max_point_search), classify(g, args.max_point_search)
        )
        return Report({"comparison": verdict}, verdict)
    u, v = _read_map(args.u), _read_map(args.v)
    ok = equivalence_witness_check(f, g, u, v)
    return Report({"equivalent": ok}, str(ok).lower())


# ---------------------------------------------------------------------------
# self-test


def _golden_cases():
    """Fixed (name, thunk) pairs; each thunk returns True on success."""
    cases = []

    def add(name):
        def deco(fn):
            cases.append((name, fn))
            return fn

        return deco

    @add("classify x^2*y ; x*y is the monomial map (2 1;1 1)")
    def _():
        nf = classify(PlaneEndo.parse("x^2*y ; x*y"))
        return nf.class_tag == "Saa" and nf.core_word.to_text() == "g 2 1 1 1\n" and nf.verify()

    @add("config x; y; x-y is type c and not admissible")
    def _():
        cc = classify_corollary(LineConfig.parse("x; y; x-y"))
        return cc.corollary_type == "c" and not cc.admissible

    @add("alpha_1 o v_(x-1)(x-2) has n 3 and three missing lines")
    def _():
        w = parse_word("sacstd 1\nv (x-1)*(x-2)\n")
        miss = {serialize(C) for C in word_invariants(w)[0]}
        return word_n(w) == 3 and miss == {"y", "x - y", "x - 2*y"}

    @add("(x^2, y) is not birational")
    def _():
        return report(PlaneEndo.parse("x^2 ; y"))["non_contracted"] == ["x"]

    @add("(x, x*y) peels once")
    def _():
        return sac_factorize(PlaneEndo.parse("x ; x*y")).n == 1

    return cases


def _round_trip(w, mps):
    f = to_endo(w)
    fac = sac_factorize(f, mps)
    if to_endo(fac.word) != f or fac.n != word_n(w):
        return False
    nf = classify(f, mps)
    return nf.verify()


def cmd_selftest(args):
    from .corpus import line_class_corpus

    results = []
    for name, fn in _golden_cases():
        try:
            ok = bool(fn())
        except Exception as exc:  # report every failure, keep going
            ok, name = False, f"{name} ({type(exc).__name__}: {exc})"
        results.append((name, ok))
    t0 = time.perf_counter()
    corpus = line_class_corpus(args.seed, args.count)
    for i, w in enumerate(corpus):
        name = f"round trip #{i} (seed {args.seed})"
        try:
            ok = _round_trip(w, args.max_point_search)
        except (OutOfClass, Stuck) as exc:
            # classify may legitimately refuse; the factorization must not
            try:
                f = to_endo(w)
                ok = to_endo(sac_factorize(f, args.max_point_search).word) == f
            except Exception:
                ok = False
            if ok:
                name += f" (classify: {type(exc).__name__})"
        except Exception as exc:
            ok, name = False, f"{name} ({type(exc).__name__}: {exc})"
        results.append((name, ok))
    elapsed = time.perf_counter() - t0
    failed = [n for n, ok in results if not ok]
    data = {
        "seed": args.seed,
        "cases": len(results),
        "failed": failed,
        "ok": not failed,
    }
    text = [("PASS " if ok else "FAIL ") + n for n, ok in results]
    text.append(f"{len(results) - len(failed)}/{len(results)} passed in {elapsed:.1f}s")
    return Report(data, "\n".join(text), EXIT_OK if not failed else EXIT_SELFTEST)


# ---------------------------------------------------------------------------
# driver


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    common.add_argument(
        "--max-point-search",
        type=int,
        default=DEFAULT_POINT_SEARCH,
        help="search radius for rational points on curves",
    )
    p = argparse.ArgumentParser(prog="birendo", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="Jacobian, contracting and missing curves of a map")
    s.add_argument("pair", help="'P ; Q'")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("peel", parents=[common], help="factor a map into SACs and an automorphism")
    s.add_argument("map", help="'P ; Q' or a word file")
    s.add_argument("--once", action="store_true", help="peel a single SAC")
    s.set_defaults(func=cmd_peel)

    s = sub.add_parser("classify", parents=[common], help="normal form with witnesses")
    s.add_argument("map", help="'P ; Q' or a word file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("compose", parents=[common], help="compose a word file to 'P ; Q'")
    s.add_argument("wordfile", help="word file, or - for stdin")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("apply", parents=[common], help="image of a rational point")
    s.add_argument("pair")
    s.add_argument("x0")
    s.add_argument("y0")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("config-check", parents=[common], help="classify a configuration of lines")
    s.add_argument("lines", help="'l1; l2; ...'")
    s.set_defaults(func=cmd_config_check)

    s = sub.add_parser("config-example", parents=[common], help="word realizing a canonical configuration")
    s.add_argument("--type", required=True, choices=["a", "b", "c", "d"])
    s.add_argument("--params", default="", help="comma separated rationals")
    s.set_defaults(func=cmd_config_example)

    s = sub.add_parser("word-invariants", parents=[common], help="n, Miss, Cont, cent and depths of a word")
    s.add_argument("wordfile")
    s.set_defaults(func=cmd_word_invariants)

    s = sub.add_parser("verify-equiv", parents=[common], help="check u o f o v == g")
    for name in ("f", "g"):
        s.add_argument(name, help="'P ; Q' or a word file")
    for name in ("u", "v"):
        s.add_argument(name, nargs="?", help="automorphism witness; omit both to compare normal forms")
    s.set_defaults(func=cmd_verify_equiv)

    s = sub.add_parser("selftest", parents=[common], help="run the embedded golden corpus")
    s.add_argument("--count", type=int, default=20, help="number of random round-trip words")
    s.set_defaults(func=cmd_selftest)
    return p


def _error_report(code, exc, extra=None):
    data = {"error": type(exc).__name__, "message": str(exc)}
    if extra:
        data.update(extra)
    return Report(data, f"error: {type(exc).__name__}: {exc}", code)


def run(argv=None) -> Report:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        return _error_report(EXIT_PARSE, exc)
    except (PreconditionError, NotAutomorphism) as exc:
        return _error_report(EXIT_PRECONDITION, exc)
    except (OutOfClass, NotRealizable) as exc:
        return _error_report(EXIT_OUT_OF_CLASS, exc, {"diagnostics": getattr(exc, "diagnostics", {})})
    except Stuck as exc:
        residual = None if exc.residual is None else str(exc.residual)
        return _error_report(EXIT_STUCK, exc, {"residual": residual, "diagnostics": exc.diagnostics})
    except (IrrationalData, Unresolved) as exc:
        return _error_report(EXIT_IRRATIONAL, exc)


def main(argv=None) -> int:
    args_json = "--json" in (sys.argv[1:] if argv is None else argv)
    rep = run(argv)
    stream = sys.stderr if rep.code not in (EXIT_OK, EXIT_SELFTEST) and not args_json else sys.stdout
    _emit(rep, args_json, stream)
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
