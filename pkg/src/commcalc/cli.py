"""Command-line interface.

Every command builds a result ``{"command", "status", "payload"}``; ``--json``
prints it as JSON (integers as decimal strings), ``--pretty`` (the default)
prints a readable summary.  Exit status is 0 iff ``status == "ok"``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import intlin
from .cockcroft import CockcroftCertificate, DetectionError, PropositionFailure, detect_h3, e_class, proposition_check
from .magnus import (
    DEFAULT_DEGREE_BOUND,
    LieVector,
    WeightTooLow,
    bracket_string,
    lcs_weight,
    leading_lie_class,
    lyndon_basis,
    magnus_expand,
)
from .membership import (
    SearchBounds,
    SearchProved,
    Witness,
    check_witness,
    exponent_balance,
    search_membership,
    trace_to_witness,
)
from .presentation import (
    Presentation,
    PresentationError,
    complex_homology,
    efficiency_report,
    exponent_matrix,
    parse_presentation,
)
from .words import Alphabet, Word, WordError, format_word, parse_word


class UsageError(Exception):
    pass


class CommandFailed(Exception):
    def __init__(self, kind: str, payload: dict):
        self.kind = kind
        self.payload = payload
        super().__init__(kind)


def _ints(obj):
    """Recursively render ints (not bools) as decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _ints(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_ints(v) for v in obj]
    return obj


# -- argument helpers -----------------------------------------------------------

def _alphabet(args) -> Alphabet:
    if not args.gens:
        raise UsageError("--gens is required")
    try:
        return Alphabet(args.gens)
    except WordError as exc:
        raise UsageError(str(exc)) from exc


def _word(text: str, alphabet: Alphabet) -> Word:
    try:
        return parse_word(text, alphabet)
    except WordError as exc:
        raise UsageError(f"cannot parse word {text!r}: {exc}") from exc


def _presentation(args) -> Presentation:
    try:
        if getattr(args, "file", None):
            return parse_presentation(Path(args.file).read_text())
        alphabet = _alphabet(args)
        r = [_word(t, alphabet) for t in (args.r or [])]
        s = [_word(t, alphabet) for t in (args.s or [])]
        if s:
            return Presentation.split(alphabet, r, s)
        return Presentation(alphabet, tuple(r))
    except (PresentationError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def _bounds(args) -> SearchBounds:
    b = SearchBounds(strategy=getattr(args, "strategy", "shortest"))
    text = getattr(args, "bounds", None)
    if not text:
        return b
    for item in text.split(","):
        key, _, value = item.partition("=")
        try:
            if key.strip() == "max_length":
                b.max_length = int(value)
            elif key.strip() == "max_steps":
                b.max_steps = int(value)
            else:
                raise UsageError(f"unknown bound {key!r}; use max_length=N,max_steps=N")
        except ValueError as exc:
            raise UsageError(f"bad bound {item!r}") from exc
    if b.max_steps < 1 or (b.max_length is not None and b.max_length < 1):
        raise UsageError("bounds must be positive")
    return b


def _names_of(word: Sequence[int], names: Sequence[str]) -> str:
    return "".join(names[g] for g in word)


def _vector_payload(v: LieVector, names: Sequence[str]) -> dict:
    return {
        "degree": v.degree,
        "coords": v.to_dict(names),
        "terms": [f"{c}*{bracket_string(w, names)}" for w, c in sorted(v.coords.items())],
    }


def _evidence_payload(ev, relators: Sequence[Word]) -> dict:
    out = {"kind": type(ev).__name__, "states": getattr(ev, "states", 0)}
    if isinstance(ev, SearchProved):
        w = trace_to_witness(ev, relators)
        out.update(
            steps=len(ev.trace),
            witness=w.to_dict(),
            witness_valid=check_witness(ev.start, w, relators),
            exponent_balance={str(k): v for k, v in exponent_balance(w, relators).items()},
        )
    else:
        out["reason"] = ev.reason
    return out


# -- commands -------------------------------------------------------------------

def cmd_expand(args) -> dict:
    a = _alphabet(args)
    w = _word(args.word, a)
    s = magnus_expand(w, args.degree)
    terms = {_names_of(m, a.names): c for m, c in sorted(s.terms.items(), key=lambda t: (len(t[0]), t[0])) if m}
    return {"word": format_word(w), "degree": args.degree, "constant": s.terms.get((), 0), "terms": terms}


def cmd_weight(args) -> dict:
    a = _alphabet(args)
    w = _word(args.word, a)
    res = lcs_weight(w, args.dmax)
    return {"word": format_word(w), "weight": str(res), "kind": res.kind, "dmax": args.dmax}


def cmd_class(args) -> dict:
    a = _alphabet(args)
    w = _word(args.word, a)
    try:
        v = leading_lie_class(w, args.degree)
    except WeightTooLow as exc:
        raise CommandFailed("weight_too_low", {"word": format_word(w), "degree": args.degree, "message": str(exc)})
    return {"word": format_word(w), **_vector_payload(v, a.names), "zero": v.is_zero()}


def cmd_lyndon(args) -> dict:
    a = _alphabet(args)
    words = lyndon_basis(a.rank, args.degree)
    return {
        "rank": a.rank,
        "degree": args.degree,
        "count": len(words),
        "words": [_names_of(w, a.names) for w in words],
        "bracketings": [bracket_string(w, a.names) for w in words],
    }


def cmd_snf(args) -> dict:
    try:
        m = intlin.parse_matrix(args.matrix)
    except ValueError as exc:
        raise UsageError(f"bad matrix: {exc}") from exc
    d = intlin.smith_normal_form(m)
    return {
        "invariant_factors": list(d.invariant_factors),
        "rank": d.rank,
        "left": d.left,
        "right": d.right,
        "diagonal": d.diagonal(),
    }


def cmd_homology(args) -> dict:
    p = _presentation(args)
    return {"presentation": p.to_text(), "exponent_matrix": exponent_matrix(p), **complex_homology(p).to_dict()}


def _certificate(p: Presentation, dmax: int) -> CockcroftCertificate:
    try:
        return proposition_check(p, dmax)
    except PropositionFailure as exc:
        payload = {"presentation": p.to_text(), "message": str(exc)}
        if hasattr(exc, "weights"):
            payload["weights"] = [str(w) for w in exc.weights]
        if hasattr(exc, "dependency"):
            payload["dependency"] = exc.dependency
            payload["class_matrix"] = exc.matrix
        raise CommandFailed(exc.kind, payload) from exc


def cmd_cockcroft(args) -> dict:
    p = _presentation(args)
    cert = _certificate(p, args.dmax)
    return {
        "presentation": p.to_text(),
        "certificate": cert.to_dict(),
        "homology": complex_homology(p).to_dict(),
        "efficiency": efficiency_report(p, cert).to_dict(),
    }


def _relators_for(args, p: Presentation) -> tuple[Word, ...]:
    if args.part == "all":
        return p.relators
    try:
        return p.part(args.part)
    except PresentationError as exc:
        raise UsageError(str(exc)) from exc


def cmd_member(args) -> dict:
    p = _presentation(args)
    rels = _relators_for(args, p)
    mu = _word(args.word, p.alphabet)
    ev = search_membership(mu, rels, _bounds(args))
    payload = {"word": format_word(mu), "part": args.part, "evidence": _evidence_payload(ev, rels)}
    if not ev.proved:
        raise CommandFailed("unknown", payload)
    return payload


def cmd_witness_check(args) -> dict:
    p = _presentation(args)
    rels = _relators_for(args, p)
    mu = _word(args.word, p.alphabet)
    try:
        w = Witness.from_dict(json.loads(Path(args.witness).read_text()), p.alphabet)
        valid = check_witness(mu, w, rels)
    except (OSError, ValueError, KeyError, IndexError, WordError) as exc:
        raise UsageError(f"bad witness: {exc}") from exc
    payload = {
        "word": format_word(mu),
        "valid": valid,
        "exponent_balance": {str(k): v for k, v in exponent_balance(w, rels).items()},
    }
    if not valid:
        raise CommandFailed("invalid_witness", payload)
    return payload


def cmd_e_class(args) -> dict:
    p = _presentation(args)
    cert = _certificate(p, args.dmax)
    mu = _word(args.word, p.alphabet)
    try:
        img = e_class(mu, args.degree, cert)
    except (DetectionError, WeightTooLow) as exc:
        raise CommandFailed("precondition", {"word": format_word(mu), "message": str(exc)}) from exc
    return {
        "word": format_word(mu),
        "certificate_n": cert.n,
        "target_degree": img.target_degree,
        "target_exact": img.target_exact,
        "vector": _vector_payload(img.vector, p.alphabet.names),
        "note": "membership of the word in R and S is assumed, not checked",
    }


# -- demos ----------------------------------------------------------------------

def _run_demo(p: Presentation, mu: Word, base_mu: Word, scalar: int, formula: str, args) -> dict:
    names = p.alphabet.names
    cert = _certificate(p, args.dmax)
    bounds = _bounds(args)
    ev_r = search_membership(mu, p.r, bounds)
    ev_s = search_membership(mu, p.s, bounds)
    payload = {
        "presentation": p.to_text(),
        "mu": format_word(mu),
        "certificate": cert.to_dict(),
        "efficiency": efficiency_report(p, cert).to_dict(),
        "membership": {"R": _evidence_payload(ev_r, p.r), "S": _evidence_payload(ev_s, p.s)},
    }
    try:
        report = detect_h3(mu, cert, (ev_r, ev_s), args.dmax)
    except DetectionError as exc:
        payload["message"] = str(exc)
        raise CommandFailed("membership_unproved", payload) from exc
    m = report.image.target_degree
    base = leading_lie_class(base_mu, m)
    k = report.image.vector.scalar_multiple_of(base)
    payload.update(
        detection=report.to_dict(names),
        e_vector=_vector_payload(report.image.vector, names),
        base_vector=_vector_payload(base, names),
        scalar_expected=scalar,
        scalar_found=k,
        formula=formula,
        matches_formula=k == scalar and not base.is_zero(),
    )
    if not report.detected or k != scalar:
        raise CommandFailed("mismatch", payload)
    return payload


def example1_presentation(a: int, b: int, c: int) -> tuple[Presentation, Word]:
    A = Alphabet("x,y,z")
    p = Presentation.split(A, [parse_word(f"[x^{a},y]", A)], [parse_word(f"[y^{b},z]", A), parse_word(f"[z^{c},x]", A)])
    mu = parse_word(f"x^{a} z^{c} x^{-a} y^{b} x^{a} y^{-b} z^{-c} y^{b} x^{-a} y^{-b}", A)
    return p, mu


def example2_presentation(c: int) -> tuple[Presentation, Word]:
    A = Alphabet("x,y")
    p = Presentation.split(A, [parse_word(f"[x,[x,y^{c}]]", A)], [parse_word(f"[y,[x,y^{c}]]", A)])
    mu = parse_word(f"[x,y^{c}] x y^{c} x^-1 [y^{c},x] x [x,y^{c}] y^{-c} [y^{c},x] x^-1", A)
    return p, mu


def demo_example1(args) -> dict:
    a, b, c = args.a, args.b, args.c
    if a * b * c == 0:
        raise UsageError("example1 needs abc != 0")
    p, mu = example1_presentation(a, b, c)
    _, base_mu = example1_presentation(1, 1, 1)
    payload = _run_demo(p, mu, base_mu, a * b * c, "[[x,y],z]^(abc)", args)
    payload["parameters"] = {"a": a, "b": b, "c": c}
    payload["reference_class"] = _vector_payload(leading_lie_class(parse_word("[[x,y],z]", p.alphabet), 3), p.alphabet.names)
    return payload


def demo_example2(args) -> dict:
    c = args.c
    if c == 0:
        raise UsageError("example2 needs c != 0")
    p, mu = example2_presentation(c)
    _, base_mu = example2_presentation(1)
    payload = _run_demo(p, mu, base_mu, c * c, "[y,[x,[x,y]]]^(c^2)", args)
    payload["parameters"] = {"c": c}
    payload["reference_class"] = _vector_payload(
        leading_lie_class(parse_word("[y,[x,[x,y]]]", p.alphabet), 4), p.alphabet.names
    )
    return payload


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="commcalc", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="output", action="store_const", const="json")
    g.add_argument("--pretty", dest="output", action="store_const", const="pretty")
    fmt.set_defaults(output="pretty")

    gens = argparse.ArgumentParser(add_help=False)
    gens.add_argument("--gens", help="comma separated generator names, e.g. x,y,z")

    pres = argparse.ArgumentParser(add_help=False, parents=[gens])
    pres.add_argument("--file", help="presentation file (gens:/r:/s: lines)")
    pres.add_argument("--r", action="append", help="relator in the r part (repeatable)")
    pres.add_argument("--s", action="append", help="relator in the s part (repeatable)")

    dmax = argparse.ArgumentParser(add_help=False)
    dmax.add_argument("--dmax", type=int, default=DEFAULT_DEGREE_BOUND)

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--bounds", help="max_length=N,max_steps=N")
    search.add_argument("--strategy", choices=["shortest", "bfs"], default="shortest")

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, parents, help_):
        p = sub.add_parser(name, parents=[fmt, *parents], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("expand", cmd_expand, [gens], "truncated Magnus expansion")
    p.add_argument("--word", required=True)
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE_BOUND)
    p = add("weight", cmd_weight, [gens, dmax], "lower central series weight")
    p.add_argument("--word", required=True)
    p = add("class", cmd_class, [gens], "class in F_n/F_{n+1} in Lyndon coordinates")
    p.add_argument("--word", required=True)
    p.add_argument("--degree", type=int, required=True)
    p = add("lyndon-basis", cmd_lyndon, [gens], "Lyndon words and their standard bracketings")
    p.add_argument("--degree", type=int, required=True)
    p = add("snf", cmd_snf, [], "Smith normal form of an integer matrix")
    p.add_argument("--matrix", required=True, help='rows separated by ";", entries by ","')
    add("homology", cmd_homology, [pres], "homology of the presentation complex")
    add("cockcroft-check", cmd_cockcroft, [pres, dmax], "certify the Cockcroft property")
    p = add("member", cmd_member, [pres, search], "bounded normal-closure membership search")
    p.add_argument("--word", required=True)
    p.add_argument("--part", choices=["r", "s", "all"], default="all")
    p = add("witness-check", cmd_witness_check, [pres], "check a product-of-conjugates witness")
    p.add_argument("--word", required=True)
    p.add_argument("--part", choices=["r", "s", "all"], default="all")
    p.add_argument("--witness", required=True, help="JSON file {factors: [{conjugator, relator, exponent}]}")
    p = add("e-class", cmd_e_class, [pres, dmax], "image of an element of R&S in F_m/F_{m+1}")
    p.add_argument("--word", required=True)
    p.add_argument("--degree", type=int, required=True)

    demo = sub.add_parser("demo", help="worked examples")
    demo_sub = demo.add_subparsers(dest="example", required=True)
    d1 = demo_sub.add_parser("example1", parents=[fmt, dmax, search])
    d1.add_argument("--a", type=int, default=1)
    d1.add_argument("--b", type=int, default=1)
    d1.add_argument("--c", type=int, default=1)
    d1.set_defaults(func=demo_example1)
    d2 = demo_sub.add_parser("example2", parents=[fmt, dmax, search])
    d2.add_argument("--c", type=int, default=1)
    d2.set_defaults(func=demo_example2)
    return parser


def command_echo(args) -> str:
    return args.command if args.command != "demo" else f"demo {args.example}"


def run(argv: Sequence[str] | None = None) -> tuple[dict, int]:
    """Parse ``argv`` and execute; returns ``(result, exit_code)``.

    Raises :class:`UsageError` for bad input.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    func: Callable = args.func
    try:
        payload = func(args)
        status = "ok"
    except CommandFailed as exc:
        payload, status = exc.payload, exc.kind
    result = {"command": command_echo(args), "status": status, "payload": _ints(payload)}
    return result, 0 if status == "ok" else 1


def _pretty(result: dict) -> str:
    lines = [f"{result['command']}: {result['status']}"]

    def walk(obj, indent):
        pad = "  " * indent
        for k, v in obj.items():
            if isinstance(v, dict) and v:
                lines.append(f"{pad}{k}:")
                walk(v, indent + 1)
            elif isinstance(v, list) and v and any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}{k}:")
                for item in v:
                    if isinstance(item, dict):
                        lines.append(f"{pad}  - " + ", ".join(f"{ik}={_scalar(iv)}" for ik, iv in item.items()))
                    else:
                        lines.append(f"{pad}  - {_scalar(item)}")
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")

    walk(result["payload"], 1)
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, str) and "\n" in v:
        return v.strip().replace("\n", "; ")
    if v == [] or v == {}:
        return "none"
    if isinstance(v, list):
        return ", ".join(_scalar(x) for x in v)
    return str(v)


def main(argv: Sequence[str] | None = None) -> int:
    parser_args = list(sys.argv[1:] if argv is None else argv)
    try:
        result, code = run(parser_args)
    except UsageError as exc:
        print(f"commcalc: error: {exc}", file=sys.stderr)
        return 2
    output = "json" if "--json" in parser_args else "pretty"
    if output == "json":
        print(json.dumps(result, indent=2))
    else:
        print(_pretty(result))
    if code:
        print(f"commcalc: {result['status']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
