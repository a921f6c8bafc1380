"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 malformed input or usage.
``--json`` switches any command to a single JSON document on stdout.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import AlgebraError, Element, mul, normal_form, slice_matrix, star, trace
from .expr import ParseError, parse_element, render_word
from .normalizer import (
    Factorization,
    NormalizerError,
    NormalizerUnitary,
    Verdict,
    build_U_sigma,
    factorize,
    lemma1_check,
    verify_U1,
    verify_U2,
    verify_U3,
)
from .scalar import format_scalar
from .subalg import (
    AlgebraSpec,
    Perm,
    SpecError,
    build_conjugator,
    enumerate_S_sim,
    equivalence_classes,
    uniformize,
    validate_spec,
)
from .words import WordError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_INPUT_ERRORS = (SpecError, ParseError, WordError, AlgebraError, NormalizerError, OSError)


class CommandResult:
    def __init__(self, code: int, report: dict, lines: list[str]):
        self.code = code
        self.report = report
        self.lines = lines


def _status(code: int) -> str:
    return {EXIT_OK: "ok", EXIT_FAIL: "fail"}.get(code, "error")


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _text(x: Element) -> str:
    return str(normal_form(x))


def _read_expr(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _load_unitary(arg: str, s: AlgebraSpec):
    """A NormalizerUnitary JSON record, or bare element text (sigma unknown)."""
    raw = _read_expr(arg)
    try:
        data = json.loads(raw)
    except json.JSONDecodeError:
        data = None
    if isinstance(data, dict):
        rec = NormalizerUnitary.from_json(data, s.n)
        if rec.sigma.k != s.k:
            raise SpecError(f"sigma acts on {rec.sigma.k} points but the spec has {s.k} blocks")
        return rec.element, rec.sigma, rec.block_exponents
    return parse_element(raw, s.n).element, None, ()


def _infer_sigma(U: Element, s: AlgebraSpec) -> Perm | None:
    blocks = [s.block_element(j) for j in range(1, s.k + 1)]
    Us = star(U)
    images = []
    for e in blocks:
        y = mul(mul(U, e), Us)
        h = next((h for h, f in enumerate(blocks, 1) if y == f), None)
        if h is None:
            return None
        images.append(h)
    try:
        return Perm(tuple(images))
    except SpecError:
        return None


def cmd_validate(args) -> CommandResult:
    s = AlgebraSpec.load(args.spec)
    rep = validate_spec(s)
    report = {
        "n": s.n,
        "k": s.k,
        "valid": rep.ok,
        "problems": rep.problems,
        "traces": [_rat(t) for t in rep.traces],
        "trace_sum": _rat(rep.trace_sum),
    }
    lines = [f"n={s.n}, k={s.k}"]
    lines += [f"  e_{j}: trace {_rat(t)}" for j, t in enumerate(rep.traces, 1)]
    if rep.ok:
        u = uniformize(s)
        report["level"] = u.level
        report["block_sizes"] = u.sizes
        lines.append(f"uniform level {u.level}, block sizes {u.sizes}")
        lines.append("valid")
        return CommandResult(EXIT_OK, report, lines)
    lines += [f"violation: {p}" for p in rep.problems]
    return CommandResult(EXIT_INPUT, report, lines)


def cmd_classes(args) -> CommandResult:
    s = AlgebraSpec.load(args.spec)
    classes = equivalence_classes(s)
    order = 1
    for c in classes:
        for t in range(2, len(c) + 1):
            order *= t
    report = {"classes": [list(c) for c in classes], "group_order": order}
    lines = [f"class {list(c)}" for c in classes] + [f"|S_~| = {order}"]
    return CommandResult(EXIT_OK, report, lines)


def cmd_build(args) -> CommandResult:
    s = AlgebraSpec.load(args.spec)
    sigma = Perm.parse(args.perm, s.k)
    rec = build_U_sigma(s, sigma)
    record = rec.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(record, fh, indent=2)
            fh.write("\n")
    lines = [
        f"sigma = {sigma}",
        f"U_sigma = {record['element']}",
        f"block exponents = {record['block_exponents']}",
    ]
    return CommandResult(EXIT_OK, record, lines)


def _verdict_json(v) -> dict:
    return {
        "condition": v.condition,
        "passed": v.passed,
        "detail": v.detail,
        "witness": None if v.witness is None else _text(v.witness),
    }


def cmd_verify(args) -> CommandResult:
    s = AlgebraSpec.load(args.spec)
    U, sigma, exps = _load_unitary(args.unitary, s)
    level = args.level if args.level is not None else s.level + 2
    checks = [verify_U1(U, s, level)]
    if sigma is None:
        sigma = _infer_sigma(U, s)
    if sigma is None:
        checks.append(Verdict("U2", False, None, "U does not permute the blocks"))
    else:
        checks.append(verify_U2(U, s, sigma))
    checks.append(verify_U3(U, s))
    results = [_verdict_json(v) for v in checks]
    if sigma is not None and checks[0]:
        found = []
        problem = None
        for j in range(1, s.k + 1):
            try:
                found.append(lemma1_check(U, s.projection(j), s.projection(sigma(j)), level))
            except NormalizerError as exc:
                problem = f"block {j}: {exc}"
                break
        if problem is None and exps and list(exps) != found:
            problem = f"recorded exponents {list(exps)} differ from computed {found}"
        results.append(
            {
                "condition": "degree",
                "passed": problem is None,
                "detail": problem or f"degrees of U e_j: {found}",
                "witness": None,
            }
        )
    else:
        results.append(
            {"condition": "degree", "passed": False, "detail": "skipped: U1 or U2 failed", "witness": None}
        )
    ok = all(r["passed"] for r in results)
    report = {"sigma": None if sigma is None else list(sigma.images), "level": level, "checks": results}
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r['passed'] else 'FAIL'}] {r['condition']}: {r['detail']}")
        if r["witness"] is not None:
            lines.append(f"    witness: {r['witness']}")
    return CommandResult(EXIT_OK if ok else EXIT_FAIL, report, lines)


def cmd_factorize(args) -> CommandResult:
    s = AlgebraSpec.load(args.spec)
    V = parse_element(_read_expr(args.element), s.n).element
    res = factorize(V, s, args.level)
    if isinstance(res, Factorization):
        report = {"normalizer": True, "sigma": list(res.sigma.images), "W": _text(res.W)}
        lines = [f"sigma = {res.sigma}", f"W = {report['W']}", "V = W U_sigma"]
        return CommandResult(EXIT_OK, report, lines)
    report = {
        "normalizer": False,
        "reason": res.reason,
        "block": res.block,
        "witness": None if res.witness is None else _text(res.witness),
    }
    lines = [f"not a normalizer: {res.reason}"]
    if res.witness is not None:
        lines.append(f"    witness: {report['witness']}")
    return CommandResult(EXIT_FAIL, report, lines)


def cmd_conjugate(args) -> CommandResult:
    a, b = AlgebraSpec.load(args.spec_a), AlgebraSpec.load(args.spec_b)
    u = build_conjugator(a, b)
    report = {"u": _text(u)}
    return CommandResult(EXIT_OK, report, [f"u = {report['u']}"])


def cmd_nf(args) -> CommandResult:
    x = parse_element(_read_expr(args.expr), args.n).element
    text = _text(x)
    return CommandResult(EXIT_OK, {"element": text}, [text])


def cmd_mul(args) -> CommandResult:
    x = parse_element(_read_expr(args.a), args.n).element
    y = parse_element(_read_expr(args.b), args.n).element
    text = _text(mul(x, y))
    return CommandResult(EXIT_OK, {"element": text}, [text])


def cmd_trace(args) -> CommandResult:
    x = parse_element(_read_expr(args.expr), args.n).element
    t = format_scalar(trace(x))
    return CommandResult(EXIT_OK, {"trace": t}, [t])


def cmd_slice(args) -> CommandResult:
    x = parse_element(_read_expr(args.expr), args.n).element
    mats = slice_matrix(x, args.level)
    report = {"level": args.level, "degrees": {}}
    lines = []
    for d, m in mats.items():
        dense = [[format_scalar(v) for v in row] for row in m.dense()]
        report["degrees"][str(d)] = {
            "rows": [render_word(w) for w in m.rows],
            "cols": [render_word(w) for w in m.cols],
            "matrix": dense,
        }
        lines.append(f"degree {d}: {m.shape[0]}x{m.shape[1]}")
        width = max(len(v) for row in dense for v in row)
        lines += ["  " + " ".join(v.rjust(width) for v in row) for row in dense]
    return CommandResult(EXIT_OK, report, lines)


def cmd_cayley(args) -> CommandResult:
    s = AlgebraSpec.load(args.spec)
    perms = enumerate_S_sim(s, args.limit)
    units = {p: build_U_sigma(s, p).element for p in perms}
    index = {p: t for t, p in enumerate(perms)}
    failures = []
    for p, U in units.items():
        for v in (verify_U1(U, s), verify_U2(U, s, p), verify_U3(U, s)):
            if not v:
                failures.append(f"sigma={p}: {v.condition} failed: {v.detail}")
        if star(U) != units[p.inverse()]:
            failures.append(f"sigma={p}: U_sigma^* != U_(sigma^-1)")
    table = []
    for p in perms:
        row = []
        for q in perms:
            prod = mul(units[p], units[q])
            r = p * q
            if prod != units[r]:
                failures.append(f"U_({p}) U_({q}) != U_({r})")
            row.append(index[r])
        table.append(row)
    report = {
        "group_order": len(perms),
        "elements": [p.format() for p in perms],
        "table": table,
        "failures": failures,
    }
    lines = [f"{t}: sigma={p}  U={_text(units[p])}" for t, p in enumerate(perms)]
    lines.append("Cayley table (row * column):")
    lines += ["  " + " ".join(str(v) for v in row) for row in table]
    lines += failures or ["group law verified"]
    return CommandResult(EXIT_FAIL if failures else EXIT_OK, report, lines)


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from resetting a --json given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS, help="emit one JSON document"
    )

    parser = argparse.ArgumentParser(
        prog="cuntzalg", description="Normalizers of corner subalgebras of O_n"
    )
    parser.add_argument("--json", action="store_true", help="emit one JSON document")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a spec file")
    p.add_argument("spec")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classes", parents=[common], help="trace classes and |S_~|")
    p.add_argument("spec")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("build", parents=[common], help="build U_sigma")
    p.add_argument("spec")
    p.add_argument("--perm", required=True, help='e.g. "1:3,2:2,3:1"')
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="check [U1]-[U3] and trace scaling")
    p.add_argument("spec")
    p.add_argument("unitary", help="normalizer JSON record or element text/file")
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("factorize", parents=[common], help="split V = W U_sigma")
    p.add_argument("spec")
    p.add_argument("element")
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("conjugate", parents=[common], help="unitary carrying spec A onto spec B")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.set_defaults(func=cmd_conjugate)

    for name, func, help_ in (
        ("nf", cmd_nf, "normal form"),
        ("trace", cmd_trace, "trace of a core element"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("expr")
        p.add_argument("--n", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("mul", parents=[common], help="product of two elements")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("slice", parents=[common], help="matrices on words of one length")
    p.add_argument("expr")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("cayley", parents=[common], help="verify the whole group of U_sigma")
    p.add_argument("spec")
    p.add_argument("--limit", type=int, default=720)
    p.set_defaults(func=cmd_cayley)
    return parser


def cli_dispatch(argv=None) -> tuple[CommandResult, bool]:
    """Run one command; returns the result and whether JSON output was asked for."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return CommandResult(code, {}, []), False
    try:
        result = args.func(args)
    except _INPUT_ERRORS as exc:
        result = CommandResult(EXIT_INPUT, {"error": str(exc)}, [f"error: {exc}"])
    result.report = {"command": args.command, "status": _status(result.code), **result.report}
    return result, args.json


def main(argv=None) -> int:
    result, as_json = cli_dispatch(argv)
    if as_json:
        print(json.dumps(result.report, indent=2))
    else:
        stream = sys.stderr if result.code == EXIT_INPUT else sys.stdout
        for line in result.lines:
            print(line, file=stream)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
