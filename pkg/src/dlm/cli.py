"""Command-line front end.

Exit codes: 0 valid / exists, 1 invalid / does not exist, 2 error or budget
exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .decide import decide_dlm, decide_lg_inverse_free
from .invelim import decide_lg, eliminate_inverses
from .lift import lift_preorder, verify_preorder
from .normalform import NormalizationBlowup
from .oracle import OracleBudgetExceeded, enumerate_endomorphisms, enumerate_ordered_monoids, oracle_dlm_validity
from .preorder import Budget, BudgetExceeded, PreorderRel
from .rightorder import FiniteMonoid, MonoidError, OrderQuery, right_order_exists_finite_monoid, right_order_exists_free
from .terms import TermSyntaxError, parse_statement, render_statement

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _verdict_text(v) -> str:
    lines = [f"{v.statement}: {'VALID' if v.is_valid else 'INVALID'}"]
    if "eliminated" in v.details:
        lines.append("inverse-free equivalents:")
        lines += [f"  {s}" for s in v.details["eliminated"]]
    if v.countermodel is not None:
        m = v.countermodel
        lines.append(f"failing inequality: {render_statement(m.inequality)}")
        size = f" (chain of size {m.chain_size})" if m.chain_size else ""
        lines.append(f"countermodel: {m.kind}{size}, base point {m.base_point}")
        for name in sorted(m.assignment):
            lines.append(f"  {name} ↦ {_fmt_value(m.assignment[name])}")
        lines.append(f"  lhs = {m.lhs_value} > {m.rhs_value} = rhs")
    lines.append(f"search nodes: {v.nodes}")
    return "\n".join(lines)


def _fmt_value(f):
    from .models import ChainEndo, PLBijection

    if isinstance(f, ChainEndo):
        return str(f)
    if isinstance(f, PLBijection):
        if not f.breakpoints:
            return "identity"
        return "PL through " + ", ".join(f"({x}, {y})" for x, y in f.breakpoints)
    return str(f)


def _budget(args) -> Budget:
    return Budget(args.max_nodes, args.max_seconds)


def cmd_decide(args, fn) -> int:
    s = parse_statement(args.statement, allow_reserved=True)
    v = fn(s, _budget(args), workers=args.threads)
    _emit(args, v.to_json(), _verdict_text(v))
    return EXIT_OK if v.is_valid else EXIT_NO


def cmd_eliminate(args) -> int:
    s = parse_statement(args.statement)
    out = [render_statement(t) for t in eliminate_inverses(s)]
    _emit(args, {"statement": render_statement(s), "eliminated": out}, "\n".join(out))
    return EXIT_OK


def cmd_right_order_free(args) -> int:
    with open(args.constraints) as fh:
        q = OrderQuery.parse(fh.read())
    ans = right_order_exists_free(q, _budget(args))
    payload = {
        "exists": ans.exists,
        "statement": render_statement(ans.statement),
    }
    if ans.verdict.countermodel is not None:
        payload["countermodel"] = ans.verdict.countermodel.to_json()
    text = f"right order {'exists' if ans.exists else 'does not exist'} (via {ans.statement})"
    _emit(args, payload, text)
    return EXIT_OK if ans.exists else EXIT_NO


def cmd_right_order_monoid(args) -> int:
    with open(args.monoid) as fh:
        m = FiniteMonoid.from_json(json.load(fh))
    order = right_order_exists_finite_monoid(m, _budget(args))
    payload = {"exists": order is not None, "order": list(order) if order else None}
    if order is None:
        text = "no right order exists"
    else:
        names = m.labels or tuple(map(str, range(m.size)))
        text = "right order: " + " < ".join(names[a] for a in order)
    _emit(args, payload, text)
    return EXIT_OK if order is not None else EXIT_NO


def cmd_oracle(args) -> int:
    r = oracle_dlm_validity(args.statement, args.chain)
    payload = {"valid": r.is_valid, "chain_size": args.chain, "checked": r.checked}
    text = f"valid in End({args.chain})" if r.is_valid else f"fails in End({args.chain})"
    if not r.is_valid:
        payload["assignment"] = {k: list(v.map) for k, v in r.assignment.items()}
        payload["point"] = r.point
        text += " at point {}: {}".format(
            r.point, ", ".join(f"{k} ↦ {v}" for k, v in r.assignment.items())
        )
    _emit(args, payload, text)
    return EXIT_OK if r.is_valid else EXIT_NO


def cmd_enumerate(args) -> int:
    if args.what == "endos":
        items = [list(f.map) for f in enumerate_endomorphisms(args.n)]
        text = "\n".join("⟨" + ",".join(map(str, m)) + "⟩" for m in items)
    else:
        ms = enumerate_ordered_monoids(args.n)
        items = [{"unit": m.unit, "table": [list(r) for r in m.table]} for m in ms]
        text = "\n".join(f"unit={m.unit} table={[list(r) for r in m.table]}" for m in ms)
    _emit(args, {"count": len(items), "items": items}, f"{text}\ncount: {len(items)}")
    return EXIT_OK


def cmd_lift(args) -> int:
    with open(args.preorder) as fh:
        p = PreorderRel.from_json(json.load(fh))
    lifted = lift_preorder(p)
    report = verify_preorder(lifted, strict=True)
    payload = lifted.to_json()
    payload["chain"] = lifted.describe()
    payload["violations"] = report
    _emit(args, payload, lifted.describe().replace("≺", "◁"))
    return EXIT_OK if not report else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-nodes", type=int, default=10**7)
    common.add_argument("--max-seconds", type=float, default=60.0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(
        prog="dlm", description="Decide equations of distributive ℓ-monoids and ℓ-groups."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (
        ("decide-dlm", "validity in distributive ℓ-monoids (inverse-free)"),
        ("decide-lg", "validity in ℓ-groups"),
        ("decide-lg-invfree", "validity in ℓ-groups via strict preorders (inverse-free)"),
        ("eliminate", "print inverse-free equivalents"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("statement")

    p = sub.add_parser("right-order-free", parents=[common], help="right orders on free monoids")
    p.add_argument("--constraints", required=True, help="file with one 'word < word' per line")
    p = sub.add_parser("right-order-monoid", parents=[common], help="right orders on a finite monoid")
    p.add_argument("--monoid", required=True, help='JSON {"size", "unit", "table"}')
    p = sub.add_parser("oracle", parents=[common], help="brute-force check in End(N)")
    p.add_argument("--chain", type=int, required=True)
    p.add_argument("statement")
    p = sub.add_parser("enumerate", parents=[common], help="list End(N) or ordered monoids of size N")
    p.add_argument("what", choices=("endos", "ordered-monoids"))
    p.add_argument("n", type=int)
    p = sub.add_parser("lift", parents=[common], help="strictly invariant lift of a preorder")
    p.add_argument("--preorder", required=True, help='JSON {"universe": [...], "le": [[...]]}')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    if args.max_nodes <= 0 or args.max_seconds <= 0 or args.threads <= 0:
        print("error: budgets and thread counts must be positive", file=sys.stderr)
        return EXIT_ERROR
    commands = {
        "decide-dlm": lambda a: cmd_decide(a, decide_dlm),
        "decide-lg": lambda a: cmd_decide(a, decide_lg),
        "decide-lg-invfree": lambda a: cmd_decide(a, decide_lg_inverse_free),
        "eliminate": cmd_eliminate,
        "right-order-free": cmd_right_order_free,
        "right-order-monoid": cmd_right_order_monoid,
        "oracle": cmd_oracle,
        "enumerate": cmd_enumerate,
        "lift": cmd_lift,
    }
    try:
        return commands[args.command](args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e} after {e.nodes} nodes", file=sys.stderr)
        return EXIT_ERROR
    except (TermSyntaxError, ValueError, MonoidError, NormalizationBlowup,
            OracleBudgetExceeded, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
