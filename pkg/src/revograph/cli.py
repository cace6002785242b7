"""Command-line interface.

Subcommands: step, simulate, repl, query, verify, plan, export.  Every
subcommand accepts ``--output structured`` to emit the versioned JSON schema
instead of text.  Exit codes: 0 success, 1 domain errors (rejected actions,
counterexamples, no-model steps), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import textio
from .errors import ParseError, RevographError
from .model import Permission, Scheme, validate_state
from .oracle import valid_actions
from .planner import parse_goal, plan
from .semantics import ChainMode, query_access, query_holders
from .transition import apply_action, simulate
from .verifier import Invariant, VerifyMode, verify_step_invariant


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revograph",
        description="delegation and revocation over authorization graphs",
    )
    parser.add_argument(
        "--output",
        choices=["text", "structured"],
        default="text",
        help="output format (structured = versioned JSON)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("step", help="apply one action to a state document")
    p.add_argument("spec", help="state document path")
    p.add_argument(
        "--do",
        dest="action",
        nargs=3,
        metavar=("SCHEME", "ACTOR", "TARGET"),
        required=True,
    )

    p = sub.add_parser("simulate", help="run an action script against a state")
    p.add_argument("spec")
    p.add_argument("script")

    p = sub.add_parser("repl", help="interactive stepping")
    p.add_argument("spec")

    p = sub.add_parser("query", help="query access or permission holders")
    p.add_argument("spec")
    p.add_argument("kind", choices=["access", "holders"])
    p.add_argument("perm", nargs="?", help="permission (holders only)")
    p.add_argument(
        "--mode", choices=["ALL", "ACTIVE_ONLY"], default="ALL", help="chain mode"
    )

    p = sub.add_parser("verify", help="bounded invariant verification")
    p.add_argument("spec", nargs="?", help="root state document (default: empty)")
    p.add_argument("--n", type=int, help="principal count for the empty root")
    p.add_argument(
        "--invariant",
        required=True,
        choices=[i.value for i in Invariant],
    )
    p.add_argument("--exhaustive", type=int, metavar="DEPTH")
    p.add_argument("--random", type=int, metavar="SAMPLES")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--state-cap", type=int, default=10**6)

    p = sub.add_parser("plan", help="actions reaching a goal, cheapest first")
    p.add_argument("spec")
    p.add_argument("--actor", required=True)
    p.add_argument("--goal", required=True)

    p = sub.add_parser("export", help="export a state document")
    p.add_argument("spec")
    p.add_argument("--dot", action="store_true", help="emit DOT (default)")

    return parser


def _load_state(path: str):
    with open(path, encoding="utf-8") as fh:
        return textio.parse_spec(fh.read())


def _parse_action_tokens(tokens):
    scheme_tok, actor, target = tokens
    schemes = {s.value: s for s in Scheme}
    if scheme_tok not in schemes:
        raise ParseError(f"unknown scheme {scheme_tok!r}")
    from .model import Action

    return Action(schemes[scheme_tok], actor, target)


def _emit(args, doc: dict, text: str) -> None:
    if args.output == "structured":
        sys.stdout.write(textio.dump_structured(doc))
    else:
        sys.stdout.write(text)


def _cmd_step(args) -> int:
    state = _load_state(args.spec)
    action = _parse_action_tokens(args.action)
    post, delta = apply_action(state, action)
    _emit(
        args,
        textio.envelope(
            "step",
            action=textio.action_doc(action),
            state=textio.state_doc(post),
            delta=textio.delta_doc(delta),
        ),
        textio.serialize_spec(post) + _delta_text(delta),
    )
    return 0


def _delta_text(delta) -> str:
    lines = []
    for tag, triples in (
        ("deleted", delta.deleted),
        ("added", delta.added),
        ("inactivated", delta.inactivated),
    ):
        for (g, e, p) in sorted(triples, key=lambda t: (t[0], t[1], t[2].value)):
            lines.append(f"# {tag} {g} {e} {p.value}")
    for (g, e) in sorted(delta.neg_added):
        lines.append(f"# neg-added {g} {e}")
    return "\n".join(lines) + ("\n" if lines else "")


def _cmd_simulate(args) -> int:
    state = _load_state(args.spec)
    with open(args.script, encoding="utf-8") as fh:
        actions = textio.parse_script(fh.read())
    _final, deltas = simulate(state, actions)
    steps = []
    text_parts = []
    current = state
    for k, (action, delta) in enumerate(zip(actions, deltas)):
        current, _ = apply_action(current, action)
        steps.append(
            {
                "index": k,
                "action": textio.action_doc(action),
                "state": textio.state_doc(current),
                "delta": textio.delta_doc(delta),
            }
        )
        text_parts.append(f"# step {k}: do {action.scheme.value} {action.actor} {action.target}\n")
        text_parts.append(textio.serialize_spec(current))
    _emit(
        args,
        textio.envelope("simulate", initial=textio.state_doc(state), steps=steps),
        "".join(text_parts),
    )
    return 0


def _cmd_repl(args) -> int:
    state = _load_state(args.spec)
    out = sys.stdout
    out.write(textio.serialize_spec(state))
    out.write("# commands: do <scheme> <actor> <target> | show | dot | actions | quit\n")
    out.flush()
    for raw in sys.stdin:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            break
        try:
            if line == "show":
                out.write(textio.serialize_spec(state))
            elif line == "dot":
                out.write(textio.export_dot(state))
            elif line == "actions":
                for action in valid_actions(state):
                    out.write(f"{action}\n")
            else:
                parts = line.split()
                if len(parts) == 4 and parts[0] == "do":
                    parts = parts[1:]
                if len(parts) != 3:
                    out.write("# expected: do <scheme> <actor> <target>\n")
                    out.flush()
                    continue
                action = _parse_action_tokens(parts)
                state, delta = apply_action(state, action)
                out.write(textio.serialize_spec(state))
                out.write(_delta_text(delta))
        except RevographError as exc:
            out.write(f"# error[{exc.code}]: {exc}\n")
        out.flush()
    return 0


def _cmd_query(args) -> int:
    state = _load_state(args.spec)
    if args.kind == "access":
        principals = sorted(query_access(state))
    else:
        if not args.perm:
            raise ParseError("holders needs a permission")
        try:
            perm = Permission[args.perm]
        except KeyError:
            raise ParseError(f"unknown permission {args.perm!r}") from None
        principals = sorted(
            query_holders(state, perm, ChainMode[args.mode])
        )
    _emit(
        args,
        textio.envelope(
            "query", query=args.kind, perm=args.perm, principals=principals
        ),
        " ".join(principals) + "\n",
    )
    return 0


def _cmd_verify(args) -> int:
    if (args.exhaustive is None) == (args.random is None):
        raise ParseError("choose exactly one of --exhaustive or --random")
    root = None
    n = args.n
    if args.spec:
        root = _load_state(args.spec)
        n = len(root.principals)
    elif n is None:
        raise ParseError("need a spec document or --n")
    if args.exhaustive is not None:
        report = verify_step_invariant(
            args.invariant,
            n,
            VerifyMode.EXHAUSTIVE,
            depth=args.exhaustive,
            root=root,
            state_cap=args.state_cap,
        )
    else:
        report = verify_step_invariant(
            args.invariant,
            n,
            VerifyMode.RANDOM,
            samples=args.random,
            seed=args.seed,
            state_cap=args.state_cap,
        )
    doc = textio.envelope(
        "verify",
        invariant=report.invariant,
        mode=report.mode,
        params={k: v for k, v in report.params.items() if v is not None},
        result=report.result,
        states_checked=report.states_checked,
        steps_checked=report.steps_checked,
        undefined_steps=len(report.undefined_steps),
    )
    text = (
        f"{report.result} invariant={report.invariant} mode={report.mode} "
        f"states={report.states_checked} steps={report.steps_checked} "
        f"undefined={len(report.undefined_steps)}\n"
    )
    if report.witness:
        doc["witness"] = {
            "state": textio.state_doc(report.witness.state),
            "action": textio.action_doc(report.witness.action),
            "violations": [str(v) for v in report.witness.violations],
        }
        text += "# witness state:\n" + textio.serialize_spec(report.witness.state)
        text += f"# witness action: {report.witness.action}\n"
        for v in report.witness.violations:
            text += f"# violation: {v}\n"
    _emit(args, doc, text)
    return 0 if report.result == "HOLDS" else 1


def _cmd_plan(args) -> int:
    state = _load_state(args.spec)
    goal = parse_goal(args.goal)
    results = plan(state, args.actor, goal)
    doc = textio.envelope(
        "plan",
        actor=args.actor,
        goal=str(goal),
        results=[
            {
                "action": textio.action_doc(r.action),
                "cost": r.cost,
                "state": textio.state_doc(r.post_state),
            }
            for r in results
        ],
    )
    if results:
        text = "".join(
            f"cost={r.cost} do {r.action.scheme.value} {r.action.actor} {r.action.target}\n"
            for r in results
        )
    else:
        text = "# no single action achieves this goal\n"
    _emit(args, doc, text)
    return 0


def _cmd_export(args) -> int:
    state = _load_state(args.spec)
    dot = textio.export_dot(state)
    _emit(args, textio.envelope("export", dot=dot), dot)
    return 0


_COMMANDS = {
    "step": _cmd_step,
    "simulate": _cmd_simulate,
    "repl": _cmd_repl,
    "query": _cmd_query,
    "verify": _cmd_verify,
    "plan": _cmd_plan,
    "export": _cmd_export,
}


def cli(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return 2
    except RevographError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error[no-such-file]: {exc}\n")
        return 2


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
