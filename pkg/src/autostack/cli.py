"""Command-line interface: ``autostack <command> [options]``.

Exit codes: 0 success (or "yes"), 1 "no" or a failed verification,
2 bad input, 3 step limit or resource limit reached.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automata import Fsa
from .errors import AutostackError, BallLimitExceeded, StepLimitExceeded
from .serialization import SchemaError, build_from_spec, load_structure, read_json, save_structure
from .stacking import RespectingStructure, StateTable, compile_state_table_graph, cross_check, with_graph
from .words import UnknownLetter, format_word, word

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, ensure_ascii=False, indent=1))
    else:
        print(text)


def cmd_solve(args) -> int:
    s = load_structure(args.structure)
    w = word(args.word)
    if args.trace:
        nf, events = s.derivation_trace(w, args.step_limit)
        lines = [format_word(nf) or "ε"]
        for ev in events:
            if ev.kind == "flow":
                lines.append(f"  flow   at {ev.position}: {ev.letter} -> {format_word(ev.replacement) or 'ε'}")
            else:
                lines.append(f"  cancel at {ev.position}: {ev.letter}")
        _emit(args, "\n".join(lines), {"normal_form": list(nf), "trace": [e.to_json() for e in events]})
    else:
        nf = s.normal_form(w, args.step_limit)
        _emit(args, format_word(nf) or "ε", {"normal_form": list(nf)})
    return EXIT_OK


def cmd_trivial(args) -> int:
    s = load_structure(args.structure)
    yes = s.is_trivial(word(args.word), args.step_limit)
    _emit(args, "yes" if yes else "no", {"trivial": yes})
    return EXIT_OK if yes else EXIT_NO


def _oracle_bundle(ref: str):
    from . import zoo
    if not ref.startswith("zoo:"):
        raise SchemaError("oracles are named as zoo:NAME")
    try:
        return zoo.get(ref[4:])
    except KeyError as exc:
        raise SchemaError(str(exc.args[0])) from None


def cmd_verify(args) -> int:
    from .verify import run_all
    s = load_structure(args.structure)
    bundle = _oracle_bundle(args.oracle)
    oracle = bundle.oracle
    if set(oracle.alphabet.letters) != set(s.alphabet.letters):
        raise SchemaError("oracle and structure alphabets differ")
    member = bundle.subgroup_member if isinstance(s, RespectingStructure) else None
    report = run_all(s, oracle, args.radius, args.nf_length, member)
    _emit(args, report.to_text(), report.to_json())
    return EXIT_OK if report.ok else EXIT_NO


def cmd_build(args) -> int:
    import os
    spec = read_json(args.spec)
    s = build_from_spec(spec, os.path.dirname(os.path.abspath(args.spec)))
    save_structure(s, args.out)
    _emit(args, f"wrote {args.out}", {"out": args.out, "bound": s.bound, "states": s.nf.n})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    s = load_structure(args.structure)
    forms = s.enumerate_normal_forms(args.max_len)
    _emit(args, "\n".join(format_word(w) or "ε" for w in forms), [list(w) for w in forms])
    return EXIT_OK


def cmd_export_dot(args) -> int:
    data = read_json(args.automaton)
    if isinstance(data, dict) and "nf" in data:
        data = data["nf"]
    m = Fsa.from_json(data)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(m.to_dot())
    _emit(args, f"wrote {args.out}", {"out": args.out})
    return EXIT_OK


def _graph_of(s):
    if s.graph_phi is not None:
        return s
    base = s.base if isinstance(s, RespectingStructure) else s
    if isinstance(base.stacking, StateTable):
        return with_graph(s, compile_state_table_graph(base))
    if getattr(base, "gog_model", None) is not None:
        from .constructions.gog import compile_gog_graph
        return with_graph(s, compile_gog_graph(base))
    raise SchemaError("no compiled stacking graph is available for this structure")


def cmd_graph_check(args) -> int:
    s = _graph_of(load_structure(args.structure))
    report = cross_check(s, args.max_len)
    bad = [[format_word(y), a, format_word(u)] for y, a, u in report.counterexamples]
    text = f"checked {report.checked} edges: {'agree' if report.ok else 'MISMATCH'}"
    if bad:
        text += "\n" + "\n".join(f"  y={y!r} a={a} phi={u!r}" for y, a, u in bad[:10])
    _emit(args, text, {"checked": report.checked, "ok": report.ok, "counterexamples": bad})
    return EXIT_OK if report.ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="autostack", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["text", "json"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def structure_cmd(name, helptext):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("--structure", required=True, help="structure file, spec file or zoo:NAME")
        c.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
        return c

    c = structure_cmd("solve", "print the normal form of a word")
    c.add_argument("--word", required=True)
    c.add_argument("--trace", action="store_true")
    c.add_argument("--step-limit", type=int)
    c.set_defaults(func=cmd_solve)

    c = structure_cmd("trivial", "decide whether a word is trivial")
    c.add_argument("--word", required=True)
    c.add_argument("--step-limit", type=int)
    c.set_defaults(func=cmd_trivial)

    c = structure_cmd("verify", "run the verification suite on a ball")
    c.add_argument("--oracle", required=True, help="zoo:NAME")
    c.add_argument("--radius", type=int, default=4)
    c.add_argument("--nf-length", type=int, default=6)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("build", help="run a combinator on a spec file and save the structure")
    c.add_argument("--spec", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    c.set_defaults(func=cmd_build)

    c = structure_cmd("enumerate", "list normal forms in shortlex order")
    c.add_argument("--max-len", type=int, required=True)
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("export-dot", help="write an automaton in Graphviz format")
    c.add_argument("--automaton", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    c.set_defaults(func=cmd_export_dot)

    c = structure_cmd("graph-check", "compare the compiled stacking graph with direct evaluation")
    c.add_argument("--max-len", type=int, default=6)
    c.set_defaults(func=cmd_graph_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StepLimitExceeded, BallLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (AutostackError, UnknownLetter, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
