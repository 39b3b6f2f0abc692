"""Command-line frontend.

Subcommands: check, zpartition, activation, query, focus, export-dot,
session-show.  Exit codes: 0 success (or: consistent), 1 domain negative
(inconsistent belief base), 2 usage or parse errors.

Decimal output rounds half-up to two places; ``--exact`` switches the
table view to exact rationals, and the TSV view always prints exact
rationals.  Thresholds and rates given as decimals are converted to exact
rationals (2.3 means 23/10 precisely).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from .activation import activation_profile, initial_base_levels, label_network, select
from .engine import EngineConfig, Session, answer_query, validate_schedule
from .errors import CondactError, InconsistentBaseError, ParseError, SessionFormatError
from .inference import BeliefBase, cached_z_partition, iterated_focus
from .logic import Conditional, Signature
from .memory import ActivationState, reset_state
from .parsing import parse_belief_base, parse_conditional, parse_session, serialize_session


def format_decimal(value: Fraction, places: int = 2) -> str:
    """Fixed-point rendering with round-half-up (non-negative values)."""
    scale = 10 ** places
    shifted = value * scale + Fraction(1, 2)
    n = shifted.numerator // shifted.denominator
    return f"{n // scale}.{n % scale:0{places}d}"


def format_rational(value: Fraction) -> str:
    return str(value)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational or decimal: {text!r}")


def _schedule(text: str) -> tuple[Fraction, ...]:
    try:
        values = tuple(Fraction(part.strip()) for part in text.split(","))
        validate_schedule(values)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad schedule {text!r}: {exc}")
    return values


def _load_base(path: str) -> BeliefBase:
    text = Path(path).read_text(encoding="utf-8")
    document = parse_belief_base(text)
    return BeliefBase(document.signature, document.conditionals)


def _parse_query(text: str, signature: Signature) -> Conditional:
    return parse_conditional(text, signature=signature)


def _write_atomic(path: str, content: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".condact-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(content)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _ids_line(ids) -> str:
    return " ".join(ids) if ids else "(none)"


def cmd_check(args) -> int:
    base = _load_base(args.base)
    try:
        cached_z_partition(base)
    except InconsistentBaseError as exc:
        print("inconsistent")
        print("stuck: " + _ids_line(exc.stuck))
        return 1
    print("consistent")
    return 0


def cmd_zpartition(args) -> int:
    base = _load_base(args.base)
    try:
        partition = cached_z_partition(base)
    except InconsistentBaseError as exc:
        print("inconsistent")
        print("stuck: " + _ids_line(exc.stuck))
        return 1
    for rank, layer in enumerate(partition.layers):
        print(f"layer {rank}: " + _ids_line(layer))
    if partition.vacuous:
        print("vacuous: " + _ids_line(partition.vacuous))
    return 0


def _load_state_for(base: BeliefBase, session_path: str | None):
    """Session state for read-only commands; ids must match exactly."""
    partition = cached_z_partition(base)
    session = Session.start(base)
    if session_path:
        state = parse_session(Path(session_path).read_text(encoding="utf-8"))
        if state.ids != frozenset(base.ids):
            raise SessionFormatError(
                f"session ids do not match belief base {sorted(frozenset(base.ids) ^ state.ids)}"
            )
        session.state = state
    return session, partition


def cmd_activation(args) -> int:
    base = _load_base(args.base)
    query = _parse_query(args.query, base.signature)
    session, partition = _load_state_for(base, args.session)

    labels = label_network(session.network, query)
    profile = activation_profile(base, session.state.base_levels, session.associations, labels)
    selected = select(profile, args.theta)

    header = ("id", "Z", "B", "W", "S", "A", "selected" if args.format == "tsv" else "sel")
    rows = []
    for c in base.conditionals:
        entry = profile.entries[c.id]
        rank = partition.rank_by_id[c.id]
        if args.format == "tsv":
            rows.append((
                c.id,
                str(rank),
                format_rational(entry.base_level),
                format_rational(entry.weighting),
                format_rational(entry.spreading),
                format_rational(entry.total),
                "1" if c.id in selected else "0",
            ))
        elif args.exact:
            rows.append((
                c.id,
                str(rank),
                format_rational(entry.base_level),
                format_rational(entry.weighting),
                format_rational(entry.spreading),
                format_rational(entry.total),
                "*" if c.id in selected else "",
            ))
        else:
            # paper-style: rationals for B and W, decimals for S and A
            rows.append((
                c.id,
                str(rank),
                format_rational(entry.base_level),
                format_rational(entry.weighting),
                format_decimal(entry.spreading),
                format_decimal(entry.total),
                "*" if c.id in selected else "",
            ))

    if args.format == "tsv":
        print("\t".join(header))
        for row in rows:
            print("\t".join(row))
    else:
        widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
                  for i in range(len(header))]
        print("  ".join(header[i].ljust(widths[i]) for i in range(len(header))).rstrip())
        for row in rows:
            print("  ".join(row[i].ljust(widths[i]) for i in range(len(header))).rstrip())
    return 0


def cmd_query(args) -> int:
    base = _load_base(args.base)
    query = _parse_query(args.query, base.signature)

    state = None
    reset_happened = False
    if args.session and os.path.exists(args.session):
        loaded = parse_session(Path(args.session).read_text(encoding="utf-8"))
        if loaded.ids == frozenset(base.ids):
            state = loaded
        else:
            partition = cached_z_partition(base)
            state = reset_state(initial_base_levels(partition), previous=loaded)
            reset_happened = True

    session = Session.start(base, state)
    config = EngineConfig(
        theta=args.theta,
        delta=args.delta,
        schedule=args.schedule,
        forgetting_enabled=not args.no_forget,
    )
    response, trace = answer_query(session, query, config)

    print(response.value)
    for step in trace.steps:
        print(f"theta {format_rational(step.theta)}: {_ids_line(step.selected)}"
              f" -> {step.response.value}")
    print("selection: " + _ids_line(trace.update_selection))

    if args.session and not args.no_forget:
        if reset_happened:
            print("note: belief base changed, session base levels were reset", file=sys.stderr)
        _write_atomic(args.session, serialize_session(session.state))
    return 0


def cmd_focus(args) -> int:
    base = _load_base(args.base)
    query = _parse_query(args.query, base.signature)
    ids = base.order_ids(iterated_focus(base, query, args.index))
    if ids:
        print(" ".join(ids))
    return 0


def cmd_export_dot(args) -> int:
    base = _load_base(args.base)
    session = Session.start(base)
    labels = None
    if args.query:
        query = _parse_query(args.query, base.signature)
        labels = label_network(session.network, query)

    lines = ["graph activation_network {"]
    for atom in sorted(session.network.vertices):
        if labels is None:
            lines.append(f"  {atom};")
        else:
            tau = format_rational(labels.tau[atom])
            step = labels.step[atom]
            step_text = "∞" if step is None else str(step)
            lines.append(f'  {atom} [label="{atom} τ={tau} ({step_text})"];')
    for a, b in sorted(session.network.edges):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    print("\n".join(lines))
    return 0


def cmd_session_show(args) -> int:
    known = None
    if args.base:
        known = frozenset(_load_base(args.base).ids)
    state = parse_session(Path(args.session).read_text(encoding="utf-8"), known_ids=known)
    print(f"queries: {state.query_count}")
    if state.resets:
        print("resets: " + " ".join(state.resets))
    for cid in sorted(state.base_levels):
        level = state.base_levels[cid]
        print(f"{cid}\t{level.numerator}/{level.denominator}\t{format_decimal(level)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="condact",
        description="Query conditional belief bases through an activation-ranked focus.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_base(p):
        p.add_argument("--base", required=True, help="belief-base file")

    check = commands.add_parser("check", help="report whether the belief base is consistent")
    add_base(check)
    check.set_defaults(func=cmd_check)

    zpart = commands.add_parser("zpartition", help="print the tolerance partition layers")
    add_base(zpart)
    zpart.set_defaults(func=cmd_zpartition)

    activation = commands.add_parser("activation", help="print the per-conditional activation table")
    add_base(activation)
    activation.add_argument("query", help="query conditional, e.g. '(f | c && !s)'")
    activation.add_argument("--session", help="session file supplying base levels")
    activation.add_argument("--theta", type=_rational, default=Fraction(0),
                            help="selection threshold (rational or decimal, default 0)")
    activation.add_argument("--format", choices=("table", "tsv"), default="table")
    activation.add_argument("--exact", action="store_true",
                            help="print exact rationals instead of 2-decimal rounding")
    activation.set_defaults(func=cmd_activation)

    query = commands.add_parser("query", help="answer a query, updating the session")
    add_base(query)
    query.add_argument("query", help="query conditional, e.g. '(f | c && !s)'")
    query.add_argument("--session", help="session file to read and (atomically) update")
    thresholds = query.add_mutually_exclusive_group()
    thresholds.add_argument("--theta", type=_rational, default=Fraction(0),
                            help="initial threshold (rational or decimal, default 0)")
    thresholds.add_argument("--schedule", type=_schedule, default=None,
                            help="comma-separated descending thresholds ending at 0")
    query.add_argument("--delta", type=_rational, default=Fraction(1, 5),
                       help="forgetting rate in [0,1) (default 1/5)")
    query.add_argument("--no-forget", action="store_true",
                       help="do not update base levels or the session file")
    query.set_defaults(func=cmd_query)

    focus = commands.add_parser("focus", help="print the i-th syntactic focus of a query")
    add_base(focus)
    focus.add_argument("query")
    focus.add_argument("-i", "--index", type=int, default=0, help="focus iteration (default 0)")
    focus.set_defaults(func=cmd_focus)

    export = commands.add_parser("export-dot", help="emit the association network as DOT")
    add_base(export)
    export.add_argument("query", nargs="?", default=None,
                        help="optional query; annotates vertices with triggering values")
    export.set_defaults(func=cmd_export_dot)

    show = commands.add_parser("session-show", help="print a session file")
    show.add_argument("--session", required=True)
    show.add_argument("--base", help="belief-base file to validate ids against")
    show.set_defaults(func=cmd_session_show)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SessionFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistentBaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CondactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
