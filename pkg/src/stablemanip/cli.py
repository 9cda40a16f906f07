"""Command-line interface.

Subcommands:
    decide      decide one instance file (exit 0 = YES, 1 = NO, 2 = error)
    winners     print the co-winner set of a profile file
    experiment  run a manipulability grid and write the results CSV

Instance file format: ``key=value`` header lines (rule=..., c=..., delta=...,
l=...), a blank line, then one ranking per line as whitespace-separated
labels, leftmost most preferred.  ``delta`` is a single integer (applied to
every voter) or a comma list with one entry per voter.
"""

import argparse
import sys

from . import __version__
from .deciders import decide as decide_polynomial
from .experiments import RNG_ALGORITHM, ExperimentConfig, ExperimentRow, run_grid
from .model import Instance, Profile
from .oracle import ResourceBudgetError, decide_exhaustive
from .rules import Rule, UnsupportedRuleError, winners


class CliError(Exception):
    """Input problem that should terminate with exit status 2."""


# --- instance files ---------------------------------------------------------


def parse_instance_text(text: str):
    """Returns (header dict, labels id->label, Profile).

    Labels are resolved to dense ids in sorted label order, so formatting a
    parsed file reproduces canonical files byte for byte.
    """
    lines = text.splitlines()
    header: dict[str, str] = {}
    body_start = 0
    has_header = bool(lines) and "=" in lines[0]
    if has_header:
        for idx, line in enumerate(lines):
            if not line.strip():
                body_start = idx + 1
                break
            if "=" not in line:
                raise CliError(f"line {idx + 1}: expected key=value in header, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().lower()
            if key in header:
                raise CliError(f"line {idx + 1}: duplicate header key {key!r}")
            header[key] = value.strip()
        else:
            raise CliError("missing blank line between header and rankings")

    rows = []
    for idx in range(body_start, len(lines)):
        line = lines[idx].strip()
        if not line:
            continue
        rows.append((idx + 1, line.split()))
    if not rows:
        raise CliError("no ranking lines found")

    labels = sorted(rows[0][1])
    if len(set(labels)) != len(labels):
        raise CliError(f"line {rows[0][0]}: duplicate label in ranking")
    ids = {label: i for i, label in enumerate(labels)}
    rankings = []
    for lineno, tokens in rows:
        if sorted(tokens) != labels:
            raise CliError(
                f"line {lineno}: ranking does not permute the label set {labels}"
            )
        rankings.append(tuple(ids[tok] for tok in tokens))
    return header, labels, Profile(m=len(labels), rankings=tuple(rankings))


def _parse_deltas(raw: str, n: int) -> tuple[int, ...]:
    try:
        parts = [int(v) for v in raw.split(",")]
    except ValueError:
        raise CliError(f"bad delta value {raw!r}") from None
    if len(parts) == 1:
        return (parts[0],) * n
    if len(parts) != n:
        raise CliError(f"delta list has {len(parts)} entries for {n} voters")
    return tuple(parts)


def parse_instance_file(path: str):
    """Returns (Instance, labels)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    header, labels, profile = parse_instance_text(text)
    for key in ("rule", "c"):
        if key not in header:
            raise CliError(f"header is missing {key}=")
    try:
        rule = Rule.parse(header["rule"])
    except (ValueError, UnsupportedRuleError) as exc:
        raise CliError(str(exc)) from None
    if header["c"] not in labels:
        raise CliError(f"c={header['c']!r} is not one of the ballot labels {labels}")
    deltas = _parse_deltas(header.get("delta", "0"), profile.n)
    try:
        ell = int(header.get("l", "1"))
    except ValueError:
        raise CliError(f"bad manipulator count l={header.get('l')!r}") from None
    try:
        inst = Instance(
            profile=profile,
            c=labels.index(header["c"]),
            deltas=deltas,
            manipulators=ell,
            rule=rule,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None
    return inst, labels


def format_instance(inst: Instance, labels: list[str]) -> str:
    """Canonical text form; parse(format(x)) == x."""
    lines = [
        f"rule={inst.rule}",
        f"c={labels[inst.c]}",
        "delta=" + ",".join(str(d) for d in inst.deltas),
        f"l={inst.manipulators}",
        "",
    ]
    for r in inst.profile.rankings:
        lines.append(" ".join(labels[a] for a in r))
    return "\n".join(lines) + "\n"


# --- results CSV ------------------------------------------------------------

CSV_HEADER = "rule,m,n,delta,trials,seed,yes_count,fraction"


def format_results_csv(rows) -> str:
    out = [
        f"# stablemanip {__version__}",
        f"# rng: {RNG_ALGORITHM}",
        CSV_HEADER,
    ]
    ok = [r for r in rows if r.error is None]
    for r in rows:
        if r.error is not None:
            out.append(f"# error: rule={r.rule} m={r.m} n={r.n} delta={r.delta}: {r.error}")
    for r in sorted(ok, key=lambda r: (r.rule, r.m, r.n, r.delta)):
        out.append(
            f"{r.rule},{r.m},{r.n},{r.delta},{r.trials},{r.seed},{r.yes_count},{r.fraction:.4f}"
        )
    return "\n".join(out) + "\n"


def parse_results_csv(text: str) -> list[ExperimentRow]:
    rows = []
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not body or body[0] != CSV_HEADER:
        raise CliError(f"results CSV must start with header {CSV_HEADER!r}")
    for ln in body[1:]:
        rule, m, n, delta, trials, seed, yes, frac = ln.split(",")
        rows.append(
            ExperimentRow(rule, int(m), int(n), int(delta), int(trials), int(seed), int(yes), float(frac))
        )
    return rows


# --- subcommands ------------------------------------------------------------


def _cmd_decide(args) -> int:
    inst, labels = parse_instance_file(args.instance)
    try:
        if args.oracle:
            decision = decide_exhaustive(inst, budget=args.budget)
        else:
            decision = decide_polynomial(inst)
    except UnsupportedRuleError as exc:
        raise CliError(f"{exc}; rerun with --oracle for the exhaustive search") from None
    except (ResourceBudgetError, ValueError) as exc:
        raise CliError(str(exc)) from None
    if decision.is_yes:
        print("YES")
        for r in decision.witness:
            print("  " + " ".join(labels[a] for a in r))
        return 0
    print("NO")
    if decision.counterexample is not None:
        tried, adversary = decision.counterexample
        print("  defeated manipulator ballot(s):")
        for r in tried:
            print("    " + " ".join(labels[a] for a in r))
        print("  by adversary profile:")
        for r in adversary:
            print("    " + " ".join(labels[a] for a in r))
    return 1


def _cmd_winners(args) -> int:
    try:
        with open(args.profile, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {args.profile}: {exc}") from None
    header, labels, profile = parse_instance_text(text)
    rule_text = args.rule or header.get("rule")
    if not rule_text:
        raise CliError("no rule: pass --rule or put rule= in the file header")
    try:
        rule = Rule.parse(rule_text)
        winner_ids = winners(profile, rule)
    except (ValueError, UnsupportedRuleError) as exc:
        raise CliError(str(exc)) from None
    print(" ".join(sorted(labels[a] for a in winner_ids)))
    return 0


def _cmd_experiment(args) -> int:
    try:
        rules = [Rule.parse(r) for r in args.rules.split(",")]
        deltas = [int(d) for d in args.deltas.split(",")]
    except (ValueError, UnsupportedRuleError) as exc:
        raise CliError(str(exc)) from None
    configs = [
        ExperimentConfig(
            rule=rule,
            m=args.m,
            n=args.n,
            delta=delta,
            manipulators=args.manipulators,
            trials=args.trials,
            seed=args.seed,
            budget=args.budget,
            exclude_winners=args.nonwinners_only,
        )
        for rule in rules
        for delta in deltas
    ]
    rows = run_grid(configs, jobs=args.jobs)
    text = format_results_csv(rows)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)
    failed = [r for r in rows if r.error is not None]
    for r in failed:
        print(f"warning: {r.rule} delta={r.delta} failed: {r.error}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablemanip",
        description="Stable manipulation deciders, oracles, and experiments.",
    )
    parser.add_argument("--version", action="version", version=f"stablemanip {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="decide one instance file")
    p_decide.add_argument("instance", help="instance file path")
    p_decide.add_argument(
        "--oracle", action="store_true", help="force the exhaustive oracle"
    )
    p_decide.add_argument("--budget", type=int, default=200_000_000)
    p_decide.set_defaults(func=_cmd_decide)

    p_win = sub.add_parser("winners", help="print the co-winner set of a profile")
    p_win.add_argument("profile", help="profile or instance file path")
    p_win.add_argument("--rule", help="rule identifier, e.g. borda or k-approval:2")
    p_win.set_defaults(func=_cmd_winners)

    p_exp = sub.add_parser("experiment", help="run a manipulability grid, emit CSV")
    p_exp.add_argument("--rules", required=True, help="comma list, e.g. plurality,borda")
    p_exp.add_argument("--m", type=int, required=True)
    p_exp.add_argument("--n", type=int, required=True)
    p_exp.add_argument("--deltas", required=True, help="comma list, e.g. 0,1,2")
    p_exp.add_argument("--trials", type=int, default=100)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--manipulators", type=int, default=1)
    p_exp.add_argument("--out", help="output CSV path (default: stdout)")
    p_exp.add_argument("--jobs", type=int, default=1)
    p_exp.add_argument("--budget", type=int, default=200_000_000)
    p_exp.add_argument(
        "--nonwinners-only",
        action="store_true",
        help="only count profiles manipulable towards a current non-winner",
    )
    p_exp.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
