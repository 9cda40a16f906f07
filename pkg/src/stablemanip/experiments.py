"""Monte-Carlo harness: how often is a uniformly random profile stably
manipulable, per rule and perturbation budget delta?

Per-trial RNG streams derive from (seed, trial index) alone, so a trial's
profile is the same across deltas, rules, and worker counts; grids over
delta therefore inherit the decision's delta-monotonicity exactly.
"""

import concurrent.futures
from dataclasses import dataclass, replace

import numpy as np

from . import deciders, oracle
from .model import Instance, Profile, max_swap_distance
from .rules import Rule

RNG_ALGORITHM = "numpy PCG64, per-trial stream SeedSequence([seed, trial])"

ORACLE_RULE_KINDS = ("copeland", "stv")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def random_profile(m: int, n: int, stream: np.random.Generator) -> Profile:
    """n independent uniform rankings via Fisher-Yates permutation."""
    return Profile(
        m, tuple(tuple(int(x) for x in stream.permutation(m)) for _ in range(n))
    )


@dataclass(frozen=True)
class ExperimentConfig:
    rule: Rule
    m: int
    n: int
    delta: int
    manipulators: int = 1
    trials: int = 100
    seed: int = 0
    budget: int = oracle.DEFAULT_EXHAUSTIVE_BUDGET
    exclude_winners: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if not 0 <= self.delta <= max_swap_distance(self.m):
            raise ValueError(f"delta {self.delta} outside 0..{max_swap_distance(self.m)}")


@dataclass(frozen=True)
class ExperimentRow:
    rule: str
    m: int
    n: int
    delta: int
    trials: int
    seed: int
    yes_count: int
    fraction: float
    error: str | None = None


def decide_instance(inst: Instance, budget: int = oracle.DEFAULT_EXHAUSTIVE_BUDGET):
    """Dedicated polynomial decider where one exists, exhaustive otherwise."""
    if inst.rule.kind in ORACLE_RULE_KINDS:
        return oracle.decide_exhaustive(inst, budget)
    return deciders.decide(inst)


def is_stably_manipulable(
    p: Profile,
    delta: int,
    manipulators: int,
    rule: Rule,
    budget: int = oracle.DEFAULT_EXHAUSTIVE_BUDGET,
    exclude_winners: bool = False,
) -> bool:
    """True iff some alternative (any, including a current co-winner) admits
    a YES instance.  ``exclude_winners`` restricts the quantifier to current
    non-winners for sensitivity studies."""
    from .rules import winners  # local import keeps module load light

    skip = winners(p, rule) if exclude_winners else frozenset()
    deltas = (delta,) * p.n
    for c in range(p.m):
        if c in skip:
            continue
        inst = Instance(p, c, deltas, manipulators, rule)
        if decide_instance(inst, budget).is_yes:
            return True
    return False


def _run_trial(cfg: ExperimentConfig, trial: int) -> bool:
    profile = random_profile(cfg.m, cfg.n, trial_rng(cfg.seed, trial))
    return is_stably_manipulable(
        profile,
        cfg.delta,
        cfg.manipulators,
        cfg.rule,
        budget=cfg.budget,
        exclude_winners=cfg.exclude_winners,
    )


def run_config(cfg: ExperimentConfig, jobs: int = 1) -> ExperimentRow:
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial, [cfg] * cfg.trials, range(cfg.trials)))
        yes = sum(results)
    else:
        yes = sum(_run_trial(cfg, t) for t in range(cfg.trials))
    return ExperimentRow(
        rule=str(cfg.rule),
        m=cfg.m,
        n=cfg.n,
        delta=cfg.delta,
        trials=cfg.trials,
        seed=cfg.seed,
        yes_count=yes,
        fraction=yes / cfg.trials,
    )


def run_grid(configs, jobs: int = 1) -> list[ExperimentRow]:
    """One row per config, in input order.  A failing config yields a row
    with its error recorded instead of aborting the rest of the grid."""
    rows = []
    for cfg in configs:
        try:
            rows.append(run_config(cfg, jobs=jobs))
        except Exception as exc:  # noqa: BLE001 - recorded per-row by design
            rows.append(
                ExperimentRow(
                    rule=str(cfg.rule),
                    m=cfg.m,
                    n=cfg.n,
                    delta=cfg.delta,
                    trials=cfg.trials,
                    seed=cfg.seed,
                    yes_count=0,
                    fraction=float("nan"),
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return rows


def sweep(rule: Rule, m: int, n: int, deltas, trials: int = 100, seed: int = 0, **kw):
    """Configs for one rule over a delta sweep, sharing per-trial profiles."""
    base = ExperimentConfig(rule=rule, m=m, n=n, delta=0, trials=trials, seed=seed, **kw)
    return [replace(base, delta=d) for d in deltas]
