"""Voting rules: identifiers, score tables, and co-winner computation.

Winner semantics follow the usual co-winner conventions: scoring rules and
maximin/Copeland pick the argmax of their score, Bucklin variants look at the
earliest prefix length where some alternative is ranked by a strict majority,
and STV eliminates the lowest plurality score each round, breaking ties
towards the smallest id (tie-breaking conventions vary, so ours is explicit).
"""

from dataclasses import dataclass
from fractions import Fraction

from .model import Profile, Ranking


class UnsupportedRuleError(ValueError):
    """Raised when an operation has no meaning / no algorithm for a rule."""


SCORING_KINDS = ("scoring", "k-approval", "plurality", "veto", "borda")
ALL_KINDS = SCORING_KINDS + ("maximin", "copeland", "bucklin", "simplified-bucklin", "stv")


@dataclass(frozen=True)
class Rule:
    """A voting rule identifier plus its parameters.

    kind        one of ALL_KINDS
    k           approval prefix length (k-approval only)
    vector      explicit scoring vector (scoring only), non-increasing ints
    alpha       tie reward for Copeland, an exact rational in [0, 1]
    """

    kind: str
    k: int | None = None
    vector: tuple[int, ...] | None = None
    alpha: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise UnsupportedRuleError(f"unknown rule kind {self.kind!r}")
        if self.kind == "k-approval":
            if self.k is None or self.k < 1:
                raise ValueError("k-approval needs k >= 1")
        if self.kind == "scoring":
            if not self.vector:
                raise ValueError("scoring rule needs a vector")
            vec = tuple(int(v) for v in self.vector)
            if any(vec[i] < vec[i + 1] for i in range(len(vec) - 1)):
                raise ValueError(f"scoring vector must be non-increasing: {vec}")
            if vec[0] <= vec[-1]:
                raise ValueError(f"scoring vector needs first entry > last entry: {vec}")
            object.__setattr__(self, "vector", vec)
        if self.kind == "copeland":
            alpha = Fraction(self.alpha)
            if not 0 <= alpha <= 1:
                raise ValueError(f"Copeland alpha must lie in [0, 1]: {alpha}")
            object.__setattr__(self, "alpha", alpha)

    # --- constructors ---------------------------------------------------

    @classmethod
    def plurality(cls) -> "Rule":
        return cls("plurality")

    @classmethod
    def veto(cls) -> "Rule":
        return cls("veto")

    @classmethod
    def borda(cls) -> "Rule":
        return cls("borda")

    @classmethod
    def k_approval(cls, k: int) -> "Rule":
        return cls("k-approval", k=k)

    @classmethod
    def scoring(cls, vector) -> "Rule":
        return cls("scoring", vector=tuple(vector))

    @classmethod
    def maximin(cls) -> "Rule":
        return cls("maximin")

    @classmethod
    def copeland(cls, alpha=Fraction(0)) -> "Rule":
        return cls("copeland", alpha=Fraction(alpha))

    @classmethod
    def bucklin(cls) -> "Rule":
        return cls("bucklin")

    @classmethod
    def simplified_bucklin(cls) -> "Rule":
        return cls("simplified-bucklin")

    @classmethod
    def stv(cls) -> "Rule":
        return cls("stv")

    # --- classification -------------------------------------------------

    @property
    def is_scoring(self) -> bool:
        return self.kind in SCORING_KINDS

    @property
    def places_c_first_safely(self) -> bool:
        """True when moving c up a manipulator ballot can never hurt c.

        Holds for every rule here except STV, whose eliminations are
        non-monotone, so witness searches must not normalise c to the top.
        """
        return self.kind != "stv"

    def vector_for(self, m: int) -> tuple[int, ...]:
        """The length-m scoring vector realising this rule."""
        if self.kind == "plurality":
            return (1,) + (0,) * (m - 1)
        if self.kind == "veto":
            return (1,) * (m - 1) + (0,)
        if self.kind == "borda":
            return tuple(range(m - 1, -1, -1))
        if self.kind == "k-approval":
            if not 1 <= self.k <= m - 1:
                raise ValueError(f"k-approval needs 1 <= k <= m-1, got k={self.k}, m={m}")
            return (1,) * self.k + (0,) * (m - self.k)
        if self.kind == "scoring":
            if len(self.vector) != m:
                raise ValueError(f"scoring vector length {len(self.vector)} != m={m}")
            return self.vector
        raise UnsupportedRuleError(f"{self.kind} is not a positional scoring rule")

    # --- text form (CLI / CSV) -------------------------------------------

    def __str__(self) -> str:
        if self.kind == "k-approval":
            return f"k-approval:{self.k}"
        if self.kind == "scoring":
            return "scoring:" + ",".join(str(v) for v in self.vector)
        if self.kind == "copeland" and self.alpha != 0:
            return f"copeland:{self.alpha}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "Rule":
        kind, _, param = text.strip().partition(":")
        kind = kind.strip().lower()
        if kind == "k-approval" or kind == "kapproval":
            if not param:
                raise ValueError("k-approval needs a parameter, e.g. k-approval:2")
            return cls.k_approval(int(param))
        if kind == "scoring":
            if not param:
                raise ValueError("scoring needs a vector, e.g. scoring:3,2,1,0")
            return cls.scoring(int(v) for v in param.split(","))
        if kind == "copeland":
            return cls.copeland(Fraction(param) if param else Fraction(0))
        if param:
            raise ValueError(f"rule {kind!r} takes no parameter")
        if kind in ALL_KINDS:
            return cls(kind)
        raise UnsupportedRuleError(f"unknown rule {text!r}")


# --- per-ranking contributions -------------------------------------------
#
# Winners are computed by summing one of these per-ballot contributions and
# reading the winner set off the aggregate.  The brute-force oracle reuses
# the same aggregation incrementally, so rule semantics live in one place.


def score_contrib(r: Ranking, vector: tuple[int, ...]) -> tuple[int, ...]:
    """Per-alternative score a single ballot awards under ``vector``."""
    scores = [0] * len(r)
    for pos, a in enumerate(r):
        scores[a] = vector[pos]
    return tuple(scores)


def margin_contrib(r: Ranking) -> tuple[int, ...]:
    """Flattened m*m pairwise matrix: +1 where row is ranked above column."""
    m = len(r)
    flat = [0] * (m * m)
    for i, x in enumerate(r):
        for y in r[i + 1 :]:
            flat[x * m + y] = 1
            flat[y * m + x] = -1
    return tuple(flat)


def topk_contrib(r: Ranking) -> tuple[int, ...]:
    """Flattened m*m prefix matrix: [x*m + k-1] = 1 iff x is in the top k."""
    m = len(r)
    flat = [0] * (m * m)
    for pos, a in enumerate(r):
        for k in range(pos, m):
            flat[a * m + k] = 1
    return tuple(flat)


def winners_from_scores(scores) -> set[int]:
    top = max(scores)
    return {a for a, s in enumerate(scores) if s == top}


def maximin_scores_from_margins(flat, m: int) -> list[int]:
    return [min(flat[x * m + y] for y in range(m) if y != x) for x in range(m)]


def copeland_scores_from_margins(flat, m: int, alpha: Fraction) -> list[Fraction]:
    scores = []
    for x in range(m):
        wins = sum(1 for y in range(m) if y != x and flat[x * m + y] > 0)
        ties = sum(1 for y in range(m) if y != x and flat[x * m + y] == 0)
        scores.append(wins + alpha * ties)
    return scores


def bucklin_round(flat, m: int, n: int) -> int:
    """Minimal k where some alternative is in the top k of a strict majority."""
    for k in range(1, m + 1):
        if any(2 * flat[x * m + k - 1] > n for x in range(m)):
            return k
    raise AssertionError("no majority round; profile must be empty")


def winners_from_topk(flat, m: int, n: int, simplified: bool) -> set[int]:
    k = bucklin_round(flat, m, n)
    counts = [flat[x * m + k - 1] for x in range(m)]
    if simplified:
        return {x for x in range(m) if 2 * counts[x] > n}
    return winners_from_scores(counts)


def stv_winner(rankings) -> int:
    """Single STV winner; each round drops the lowest plurality score,
    breaking ties towards the smallest id."""
    m = len(rankings[0])
    alive = set(range(m))
    while len(alive) > 1:
        counts = {a: 0 for a in alive}
        for r in rankings:
            for a in r:
                if a in alive:
                    counts[a] += 1
                    break
        loser = min(alive, key=lambda a: (counts[a], a))
        alive.remove(loser)
    return next(iter(alive))


# --- public operations ----------------------------------------------------


def top_k_count(p: Profile, a: int, k: int) -> int:
    """How many rankings place ``a`` within the first k positions."""
    if not 1 <= k <= p.m:
        raise ValueError(f"k must lie in 1..{p.m}, got {k}")
    return sum(1 for r in p.rankings if r.index(a) < k)


def score_table(p: Profile, rule: Rule) -> dict[int, int | Fraction]:
    """Per-alternative scores for scoring rules, maximin, and Copeland."""
    m = p.m
    if rule.is_scoring:
        vector = rule.vector_for(m)
        totals = [0] * m
        for r in p.rankings:
            for a, s in enumerate(score_contrib(r, vector)):
                totals[a] += s
        return dict(enumerate(totals))
    if rule.kind in ("maximin", "copeland"):
        flat = [0] * (m * m)
        for r in p.rankings:
            for i, v in enumerate(margin_contrib(r)):
                flat[i] += v
        if rule.kind == "maximin":
            if m == 1:
                return {0: 0}
            return dict(enumerate(maximin_scores_from_margins(flat, m)))
        return dict(enumerate(copeland_scores_from_margins(flat, m, rule.alpha)))
    raise UnsupportedRuleError(f"{rule.kind} has no positional or pairwise score table")


def winners(p: Profile, rule: Rule) -> set[int]:
    """The co-winner set of ``p`` under ``rule``; never empty."""
    m = p.m
    if m == 1:
        return {0}
    if rule.is_scoring or rule.kind in ("maximin", "copeland"):
        return winners_from_scores(list(score_table(p, rule).values()))
    if rule.kind in ("bucklin", "simplified-bucklin"):
        flat = [0] * (m * m)
        for r in p.rankings:
            for i, v in enumerate(topk_contrib(r)):
                flat[i] += v
        return winners_from_topk(flat, m, p.n, simplified=rule.kind == "simplified-bucklin")
    if rule.kind == "stv":
        return {stv_winner(p.rankings)}
    raise UnsupportedRuleError(f"no winner procedure for {rule.kind}")
