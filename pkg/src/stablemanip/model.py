"""Rankings, profiles, and Kendall-Tau arithmetic.

A ranking is a tuple of alternative ids (ints in ``range(m)``), leftmost =
most preferred.  Positions are 1-indexed throughout the public API; storage
is 0-indexed.  All values here are immutable and all operations are pure,
so everything is safe to share between workers.
"""

from dataclasses import dataclass

Ranking = tuple[int, ...]


def validate_ranking(order, m: int) -> Ranking:
    """Return ``order`` as a tuple after checking it permutes range(m)."""
    r = tuple(order)
    if len(r) != m or sorted(r) != list(range(m)):
        raise ValueError(f"not a permutation of 0..{m - 1}: {order!r}")
    return r


@dataclass(frozen=True)
class Alternative:
    """An alternative: a dense integer id plus its display label."""

    id: int
    label: str


@dataclass(frozen=True)
class Profile:
    """An ordered sequence of n rankings over a shared set of m alternatives."""

    m: int
    rankings: tuple[Ranking, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one alternative")
        if not self.rankings:
            raise ValueError("need at least one voter")
        object.__setattr__(
            self, "rankings", tuple(validate_ranking(r, self.m) for r in self.rankings)
        )

    @property
    def n(self) -> int:
        return len(self.rankings)

    @classmethod
    def from_rankings(cls, rankings) -> "Profile":
        rankings = [tuple(r) for r in rankings]
        if not rankings:
            raise ValueError("need at least one voter")
        return cls(m=len(rankings[0]), rankings=tuple(rankings))


def max_swap_distance(m: int) -> int:
    """Largest possible Kendall-Tau distance between rankings of m alternatives."""
    return m * (m - 1) // 2


@dataclass(frozen=True)
class Instance:
    """One stable-manipulation question.

    ``deltas[i]`` bounds how far voter i's true ballot may drift from
    ``profile.rankings[i]`` in Kendall-Tau distance; ``manipulators`` is the
    number of ballots the manipulator adds; ``rule`` is a rules.Rule.
    """

    profile: Profile
    c: int
    deltas: tuple[int, ...]
    manipulators: int = 1
    rule: object = None

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(int(d) for d in self.deltas))
        m, n = self.profile.m, self.profile.n
        if not 0 <= self.c < m:
            raise ValueError(f"distinguished alternative {self.c} not in 0..{m - 1}")
        if len(self.deltas) != n:
            raise ValueError(f"got {len(self.deltas)} deltas for {n} voters")
        cap = max_swap_distance(m)
        for i, d in enumerate(self.deltas):
            if not 0 <= d <= cap:
                raise ValueError(f"delta[{i}]={d} outside 0..{cap}")
        if self.manipulators < 1:
            raise ValueError("need at least one manipulator")

    @property
    def m(self) -> int:
        return self.profile.m

    @property
    def n(self) -> int:
        return self.profile.n


def rank(r: Ranking, a: int) -> int:
    """1-indexed position of alternative ``a`` in ranking ``r``."""
    try:
        return r.index(a) + 1
    except ValueError:
        raise ValueError(f"alternative {a} not in ranking {r!r}") from None


def kendall_tau(r1: Ranking, r2: Ranking) -> int:
    """Number of pairs the two rankings order oppositely.

    Equals the minimum number of adjacent swaps turning one into the other.
    Computed by inversion counting in O(m log m); tests keep an exhaustive
    pair-count oracle next to it.
    """
    if sorted(r1) != sorted(r2):
        raise ValueError(f"rankings over different alternative sets: {r1!r} vs {r2!r}")
    pos = {a: i for i, a in enumerate(r2)}
    seq = [pos[a] for a in r1]
    return _count_inversions(seq)


def _count_inversions(seq: list[int]) -> int:
    if len(seq) < 2:
        return 0
    mid = len(seq) // 2
    left, right = seq[:mid], seq[mid:]
    inv = _count_inversions(left) + _count_inversions(right)
    merged, i, j = [], 0, 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            inv += len(left) - i
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    seq[:] = merged
    return inv


def shift_right(r: Ranking, a: int, k: int) -> Ranking:
    """Move ``a`` right by min(k, m - rank) positions, preserving the rest."""
    if k < 0:
        raise ValueError("shift amount must be non-negative")
    pos = rank(r, a) - 1
    j = min(k, len(r) - 1 - pos)
    out = list(r)
    del out[pos]
    out.insert(pos + j, a)
    return tuple(out)


def shift_left(r: Ranking, a: int, k: int) -> Ranking:
    """Move ``a`` left by min(k, rank - 1) positions, preserving the rest."""
    if k < 0:
        raise ValueError("shift amount must be non-negative")
    pos = rank(r, a) - 1
    j = min(k, pos)
    out = list(r)
    del out[pos]
    out.insert(pos - j, a)
    return tuple(out)


def margin(p: Profile, x: int, y: int) -> int:
    """Pairwise margin of x over y: |{i : x before y}| - |{i : y before x}|."""
    if x == y:
        raise ValueError("margin needs two distinct alternatives")
    score = 0
    for r in p.rankings:
        score += 1 if r.index(x) < r.index(y) else -1
    return score
