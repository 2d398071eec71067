"""Lineups: compliant subsets of 3r+6 yard points."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from ..exceptions import InvalidYard
from ..geometry import cross
from ..patterns import COMPLIANT, PatternMatcher, detect_compliant_violation
from .graphs import PsiInstance, psi_brute_force
from .verify import verify_yard
from .yard import PAD, Yard, build_yard, key_str

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class Lineup:
    indices: tuple
    size: int

    def __post_init__(self):
        if len(self.indices) != self.size:
            raise ValueError("lineup size does not match its indices")


def guard_triples(Y: Yard) -> list:
    """Row-index triples whose left guards and right guards are both collinear."""
    rows = Y.rows
    out = []
    for a, b, c in itertools.combinations(range(len(rows)), 3):
        ra, rb, rc = rows[a], rows[b], rows[c]
        if (cross(ra.left_guard, rb.left_guard, rc.left_guard) == 0
                and cross(ra.right_guard, rb.right_guard, rc.right_guard) == 0):
            out.append((a, b, c))
    return out


def find_lineup(Y: Yard, *, check: bool = True):
    """Fence, all guards and one inmate per row, searched under the collinear-triple rule.

    Every candidate meeting the rule is validated for compliance before it is
    returned, since the rule alone does not rule out every forbidden pattern.
    """
    if check:
        bad = verify_yard(Y)
        if bad:
            raise InvalidYard(bad)
    S = Y.pointset()
    roles = Y.roles()
    fixed = roles["fence"] + roles["left"] + roles["right"]
    choices = roles["inmates"]
    r = len(Y.rows)
    triples = guard_triples(Y)
    pts = S.points
    # rows with the most constraints first, then fewest candidates
    weight = [0] * r
    for t in triples:
        for i in t:
            weight[i] += 1
    order = sorted(range(r), key=lambda i: (-weight[i], len(choices[i]), i))
    rank = {row: t for t, row in enumerate(order)}
    due: dict = {}
    for t in triples:
        due.setdefault(max(t, key=rank.get), []).append(t)
    pick = [None] * r
    matcher = PatternMatcher(S)

    def rec(t):
        if t == r:
            cand = tuple(sorted(fixed + pick))
            if matcher.violation(COMPLIANT, cand) is None:
                return cand
            return None
        row = order[t]
        for i in choices[row]:
            pick[row] = i
            if all(cross(pts[pick[a]], pts[pick[b]], pts[pick[c]]) == 0 for a, b, c in due.get(row, ())):
                found = rec(t + 1)
                if found is not None:
                    return found
        pick[row] = None
        return None

    found = rec(0)
    if found is None:
        return None
    lineup = Lineup(found, Y.lineup_size)
    assert detect_compliant_violation(S.subset(found)) is None
    return lineup


def find_lineup_bruteforce(Y: Yard):
    """Every (3r+6)-subset of a small yard, in lexicographic order."""
    S = Y.pointset()
    n = len(S)
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute-force lineup search is limited to {BRUTE_FORCE_LIMIT} points, yard has {n}")
    k = Y.lineup_size
    matcher = PatternMatcher(S)
    for combo in itertools.combinations(range(n), k):
        if matcher.has_property(COMPLIANT, combo):
            return Lineup(combo, k)
    return None


def lineup_assignment(Y: Yard, lineup: Lineup) -> dict:
    """Pattern vertex -> host vertex read off the inmates a lineup selects."""
    roles = Y.roles()
    chosen = set(lineup.indices)
    out = {}
    for row, members in zip(Y.rows, roles["inmates"]):
        if row.key[0] != "v":
            continue
        for i, origin in zip(members, row.inmate_origin):
            if i in chosen and origin != PAD:
                out[row.key[1]] = origin[1]
    return dict(sorted(out.items()))


def lineup_structure_violations(Y: Yard, lineup: Lineup) -> list:
    """Deviations from: all fence points, all guards, one inmate per row, size 3r+6."""
    roles = Y.roles()
    chosen = set(lineup.indices)
    out = []
    if len(lineup.indices) != 3 * len(Y.rows) + 6:
        out.append("size")
    if not set(roles["fence"]) <= chosen:
        out.append("fence")
    if not (set(roles["left"]) | set(roles["right"])) <= chosen:
        out.append("guards")
    for row, members in zip(Y.rows, roles["inmates"]):
        if len(chosen.intersection(members)) != 1:
            out.append(f"inmates:{key_str(row.key)}")
    return out


@dataclass
class EquivalenceReport:
    agree: bool
    psi: dict | None
    lineup: Lineup | None
    yard: Yard

    def __bool__(self):
        return self.agree

    def bundle(self) -> str:
        """JSON counterexample bundle (instance, yard points, both answers)."""
        from ..io import format_yard

        return json.dumps({
            "psi": self.psi,
            "lineup": None if self.lineup is None else list(self.lineup.indices),
            "yard": format_yard(self.yard),
        }, sort_keys=True)


def equivalence_check(inst: PsiInstance, **build_kwargs) -> EquivalenceReport:
    """Do the PSI answer and the lineup answer of the built yard agree?"""
    Y = build_yard(inst, **build_kwargs)
    psi = psi_brute_force(inst)
    lineup = find_lineup(Y, check=False)
    return EquivalenceReport((psi is None) == (lineup is None), psi, lineup, Y)
