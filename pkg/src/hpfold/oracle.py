"""Exhaustive enumeration of self-avoiding conformations for short chains.

Only meant as ground truth for testing: the walk count grows roughly as
4.15^n on the triangular lattice.
"""
from dataclasses import dataclass

from .hp_model import HYDROPHOBIC
from .lattice import STEPS

DEFAULT_CAP = 16


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    optimal_energy: int
    optimal_count: int
    total_valid: int
    example_moves: tuple = ()


def _dfs(seq, first_moves, turn_sides):
    """Depth-first search over walks starting with one of ``first_moves``.

    ``turn_sides``, when given, restricts the first move that differs
    from the first one. Returns ``(best_contacts, straight_and_turned)``
    where the second item holds ``[valid, optimal]`` counts separately
    for the single straight walk and all others, so that symmetry
    factors can be applied exactly.
    """
    n = len(seq)
    is_h = [r == HYDROPHOBIC for r in seq.residues]
    pos = [(0, 0)] * n
    occ = {(0, 0): 0}
    moves = [0] * (n - 1)
    best = [-1, ()]
    counts = {}  # turned -> [valid, contacts histogram]

    def record(contacts, turned):
        bucket = counts.setdefault(turned, {})
        bucket[contacts] = bucket.get(contacts, 0) + 1
        if contacts > best[0]:
            best[0] = contacts
            best[1] = tuple(moves)

    def go(k, contacts, turned):
        # k: index of the residue to place next
        if k == n:
            record(contacts, turned)
            return
        pu, pv = pos[k - 1]
        if k == 1:
            options = first_moves
        elif turn_sides is not None and not turned:
            options = (moves[0],) + turn_sides
        else:
            options = range(1, 7)
        for d in options:
            du, dv = STEPS[d]
            q = (pu + du, pv + dv)
            if q in occ:
                continue
            gain = 0
            if is_h[k]:
                for eu, ev in STEPS[1:]:
                    j = occ.get((q[0] + eu, q[1] + ev))
                    if j is not None and j <= k - 2 and is_h[j]:
                        gain += 1
            occ[q] = k
            pos[k] = q
            moves[k - 1] = d
            go(k + 1, contacts + gain, turned or (k > 1 and d != moves[0]))
            del occ[q]

    if n == 1:
        record(0, False)
    else:
        go(1, 0, False)
    return best, counts


def enumerate_optimal(seq, symmetry_reduction=False, cap=DEFAULT_CAP):
    """Exact minimum energy over all conformations of ``seq``.

    With ``symmetry_reduction`` the first move is fixed to direction 1
    (six rotations) and the first turn to the left side, directions 2 or
    3 (one reflection); counts are scaled back by the orbit sizes, which
    are exact because only the all-straight walk is its own mirror image.
    """
    n = len(seq)
    if n > cap:
        raise CapExceeded(f"chain length {n} exceeds enumeration cap {cap}")
    if symmetry_reduction and n > 1:
        best, counts = _dfs(seq, (1,), (2, 3))
        scale = {False: 6, True: 12}
    else:
        best, counts = _dfs(seq, tuple(range(1, 7)), None)
        scale = {False: 1, True: 1}
    total = 0
    optimal = 0
    for turned, hist in counts.items():
        total += scale[turned] * sum(hist.values())
        optimal += scale[turned] * hist.get(best[0], 0)
    return EnumerationResult(n, -best[0], optimal, total, best[1])


def verify_best(seq, claimed, cap=DEFAULT_CAP):
    return int(claimed) == enumerate_optimal(seq, symmetry_reduction=True, cap=cap).optimal_energy


def iter_conformations(n):
    """Yield every self-avoiding move vector for a chain of ``n`` residues."""
    occ = {(0, 0)}
    moves = []

    def go(p):
        if len(moves) == n - 1:
            yield tuple(moves)
            return
        for d in range(1, 7):
            du, dv = STEPS[d]
            q = (p[0] + du, p[1] + dv)
            if q in occ:
                continue
            occ.add(q)
            moves.append(d)
            yield from go(q)
            moves.pop()
            occ.discard(q)

    yield from go((0, 0))
