"""Hybrid genetic algorithm with tabu-guided crossover and local search.

The population evolves by roulette-wheel parent selection, a
reproduction step that tries every crossover cut point at most once per
parent pair (the tabu list) and polishes children by improvement-only
local search, and elitist replacement keeping the m best of parents and
children.

With the default ``tie_break="parents"`` a population whose members all
share one energy is frozen until some child is strictly better.
``tie_break="offspring"`` lets equal-energy children replace parents,
which keeps such a population drifting.
"""
import logging
import time
import warnings
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .hp_model import HpSequence, decode, energy, is_valid
from .lattice import ORIGIN, STEPS

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaParams:
    m: int = 100
    p_m: float = 0.8
    reproduction_budget: int | None = None  # None: n
    ls_budget: int | None = None  # None: 200 * n
    max_generations: int = 500
    time_limit: float | None = None
    seed: int = 0
    target_energy: int | None = None
    pairs_per_generation: int | None = None  # None: 2 * m
    p_c: float | None = None
    tie_break: str = "parents"  # or "offspring": children win energy ties in replacement

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("population size m must be at least 2")
        if not 0.0 <= self.p_m <= 1.0:
            raise ValueError("p_m must lie in [0, 1]")
        for name in ("reproduction_budget", "ls_budget"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.pairs_per_generation is not None and self.pairs_per_generation < 1:
            raise ValueError("pairs_per_generation must be at least 1")
        if self.max_generations < 0:
            raise ValueError("max_generations must be non-negative")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.tie_break not in ("parents", "offspring"):
            raise ValueError("tie_break must be 'parents' or 'offspring'")
        if self.p_c is not None:
            warnings.warn(
                "p_c is ignored: crossover is applied at every non-tabu cut point",
                stacklevel=3,
            )

    def kmax(self, n):
        return self.reproduction_budget if self.reproduction_budget is not None else n

    def ls_iterations(self, n):
        return self.ls_budget if self.ls_budget is not None else 200 * n

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Individual:
    moves: tuple
    energy: int

    @cached_property
    def conf(self):
        return decode(self.moves)


@dataclass
class RunRecord:
    sequence_id: str
    sequence: str
    params: dict
    seed: int
    best_energy: int
    best_moves: tuple
    generations: int
    wall_ms: float
    trace: list = field(default_factory=list)

    def to_dict(self):
        d = asdict(self)
        d["best_moves"] = list(self.best_moves)
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["best_moves"] = tuple(d["best_moves"])
        return cls(**d)


def _hmask(seq):
    return np.frombuffer(seq.residues.encode(), dtype=np.uint8) == ord("H")


def _kernel_seed(rng):
    return int(rng.integers(0, 2**32))


def make_individual(seq, moves):
    conf = decode(moves, len(seq))
    return Individual(conf.moves, energy(seq, conf))


def random_conformation(seq, rng):
    """Grow a random self-avoiding walk one residue at a time.

    Directions for the next residue are drawn without replacement until
    a free cell is found; a dead end restarts the walk from residue 2.
    """
    n = len(seq)
    while True:
        occupied = {ORIGIN}
        u, v = ORIGIN
        moves = []
        for _ in range(n - 1):
            for d in rng.permutation(6) + 1:
                du, dv = STEPS[d]
                if (u + du, v + dv) not in occupied:
                    u += du
                    v += dv
                    occupied.add((u, v))
                    moves.append(int(d))
                    break
            else:
                break
        if len(moves) == n - 1:
            return decode(moves, n)


def mutate(seq, conf, u, rng, report=None):
    """Replace move ``u`` (1-based) by another direction, keeping the walk valid.

    The five alternatives are tried in random order and the first giving
    a self-avoiding walk wins. If none does, ``conf`` comes back
    unchanged and ``report`` (a list, when given) receives
    ``("no valid neighbor", u)``.
    """
    n = len(conf.points)
    if not 1 <= u <= n - 1:
        raise ValueError(f"mutation index {u} outside 1..{n - 1}")
    old = conf.moves[u - 1]
    alternatives = [d for d in range(1, 7) if d != old]
    for k in rng.permutation(5):
        moves = list(conf.moves)
        moves[u - 1] = alternatives[k]
        if is_valid(moves):
            return decode(moves, n)
    if report is not None:
        report.append(("no valid neighbor", u))
    return conf


def local_search(seq, start, budget, rng):
    """Hill climb from ``start`` with single-move mutations.

    Returns the best Individual found; its energy never exceeds the
    start's.
    """
    n = len(seq)
    if budget < 1 or n < 2:
        return start
    moves, e, _ = _kernels.local_search(
        np.asarray(start.moves, dtype=np.int64), _hmask(seq), start.energy,
        budget, _kernel_seed(rng),
    )
    if e >= start.energy:
        return start
    return Individual(tuple(int(d) for d in moves), int(e))


def local_search_reference(seq, start, budget, rng):
    """Pure-Python hill climb built on ``mutate``; slow, kept for cross-checks."""
    n = len(seq)
    current = start
    for _ in range(budget if n >= 2 else 0):
        u = int(rng.integers(1, n))
        cand = mutate(seq, current.conf, u, rng)
        e = energy(seq, cand)
        if e < current.energy:
            current = Individual(cand.moves, e)
    return current


def crossover(p1, p2, c):
    """One-point crossover at cut ``c`` (``1 < c < n``).

    Child 1 takes the first ``c - 1`` moves of ``p1`` and the rest of
    ``p2``; child 2 the reverse. Each child is returned as a
    Conformation, or None if its walk self-intersects.
    """
    n = len(p1.moves) + 1
    if len(p2.moves) != n - 1:
        raise ValueError("parents differ in length")
    if not 1 < c < n:
        raise ValueError(f"cut point {c} outside 2..{n - 1}")
    k = c - 1
    out = []
    for a, b in ((p1.moves, p2.moves), (p2.moves, p1.moves)):
        moves = a[:k] + b[k:]
        out.append(decode(moves) if is_valid(moves) else None)
    return tuple(out)


def roulette_probabilities(fitness):
    f = np.asarray(fitness, dtype=float)
    if f.size == 0 or np.any(f < 0) or f.sum() <= 0:
        raise ValueError("fitness values must be non-negative with a positive sum")
    return f / f.sum()


def selection_fitness(energies):
    """Order-reversing positive fitness: 1 + (worst energy - energy)."""
    e = np.asarray(energies, dtype=float)
    return 1.0 + (e.max() - e)


def roulette_index(fitness, rng):
    cum = np.cumsum(roulette_probabilities(fitness))
    i = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    return min(i, len(cum) - 1)


def roulette_select(pop, rng):
    if not pop:
        raise ValueError("empty population")
    return pop[roulette_index(selection_fitness([ind.energy for ind in pop]), rng)]


def reproduce(seq, p1, p2, params, rng, cuts=None):
    """Tabu-guided reproduction of one parent pair.

    Returns two Individuals, each at least as good as the corresponding
    parent. If ``cuts`` is a list, the crossover points processed are
    appended to it in order.
    """
    n = len(seq)
    b1, e1, b2, e2, done = _kernels.reproduce(
        np.asarray(p1.moves, dtype=np.int64), p1.energy,
        np.asarray(p2.moves, dtype=np.int64), p2.energy,
        _hmask(seq), params.kmax(n), params.ls_iterations(n), params.p_m,
        _kernel_seed(rng),
    )
    if cuts is not None:
        cuts.extend(int(c) for c in done)
    c1 = p1 if e1 >= p1.energy else Individual(tuple(int(d) for d in b1), int(e1))
    c2 = p2 if e2 >= p2.energy else Individual(tuple(int(d) for d in b2), int(e2))
    return c1, c2


def _elite(candidates, m):
    """The m best of a union, one copy per move vector.

    The sort is stable so ties keep insertion order.
    Copies are only used to pad when fewer than m distinct vectors exist.
    """
    ranked = sorted(candidates, key=lambda ind: ind.energy)
    seen, unique, spare = set(), [], []
    for ind in ranked:
        if ind.moves in seen:
            spare.append(ind)
        else:
            seen.add(ind.moves)
            unique.append(ind)
    return (unique + spare)[:m]


def _streams(seed):
    init, select, repro = np.random.SeedSequence(seed).spawn(3)
    return (np.random.default_rng(init), np.random.default_rng(select),
            np.random.default_rng(repro))


def run(seq, params, seq_id="", on_generation=None):
    """Evolve a population and return the best conformation seen.

    ``on_generation(gen, population)`` is called after the initial
    population (gen 0) and after each replacement.
    """
    t0 = time.perf_counter()
    n = len(seq)
    rng_init, rng_sel, rng_rep = _streams(params.seed)
    pop = [make_individual(seq, random_conformation(seq, rng_init).moves)
           for _ in range(params.m)]
    pop.sort(key=lambda ind: ind.energy)
    best = pop[0]
    trace = [best.energy]
    if on_generation:
        on_generation(0, pop)

    gen = 0
    max_pairs = params.pairs_per_generation or 2 * params.m
    target = params.target_energy
    while gen < params.max_generations:
        if target is not None and best.energy <= target:
            break
        if params.time_limit is not None and time.perf_counter() - t0 >= params.time_limit:
            break
        new, seen = [], set()
        fitness = selection_fitness([ind.energy for ind in pop])
        attempts = 0
        while len(new) < params.m and attempts < max_pairs:
            attempts += 1
            p1 = pop[roulette_index(fitness, rng_sel)]
            p2 = pop[roulette_index(fitness, rng_sel)]
            for child in reproduce(seq, p1, p2, params, rng_rep):
                if len(new) < params.m and child.moves not in seen:
                    seen.add(child.moves)
                    new.append(child)
        if len(new) < params.m:
            log.debug("generation %d: only %d distinct offspring", gen + 1, len(new))
        union = pop + new if params.tie_break == "parents" else new + pop
        pop = _elite(union, params.m)
        gen += 1
        if pop[0].energy < best.energy:
            best = pop[0]
        trace.append(best.energy)
        if on_generation:
            on_generation(gen, pop)

    return RunRecord(
        sequence_id=seq_id or seq.name,
        sequence=seq.residues,
        params=params.to_dict(),
        seed=params.seed,
        best_energy=best.energy,
        best_moves=best.moves,
        generations=gen,
        wall_ms=(time.perf_counter() - t0) * 1000.0,
        trace=trace,
    )
