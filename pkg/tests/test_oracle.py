import itertools

import numpy as np
import pytest

from hpfold.hp_model import HpSequence, decode, energy, parse_sequence
from hpfold.oracle import CapExceeded, enumerate_optimal, iter_conformations, verify_best


def test_single_residue():
    res = enumerate_optimal(HpSequence("H"))
    assert (res.optimal_energy, res.total_valid) == (0, 1)


def test_three_residues_by_hand():
    res = enumerate_optimal(HpSequence("HHH"))
    assert res.total_valid == 6 * 5
    assert res.optimal_energy == -1
    # four of the five second moves bend; two of those close a triangle
    assert res.optimal_count == 6 * 2


@pytest.mark.parametrize("residues", ["HPH", "HHHH", "HPPHPH", "HHPHHPH", "PHHPHHPPH"])
def test_symmetry_reduction_is_exact(residues):
    seq = HpSequence(residues)
    full = enumerate_optimal(seq)
    reduced = enumerate_optimal(seq, symmetry_reduction=True)
    assert (full.optimal_energy, full.optimal_count, full.total_valid) == (
        reduced.optimal_energy, reduced.optimal_count, reduced.total_valid
    )


def test_counts_match_brute_force():
    seq = HpSequence("HPHHPH")
    brute = [m for m in itertools.product(range(1, 7), repeat=5)]
    valid = []
    for m in brute:
        try:
            valid.append(decode(m))
        except ValueError:
            pass
    energies = [energy(seq, c) for c in valid]
    res = enumerate_optimal(seq)
    assert res.total_valid == len(valid) == len(list(iter_conformations(6)))
    assert res.optimal_energy == min(energies)
    assert res.optimal_count == energies.count(min(energies))


def test_example_is_optimal():
    seq = parse_sequence("H2PH2P2HPH2")
    res = enumerate_optimal(seq, symmetry_reduction=True)
    assert energy(seq, decode(res.example_moves)) == res.optimal_energy
    assert res.optimal_energy <= -7


def test_verify_best():
    assert verify_best(HpSequence("HPH"), -1)
    assert not verify_best(HpSequence("HPH"), -2)
    seq = parse_sequence("H2PH2P2HPH2")
    opt = enumerate_optimal(seq, symmetry_reduction=True).optimal_energy
    assert verify_best(seq, opt)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_optimal(HpSequence("H" * 20))


def test_enumerated_energies_agree_with_model():
    seq = HpSequence("HHPHPHHPH")
    rng = np.random.default_rng(7)
    picks = set(rng.choice(100_000, size=1000, replace=False).tolist())
    best = 0
    for k, moves in enumerate(iter_conformations(9)):
        if k in picks:
            conf = decode(moves)
            best = min(best, energy(seq, conf))
    assert best >= enumerate_optimal(seq).optimal_energy
