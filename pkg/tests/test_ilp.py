import numpy as np
import pytest

from hpfold.galsts import random_conformation
from hpfold.hp_model import HpSequence, decode, energy
from hpfold.ilp_export import (
    ModelTooLarge, assignment_from_conformation, build_model, evaluate_assignment,
    expected_sizes, read_lp_counts, violated, write_lp, write_model, write_mps,
)
from hpfold.oracle import enumerate_optimal

SEQ1 = HpSequence("HPHPPHHPHPPHPHHPPHPH")
MV1 = (2, 6, 2, 6, 5, 4, 5, 1, 5, 6, 2, 6, 2, 3, 2, 1, 5, 1, 5)


@pytest.mark.parametrize("residues", ["HPH", "HHPH", "PHPPHHP"])
@pytest.mark.parametrize("neighborhood, repair", [("triangular", True), ("literal", False)])
def test_sizes_match_formulas(residues, neighborhood, repair):
    seq = HpSequence(residues)
    m = build_model(seq, repair=repair, neighborhood=neighborhood)
    assert (m.num_variables, m.num_constraints) == expected_sizes(seq, neighborhood, repair)
    assert len(m.variable_names()) == len(set(m.variable_names()))


def test_reference_conformation_scores_fifteen():
    m = build_model(SEQ1)
    x = assignment_from_conformation(m, decode(MV1))
    assert evaluate_assignment(m, x) == (True, 15)


def test_zero_assignment_is_infeasible():
    m = build_model(HpSequence("HPHH"))
    feasible, z = evaluate_assignment(m, np.zeros(m.num_variables, dtype=int))
    assert not feasible and z == -1


def test_moving_one_residue_breaks_feasibility():
    seq = HpSequence("HPHPH")
    m = build_model(seq)
    x = assignment_from_conformation(m, decode((1, 1, 1, 1)))
    i, j = m.n, m.n + 4  # last residue on the straight line
    x[m.y_index(i, j, 5)] = 0
    x[m.y_index(i - 2, j, 5)] = 1
    assert not evaluate_assignment(m, x)[0]
    assert any(name.startswith("link") for name in violated(m, x))


def test_assignment_by_name():
    m = build_model(HpSequence("HPH"))
    x = assignment_from_conformation(m, decode((1, 3)))
    named = dict(zip(m.variable_names(), x.tolist()))
    assert evaluate_assignment(m, named) == (True, 1)
    named.pop(next(iter(named)))
    with pytest.raises(KeyError):
        evaluate_assignment(m, named)
    with pytest.raises(ValueError):
        evaluate_assignment(m, x[:-1])


def test_random_conformations_score_minus_energy():
    g = np.random.default_rng(0)
    models = {}
    for _ in range(200):
        n = int(g.integers(2, 13))
        seq = HpSequence("".join(g.choice(["H", "P"], size=n)))
        m = models.setdefault(seq.residues, build_model(seq))
        conf = random_conformation(seq, g)
        assert evaluate_assignment(m, assignment_from_conformation(m, conf)) == (
            True, -energy(seq, conf))


def test_literal_neighbourhood_cannot_embed_a_bend():
    seq = HpSequence("HPH")
    m = build_model(seq, repair=False, neighborhood="literal")
    x = assignment_from_conformation(m, decode((1, 3)))
    assert not evaluate_assignment(m, x)[0]
    assert "link" in violated(m, x)[0]


def test_lp_text_round_trip_counts():
    m = build_model(HpSequence("HPHH"))
    text = write_lp(m)
    counts = read_lp_counts(text)
    assert counts["constraints"] == m.num_constraints
    assert counts["binaries"] == m.num_variables
    assert counts["objective_terms"] == m.num_w


def test_mps_sections():
    m = build_model(HpSequence("HPH"))
    text = write_mps(m)
    for section in ("NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"):
        assert f"\n{section}" in text
    assert text.count("\n BV ") == m.num_variables
    with pytest.raises(ValueError):
        write_model(m, "xml")


def test_product_cap():
    with pytest.raises(ModelTooLarge):
        build_model(SEQ1, max_products=1000)


@pytest.mark.parametrize("residues", ["HPH", "HHHH", "HPPH"])
@pytest.mark.parametrize("fmt", ["lp", "mps"])
def test_solver_optimum_matches_enumeration(tmp_path, residues, fmt):
    highspy = pytest.importorskip("highspy")
    seq = HpSequence(residues)
    m = build_model(seq)
    path = tmp_path / f"model.{fmt}"
    path.write_text(write_model(m, fmt))
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", 60.0)
    h.readModel(str(path))
    h.run()
    lp = h.getLp()
    assert (lp.num_row_, lp.num_col_) == (m.num_constraints, m.num_variables)
    z = round(h.getInfo().objective_function_value) + m.objective_constant
    assert z == -enumerate_optimal(seq).optimal_energy
