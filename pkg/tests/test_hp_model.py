import pytest
from hypothesis import given, settings, strategies as st

from hpfold.hp_model import (
    CollisionError, HpSequence, SequenceParseError, decode, energy, energy_pairwise,
    find_collision, format_conformation, hh_contacts, is_valid, parse_conformation,
    parse_sequence, read_sequence_file, reflect_moves, rotate_moves, walk,
)
from hpfold.lattice import are_adjacent

SEQ1 = "HPHPPHHPHPPHPHHPPHPH"
MV1 = (2, 6, 2, 6, 5, 4, 5, 1, 5, 6, 2, 6, 2, 3, 2, 1, 5, 1, 5)


@pytest.mark.parametrize("text, expected", [
    ("HPH", "HPH"),
    ("H2P3", "HHPPP"),
    ("H^3P", "HHHP"),
    ("H^{2}P", "HHP"),
    ("H²P³H", "HHPPPH"),
    ("(HP)2", "HPHP"),
    ("((HP)2P)2", "HPHPPHPHPP"),
])
def test_parse_compact_notation(text, expected):
    assert parse_sequence(text).residues == expected


@pytest.mark.parametrize("text", ["HXP", "(HP", "HP)", "H^", "", "H0"])
def test_parse_errors(text):
    with pytest.raises(SequenceParseError):
        parse_sequence(text)


def test_parse_error_reports_position():
    with pytest.raises(SequenceParseError) as info:
        parse_sequence("HPPX")
    assert info.value.position == 3


def test_sequence_properties():
    s = parse_sequence("HPHPPH")
    assert list(s.alpha) == [1, 0, 1, 0, 0, 1]
    assert list(s.h_ranks) == [1, 3, 6]
    with pytest.raises(ValueError):
        HpSequence("HQ")


def test_reference_conformation_energy():
    seq = HpSequence(SEQ1)
    conf = decode(MV1, len(seq))
    assert energy(seq, conf) == -15
    assert energy_pairwise(seq, conf) == -15
    assert len(hh_contacts(seq, conf)) == 15


def test_decode_rejects_collision():
    # 1, 3, 5 closes a triangle back onto the origin
    with pytest.raises(CollisionError) as info:
        decode((1, 3, 5))
    assert (info.value.rank, info.value.earlier_rank) == (4, 1)
    assert find_collision((1, 3, 5)) == (4, 1)
    assert find_collision((1, 3)) is None


def test_decode_checks_length_and_codes():
    with pytest.raises(ValueError):
        decode((1, 2), n=4)
    with pytest.raises(ValueError):
        decode((1, 7))


def test_bent_hph_has_one_contact():
    seq = HpSequence("HPH")
    assert energy(seq, decode((1, 3))) == -1
    assert energy(seq, decode((1, 1))) == 0


def test_consecutive_pairs_do_not_count():
    assert energy(HpSequence("HH"), decode((1,))) == 0


def test_conformation_text_round_trip(tmp_path):
    line = format_conformation("seq1", MV1)
    assert parse_conformation(line) == ("seq1", MV1)
    f = tmp_path / "seqs.tsv"
    f.write_text("# demo\na\tH2P\nb\t(HP)2\n")
    seqs = read_sequence_file(f)
    assert seqs["a"].residues == "HHP" and seqs["b"].residues == "HPHP"


def moves_strategy(max_len=14):
    return st.lists(st.integers(1, 6), min_size=1, max_size=max_len)


@settings(max_examples=300, deadline=None)
@given(moves_strategy())
def test_self_avoidance_iff_decode_accepts(moves):
    pts = walk(moves)
    distinct = len(set(pts)) == len(pts)
    assert is_valid(moves) == distinct
    if distinct:
        assert decode(moves).points == tuple(pts)
    else:
        with pytest.raises(CollisionError):
            decode(moves)


@st.composite
def folded(draw, max_len=14):
    moves = draw(moves_strategy(max_len))
    if not is_valid(moves):
        # keep the longest valid prefix so most draws survive
        while moves and not is_valid(moves):
            moves = moves[:-1]
    if not moves:
        moves = [1]
    residues = "".join(draw(st.lists(st.sampled_from("HP"), min_size=len(moves) + 1,
                                     max_size=len(moves) + 1)))
    return HpSequence(residues), decode(moves)


@settings(max_examples=300, deadline=None)
@given(folded())
def test_energy_is_minus_contact_count(case):
    seq, conf = case
    contacts = hh_contacts(seq, conf)
    assert energy(seq, conf) == -len(contacts) == energy_pairwise(seq, conf)
    for i, j in contacts:
        assert j >= i + 2
        assert seq.residues[i - 1] == seq.residues[j - 1] == "H"
        assert are_adjacent(conf.points[i - 1], conf.points[j - 1])


@settings(max_examples=300, deadline=None)
@given(folded())
def test_contact_degree_bounds(case):
    seq, conf = case
    n = len(seq)
    degree = [0] * (n + 1)
    for i, j in hh_contacts(seq, conf):
        degree[i] += 1
        degree[j] += 1
    for k in range(1, n + 1):
        bound = 5 if k in (1, n) else 4
        assert degree[k] <= bound


@settings(max_examples=200, deadline=None)
@given(folded(), st.integers(0, 5))
def test_energy_invariant_under_rotation_and_reflection(case, k):
    seq, conf = case
    e = energy(seq, conf)
    assert energy(seq, decode(rotate_moves(conf.moves, k))) == e
    assert energy(seq, decode(reflect_moves(conf.moves))) == e
