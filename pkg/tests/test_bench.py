import json

from hpfold.bench import (
    check_record, load_instances, load_reference, read_records, run_many, run_suite,
    summarize, summary_jsonl, summary_table, write_records,
)
from hpfold.galsts import GaParams

FAST = GaParams(m=10, max_generations=3)


def test_builtin_instances():
    inst = load_instances()
    assert list(inst) == [str(k) for k in range(1, 11)]
    assert [len(s) for s in inst.values()] == [20, 24, 25, 36, 48, 50, 60, 64, 85, 100]
    assert inst["1"].residues == "HPHPPHHPHPPHPHHPPHPH"


def test_reference_table():
    ref = load_reference()
    assert ref["1"]["GALSTS_best"] == -15
    assert ref["4"]["bkv"] == -24 or ref["4"]["GALSTS_best"] == -24
    # unpublished values stay absent rather than zero
    assert any(v is None for row in ref.values() for v in row.values())
    assert ref["5"]["declared_length"] != len(load_instances()["5"])


def test_run_many_seeds_are_consecutive():
    seq = load_instances()["1"]
    recs = run_many(seq, GaParams(m=10, max_generations=2, seed=7), runs=3, seq_id="1")
    assert [r.seed for r in recs] == [7, 8, 9]
    assert all(check_record(r) == r.best_energy for r in recs)


def test_summary_and_notes():
    _, sums = run_suite(["1", "5"], FAST, runs=2)
    s1, s5 = sums
    assert s1.runs == 2 and s1.best <= s1.mean <= s1.worst
    assert "best" in s1.deltas
    assert s5.notes and "declared length" in s5.notes[0]
    lines = summary_jsonl([s5, s1]).splitlines()
    assert [json.loads(ln)["sequence_id"] for ln in lines] == ["1", "5"]
    table = summary_table(sums, FAST)
    assert table.startswith("params:") and "note:" in table


def test_records_round_trip(tmp_path):
    seq = load_instances()["1"]
    recs = run_many(seq, FAST, runs=2, seq_id="1")
    path = tmp_path / "runs.jsonl"
    with open(path, "w") as fh:
        write_records(recs, fh)
    back = read_records(path)
    assert [r.to_dict() for r in back] == [r.to_dict() for r in recs]


def test_summarize_without_reference():
    seq = load_instances()["1"]
    recs = run_many(seq, FAST, runs=2)
    s = summarize("x", recs)
    assert s.deltas == {} and s.notes == []
