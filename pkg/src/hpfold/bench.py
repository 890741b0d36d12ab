"""Benchmark harness: seeded multi-run execution and result aggregation."""
import csv
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources

from .galsts import RunRecord, run
from .hp_model import HpSequence, decode, energy, parse_sequence


def _data_lines(name):
    text = resources.files("hpfold").joinpath("data", name).read_text()
    return [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def load_instances():
    """Built-in benchmark sequences keyed by id ("1".."10")."""
    out = {}
    for line in _data_lines("instances.tsv"):
        ident, text = line.split("\t")
        out[ident] = parse_sequence(text, name=ident)
    return out


def _cell(value):
    if value == "NA":
        return None
    return float(value) if "." in value else int(value)


def load_reference():
    rows = csv.DictReader(io.StringIO("\n".join(_data_lines("reference.tsv"))), delimiter="\t")
    return {row["id"]: {k: _cell(v) for k, v in row.items() if k != "id"} for row in rows}


@dataclass
class InstanceSummary:
    sequence_id: str
    n: int
    runs: int
    best: int
    mean: float
    worst: int
    params: dict = field(default_factory=dict)
    reference: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def deltas(self):
        """Ours minus published; negative means lower (better) energy."""
        ref = self.reference
        out = {}
        for ours, key in (("best", "GALSTS_best"), ("mean", "GALSTS_mean"),
                          ("worst", "GALSTS_worst")):
            if ref.get(key) is not None:
                out[ours] = round(getattr(self, ours) - ref[key], 4)
        return out

    def to_dict(self):
        return {
            "sequence_id": self.sequence_id,
            "n": self.n,
            "runs": self.runs,
            "best": self.best,
            "mean": round(self.mean, 4),
            "worst": self.worst,
            "params": self.params,
            "reference": self.reference,
            "deltas": self.deltas,
            "notes": self.notes,
        }


def summarize(sequence_id, records, reference=None, params=None):
    energies = [r.best_energy for r in records]
    ref = dict(reference or {})
    n = len(records[0].sequence)
    notes = []
    declared = ref.get("declared_length")
    if declared is not None and declared != n:
        notes.append(f"declared length {declared} but sequence has {n} residues")
    return InstanceSummary(
        sequence_id=sequence_id, n=n, runs=len(records),
        best=min(energies), mean=statistics.fmean(energies), worst=max(energies),
        params=params.to_dict() if params is not None else {},
        reference=ref, notes=notes,
    )


def _one(job):
    seq, params, ident = job
    return run(seq, params, seq_id=ident)


def run_many(seq, params, runs, jobs=1, seq_id=""):
    """``runs`` independent runs with seeds ``params.seed + r``."""
    batch = [(seq, replace(params, seed=params.seed + r), seq_id) for r in range(runs)]
    if jobs <= 1:
        return [_one(job) for job in batch]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_one, batch))


def run_suite(ids, params, runs, jobs=1, instances=None, on_records=None):
    """Run every instance in ``ids``; returns ``(records, summaries)``."""
    instances = instances or load_instances()
    reference = load_reference()
    records, summaries = [], []
    for ident in ids:
        recs = run_many(instances[ident], params, runs, jobs, seq_id=ident)
        if on_records:
            on_records(recs)
        records.extend(recs)
        summaries.append(summarize(ident, recs, reference.get(ident), params))
    return records, summaries


def summary_jsonl(summaries):
    """One canonical JSON line per instance, ordered by id."""
    key = lambda s: (len(s.sequence_id), s.sequence_id)
    return "".join(
        json.dumps(s.to_dict(), sort_keys=True) + "\n" for s in sorted(summaries, key=key)
    )


def summary_table(summaries, params=None):
    lines = []
    if params is not None:
        lines.append("params: " + ", ".join(f"{k}={v}" for k, v in params.to_dict().items()))
    head = f"{'seq':>4} {'n':>4} {'runs':>5} {'best':>6} {'mean':>8} {'worst':>6}  " \
           f"{'ref best':>8} {'ref mean':>8} {'ref worst':>9}  {'d best':>6}"
    lines += [head, "-" * len(head)]
    fmt = lambda v: "NA" if v is None else str(v)
    for s in summaries:
        ref = s.reference
        lines.append(
            f"{s.sequence_id:>4} {s.n:>4} {s.runs:>5} {s.best:>6} {s.mean:>8.2f} {s.worst:>6}  "
            f"{fmt(ref.get('GALSTS_best')):>8} {fmt(ref.get('GALSTS_mean')):>8} "
            f"{fmt(ref.get('GALSTS_worst')):>9}  {fmt(s.deltas.get('best')):>6}"
        )
        for note in s.notes:
            lines.append(f"     note: {note}")
    return "\n".join(lines) + "\n"


def write_records(records, fh):
    for r in records:
        fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
    fh.flush()


def read_records(path):
    with open(path) as fh:
        return [RunRecord.from_dict(json.loads(line)) for line in fh if line.strip()]


def check_record(record):
    """Re-evaluate a stored best conformation; returns the recomputed energy."""
    seq = HpSequence(record.sequence)
    conf = decode(record.best_moves, len(seq))
    return energy(seq, conf)
