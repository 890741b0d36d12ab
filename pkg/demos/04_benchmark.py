"""
A small benchmark
=================

Seeded repeated runs on the built-in instances, summarised next to the
published numbers. Raise ``runs`` and ``time_limit`` for real numbers.
"""
from hpfold.bench import run_suite, summary_table
from hpfold.galsts import GaParams

params = GaParams(time_limit=5.0)
records, summaries = run_suite(["1", "2", "3"], params, runs=3)
print(summary_table(summaries, params))
