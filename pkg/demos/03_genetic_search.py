"""
Hybrid genetic search
=====================

Roulette selection picks parents, reproduction tries every crossover
cut once and polishes children by hill climbing, and the population
keeps the m best distinct individuals.
"""
from hpfold.bench import load_instances
from hpfold.galsts import GaParams, run

seq = load_instances()["3"]
print(seq.residues, len(seq))


def progress(gen, pop):
    if gen % 5 == 0:
        print(f"gen {gen:3d}  best {pop[0].energy}  worst {pop[-1].energy}")


rec = run(seq, GaParams(seed=1, max_generations=30, target_energy=-12),
          on_generation=progress)
print("best energy", rec.best_energy, "after", rec.generations, "generations")
print("moves", rec.best_moves)

# same seed, same answer
again = run(seq, GaParams(seed=1, max_generations=30, target_energy=-12))
print("reproducible:", again.best_moves == rec.best_moves)
