"""
The 0-1 integer program
=======================

Residues are placed on a 2n x 2n grid. Any valid fold maps to a
feasible assignment whose objective is exactly minus its energy, so
the model can be checked without a solver.
"""
from hpfold import decode, energy, parse_sequence
from hpfold.ilp_export import (
    assignment_from_conformation, build_model, evaluate_assignment, grid_position, violated,
    write_lp,
)

seq = parse_sequence("HPH2P")
model = build_model(seq)
print(model.num_variables, "binaries,", model.num_constraints, "constraints")

conf = decode([1, 3, 4, 5])
x = assignment_from_conformation(model, conf)
print("feasible, Z =", evaluate_assignment(model, x), " energy =", energy(seq, conf))

# move residue 5 to a far corner and see which rows complain
i, j = grid_position(model, conf.points[4])
x[model.y_index(i, j, 5)] = 0
x[model.y_index(1, 1, 5)] = 1
print("after moving residue 5:", violated(model, x)[:4], "...")

with open("model.lp", "w") as fh:
    write_lp(model, fh)
print("wrote model.lp")

# the published neighbour offsets form a bipartite grid: bends cannot embed
literal = build_model(parse_sequence("HPH"), repair=False, neighborhood="literal")
bent = assignment_from_conformation(literal, decode([1, 3]))
print("bent HPH under literal offsets:", evaluate_assignment(literal, bent))
