"""
Folding a chain by hand
=======================

A conformation is a list of direction codes, one per bond. Decoding it
gives lattice points; the energy is minus the number of H-H pairs that
touch without being chain neighbours.
"""
from hpfold import HpSequence, decode, energy, hh_contacts, parse_sequence
from hpfold.render import render_ascii, render_svg

# compact notation expands brackets and exponents
seq = parse_sequence("HPHP2H2PHP2HPH2P2HPH")
print(seq.residues, len(seq))

moves = [2, 6, 2, 6, 5, 4, 5, 1, 5, 6, 2, 6, 2, 3, 2, 1, 5, 1, 5]
conf = decode(moves, len(seq))
print("energy:", energy(seq, conf))
print("contacts:", hh_contacts(seq, conf))

print(render_ascii(seq, conf))

# an SVG you can open in a browser
with open("fold.svg", "w") as fh:
    fh.write(render_svg(seq, conf, title=f"E = {energy(seq, conf)}"))

# walks that revisit a site are rejected
try:
    decode([1, 3, 5])
except ValueError as exc:
    print("rejected:", exc)
