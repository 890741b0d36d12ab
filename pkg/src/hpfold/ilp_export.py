"""0-1 integer program for HP folding on a 2n x 2n index grid.

Binary ``y_i_j_k`` places residue k in grid cell (i, j), with
1 <= i, j <= 2n and residue 1 pinned to (n, n). Constraints:

    (a) y_n_n_1 = 1
    (b) sum of all y = n
    (c) at most one residue per cell
    (d) residue k+1 sits next to residue k:
        y_c^{k+1} <= sum over grid neighbours b of c of y_b^k
    (e) each residue occupies exactly one cell (omitted in the literal model)

The objective ``Z = Z*/2 - sum_k a_k a_{k+1}`` (a_k = 1 for H) counts H-H
contacts, Z* being the number of ordered adjacent (H, H) cell pairs. It
is linearised with one product binary per unordered adjacent cell pair
{a, b} and ordered hydrophobic rank pair (k, k'):

    w <= y_a^k,  w <= y_b^k',  w >= y_a^k + y_b^k' - 1

so that ``Z = sum(w) - sum_k a_k a_{k+1}`` exactly, and Z = -E for the
embedding of any valid conformation.

Grid neighbourhoods
-------------------
``"triangular"`` (default) uses offsets (0,+1) (-1,0) (-1,-1) (0,-1)
(+1,0) (+1,+1), the images of directions 1..6 under the embedding
``i = n - v``, ``j = n + u`` of axial point (u, v). ``"literal"`` uses
(-1,+1) (-1,0) (-1,-1) (+1,-1) (+1,0) (+1,+1). Every literal offset
changes the row, so that grid graph is bipartite and cannot contain the
lattice's triangles: a bent three-residue chain has no embedding.

Closed-form sizes for length n, h hydrophobic residues, G = 2n:

    y variables      G^2 * n
    cell pairs       triangular: 2G(G-1) + (G-1)^2,  literal: G(G-1) + 2(G-1)^2
    w variables      cell_pairs * h^2
    constraints      2 + G^2 + G^2 (n-1) + [n if repaired] + 3 * w
"""
import io
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .hp_model import HpSequence

NEIGHBORHOODS = {
    "triangular": ((0, 1), (-1, 0), (-1, -1), (0, -1), (1, 0), (1, 1)),
    "literal": ((-1, 1), (-1, 0), (-1, -1), (1, -1), (1, 0), (1, 1)),
}
# one offset of each +/- pair, so cell pairs are counted once
_HALF = {
    "triangular": ((0, 1), (1, 0), (1, 1)),
    "literal": ((1, -1), (1, 0), (1, 1)),
}
MAX_PRODUCTS = 5_000_000


class ModelTooLarge(ValueError):
    pass


@dataclass
class IlpModel:
    seq: HpSequence
    neighborhood: str
    repaired: bool
    A: sp.csr_matrix = field(repr=False)
    sense: np.ndarray = field(repr=False)  # "E" or "L"
    rhs: np.ndarray = field(repr=False)
    blocks: list = field(repr=False)  # (tag, first row, row count)
    objective: np.ndarray = field(repr=False)
    objective_constant: int = 0
    w_cells: np.ndarray = field(default=None, repr=False)  # (nw, 2) cell indices
    w_ranks: np.ndarray = field(default=None, repr=False)  # (nw, 2) 0-based ranks

    @property
    def n(self):
        return len(self.seq)

    @property
    def grid(self):
        return 2 * self.n

    @property
    def num_y(self):
        return self.grid ** 2 * self.n

    @property
    def num_w(self):
        return len(self.w_cells)

    @property
    def num_variables(self):
        return self.num_y + self.num_w

    @property
    def num_constraints(self):
        return self.A.shape[0]

    def y_index(self, i, j, k):
        """Column of ``y_i_j_k`` (all 1-based)."""
        G = self.grid
        return ((i - 1) * G + (j - 1)) * self.n + (k - 1)

    def cell(self, c):
        return divmod(c, self.grid)[0] + 1, c % self.grid + 1

    def variable_name(self, col):
        if col < self.num_y:
            c, k = divmod(col, self.n)
            i, j = self.cell(c)
            return f"y_{i}_{j}_{k + 1}"
        a, b = self.w_cells[col - self.num_y]
        k, k2 = self.w_ranks[col - self.num_y]
        (ia, ja), (ib, jb) = self.cell(a), self.cell(b)
        return f"w_{ia}.{ja}_{ib}.{jb}_{k + 1}_{k2 + 1}"

    def variable_names(self):
        return [self.variable_name(c) for c in range(self.num_variables)]

    def constraint_name(self, row):
        for tag, start, count in self.blocks:
            if start <= row < start + count:
                return f"{tag}{row - start + 1}"
        raise IndexError(row)


def cell_pair_count(n, neighborhood="triangular"):
    G = 2 * n
    if neighborhood == "triangular":
        return 2 * G * (G - 1) + (G - 1) ** 2
    return G * (G - 1) + 2 * (G - 1) ** 2


def expected_sizes(seq, neighborhood="triangular", repair=True):
    """Variable and constraint counts from the closed-form formulas."""
    n = len(seq)
    G = 2 * n
    h = seq.residues.count("H")
    nw = cell_pair_count(n, neighborhood) * h * h
    nvars = G * G * n + nw
    ncons = 2 + G * G + G * G * (n - 1) + (n if repair else 0) + 3 * nw
    return nvars, ncons


def _cell_pairs(G, offsets):
    """Grid cells c and c + offset for every offset, both inside the grid."""
    ii, jj = np.meshgrid(np.arange(G), np.arange(G), indexing="ij")
    out = []
    for di, dj in offsets:
        i2, j2 = ii + di, jj + dj
        ok = (i2 >= 0) & (i2 < G) & (j2 >= 0) & (j2 < G)
        out.append((ii[ok] * G + jj[ok], i2[ok] * G + j2[ok]))
    return out


def build_model(seq, repair=True, neighborhood="triangular", max_products=MAX_PRODUCTS):
    n = len(seq)
    if n < 2:
        raise ValueError("need at least two residues")
    if neighborhood not in NEIGHBORHOODS:
        raise ValueError(f"unknown neighborhood {neighborhood!r}")
    G = 2 * n
    ncell = G * G
    ny = ncell * n
    h_ranks = np.array([k - 1 for k in seq.h_ranks], dtype=np.int64)
    h = len(h_ranks)
    npairs = cell_pair_count(n, neighborhood)
    if npairs * h * h > max_products:
        raise ModelTooLarge(
            f"{npairs * h * h} product variables exceed the cap of {max_products}"
        )

    rows, cols, vals = [], [], []
    sense, rhs, blocks = [], [], []
    nrow = 0

    def add_block(tag, r, c, v, s, b, count):
        nonlocal nrow
        rows.append(np.asarray(r, dtype=np.int64) + nrow)
        cols.append(np.asarray(c, dtype=np.int64))
        vals.append(np.asarray(v, dtype=np.int64))
        sense.extend([s] * count)
        rhs.append(np.broadcast_to(np.asarray(b, dtype=np.int64), (count,)))
        blocks.append((tag, nrow, count))
        nrow += count

    cells = np.arange(ncell)
    anchor = ((n - 1) * G + (n - 1)) * n
    add_block("start", [0], [anchor], [1], "E", 1, 1)
    add_block("count", np.zeros(ny, dtype=np.int64), np.arange(ny), np.ones(ny), "E", n, 1)
    # (c) one residue per cell
    add_block("cell", np.repeat(cells, n), np.arange(ny), np.ones(ny), "L", 1, ncell)

    # (d) chain connectivity: row index = c * (n-1) + k
    r, c, v = [], [], []
    ks = np.arange(n - 1)
    base_r = (cells[:, None] * (n - 1) + ks[None, :]).ravel()
    r.append(base_r)
    c.append((cells[:, None] * n + ks[None, :] + 1).ravel())
    v.append(np.ones(base_r.size, dtype=np.int64))
    for src, dst in _cell_pairs(G, NEIGHBORHOODS[neighborhood]):
        r.append((src[:, None] * (n - 1) + ks[None, :]).ravel())
        c.append((dst[:, None] * n + ks[None, :]).ravel())
        v.append(-np.ones(src.size * (n - 1), dtype=np.int64))
    add_block("link", np.concatenate(r), np.concatenate(c), np.concatenate(v), "L", 0,
              ncell * (n - 1))

    if repair:
        ks = np.arange(n)
        add_block("rank", np.tile(ks, ncell), np.arange(ny), np.ones(ny), "E", 1, n)

    pa, pb = (np.concatenate(x) for x in zip(*_cell_pairs(G, _HALF[neighborhood])))
    kk, kk2 = (x.ravel() for x in np.meshgrid(h_ranks, h_ranks, indexing="ij"))
    w_cells = np.stack([np.repeat(pa, h * h), np.repeat(pb, h * h)], axis=1)
    w_ranks = np.stack([np.tile(kk, pa.size), np.tile(kk2, pa.size)], axis=1)
    nw = len(w_cells)
    wcol = ny + np.arange(nw)
    ya = w_cells[:, 0] * n + w_ranks[:, 0]
    yb = w_cells[:, 1] * n + w_ranks[:, 1]
    t = np.arange(nw)
    # rows 3t, 3t+1, 3t+2: w - ya <= 0, w - yb <= 0, ya + yb - w <= 1
    r = np.concatenate([3 * t, 3 * t, 3 * t + 1, 3 * t + 1, 3 * t + 2, 3 * t + 2, 3 * t + 2])
    c = np.concatenate([wcol, ya, wcol, yb, ya, yb, wcol])
    v = np.concatenate([np.ones(nw), -np.ones(nw), np.ones(nw), -np.ones(nw),
                        np.ones(nw), np.ones(nw), -np.ones(nw)])
    b = np.tile([0, 0, 1], nw)
    add_block("prod", r, c, v, "L", b, 3 * nw)

    A = sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(nrow, ny + nw), dtype=np.int64,
    )
    objective = np.zeros(ny + nw, dtype=np.int64)
    objective[ny:] = 1
    alpha = seq.alpha
    consecutive = sum(alpha[k] * alpha[k + 1] for k in range(n - 1))
    return IlpModel(
        seq=seq, neighborhood=neighborhood, repaired=repair, A=A,
        sense=np.array(sense), rhs=np.concatenate(rhs), blocks=blocks,
        objective=objective, objective_constant=-consecutive,
        w_cells=w_cells, w_ranks=w_ranks,
    )


def grid_position(model, point):
    """Grid cell ``(i, j)`` of an axial lattice point, residue 1 at (n, n)."""
    n = model.n
    return n - point[1], n + point[0]


def assignment_from_conformation(model, conf):
    """0/1 vector placing each residue of ``conf`` and setting every product."""
    n = model.n
    if len(conf.points) != n:
        raise ValueError("conformation length does not match the model")
    G = model.grid
    x = np.zeros(model.num_variables, dtype=np.int64)
    for k, p in enumerate(conf.points, start=1):
        i, j = grid_position(model, p)
        if not (1 <= i <= G and 1 <= j <= G):
            raise AssertionError(f"residue {k} embeds outside the grid at {(i, j)}")
        x[model.y_index(i, j, k)] = 1
    ya = model.w_cells[:, 0] * n + model.w_ranks[:, 0]
    yb = model.w_cells[:, 1] * n + model.w_ranks[:, 1]
    x[model.num_y:] = x[ya] & x[yb]
    return x


def _as_vector(model, assignment):
    if isinstance(assignment, dict):
        x = np.empty(model.num_variables, dtype=np.int64)
        for col, name in enumerate(model.variable_names()):
            try:
                x[col] = assignment[name]
            except KeyError:
                raise KeyError(f"assignment is missing variable {name}") from None
        return x
    x = np.asarray(assignment, dtype=np.int64)
    if x.shape != (model.num_variables,):
        raise ValueError(
            f"assignment has {x.size} values, model has {model.num_variables} variables"
        )
    return x


def violated(model, assignment):
    """Names of the constraints an assignment breaks."""
    x = _as_vector(model, assignment)
    lhs = model.A @ x
    bad = np.where(model.sense == "E", lhs != model.rhs, lhs > model.rhs)
    return [model.constraint_name(r) for r in np.flatnonzero(bad)]


def evaluate_assignment(model, assignment):
    """Return ``(feasible, objective)``, both computed in integer arithmetic."""
    x = _as_vector(model, assignment)
    binary = bool(np.all((x == 0) | (x == 1)))
    lhs = model.A @ x
    ok = np.where(model.sense == "E", lhs == model.rhs, lhs <= model.rhs)
    objective = int(model.objective @ x) + model.objective_constant
    return binary and bool(ok.all()), objective


# -- writers ----------------------------------------------------------------

def _header(model, comment, legend):
    lines = [
        f"HP folding 0-1 model, sequence {model.seq.name or '-'}: {model.seq.residues}",
        f"n = {model.n}, grid {model.grid} x {model.grid}, residue 1 fixed at "
        f"({model.n},{model.n})",
        f"neighbourhood: {model.neighborhood}; one-cell-per-residue rows: "
        f"{'yes' if model.repaired else 'no (literal model)'}",
        f"objective Z = sum(w) - {-model.objective_constant} equals minus the HP energy",
        f"{model.num_variables} binaries, {model.num_constraints} constraints",
    ] + legend
    return "".join(f"{comment} {line}\n" for line in lines)


def _row_terms(model):
    A = model.A.tocsr()
    A.sort_indices()
    for r in range(A.shape[0]):
        lo, hi = A.indptr[r], A.indptr[r + 1]
        yield r, A.indices[lo:hi], A.data[lo:hi]


def write_lp(model, out=None):
    names = model.variable_names()
    buf = out or io.StringIO()
    buf.write(_header(model, "\\", [
        "y_i_j_k: residue k occupies grid cell (i, j)",
        "w_<ia>.<ja>_<ib>.<jb>_<k>_<k'>: y_ia_ja_k * y_ib_jb_k' for adjacent cells",
    ]))
    buf.write("Maximize\n obj:")
    for col in np.flatnonzero(model.objective):
        buf.write(f" + {names[col]}")
    buf.write("\nSubject To\n")
    op = {"E": "=", "L": "<="}
    for r, cols, vals in _row_terms(model):
        terms = " ".join(
            f"{'+' if v > 0 else '-'} {'' if abs(v) == 1 else str(abs(v)) + ' '}{names[c]}"
            for c, v in zip(cols, vals)
        )
        buf.write(f" {model.constraint_name(r)}: {terms} {op[model.sense[r]]} {model.rhs[r]}\n")
    buf.write("Binary\n")
    for name in names:
        buf.write(f" {name}\n")
    buf.write("End\n")
    return buf.getvalue() if out is None else None


def _mps_field(s, width):
    return s.ljust(width)


def write_mps(model, out=None):
    """Fixed-field MPS; names are at most 8 characters."""
    buf = out or io.StringIO()
    ny = model.num_y
    G, n = model.grid, model.n

    def col_name(c):
        return f"Y{c}" if c < ny else f"W{c - ny}"

    buf.write(_header(model, "*", [
        f"Y<t>: y_i_j_k with t = ((i-1)*{G} + (j-1))*{n} + (k-1)",
        "W<t>: t-th product; cells and ranks as in the LP export",
        "R<r>: r-th constraint row (0-based)",
        f"objective constant {model.objective_constant} not representable; add it back",
    ]))
    if model.num_variables > 10**7 or model.num_constraints > 10**7:
        raise ModelTooLarge("too many rows or columns for 8-character MPS names")
    buf.write(f"NAME          {_mps_field('HPFOLD', 8)}\n")
    buf.write("OBJSENSE\n    MAX\n")
    buf.write("ROWS\n N  OBJ\n")
    for r in range(model.num_constraints):
        buf.write(f" {model.sense[r]}  R{r}\n")
    buf.write("COLUMNS\n")
    buf.write("    MARKER                 'MARKER'                 'INTORG'\n")
    A = model.A.tocsc()
    A.sort_indices()
    for c in range(model.num_variables):
        name = _mps_field(col_name(c), 8)
        if model.objective[c]:
            buf.write(f"    {name}  {_mps_field('OBJ', 8)}  {model.objective[c]:>12d}\n")
        lo, hi = A.indptr[c], A.indptr[c + 1]
        for r, v in zip(A.indices[lo:hi], A.data[lo:hi]):
            buf.write(f"    {name}  {_mps_field('R' + str(r), 8)}  {v:>12d}\n")
    buf.write("    MARKER                 'MARKER'                 'INTEND'\n")
    buf.write("RHS\n")
    for r in np.flatnonzero(model.rhs):
        buf.write(f"    {_mps_field('RHS', 8)}  {_mps_field('R' + str(r), 8)}  {model.rhs[r]:>12d}\n")
    buf.write("BOUNDS\n")
    for c in range(model.num_variables):
        buf.write(f" BV {_mps_field('BND', 8)}  {col_name(c)}\n")
    buf.write("ENDATA\n")
    return buf.getvalue() if out is None else None


def write_model(model, fmt="lp", out=None):
    if fmt == "lp":
        return write_lp(model, out)
    if fmt == "mps":
        return write_mps(model, out)
    raise ValueError(f"unsupported model format {fmt!r}")


def read_lp_counts(text):
    """Minimal LP reader: number of constraints, binaries and objective terms."""
    section = None
    counts = {"constraints": 0, "binaries": 0, "objective_terms": 0}
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("\\"):
            continue
        key = s.lower()
        if key in ("maximize", "minimize", "subject to", "binary", "end"):
            section = key
            continue
        if section == "maximize":
            counts["objective_terms"] += s.count("+") + s.count(" - ")
        elif section == "subject to" and ":" in s:
            counts["constraints"] += 1
        elif section == "binary":
            counts["binaries"] += len(s.split())
    return counts
