"""SVG and plain-text drawings of conformations."""
from xml.sax.saxutils import escape

from .hp_model import HYDROPHOBIC, hh_contacts
from .lattice import to_cartesian

H_COLOR = "red"
P_COLOR = "green"


def render_svg(seq, conf, scale=40.0, radius=9.0, title=None):
    """Residues as circles, the backbone as a polyline, contacts dashed."""
    xy = [to_cartesian(p) for p in conf.points]
    pad = radius + 8.0
    xs = [x for x, _ in xy]
    ys = [y for _, y in xy]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * scale + 2 * pad
    height = (y1 - min(ys)) * scale + 2 * pad

    def px(x, y):
        # flip y so that "up" on the lattice is up on screen
        return (x - x0) * scale + pad, (y1 - y) * scale + pad

    pts = [px(x, y) for x, y in xy]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">'
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    for i, j in hh_contacts(seq, conf):
        (ax, ay), (bx, by) = pts[i - 1], pts[j - 1]
        out.append(
            f'<line class="contact" x1="{ax:.1f}" y1="{ay:.1f}" x2="{bx:.1f}" y2="{by:.1f}" '
            'stroke="gray" stroke-width="1.5" stroke-dasharray="4 3"/>'
        )
    if len(pts) > 1:
        coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)
        out.append(
            f'<polyline class="backbone" points="{coords}" fill="none" '
            'stroke="blue" stroke-width="3"/>'
        )
    for k, ((x, y), r) in enumerate(zip(pts, seq.residues), start=1):
        color = H_COLOR if r == HYDROPHOBIC else P_COLOR
        out.append(
            f'<circle class="residue {r}" cx="{x:.1f}" cy="{y:.1f}" r="{radius}" '
            f'fill="{color}"><title>{r}{k}</title></circle>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(seq, conf, cell=4):
    """Residue letters with ranks on a text grid.

    Column follows 2u + v and row follows v, which keeps the 60 degree
    geometry: a step in direction 1 moves two columns, the other steps
    one column and one row.
    """
    cols = [2 * p[0] + p[1] for p in conf.points]
    rows = [p[1] for p in conf.points]
    c0, r1 = min(cols), max(rows)
    width = (max(cols) - c0) * cell + cell + 2
    grid = [[" "] * width for _ in range(r1 - min(rows) + 1)]
    for k, (c, r) in enumerate(zip(cols, rows), start=1):
        label = f"{seq.residues[k - 1]}{k}"
        line = grid[r1 - r]
        start = (c - c0) * cell
        for t, ch in enumerate(label):
            line[start + t] = ch
    body = "\n".join("".join(line).rstrip() for line in grid)
    return body + "\n"
