"""HP sequences, the move-vector encoding and the H-H contact energy."""
from dataclasses import dataclass, field
from pathlib import Path

from .lattice import ORIGIN, STEPS, LatticePoint, are_adjacent, neighbors

HYDROPHOBIC = "H"
POLAR = "P"

_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


class SequenceParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CollisionError(ValueError):
    """A move vector whose walk visits a lattice point twice."""

    def __init__(self, rank, earlier_rank):
        super().__init__(f"residue {rank} collides with residue {earlier_rank}")
        self.rank = rank
        self.earlier_rank = earlier_rank


@dataclass(frozen=True)
class HpSequence:
    residues: str
    name: str = ""

    def __post_init__(self):
        if not self.residues:
            raise ValueError("an HP sequence needs at least one residue")
        bad = set(self.residues) - {HYDROPHOBIC, POLAR}
        if bad:
            raise ValueError(f"illegal residue labels {sorted(bad)}")

    def __len__(self):
        return len(self.residues)

    def __str__(self):
        return self.residues

    @property
    def alpha(self) -> list:
        """Hydrophobicity indicator per residue (1 for H, 0 for P)."""
        return [1 if r == HYDROPHOBIC else 0 for r in self.residues]

    @property
    def h_ranks(self) -> list:
        """1-based ranks of the hydrophobic residues."""
        return [k + 1 for k, r in enumerate(self.residues) if r == HYDROPHOBIC]


class _Parser:
    def __init__(self, text):
        self.text = text.translate(_SUPERSCRIPTS).replace(" ", "")
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        out = self.parse_items(top=True)
        if not out:
            raise SequenceParseError("empty sequence", 0)
        return out

    def parse_items(self, top=False):
        out = []
        while True:
            c = self.peek()
            if c == "":
                if not top:
                    raise SequenceParseError("unbalanced '('", self.pos)
                return out
            if c == ")":
                if top:
                    raise SequenceParseError("unbalanced ')'", self.pos)
                return out
            if c in "HP":
                self.pos += 1
                unit = c
            elif c == "(":
                start = self.pos
                self.pos += 1
                unit = self.parse_items()
                self.pos += 1  # closing ')'
                if not unit:
                    raise SequenceParseError("empty group", start)
                unit = "".join(unit)
            else:
                raise SequenceParseError(f"illegal character {c!r}", self.pos)
            out.append(unit * self.parse_exponent())

    def parse_exponent(self):
        if self.peek() == "^":
            self.pos += 1
            braced = self.peek() == "{"
            if braced:
                self.pos += 1
        elif self.peek().isdigit():
            # bare digits, as left over from superscripts
            braced = False
        else:
            return 1
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise SequenceParseError("malformed exponent", start)
        value = int(self.text[start:self.pos])
        if braced:
            if self.peek() != "}":
                raise SequenceParseError("malformed exponent", self.pos)
            self.pos += 1
        if value < 1:
            raise SequenceParseError("exponent must be positive", start)
        return value


def parse_sequence(text: str, name: str = "") -> HpSequence:
    """Expand compact notation such as ``"(HP)^2PH(HP)^2"``.

    ``^`` applies to the preceding letter or parenthesised group; braces
    (``H^{12}``) and unicode superscripts (``H¹²``) are also accepted.
    """
    return HpSequence("".join(_Parser(text).parse()), name)


@dataclass(frozen=True)
class Conformation:
    moves: tuple
    points: tuple = field(repr=False)

    def __len__(self):
        return len(self.points)


def walk(moves) -> list:
    """Lattice points visited by a move vector, anchored at the origin."""
    u, v = ORIGIN
    pts = [ORIGIN]
    for d in moves:
        du, dv = STEPS[d]
        u += du
        v += dv
        pts.append(LatticePoint(u, v))
    return pts


def find_collision(moves):
    """Return ``(rank, earlier_rank)`` of the first collision, or None."""
    seen = {}
    for rank, p in enumerate(walk(moves), start=1):
        if p in seen:
            return rank, seen[p]
        seen[p] = rank
    return None


def is_valid(moves) -> bool:
    return find_collision(moves) is None


def decode(moves, n: int | None = None) -> Conformation:
    """Build a Conformation from a move vector.

    Raises CollisionError naming the first residue that lands on an
    occupied point.
    """
    moves = tuple(int(d) for d in moves)
    if n is not None and len(moves) != n - 1:
        raise ValueError(f"expected {n - 1} moves for {n} residues, got {len(moves)}")
    for d in moves:
        if not 1 <= d <= 6:
            raise ValueError(f"illegal direction code {d}")
    hit = find_collision(moves)
    if hit is not None:
        raise CollisionError(*hit)
    return Conformation(moves, tuple(walk(moves)))


def _check_lengths(seq, conf):
    if len(seq) != len(conf.points):
        raise ValueError(
            f"sequence has {len(seq)} residues but conformation has {len(conf.points)}"
        )


def hh_contacts(seq: HpSequence, conf: Conformation) -> list:
    """Non-consecutive adjacent H-H pairs as 1-based ``(i, j)``, ``i < j``."""
    _check_lengths(seq, conf)
    rank_at = {p: k for k, p in enumerate(conf.points)}
    res = seq.residues
    pairs = []
    for i, p in enumerate(conf.points):
        if res[i] != HYDROPHOBIC:
            continue
        for q in neighbors(p):
            j = rank_at.get(q)
            if j is not None and j >= i + 2 and res[j] == HYDROPHOBIC:
                pairs.append((i + 1, j + 1))
    pairs.sort()
    return pairs


def energy(seq: HpSequence, conf: Conformation) -> int:
    return -len(hh_contacts(seq, conf))


def energy_pairwise(seq: HpSequence, conf: Conformation) -> int:
    """Direct double sum over all residue pairs, O(n^2)."""
    _check_lengths(seq, conf)
    res, pts = seq.residues, conf.points
    n = len(res)
    total = 0
    for i in range(n - 2):
        for j in range(i + 2, n):
            if res[i] == res[j] == HYDROPHOBIC and are_adjacent(pts[i], pts[j]):
                total += 1
    return -total


def rotate_moves(moves, k: int) -> tuple:
    """Relabel every move by a rotation of ``k`` sixth-turns."""
    return tuple((d - 1 + k) % 6 + 1 for d in moves)


def reflect_moves(moves) -> tuple:
    """Mirror image across the axis of direction 1 (2<->6, 3<->5)."""
    return tuple((1 - d) % 6 + 1 for d in moves)


# -- text formats -----------------------------------------------------------

def read_sequence_file(path) -> dict:
    """Read ``id<TAB>compact-HP`` lines; ``#`` starts a comment line."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            ident, text = line.split("\t", 1)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: expected id<TAB>sequence") from None
        ident = ident.strip()
        out[ident] = parse_sequence(text.strip(), name=ident)
    return out


def format_conformation(ident, moves) -> str:
    return f"{ident}\t{','.join(str(int(d)) for d in moves)}"


def parse_conformation(line: str) -> tuple:
    """Parse ``id<TAB>2,6,2,...`` into ``(id, moves)``."""
    ident, _, rest = line.rstrip("\n").partition("\t")
    rest = rest.strip()
    moves = tuple(int(x) for x in rest.split(",")) if rest else ()
    return ident, moves
