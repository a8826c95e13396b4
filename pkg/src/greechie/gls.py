"""Reader and writer for the ``.gls`` logic file format.

The format is line oriented, whitespace tokenized, with ``#`` comments:

    dim 3
    atom A 1 r2 -1          # atom with an exact ray
    atom N                  # abstract atom, no ray
    context a A B C

One declaration per line.  The single ``dim`` line comes first; every context
member must be declared on an earlier line.  Components use the token grammar
of ``model.parse_quad`` ("1", "-3", "r2", "1/2r2", "1+1r2", ...).  Abstract
logics (atoms without rays) are legal; operations that need rays refuse to run
on them with a clear error.

``serialize_logic`` emits the canonical form: atoms sorted by label, contexts
in declared order, components as canonical tokens, LF line endings.  Parsing a
canonical serialization reproduces the logic exactly, and serialization is
idempotent from the first round.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .model import Atom, Context, Logic, Quad, Ray, format_quad, parse_quad, rays_collinear

CORPUS_FILES = (
    "star4.gls",
    "gamma1.gls",
    "gamma3pair.gls",
    "cabello18.gls",
    "l12.gls",
    "chain3.gls",
    "tight3.gls",
    "tight3_4d.gls",
)


class GlsParseError(ValueError):
    """A diagnostic with 1-based line and column of the offending token."""

    def __init__(self, message: str, line: int, column: int) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _tokenize_line(raw: str) -> list[tuple[str, int]]:
    """Split one line into (token, 1-based column) pairs, dropping comments."""
    if "#" in raw:
        raw = raw[: raw.index("#")]
    out: list[tuple[str, int]] = []
    col = 1
    for piece in raw.split(" "):
        # split("\t") inside pieces: normalize tabs to spaces first
        if piece:
            out.append((piece, col))
        col += len(piece) + 1
    return out


def parse_logic(text: str) -> Logic:
    """Parse ``.gls`` text into a validated Logic.

    Raises GlsParseError with line/column on the first problem: unknown
    keyword, duplicate label, undeclared context member, context larger than
    the dimension, duplicate (collinear) ray, or a component token outside
    Q(sqrt(2)).
    """
    dimension: int | None = None
    atoms: list[Atom] = []
    atom_lines: dict[str, int] = {}
    contexts: list[Context] = []
    context_sets: dict[frozenset[str], str] = {}
    rays_seen: list[tuple[str, Ray]] = []

    for lineno, raw in enumerate(text.split("\n"), start=1):
        raw = raw.rstrip("\r").replace("\t", " ")
        tokens = _tokenize_line(raw)
        if not tokens:
            continue
        keyword, kw_col = tokens[0]

        if keyword == "dim":
            if dimension is not None:
                raise GlsParseError("duplicate dim declaration", lineno, kw_col)
            if atoms or contexts:
                raise GlsParseError("dim must precede all atoms and contexts", lineno, kw_col)
            if len(tokens) != 2:
                raise GlsParseError("expected: dim <integer>", lineno, kw_col)
            value, col = tokens[1]
            if not value.isdigit():
                raise GlsParseError(f"dimension must be a positive integer, got {value!r}", lineno, col)
            dimension = int(value)
            if dimension < 3:
                raise GlsParseError(f"dimension must be >= 3, got {dimension}", lineno, col)

        elif keyword == "atom":
            if dimension is None:
                raise GlsParseError("dim must be declared before atoms", lineno, kw_col)
            if len(tokens) < 2:
                raise GlsParseError("expected: atom <label> [components...]", lineno, kw_col)
            label, label_col = tokens[1]
            if label in atom_lines:
                raise GlsParseError(
                    f"duplicate atom label {label!r} (first declared on line {atom_lines[label]})",
                    lineno,
                    label_col,
                )
            comps = tokens[2:]
            ray: Ray | None = None
            if comps:
                if len(comps) != dimension:
                    raise GlsParseError(
                        f"atom {label!r} has {len(comps)} components, expected {dimension}",
                        lineno,
                        comps[0][1],
                    )
                values: list[Quad] = []
                for tok, col in comps:
                    try:
                        values.append(parse_quad(tok))
                    except ValueError as exc:
                        raise GlsParseError(str(exc), lineno, col) from None
                if all(v.is_zero for v in values):
                    raise GlsParseError(f"atom {label!r} has the zero ray", lineno, comps[0][1])
                ray = Ray(tuple(values))
                for other_label, other_ray in rays_seen:
                    if rays_collinear(ray, other_ray):
                        raise GlsParseError(
                            f"atom {label!r} duplicates the ray of atom {other_label!r}",
                            lineno,
                            comps[0][1],
                        )
                rays_seen.append((label, ray))
            atom_lines[label] = lineno
            atoms.append(Atom(label, ray))

        elif keyword == "context":
            if dimension is None:
                raise GlsParseError("dim must be declared before contexts", lineno, kw_col)
            if len(tokens) < 2:
                raise GlsParseError("expected: context <label> <member>...", lineno, kw_col)
            label, label_col = tokens[1]
            if any(c.label == label for c in contexts):
                raise GlsParseError(f"duplicate context label {label!r}", lineno, label_col)
            members = tokens[2:]
            if len(members) < 2:
                raise GlsParseError(f"context {label!r} needs at least 2 members", lineno, label_col)
            if len(members) > dimension:
                raise GlsParseError(
                    f"context {label!r} has {len(members)} members, more than dimension {dimension}",
                    lineno,
                    members[0][1],
                )
            seen_members: set[str] = set()
            for m, col in members:
                if m not in atom_lines:
                    raise GlsParseError(f"context member {m!r} is not a declared atom", lineno, col)
                if m in seen_members:
                    raise GlsParseError(f"context {label!r} repeats member {m!r}", lineno, col)
                seen_members.add(m)
            key = frozenset(seen_members)
            if key in context_sets:
                raise GlsParseError(
                    f"context {label!r} has the same member set as context {context_sets[key]!r}",
                    lineno,
                    label_col,
                )
            context_sets[key] = label
            contexts.append(Context(label, tuple(m for m, _ in members)))

        else:
            raise GlsParseError(f"unknown keyword {keyword!r}", lineno, kw_col)

    if dimension is None:
        raise GlsParseError("missing dim declaration", max(1, text.count("\n") + 1), 1)

    logic = Logic(dimension, tuple(atoms), tuple(contexts))
    try:
        logic.validate()
    except ValueError as exc:
        # Only invariants without a single offending line reach this point
        # (e.g. an atom that occurs in no context).
        raise GlsParseError(str(exc), text.count("\n") + 1, 1) from None
    return logic


def serialize_logic(logic: Logic) -> str:
    """Canonical text: dim line, atoms sorted by label, contexts in declared order."""
    lines = [f"dim {logic.dimension}"]
    for atom in sorted(logic.atoms, key=lambda a: a.label):
        if atom.ray is None:
            lines.append(f"atom {atom.label}")
        else:
            comps = " ".join(format_quad(c) for c in atom.ray.components)
            lines.append(f"atom {atom.label} {comps}")
    for ctx in logic.contexts:
        lines.append(f"context {ctx.label} " + " ".join(ctx.members))
    return "\n".join(lines) + "\n"


def load_logic(path: str | Path) -> Logic:
    return parse_logic(Path(path).read_text(encoding="utf-8"))


def corpus_path(name: str) -> Path:
    """Filesystem path of a bundled corpus file, e.g. ``corpus_path("gamma1.gls")``."""
    ref = resources.files(__package__) / "corpus" / name
    path = Path(str(ref))
    if not path.is_file():
        raise FileNotFoundError(f"no bundled corpus file named {name!r}")
    return path


def load_corpus(name: str) -> Logic:
    return load_logic(corpus_path(name))
