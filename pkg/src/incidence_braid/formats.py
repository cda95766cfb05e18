"""Line-oriented text formats for posets, coefficient tensors and search censuses.

Poset file::

    posetfile v1
    elements: x y z
    covers: x<y z<y

Lambda file (keyed records, or a dense ``matrix:`` block of |Y|^2 rows)::

    lambdafile v1
    field: GF(5)
    x x x y | x y x x = 1 mod 5

Census file: a header, then one ``solution`` block per tensor holding lambda
records and a ``matches:`` line, closed by ``end``.

``#`` starts a comment. Blank lines are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass

from .braiding import LambdaTensor
from .coalgebra import IntervalBasis
from .poset import Poset, PosetError
from .scalars import Field, FieldMismatch


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


def _lines(text: str):
    """(line number, stripped content) for meaningful lines."""
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield no, body, len(body) - len(body.lstrip()) + 1


def _expect_header(lines, name: str, source: str):
    try:
        no, body, col = next(lines)
    except StopIteration:
        raise ParseError(f"empty file, expected '{name} v1'", 1, 1, source) from None
    if body.strip() != f"{name} v1":
        raise ParseError(f"expected header '{name} v1', got {body.strip()!r}", no, col, source)


def _field_value(body: str, key: str, no: int, col: int, source: str) -> str:
    head, sep, rest = body.strip().partition(":")
    if not sep or head.strip() != key:
        raise ParseError(f"expected '{key}:'", no, col, source)
    return rest.strip()


# posets

def format_poset(p: Poset) -> str:
    covers = " ".join(f"{a}<{b}" for a, b in p.covers)
    return f"posetfile v1\nelements: {' '.join(p.elements)}\ncovers: {covers}\n"


def parse_poset(text: str, source: str = "<poset>") -> Poset:
    lines = _lines(text)
    _expect_header(lines, "posetfile", source)
    elements, covers = None, []
    for no, body, col in lines:
        key = body.strip().split(":", 1)[0].strip()
        if key == "elements":
            elements = _field_value(body, "elements", no, col, source).split()
        elif key == "covers":
            rest = _field_value(body, "covers", no, col, source)
            offset = body.index(":") + 2
            for tok in rest.split():
                pos = body.find(tok, offset) + 1
                offset = pos + len(tok) - 1
                if tok.count("<") != 1:
                    raise ParseError(f"malformed cover {tok!r}, expected a<b", no, pos, source)
                a, b = tok.split("<")
                covers.append((a, b, no, pos))
        else:
            raise ParseError(f"unknown key {key!r}", no, col, source)
    if elements is None:
        raise ParseError("missing 'elements:' line", 1, 1, source)
    for a, b, no, pos in covers:
        for x in (a, b):
            if x not in elements:
                raise ParseError(f"unknown element label {x!r}", no, pos, source)
    try:
        return Poset.from_cover_relations(elements, [(a, b) for a, b, _, _ in covers])
    except PosetError as exc:
        raise ParseError(str(exc), covers[0][2] if covers else 1, 1, source) from None


# tensors

def lambda_records(t: LambdaTensor) -> list[str]:
    out = []
    for key in sorted(t.entries, key=lambda k: (t.basis.tensor_index(k[:2], k[2:4]),
                                                 t.basis.tensor_index(k[4:6], k[6:]))):
        out.append(f"{' '.join(key[:4])} | {' '.join(key[4:])} = {t.field.format(t.entries[key])}")
    return out


def format_lambda(t: LambdaTensor) -> str:
    return "\n".join(["lambdafile v1", f"field: {t.field}", *lambda_records(t)]) + "\n"


def _parse_record(body: str, basis: IntervalBasis, field: Field, no: int, col: int, source: str):
    lhs, eq, value = body.partition("=")
    if not eq:
        raise ParseError("expected 'a b c d | e f g h = value'", no, col, source)
    inp, bar, out = lhs.partition("|")
    labels = inp.split() + out.split()
    if not bar or len(labels) != 8:
        raise ParseError("expected four labels, '|', four labels", no, col, source)
    for lab in labels:
        if lab not in basis.poset.index:
            raise ParseError(f"unknown element label {lab!r}", no, body.find(lab) + 1, source)
    key = tuple(labels)
    for i in range(0, 8, 2):
        if not basis.poset.leq(key[i], key[i + 1]):
            raise ParseError(f"({key[i]},{key[i + 1]}) is not an interval", no, col, source)
    try:
        v = field.parse(value)
    except (ValueError, FieldMismatch, ZeroDivisionError) as exc:
        raise ParseError(f"malformed scalar {value.strip()!r} ({exc})", no,
                         body.index("=") + 2, source) from None
    return key, v


def parse_lambda(text: str, poset: Poset, source: str = "<lambda>",
                 transpose: bool = False) -> LambdaTensor:
    """Read keyed records or a dense matrix block.

    A matrix block lists rows as outputs and columns as inputs; ``transpose``
    reads rows as inputs instead.
    """
    basis = IntervalBasis(poset)
    lines = _lines(text)
    _expect_header(lines, "lambdafile", source)
    try:
        no, body, col = next(lines)
    except StopIteration:
        raise ParseError("missing 'field:' line", 2, 1, source) from None
    try:
        field = Field.from_string(_field_value(body, "field", no, col, source))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), no, col, source) from None
    entries: dict = {}
    rows: list | None = None
    for no, body, col in lines:
        if body.strip() == "matrix:":
            rows = []
            continue
        if rows is not None:
            try:
                rows.append([field.parse(tok) for tok in _split_row(body)])
            except (ValueError, FieldMismatch, ZeroDivisionError) as exc:
                raise ParseError(f"malformed matrix row ({exc})", no, col, source) from None
            continue
        key, v = _parse_record(body, basis, field, no, col, source)
        if key in entries:
            raise ParseError(f"duplicate record for {key}", no, col, source)
        entries[key] = v
    if rows is not None:
        n = len(basis) ** 2
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ParseError(f"matrix must be {n} x {n}", 1, 1, source)
        t = LambdaTensor.from_matrix(basis, rows, field, transpose=transpose)
        for k, v in entries.items():
            t = t.with_entry(k, v)
        return t
    return LambdaTensor(basis, entries, field)


def _split_row(body: str) -> list[str]:
    """Split on whitespace, keeping 'k mod p' tokens together."""
    toks = body.split()
    out = []
    i = 0
    while i < len(toks):
        if i + 2 < len(toks) and toks[i + 1] == "mod":
            out.append(" ".join(toks[i:i + 3]))
            i += 3
        else:
            out.append(toks[i])
            i += 1
    return out


# censuses

@dataclass
class CensusRecord:
    tensor: LambdaTensor
    matches: list[str]


def _match_text(matches) -> str:
    if not matches:
        return "none"
    parts = []
    for fid, params in matches:
        args = ", ".join(f"{k}={v}" for k, v in params.items())
        parts.append(f"{fid}({args})")
    return " ; ".join(parts)


def format_census(census) -> str:
    spec = census.spec
    out = ["censusfile v1", f"field: {spec.field}", f"elements: {' '.join(spec.poset.elements)}",
           f"covers: {' '.join(f'{a}<{b}' for a, b in spec.poset.covers)}",
           f"pruning: {'on' if spec.pruning else 'off'}",
           f"candidates: {census.space_size}", f"solutions: {len(census.entries)}"]
    for k, e in enumerate(census.entries, 1):
        out.append(f"solution {k}")
        out.extend(lambda_records(e.tensor))
        out.append(f"matches: {_match_text(e.matches)}")
        out.append("end")
    return "\n".join(out) + "\n"


def parse_census(text: str, source: str = "<census>") -> tuple[dict, list[CensusRecord]]:
    """Header fields and the solution blocks; matches are kept as text."""
    lines = list(_lines(text))
    _expect_header(iter(lines), "censusfile", source)
    header: dict = {}
    records: list[CensusRecord] = []
    basis = field = None
    block: dict | None = None
    matches: list[str] = []
    for no, body, col in lines[1:]:
        stripped = body.strip()
        if block is None and stripped.startswith("solution "):
            if basis is None:
                poset = Poset.from_cover_relations(
                    header.get("elements", "").split(),
                    [tuple(c.split("<")) for c in header.get("covers", "").split()])
                basis = IntervalBasis(poset)
                field = Field.from_string(header["field"])
            block, matches = {}, []
        elif block is None:
            key, sep, rest = stripped.partition(":")
            if not sep:
                raise ParseError(f"unexpected line {stripped!r}", no, col, source)
            header[key.strip()] = rest.strip()
        elif stripped == "end":
            records.append(CensusRecord(LambdaTensor(basis, block, field), matches))
            block = None
        elif stripped.startswith("matches:"):
            rest = stripped.split(":", 1)[1].strip()
            matches = [] if rest == "none" else [m.strip() for m in rest.split(" ; ")]
        else:
            key, v = _parse_record(body, basis, field, no, col, source)
            block[key] = v
    if block is not None:
        raise ParseError("unterminated solution block", len(text.splitlines()), 1, source)
    return header, records
