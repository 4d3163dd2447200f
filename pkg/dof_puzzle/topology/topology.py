import itertools
import json
import logging
import re
from typing import Iterator, List, Optional, Tuple

from pydantic import ValidationError

from dof_puzzle.errors import DomainError, InvalidArgumentError, ParseError
from dof_puzzle.models import ChannelSpec, IndexMatrix

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\S+")


def mod1(a: int, n: int) -> int:
    """Modulo with an offset of 1: returns n instead of 0, so the result is in [1..n]."""
    if n <= 0:
        raise InvalidArgumentError(f"mod1 divisor must be positive, got {n}")
    r = a % n
    return r if r else n


def symmetric_spec(K: int, m: int) -> ChannelSpec:
    """Cyclic family where Rx p hears (and gets a message from) Tx q iff (p - q) mod K < m.

    Args:
        K: number of users
        m: number of transmitters each receiver hears, 1 <= m <= K

    Returns:
        ChannelSpec: with M = N
    """
    if K < 1:
        raise InvalidArgumentError(f"K must be positive, got {K}")
    if m < 1 or m > K:
        raise InvalidArgumentError(f"m must lie in [1..{K}], got {m}")
    rows = tuple(
        tuple(1 if (p - q) % K < m else 0 for q in range(1, K + 1))
        for p in range(1, K + 1)
    )
    return ChannelSpec(K=K, M=rows, N=rows)


# Parsing

def _numbered_lines(source: str) -> List[Tuple[int, str]]:
    return [(number, line.rstrip()) for number, line in enumerate(source.splitlines(), start=1)]


def _parse_int_row(line_number: int, line: str, expected: int) -> List[int]:
    tokens = list(_TOKEN.finditer(line))
    values = []
    for match in tokens:
        try:
            values.append(int(match.group()))
        except ValueError:
            raise ParseError(f"'{match.group()}' is not an integer", line_number, match.start() + 1)
    if len(values) != expected:
        column = tokens[expected].start() + 1 if len(tokens) > expected else len(line) + 1
        raise ParseError(f"expected {expected} entries, found {len(values)}", line_number, column)
    return values


def _check_binary(name: str, line_number: int, line: str, values: List[int]) -> None:
    for match, value in zip(_TOKEN.finditer(line), values):
        if value not in (0, 1):
            raise DomainError(f"{name} entry {value} is not binary", line_number, match.start() + 1)


def _take_rows(lines, start: int, count: int, K: int, what: str) -> Tuple[List[Tuple[int, str]], int]:
    rows = []
    index = start
    while len(rows) < count:
        if index >= len(lines):
            last = lines[-1][0] if lines else 1
            raise ParseError(f"expected {count} rows of {what}, found {len(rows)}", last + 1)
        number, line = lines[index]
        if not line.strip():
            raise ParseError(f"blank line inside {what}, expected {count} rows", number)
        rows.append((number, line))
        index += 1
    return rows, index


def _parse_header(lines) -> Tuple[int, int]:
    """Return (K, index of the first line after the header)."""
    index = 0
    while index < len(lines) and not lines[index][1].strip():
        index += 1
    if index == len(lines):
        raise ParseError("empty input", 1)
    number, line = lines[index]
    tokens = list(_TOKEN.finditer(line))
    if len(tokens) != 1:
        raise ParseError("first line must hold the single integer K", number, 1)
    try:
        K = int(tokens[0].group())
    except ValueError:
        raise ParseError(f"'{tokens[0].group()}' is not an integer", number, tokens[0].start() + 1)
    if K < 1:
        raise DomainError(f"K must be positive, got {K}", number, tokens[0].start() + 1)
    return K, index + 1


def _check_trailing(lines, index: int) -> None:
    for number, line in lines[index:]:
        if line.strip():
            raise ParseError("unexpected content after the last row", number, 1)


def _parse_plain_spec(source: str) -> ChannelSpec:
    lines = _numbered_lines(source)
    K, index = _parse_header(lines)

    m_rows, index = _take_rows(lines, index, K, K, "M")
    if index >= len(lines) or lines[index][1].strip():
        number = lines[index][0] if index < len(lines) else lines[-1][0] + 1
        raise ParseError("expected a blank line between M and N", number)
    while index < len(lines) and not lines[index][1].strip():
        index += 1
    n_rows, index = _take_rows(lines, index, K, K, "N")
    _check_trailing(lines, index)

    matrices = []
    for name, rows in (("M", m_rows), ("N", n_rows)):
        parsed = []
        for number, line in rows:
            values = _parse_int_row(number, line, K)
            _check_binary(name, number, line, values)
            parsed.append(tuple(values))
        matrices.append(tuple(parsed))
    return ChannelSpec(K=K, M=matrices[0], N=matrices[1])


def _load_document(source: str) -> dict:
    try:
        document = json.loads(source)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno)
    if not isinstance(document, dict):
        raise ParseError("structured input must be an object", 1)
    return document


def _document_matrix(document: dict, name: str, K: int) -> Tuple[Tuple[int, ...], ...]:
    matrix = document.get(name)
    if not isinstance(matrix, list) or len(matrix) != K:
        raise ParseError(f"field '{name}' must be a list of {K} rows", 1)
    rows = []
    for p, row in enumerate(matrix, start=1):
        if not isinstance(row, list) or len(row) != K or not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise ParseError(f"row {p} of '{name}' must hold {K} integers", 1)
        rows.append(tuple(row))
    return tuple(rows)


def _parse_structured_spec(source: str) -> ChannelSpec:
    document = _load_document(source)
    K = document.get("K")
    if not isinstance(K, int) or isinstance(K, bool):
        raise ParseError("field 'K' must be an integer", 1)
    if K < 1:
        raise DomainError(f"K must be positive, got {K}")
    M = _document_matrix(document, "M", K)
    N = _document_matrix(document, "N", K)
    for name, matrix in (("M", M), ("N", N)):
        for p, row in enumerate(matrix, start=1):
            for q, value in enumerate(row, start=1):
                if value not in (0, 1):
                    raise DomainError(f"{name}[{p},{q}] = {value} is not binary")
    return ChannelSpec(K=K, M=M, N=N)


def parse_spec(source: str) -> ChannelSpec:
    """Parse a ChannelSpec from the plain or the structured (JSON) format.

    Raises:
        ParseError: malformed text, with line and column
        DomainError: an entry of M or N that is not 0/1
    """
    try:
        if source.lstrip().startswith("{"):
            spec = _parse_structured_spec(source)
        else:
            spec = _parse_plain_spec(source)
    except ValidationError as e:
        raise DomainError(str(e))

    for p, q in spec.dead_links():
        logger.warning(f"Message M[{p},{q}]=1 sits on a dead link (N[{p},{q}]=0)")
    return spec


def _matrix_lines(matrix) -> List[str]:
    return [" ".join(str(v) for v in row) for row in matrix]


def serialize_spec(spec: ChannelSpec, fmt: str = "plain") -> str:
    if fmt == "json":
        return json.dumps({"K": spec.K, "M": [list(r) for r in spec.M], "N": [list(r) for r in spec.N]}) + "\n"
    if fmt != "plain":
        raise InvalidArgumentError(f"unknown format '{fmt}'")
    lines = [str(spec.K)] + _matrix_lines(spec.M) + [""] + _matrix_lines(spec.N)
    return "\n".join(lines) + "\n"


def parse_index_matrix(source: str) -> IndexMatrix:
    """Parse G from 'K' followed by K rows, or from {"K": .., "G": [[..]]}."""
    try:
        if source.lstrip().startswith("{"):
            document = _load_document(source)
            K = document.get("K")
            rows = document.get("G")
            if K is None and isinstance(rows, list):
                K = len(rows)
            if not isinstance(K, int) or isinstance(K, bool) or K < 1:
                raise ParseError("field 'K' must be a positive integer", 1)
            G = _document_matrix(document, "G", K)
            for p, row in enumerate(G, start=1):
                for q, value in enumerate(row, start=1):
                    if value < 0:
                        raise DomainError(f"G[{p},{q}] = {value} is negative")
            return IndexMatrix(K=K, G=G)

        lines = _numbered_lines(source)
        K, index = _parse_header(lines)
        rows, index = _take_rows(lines, index, K, K, "G")
        _check_trailing(lines, index)
        parsed = []
        for number, line in rows:
            values = _parse_int_row(number, line, K)
            for match, value in zip(_TOKEN.finditer(line), values):
                if value < 0:
                    raise DomainError(f"G entry {value} is negative", number, match.start() + 1)
            parsed.append(tuple(values))
        return IndexMatrix(K=K, G=tuple(parsed))
    except ValidationError as e:
        raise DomainError(str(e))


def serialize_index_matrix(G: IndexMatrix, fmt: str = "plain") -> str:
    if fmt == "json":
        return json.dumps({"K": G.K, "G": G.as_lists()}) + "\n"
    if fmt != "plain":
        raise InvalidArgumentError(f"unknown format '{fmt}'")
    return "\n".join([str(G.K)] + _matrix_lines(G.G)) + "\n"


# Enumeration

def _bits_to_matrix(bits: int, K: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple((bits >> (p * K + q)) & 1 for q in range(K)) for p in range(K))


def enumerate_specs(K: int, reduce_symmetry: bool = True, max_support: Optional[int] = None) -> Iterator[ChannelSpec]:
    """Yield every K-user ChannelSpec.

    With reduce_symmetry, one representative per orbit under independent
    permutations of receivers (rows) and transmitters (columns) is yielded;
    such relabelings leave validity, every g^(p) and the score unchanged.

    Args:
        K: number of users
        reduce_symmetry: skip specs equivalent to one already yielded
        max_support: skip specs with more than this many messages
    """
    if K < 1:
        raise InvalidArgumentError(f"K must be positive, got {K}")
    cells = K * K
    cell_maps = []
    if reduce_symmetry:
        for rows in itertools.permutations(range(K)):
            for cols in itertools.permutations(range(K)):
                cell_maps.append([rows[i // K] * K + cols[i % K] for i in range(cells)])

    def permute(bits: int, cell_map) -> int:
        out = 0
        for i in range(cells):
            if (bits >> i) & 1:
                out |= 1 << cell_map[i]
        return out

    seen = set()
    for m_bits in range(1 << cells):
        if max_support is not None and bin(m_bits).count("1") > max_support:
            continue
        for n_bits in range(1 << cells):
            if reduce_symmetry:
                if (m_bits, n_bits) in seen:
                    continue
                for cell_map in cell_maps:
                    seen.add((permute(m_bits, cell_map), permute(n_bits, cell_map)))
            yield ChannelSpec(K=K, M=_bits_to_matrix(m_bits, K), N=_bits_to_matrix(n_bits, K))
