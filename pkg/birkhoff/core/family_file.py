"""
VFAM/1 text format.

    VFAM/1 n=<n> N=<N> trunc=<degree> mode=<rational|float>
    w1 <w1_1> ... <w1_n>        (optional)
    w2 <w2_1> ... <w2_n>        (optional)
    <i>  <j>  <Q>  <re>  <im>   (one record per term)

Q lists the exponents as `var^exp` separated by commas ("-1^1,1^2"), `-` being the
constant monomial. In rational mode coefficients are written "p/q". Lines starting
with `#` and blank lines are ignored.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from birkhoff.core.algebra.coefficients import (
    Arithmetic,
    Coefficient,
    GaussianRational,
    Mode,
)
from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.algebra.vector_field import TermKey, VectorField
from birkhoff.core.constants import DEFAULT_ZERO_THRESHOLD, FAMILY_FORMAT_TAG
from birkhoff.core.errors import AlgebraError, ParseError
from birkhoff.core.norms import WeightTable


logger = logging.getLogger(__name__)

HEADER_KEYS = ("n", "N", "trunc", "mode")
EXPONENT_RE = re.compile(r"^(-?[1-9][0-9]*)\^([1-9][0-9]*)$")


@dataclass
class FamilyFile:
    family: Family
    weights: Optional[WeightTable] = None


def _error(line_number: int, message: str) -> ParseError:
    return ParseError(f"line {line_number}: {message}")


def _parse_header(line: str, line_number: int) -> Dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != FAMILY_FORMAT_TAG:
        raise _error(line_number, f"expected a {FAMILY_FORMAT_TAG} header")
    header: Dict[str, str] = {}
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        if not sep or key not in HEADER_KEYS:
            raise _error(line_number, f"invalid header field '{part}'")
        if key in header:
            raise _error(line_number, f"duplicate header field '{key}'")
        header[key] = value
    missing = [key for key in HEADER_KEYS if key not in header]
    if missing:
        raise _error(line_number, f"missing header fields: {', '.join(missing)}")
    return header


def _parse_int(text: str, line_number: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise _error(line_number, f"invalid {what} '{text}'")


def parse_multi_index(text: str, n: int, line_number: int = 0) -> MultiIndex:
    if text == "-":
        return MultiIndex()
    exponents: Dict[int, int] = {}
    for part in text.split(","):
        match = EXPONENT_RE.match(part)
        if not match:
            raise _error(line_number, f"invalid monomial '{text}'")
        var, exp = int(match.group(1)), int(match.group(2))
        if abs(var) > n:
            raise _error(line_number, f"variable {var} out of range for n={n}")
        if var in exponents:
            raise _error(line_number, f"variable {var} repeated in '{text}'")
        exponents[var] = exp
    return MultiIndex(exponents)


def _parse_coefficient(
    re_text: str, im_text: str, arithmetic: Arithmetic, line_number: int
) -> Coefficient:
    try:
        if arithmetic.exact:
            return GaussianRational(Fraction(re_text), Fraction(im_text))
        return complex(float(re_text), float(im_text))
    except (ValueError, ZeroDivisionError):
        raise _error(
            line_number,
            f"invalid {arithmetic.mode.value} coefficient '{re_text} {im_text}'",
        )


def _parse_weights(parts: List[str], n: int, line_number: int) -> Tuple[float, ...]:
    if len(parts) != n + 1:
        raise _error(line_number, f"expected {n} weights")
    try:
        return tuple(float(value) for value in parts[1:])
    except ValueError:
        raise _error(line_number, "invalid weight")


def parse_family(
    text: str, zero_threshold: float = DEFAULT_ZERO_THRESHOLD
) -> FamilyFile:
    lines = text.splitlines()
    numbered = [
        (number, line.strip())
        for number, line in enumerate(lines, start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not numbered:
        raise ParseError("empty family file")

    header_line, header_text = numbered[0]
    header = _parse_header(header_text, header_line)
    n = _parse_int(header["n"], header_line, "n")
    N = _parse_int(header["N"], header_line, "N")
    trunc = _parse_int(header["trunc"], header_line, "truncation degree")
    try:
        mode = Mode(header["mode"])
    except ValueError:
        raise _error(header_line, f"invalid mode '{header['mode']}'")
    if n < 1 or N < 0 or trunc < 0:
        raise _error(header_line, "n must be positive, N and trunc nonnegative")
    arithmetic = Arithmetic(mode, zero_threshold)

    w1: Optional[Tuple[float, ...]] = None
    w2: Optional[Tuple[float, ...]] = None
    members: List[Dict[TermKey, Coefficient]] = [{} for _ in range(N)]
    seen: Set[Tuple[int, TermKey]] = set()
    for line_number, line in numbered[1:]:
        parts = line.split()
        if parts[0] == "w1":
            w1 = _parse_weights(parts, n, line_number)
            continue
        if parts[0] == "w2":
            w2 = _parse_weights(parts, n, line_number)
            continue
        if len(parts) != 5:
            raise _error(line_number, "expected 'i j Q re im'")
        i = _parse_int(parts[0], line_number, "member index")
        j = _parse_int(parts[1], line_number, "component index")
        if not 1 <= i <= N:
            raise _error(line_number, f"member index {i} out of range 1..{N}")
        if j == 0 or abs(j) > n:
            raise _error(line_number, f"component index {j} out of range for n={n}")
        index = parse_multi_index(parts[2], n, line_number)
        if index.degree > trunc:
            raise _error(
                line_number, f"degree {index.degree} above truncation degree {trunc}"
            )
        key = (index, j)
        if (i, key) in seen:
            raise _error(
                line_number, f"duplicate record for member {i}, {parts[2]} e_{j}"
            )
        seen.add((i, key))
        members[i - 1][key] = _parse_coefficient(
            parts[3], parts[4], arithmetic, line_number
        )

    weights = None
    if w1 is not None or w2 is not None:
        try:
            weights = WeightTable(w1 or w2 or (), w2 or w1 or ())
        except AlgebraError as exc:
            raise ParseError(str(exc)) from exc
    fields = [VectorField(terms, n, trunc, arithmetic) for terms in members]
    logger.debug("parsed family N=%d n=%d trunc=%d mode=%s", N, n, trunc, mode.value)
    return FamilyFile(Family(fields, n, trunc, arithmetic), weights)


def format_real(value: object) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))  # type: ignore[arg-type]


def format_coefficient(value: Coefficient) -> Tuple[str, str]:
    if isinstance(value, GaussianRational):
        return str(value.re), str(value.im)
    return repr(value.real), repr(value.imag)


def serialize_family(family: Family, weights: Optional[WeightTable] = None) -> str:
    """Canonical VFAM/1 text: members in order, terms in canonical order"""
    lines = [
        f"{FAMILY_FORMAT_TAG} n={family.n} N={family.N} trunc={family.trunc_degree}"
        f" mode={family.arithmetic.mode.value}"
    ]
    if weights is not None:
        lines.append("w1 " + " ".join(format_real(w) for w in weights.w1))
        lines.append("w2 " + " ".join(format_real(w) for w in weights.w2))
    for i, member in enumerate(family, start=1):
        for (index, j), value in member.sorted_terms():
            re_text, im_text = format_coefficient(value)
            lines.append(f"{i}  {j}  {index}  {re_text}  {im_text}")
    return "\n".join(lines) + "\n"


def read_family_file(
    path: Path, zero_threshold: float = DEFAULT_ZERO_THRESHOLD
) -> FamilyFile:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not a text file") from exc
    try:
        return parse_family(text, zero_threshold)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.message}") from exc


def write_family_file(
    path: Path, family: Family, weights: Optional[WeightTable] = None
) -> None:
    path.write_text(serialize_family(family, weights), encoding="utf-8")
