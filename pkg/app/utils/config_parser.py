"""
Line-oriented run configuration files.

    # comment
    d=3
    flag=1,2
    lattice diag=0,0,0
    lattice matrix=[[1,0,0],[0,t,0],[0,0,1]]
    seed=7

Every error carries the line and column it was found at.
"""

import re
from typing import Optional

from pydantic import ValidationError

from app.algebra.syntax import parse_laurent
from app.exceptions import ConfigError, InvalidInputError, PolynomialSyntaxError
from app.schemas.run_config import LatticeSpec, RunConfig

_LINE = re.compile(r"^\s*(?P<key>[A-Za-z_]+(?:\s+[A-Za-z_]+)?)\s*=\s*(?P<value>.*?)\s*$")
_ROW = re.compile(r"\[([^\[\]]*)\]")


def _integers(value: str, line: int, column: int) -> list[int]:
    out = []
    offset = 0
    for piece in value.split(","):
        text = piece.strip()
        if not re.fullmatch(r"-?\d+", text):
            raise ConfigError(f"expected an integer, found {text!r}", line, column + offset)
        out.append(int(text))
        offset += len(piece) + 1
    return out


def _matrix(value: str, line: int, column: int) -> list[list[str]]:
    text = value.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ConfigError("matrix must be written [[..],[..],..]", line, column)
    rows = []
    for match in _ROW.finditer(text[1:-1]):
        entries = [e.strip() for e in match.group(1).split(",")]
        start = column + 1 + match.start(1)
        for entry in entries:
            try:
                parse_laurent(entry)
            except PolynomialSyntaxError as e:
                raise ConfigError(str(e), line, start + e.position) from e
            start += len(entry) + 1
        rows.append(entries)
    if not rows:
        raise ConfigError("empty matrix", line, column)
    return rows


def _integer(value: str, line: int, column: int) -> int:
    values = _integers(value, line, column)
    if len(values) != 1:
        raise ConfigError("expected a single integer", line, column)
    return values[0]


def _text(value: str, line: int, column: int) -> str:
    return value


# config key -> (RunConfig field, converter)
SCALARS = {
    "d": ("d", _integer),
    "flag": ("ranks", _integers),
    "seed": ("seed", _integer),
    "radius": ("radius", _integer),
    "max_candidates": ("max_candidates", _integer),
    "trials": ("trials", _integer),
    "order": ("order", _text),
    "format": ("output", _text),
    "timeout_secs": ("timeout_secs", _text),
}


def parse_config(text: str) -> RunConfig:
    """Parse a configuration file into a validated ``RunConfig``."""
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    lattices: list[LatticeSpec] = []
    lattice_lines: list[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        match = _LINE.match(body)
        if not match:
            raise ConfigError("expected key=value", number, len(body) - len(body.lstrip()) + 1)
        key = " ".join(match.group("key").split())
        value = match.group("value")
        column = match.start("value") + 1
        if key == "lattice diag":
            lattices.append(LatticeSpec(kind="diag", exponents=_integers(value, number, column)))
            lattice_lines.append(number)
            continue
        if key == "lattice matrix":
            lattices.append(LatticeSpec(kind="matrix", entries=_matrix(value, number, column)))
            lattice_lines.append(number)
            continue
        if key not in SCALARS:
            raise ConfigError(f"unknown key {key!r}", number, match.start("key") + 1)
        field_name, convert = SCALARS[key]
        if field_name in values:
            raise ConfigError(f"duplicate key {key!r}", number, match.start("key") + 1)
        values[field_name] = convert(value, number, column)
        lines[field_name] = number

    for required in ("d", "ranks"):
        if required not in values:
            raise ConfigError(f"missing {'flag' if required == 'ranks' else required}=")
    if not lattices:
        raise ConfigError("at least one lattice line is required")

    try:
        config = RunConfig(lattices=lattices, **values)
    except ValidationError as e:
        error = e.errors()[0]
        location = error["loc"][0] if error["loc"] else None
        line = lines.get(str(location))
        found = re.search(r"lattice (\d+)", error["msg"])
        if line is None and found:
            line = lattice_lines[int(found.group(1)) - 1]
        raise ConfigError(error["msg"], line) from e

    try:
        config.flag_type()
    except InvalidInputError as e:
        raise ConfigError(str(e), lines["ranks"]) from e
    for number, lattice in zip(lattice_lines, lattices):
        try:
            lattice.to_vertex()
        except InvalidInputError as e:
            raise ConfigError(str(e), number) from e
    try:
        config.configuration()
    except InvalidInputError as e:
        found = re.search(r"vertices (\d+) and (\d+)", str(e))
        raise ConfigError(str(e), lattice_lines[int(found.group(2)) - 1] if found else None) from e
    return config


def format_config(config: RunConfig) -> str:
    """Inverse of ``parse_config`` up to whitespace and comments."""
    lines = [f"d={config.d}", "flag=" + ",".join(str(k) for k in config.ranks)]
    for lattice in config.lattices:
        if lattice.kind == "diag":
            lines.append("lattice diag=" + ",".join(str(a) for a in lattice.exponents))
        else:
            rows = ",".join("[" + ",".join(row) + "]" for row in lattice.entries)
            lines.append(f"lattice matrix=[{rows}]")
    optional: dict[str, Optional[object]] = {
        "seed": config.seed,
        "radius": config.radius,
        "max_candidates": config.max_candidates,
        "timeout_secs": config.timeout_secs,
    }
    for key, value in optional.items():
        if value is not None:
            lines.append(f"{key}={value}")
    if config.order != "degrevlex":
        lines.append(f"order={config.order}")
    if config.output != "text":
        lines.append(f"format={config.output}")
    if config.trials != 4:
        lines.append(f"trials={config.trials}")
    return "\n".join(lines) + "\n"
