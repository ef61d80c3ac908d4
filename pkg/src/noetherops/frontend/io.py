"""Problem files, point files and JSON output.

A problem file is either text or JSON.  The text form has optional header
lines followed by one generator per line::

    # comments start with '#'
    vars: t, x, y
    indep: t          # or "auto"
    x^2 - t*y
    y^2

The JSON form is ``{"schema": 1, "variables": [...], "independent": "auto",
"ideal": [...], "prime": [...], "options": {...}}``.

Point files are ``{"variables": [...], "points": [{"coords": [[re, im], ...],
"component": "id", "value": [re, im]}]}``; ``value`` is only used for
interpolation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ParseError
from ..numericops import WitnessPoint
from ..polyring import VariableRing
from .parser import identifiers, parse_polynomial

SCHEMA = 1


@dataclass
class ProblemFile:
    variables: list
    ideal: list = field(default_factory=list)
    independent: list | None = None  # None means "auto"
    prime: list | None = None
    options: dict = field(default_factory=dict)
    texts: list = field(default_factory=list)

    @property
    def ring(self) -> VariableRing:
        return VariableRing(self.variables)


def _natural_key(name):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


def _split_list(value):
    return [v for v in re.split(r"[,\s]+", value.strip()) if v]


def _read_text(text):
    variables = None
    independent = None
    options = {}
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^(vars|variables|indep|independent|order|dmax|tol)\s*:\s*(.*)$", line)
        if m:
            key, value = m.group(1), m.group(2)
            if key in ("vars", "variables"):
                variables = _split_list(value)
            elif key in ("indep", "independent"):
                independent = None if value.strip() == "auto" else _split_list(value)
            else:
                options[key] = value.strip()
            continue
        for part in line.rstrip(",").split(","):
            if part.strip():
                gens.append((part.strip(), lineno))
    return variables, independent, gens, options


def _parse_all(gens, ring):
    out = []
    for text, lineno in gens:
        try:
            out.append(parse_polynomial(text, ring))
        except ParseError as exc:
            raise ParseError(f"{exc.args[0].split(' (line')[0]}", lineno, exc.column) from None
    return out


def read_problem(path, variables=None) -> ProblemFile:
    """Read an ideal (or prime) file; ``variables`` fixes the ring when given."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        vars_ = doc.get("variables") or variables
        indep = doc.get("independent", "auto")
        indep = None if indep in (None, "auto") else list(indep)
        ideal_texts = [(g, None) for g in doc.get("ideal", [])]
        prime_texts = [(g, None) for g in doc.get("prime", [])] if "prime" in doc else None
        options = dict(doc.get("options", {}))
    else:
        vars_, indep, ideal_texts, options = _read_text(text)
        vars_ = vars_ or variables
        prime_texts = None
    if vars_ is None:
        found = []
        for t, _ in ideal_texts + (prime_texts or []):
            for name in identifiers(t):
                if name not in found:
                    found.append(name)
        vars_ = sorted(found, key=_natural_key)
    elif variables is not None and list(vars_) != list(variables):
        raise ParseError(f"variables {list(vars_)} differ from {list(variables)}")
    ring = VariableRing(vars_)
    return ProblemFile(
        variables=list(vars_),
        ideal=_parse_all(ideal_texts, ring),
        independent=indep,
        prime=_parse_all(prime_texts, ring) if prime_texts is not None else None,
        options=options,
        texts=[t for t, _ in ideal_texts],
    )


def _complex(value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ParseError("complex numbers are written [re, im]")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace("i", "j").replace(" ", ""))
    return complex(value)


def read_points(path, variables=None):
    """Points (and optional values) from a JSON file.

    Returns
    -------
    points : list of WitnessPoint
    values : list of complex or None
    """
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    names = doc.get("variables") or variables
    if names is None:
        raise ParseError("the point file does not name its variables")
    if variables is not None and list(names) != list(variables):
        # reorder into the problem's variable order
        missing = set(variables) - set(names)
        if missing:
            raise ParseError(f"points lack coordinates for {sorted(missing)}")
    points, values = [], []
    for k, entry in enumerate(doc.get("points", [])):
        coords = entry["coords"] if isinstance(entry, dict) else entry
        if len(coords) != len(names):
            raise ParseError(f"point {k} has {len(coords)} coordinates, expected {len(names)}")
        comp = entry.get("component") if isinstance(entry, dict) else None
        mapping = {n: _complex(c) for n, c in zip(names, coords)}
        points.append(WitnessPoint(mapping, component=None if comp is None else str(comp)))
        if isinstance(entry, dict) and "value" in entry:
            values.append(_complex(entry["value"]))
    if values and len(values) != len(points):
        raise ParseError("either every point or no point carries a value")
    return points, (values or None)


def group_points(points):
    groups = {}
    for p in points:
        groups.setdefault(p.component or "0", []).append(p)
    return groups


def complex_to_json(z: complex):
    return [float(z.real), float(z.imag)]


def write_points(path, points, variables, values=None):
    doc = {"schema": SCHEMA, "variables": list(variables), "points": []}
    for k, p in enumerate(points):
        entry = {"coords": [complex_to_json(p[n]) for n in variables]}
        if p.component is not None:
            entry["component"] = p.component
        if values is not None:
            entry["value"] = complex_to_json(values[k])
        doc["points"].append(entry)
    write_json(path, doc)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_json(path, doc):
    Path(path).write_text(dumps(doc))
