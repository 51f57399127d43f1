"""Parsing and rendering of the JSON input document.

A document either presents a diagram (objects, hom spans, optional tensor
section) or a coalgebra with comodules for round-trip mode.  Scalars are
strings parsed in the declared field; every matrix is shape-checked on
read with a diagnostic naming the offending entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .coend import CoalgebraData
from .diagram import DiagramPresentation
from .errors import InputFormatError
from .fields import Field, field_from_descriptor
from .linalg import Matrix
from .reconstruct import ComodulePresentation
from .tensor import TensorData


def _parse_matrix(field: Field, obj, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(obj, list):
        raise InputFormatError(f"{where}: matrix must be a list of rows")
    if len(obj) != rows:
        raise InputFormatError(f"{where}: expected {rows} rows, got {len(obj)}")
    entries = []
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise InputFormatError(f"{where}: row {i} is not a list")
        if len(row) != cols:
            raise InputFormatError(
                f"{where}: row {i} has {len(row)} entries, expected {cols}"
            )
        for j, cell in enumerate(row):
            try:
                entries.append(field.parse(cell))
            except (InputFormatError, ZeroDivisionError) as err:
                raise InputFormatError(f"{where}: entry ({i}, {j}): {err}") from None
    return Matrix(field, rows, cols, entries)


def _render_matrix(field: Field, m: Matrix) -> list:
    return [[field.render(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


@dataclass
class InputDocument:
    """A validated input document, either diagram- or coalgebra-shaped."""

    field: Field
    diagram: Optional[DiagramPresentation] = None
    tensor: Optional[TensorData] = None
    coalgebra: Optional[CoalgebraData] = None
    comodules: Optional[list] = None

    @property
    def kind(self) -> str:
        return "coalgebra" if self.coalgebra is not None else "diagram"


def parse_document(text: str, field_override: Optional[Field] = None) -> InputDocument:
    """Parse and validate one document from JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputFormatError(f"invalid JSON: {err}") from None
    if not isinstance(data, dict):
        raise InputFormatError("top level must be a JSON object")

    if field_override is not None:
        field = field_override
    else:
        if "field" not in data:
            raise InputFormatError("missing 'field'")
        field = field_from_descriptor(data["field"])

    if "coalgebra" in data:
        return _parse_coalgebra_document(field, data["coalgebra"])
    if "objects" in data:
        return _parse_diagram_document(field, data)
    raise InputFormatError("document needs either 'objects' or 'coalgebra'")


def _parse_diagram_document(field: Field, data: dict) -> InputDocument:
    objects = []
    if not isinstance(data["objects"], list):
        raise InputFormatError("'objects' must be a list")
    for idx, obj in enumerate(data["objects"]):
        if not isinstance(obj, dict) or "name" not in obj or "dim" not in obj:
            raise InputFormatError(f"objects[{idx}] needs 'name' and 'dim'")
        name, dim = obj["name"], obj["dim"]
        if not isinstance(name, str) or not isinstance(dim, int) or dim < 0:
            raise InputFormatError(f"objects[{idx}]: bad name or dimension")
        objects.append((name, dim))
    dims = dict(objects)
    if len(dims) != len(objects):
        raise InputFormatError("duplicate object names")

    spans = {}
    for idx, hom in enumerate(data.get("homs", [])):
        if not isinstance(hom, dict) or "src" not in hom or "dst" not in hom:
            raise InputFormatError(f"homs[{idx}] needs 'src' and 'dst'")
        src, dst = hom["src"], hom["dst"]
        where = f"hom ({src} -> {dst})"
        if src not in dims or dst not in dims:
            raise InputFormatError(f"{where}: unknown object")
        span = hom.get("span", [])
        if not isinstance(span, list):
            raise InputFormatError(f"{where}: 'span' must be a list of matrices")
        mats = [
            _parse_matrix(field, m, dims[dst], dims[src], f"{where} span[{k}]")
            for k, m in enumerate(span)
        ]
        spans[(src, dst)] = spans.get((src, dst), []) + mats
    for name, dim in objects:
        if (name, name) not in spans and dim > 0:
            spans[(name, name)] = [Matrix.identity(field, dim)]

    diagram = DiagramPresentation(field, objects, spans)

    tensor = None
    if "tensor" in data:
        tdata = data["tensor"]
        if not isinstance(tdata, dict) or "unit" not in tdata or "table" not in tdata:
            raise InputFormatError("'tensor' needs 'unit' and 'table'")
        table = {}
        for key, value in tdata["table"].items():
            parts = key.split(",")
            if len(parts) != 2:
                raise InputFormatError(f"tensor table key {key!r} is not 'X,Y'")
            x, y = parts[0].strip(), parts[1].strip()
            if x not in dims or y not in dims or value not in dims:
                raise InputFormatError(f"tensor table entry {key!r}: unknown object")
            table[(x, y)] = value
        isos = {}
        for key, value in tdata.get("f2", {}).items():
            parts = key.split(",")
            if len(parts) != 2:
                raise InputFormatError(f"tensor f2 key {key!r} is not 'X,Y'")
            x, y = parts[0].strip(), parts[1].strip()
            if (x, y) not in table:
                raise InputFormatError(f"tensor f2 entry {key!r}: pair not in table")
            target = table[(x, y)]
            isos[(x, y)] = _parse_matrix(
                field, value, dims[target], dims[x] * dims[y], f"tensor f2[{key}]"
            )
        tensor = TensorData.build(diagram, tdata["unit"], table, isos)
    return InputDocument(field=field, diagram=diagram, tensor=tensor)


def _parse_coalgebra_document(field: Field, data: dict) -> InputDocument:
    if not isinstance(data, dict) or "dim" not in data:
        raise InputFormatError("'coalgebra' needs 'dim'")
    n = data["dim"]
    if not isinstance(n, int) or n < 0:
        raise InputFormatError("'coalgebra.dim' must be a non-negative integer")
    delta = _parse_matrix(field, data.get("delta", []), n * n, n, "coalgebra delta")
    eps_row = data.get("epsilon", [])
    epsilon = _parse_matrix(field, [eps_row], 1, n, "coalgebra epsilon")
    coalg = CoalgebraData(dim=n, delta=delta, epsilon=epsilon)
    comodules = []
    for idx, mod in enumerate(data.get("comodules", [])):
        if not isinstance(mod, dict) or "dim" not in mod or "rho" not in mod:
            raise InputFormatError(f"comodules[{idx}] needs 'dim' and 'rho'")
        d = mod["dim"]
        if not isinstance(d, int) or d < 0:
            raise InputFormatError(f"comodules[{idx}]: bad dimension")
        rho = _parse_matrix(field, mod["rho"], d * n, d, f"comodules[{idx}] rho")
        comodules.append(ComodulePresentation(dim=d, rho=rho))
    return InputDocument(field=field, coalgebra=coalg, comodules=comodules)


def render_document(doc: InputDocument) -> str:
    """Serialize a document back to canonical JSON text.

    Parsing the output yields a document equal to the input.
    """
    field = doc.field
    data = {"field": field.descriptor()}
    if doc.coalgebra is not None:
        data["coalgebra"] = {
            "dim": doc.coalgebra.dim,
            "delta": _render_matrix(field, doc.coalgebra.delta),
            "epsilon": _render_matrix(field, doc.coalgebra.epsilon)[0],
            "comodules": [
                {"dim": mod.dim, "rho": _render_matrix(field, mod.rho)}
                for mod in doc.comodules or []
            ],
        }
    else:
        diagram = doc.diagram
        data["objects"] = [{"name": n, "dim": d} for n, d in diagram.objects]
        homs = []
        for (src, dst) in sorted(diagram.hom_spans):
            mats = diagram.hom_spans[(src, dst)]
            if not mats:
                continue
            homs.append(
                {
                    "src": src,
                    "dst": dst,
                    "span": [_render_matrix(field, m) for m in mats],
                }
            )
        data["homs"] = homs
        if doc.tensor is not None:
            data["tensor"] = {
                "unit": doc.tensor.unit,
                "table": {
                    f"{x},{y}": z for (x, y), z in sorted(doc.tensor.table.items())
                },
                "f2": {
                    f"{x},{y}": _render_matrix(field, iso)
                    for (x, y), iso in sorted(doc.tensor.pair_isos.items())
                },
            }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
