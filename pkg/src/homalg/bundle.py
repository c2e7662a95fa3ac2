"""Canonical on-disk interchange for structures, representations, operators,
and bilinear forms, plus deterministic report payloads.

A bundle is one self-contained JSON document.  Canonical form has a fixed key
order, sparse entries sorted ascending, and every rational rendered as
``"p/q"`` with the fraction reduced and the denominator positive (``"/1"``
mandatory for integers).  ``load → save`` is byte-identical on canonical
files; ``save → load`` is the identity on in-memory values.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .exact import Matrix, Tensor, mat_shape, matrix
from .operators import (
    KIND_O_OPERATOR,
    KIND_ROTA_BAXTER,
    OPERATOR_KINDS,
    BilinearForm,
    OperatorWitness,
)
from .reps import ActionRole, Representation
from .structures import (
    CheckReport,
    HomStructure,
    ProductRole,
    StructureClass,
)

SCHEMA_VERSION = 1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")

_PRODUCT_ROLES = {role.value: role for role in ProductRole}
_ACTION_ROLES = {role.value: role for role in ActionRole}
_CLASSES = {cls.value: cls for cls in StructureClass}

_TOP_KEYS = frozenset(
    {"schema_version", "class", "dim", "basis", "twist", "products",
     "reps", "operators", "forms", "meta"}
)
_REP_KEYS = frozenset({"module_dim", "module_twist", "actions"})
_OPERATOR_KEYS = frozenset({"kind", "weight", "rep_index", "matrix"})


class BundleError(ValueError):
    """The file is not a valid bundle; the message names the offending
    field or index."""


# ---------------------------------------------------------------------------
# rational and matrix plumbing
# ---------------------------------------------------------------------------

def format_rational(value: Fraction) -> str:
    """Canonical ``"p/q"`` string: reduced, positive denominator, ``/1``
    mandatory."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: Any, where: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise BundleError(f"{where}: expected a rational string 'p/q', got {text!r}")
    num, _, den = text.partition("/")
    if den:
        if int(den) == 0:
            raise BundleError(f"{where}: zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def _require_index(value: Any, bound: int, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise BundleError(f"{where}: expected an integer index, got {value!r}")
    if not 0 <= value < bound:
        raise BundleError(f"{where}: index {value} out of range [0, {bound})")
    return value


def _flat_matrix(values: Any, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(values, list) or len(values) != rows * cols:
        got = len(values) if isinstance(values, list) else type(values).__name__
        raise BundleError(
            f"{where}: expected a flat row-major list of {rows * cols} "
            f"rationals, got {got}"
        )
    entries = [parse_rational(v, f"{where}[{n}]") for n, v in enumerate(values)]
    return matrix([entries[r * cols:(r + 1) * cols] for r in range(rows)])


def _matrix_to_flat(mat: Matrix) -> list[str]:
    return [format_rational(v) for row in mat for v in row]


# ---------------------------------------------------------------------------
# sparse entry lists
# ---------------------------------------------------------------------------

def _tensor_to_entries(tensor: Tensor) -> list[list[Any]]:
    out: list[list[Any]] = []
    for (i, j) in sorted(tensor):
        svec = tensor[(i, j)]
        for k in sorted(svec):
            if svec[k]:
                out.append([i, j, k, format_rational(svec[k])])
    return out


def _entries_to_tensor(entries: Any, dim: int, where: str) -> Tensor:
    if not isinstance(entries, list):
        raise BundleError(f"{where}: expected a list of [i, j, k, 'p/q'] entries")
    tensor: dict[tuple[int, int], dict[int, Fraction]] = {}
    for n, entry in enumerate(entries):
        spot = f"{where}[{n}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise BundleError(f"{spot}: expected [i, j, k, 'p/q'], got {entry!r}")
        i = _require_index(entry[0], dim, spot)
        j = _require_index(entry[1], dim, spot)
        k = _require_index(entry[2], dim, spot)
        value = parse_rational(entry[3], spot)
        svec = tensor.setdefault((i, j), {})
        if k in svec:
            raise BundleError(f"{spot}: duplicate entry for ({i}, {j}, {k})")
        if value:
            svec[k] = value
    return {key: svec for key, svec in tensor.items() if svec}


def _slices_to_entries(slices: tuple[Matrix, ...]) -> list[list[Any]]:
    out: list[list[Any]] = []
    for i, mat in enumerate(slices):
        for a, row in enumerate(mat):
            for b, value in enumerate(row):
                if value:
                    out.append([i, a, b, format_rational(value)])
    return out


def _entries_to_slices(entries: Any, dim: int, module_dim: int,
                       where: str) -> tuple[Matrix, ...]:
    if not isinstance(entries, list):
        raise BundleError(f"{where}: expected a list of [i, a, b, 'p/q'] entries")
    grids = [[[Fraction(0)] * module_dim for _ in range(module_dim)]
             for _ in range(dim)]
    seen: set[tuple[int, int, int]] = set()
    for n, entry in enumerate(entries):
        spot = f"{where}[{n}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise BundleError(f"{spot}: expected [i, a, b, 'p/q'], got {entry!r}")
        i = _require_index(entry[0], dim, spot)
        a = _require_index(entry[1], module_dim, spot)
        b = _require_index(entry[2], module_dim, spot)
        if (i, a, b) in seen:
            raise BundleError(f"{spot}: duplicate entry for ({i}, {a}, {b})")
        seen.add((i, a, b))
        grids[i][a][b] = parse_rational(entry[3], spot)
    return tuple(matrix(g) for g in grids)


# ---------------------------------------------------------------------------
# the bundle container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bundle:
    """A structure with any attached representations, operator witnesses, and
    bilinear forms, exactly as loaded from (or destined for) one file."""

    structure: HomStructure
    declared_class: StructureClass | None = None
    reps: tuple[Representation, ...] = ()
    operators: tuple[OperatorWitness, ...] = ()
    rep_indices: tuple[int | None, ...] = ()
    forms: tuple[BilinearForm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "reps", tuple(self.reps))
        object.__setattr__(self, "operators", tuple(self.operators))
        object.__setattr__(self, "forms", tuple(self.forms))
        indices = tuple(self.rep_indices)
        if not indices and self.operators:
            indices = tuple(None for _ in self.operators)
        if len(indices) != len(self.operators):
            raise BundleError(
                f"rep_indices: {len(indices)} entries for "
                f"{len(self.operators)} operators"
            )
        for n, (witness, idx) in enumerate(zip(self.operators, indices)):
            if witness.kind == KIND_O_OPERATOR:
                if idx is None or not 0 <= idx < len(self.reps):
                    raise BundleError(
                        f"operators[{n}]: rep_index {idx!r} does not point at "
                        f"one of {len(self.reps)} reps"
                    )
            elif idx is not None:
                raise BundleError(
                    f"operators[{n}]: rep_index is only meaningful for "
                    f"'{KIND_O_OPERATOR}' witnesses"
                )
        object.__setattr__(self, "rep_indices", indices)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def bundle_payload(bundle: Bundle) -> dict[str, Any]:
    """The canonical JSON-ready mapping (fixed key order)."""
    s = bundle.structure
    payload: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    if bundle.declared_class is not None:
        payload["class"] = bundle.declared_class.value
    payload["dim"] = s.dim
    payload["basis"] = list(s.basis)
    payload["twist"] = _matrix_to_flat(s.twist)
    payload["products"] = {
        role.value: _tensor_to_entries(tensor)
        for role, tensor in sorted(s.products.items(), key=lambda kv: kv[0].value)
    }
    if bundle.reps:
        payload["reps"] = [
            {
                "module_dim": rep.module_dim,
                "module_twist": _matrix_to_flat(rep.module_twist),
                "actions": {
                    role.value: _slices_to_entries(slices)
                    for role, slices in sorted(rep.actions.items(),
                                               key=lambda kv: kv[0].value)
                },
            }
            for rep in bundle.reps
        ]
    if bundle.operators:
        ops = []
        for witness, idx in zip(bundle.operators, bundle.rep_indices):
            entry: dict[str, Any] = {"kind": witness.kind}
            if witness.kind == KIND_ROTA_BAXTER:
                entry["weight"] = format_rational(witness.weight)
            else:
                entry["rep_index"] = idx
            entry["matrix"] = _matrix_to_flat(witness.matrix)
            ops.append(entry)
        payload["operators"] = ops
    if bundle.forms:
        payload["forms"] = [_matrix_to_flat(form.matrix) for form in bundle.forms]
    if s.meta:
        payload["meta"] = {key: s.meta[key] for key in sorted(s.meta)}
    return payload


def dumps_bundle(bundle: Bundle) -> str:
    return json.dumps(bundle_payload(bundle), indent=2) + "\n"


def save_bundle(bundle: Bundle, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_bundle(bundle))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _parse_rep(raw: Any, structure: HomStructure, where: str) -> Representation:
    if not isinstance(raw, dict):
        raise BundleError(f"{where}: expected an object")
    extra = set(raw) - _REP_KEYS
    if extra:
        raise BundleError(f"{where}: unknown keys {sorted(extra)}")
    for key in ("module_dim", "module_twist", "actions"):
        if key not in raw:
            raise BundleError(f"{where}: missing key '{key}'")
    module_dim = raw["module_dim"]
    if not isinstance(module_dim, int) or isinstance(module_dim, bool) or module_dim < 1:
        raise BundleError(f"{where}.module_dim: expected a positive integer, "
                          f"got {module_dim!r}")
    module_twist = _flat_matrix(raw["module_twist"], module_dim, module_dim,
                                f"{where}.module_twist")
    if not isinstance(raw["actions"], dict):
        raise BundleError(f"{where}.actions: expected an object")
    actions: dict[ActionRole, tuple[Matrix, ...]] = {}
    for name, entries in raw["actions"].items():
        role = _ACTION_ROLES.get(name)
        if role is None:
            raise BundleError(
                f"{where}.actions: unknown action role {name!r}; expected one "
                f"of {sorted(_ACTION_ROLES)}"
            )
        actions[role] = _entries_to_slices(entries, structure.dim, module_dim,
                                           f"{where}.actions.{name}")
    return Representation(base=structure, module_dim=module_dim,
                          module_twist=module_twist, actions=actions)


def _parse_operator(raw: Any, structure: HomStructure,
                    reps: tuple[Representation, ...],
                    where: str) -> tuple[OperatorWitness, int | None]:
    if not isinstance(raw, dict):
        raise BundleError(f"{where}: expected an object")
    extra = set(raw) - _OPERATOR_KEYS
    if extra:
        raise BundleError(f"{where}: unknown keys {sorted(extra)}")
    kind = raw.get("kind")
    if kind not in OPERATOR_KINDS:
        raise BundleError(f"{where}.kind: expected one of "
                          f"{sorted(OPERATOR_KINDS)}, got {kind!r}")
    if "matrix" not in raw:
        raise BundleError(f"{where}: missing key 'matrix'")
    if kind == KIND_ROTA_BAXTER:
        if "rep_index" in raw:
            raise BundleError(f"{where}: '{KIND_ROTA_BAXTER}' witnesses carry "
                              f"no rep_index")
        weight = (parse_rational(raw["weight"], f"{where}.weight")
                  if "weight" in raw else Fraction(0))
        mat = _flat_matrix(raw["matrix"], structure.dim, structure.dim,
                           f"{where}.matrix")
        return OperatorWitness(kind=kind, matrix=mat, weight=weight), None
    if "weight" in raw:
        raise BundleError(f"{where}: '{KIND_O_OPERATOR}' witnesses carry no weight")
    if "rep_index" not in raw:
        raise BundleError(f"{where}: missing key 'rep_index'")
    idx = _require_index(raw["rep_index"], len(reps), f"{where}.rep_index")
    rep = reps[idx]
    mat = _flat_matrix(raw["matrix"], structure.dim, rep.module_dim,
                       f"{where}.matrix")
    return OperatorWitness(kind=kind, matrix=mat, rep=rep), idx


def loads_bundle(text: str) -> Bundle:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise BundleError("top level: expected an object")
    extra = set(raw) - _TOP_KEYS
    if extra:
        raise BundleError(f"top level: unknown keys {sorted(extra)}")
    for key in ("schema_version", "dim", "basis", "twist", "products"):
        if key not in raw:
            raise BundleError(f"top level: missing key '{key}'")
    if raw["schema_version"] != SCHEMA_VERSION:
        raise BundleError(
            f"schema_version: expected {SCHEMA_VERSION}, got {raw['schema_version']!r}"
        )
    dim = raw["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise BundleError(f"dim: expected a positive integer, got {dim!r}")
    basis = raw["basis"]
    if (not isinstance(basis, list) or len(basis) != dim
            or not all(isinstance(b, str) for b in basis)):
        raise BundleError(f"basis: expected a list of {dim} strings")
    twist = _flat_matrix(raw["twist"], dim, dim, "twist")
    if not isinstance(raw["products"], dict):
        raise BundleError("products: expected an object")
    products: dict[ProductRole, Tensor] = {}
    for name, entries in raw["products"].items():
        role = _PRODUCT_ROLES.get(name)
        if role is None:
            raise BundleError(f"products: unknown product role {name!r}; "
                              f"expected one of {sorted(_PRODUCT_ROLES)}")
        products[role] = _entries_to_tensor(entries, dim, f"products.{name}")

    declared: StructureClass | None = None
    if "class" in raw:
        declared = _CLASSES.get(raw["class"])
        if declared is None:
            raise BundleError(f"class: unknown structure class {raw['class']!r}; "
                              f"expected one of {sorted(_CLASSES)}")

    meta: dict[str, str] = {}
    if "meta" in raw:
        if (not isinstance(raw["meta"], dict)
                or not all(isinstance(k, str) and isinstance(v, str)
                           for k, v in raw["meta"].items())):
            raise BundleError("meta: expected an object mapping strings to strings")
        meta = dict(raw["meta"])

    structure = HomStructure(dim=dim, twist=twist, products=products,
                             basis=tuple(basis), meta=meta)

    reps: list[Representation] = []
    if "reps" in raw:
        if not isinstance(raw["reps"], list):
            raise BundleError("reps: expected a list")
        for n, entry in enumerate(raw["reps"]):
            reps.append(_parse_rep(entry, structure, f"reps[{n}]"))

    operators: list[OperatorWitness] = []
    rep_indices: list[int | None] = []
    if "operators" in raw:
        if not isinstance(raw["operators"], list):
            raise BundleError("operators: expected a list")
        for n, entry in enumerate(raw["operators"]):
            witness, idx = _parse_operator(entry, structure, tuple(reps),
                                           f"operators[{n}]")
            operators.append(witness)
            rep_indices.append(idx)

    forms: list[BilinearForm] = []
    if "forms" in raw:
        if not isinstance(raw["forms"], list):
            raise BundleError("forms: expected a list")
        for n, entry in enumerate(raw["forms"]):
            forms.append(BilinearForm(_flat_matrix(entry, dim, dim, f"forms[{n}]")))

    return Bundle(structure=structure, declared_class=declared, reps=tuple(reps),
                  operators=tuple(operators), rep_indices=tuple(rep_indices),
                  forms=tuple(forms))


def load_bundle(path) -> Bundle:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise BundleError(f"cannot read {path}: {exc}") from exc
    return loads_bundle(text)


# ---------------------------------------------------------------------------
# deterministic report payloads
# ---------------------------------------------------------------------------

def check_payload(report: CheckReport) -> dict[str, Any]:
    """The deterministic section of a check report (no timing)."""
    return {
        "target": report.target,
        "passed": report.passed,
        "tuples_checked": report.tuples_checked,
        "violations": [
            {
                "identity": v.identity,
                "args": list(v.args),
                "residual": [[k, format_rational(val)]
                             for k, val in sorted(v.residual.items())],
            }
            for v in report.violations
        ],
    }


def diagram_payload(report) -> dict[str, Any]:
    """The deterministic section of a diagram report (no timing)."""
    return {
        "nodes": {name: check_payload(node)
                  for name, node in sorted(report.nodes.items())},
        "edges": [[label, bool(ok)] for label, ok in report.edges],
        "paths_equal": report.paths_equal,
    }
