"""JSON manifest loading for manifolds and marked pairs.

Schema (UTF-8 JSON, integers only):

    {
      "name": "kummer_blown",
      "basis": ["v", "e1", "e2"],
      "gram": [[-4, 1, 1], [1, -1, 0], [1, 0, -1]],
      "K": [0, 1, 1],
      "V": {"vector": [1, 0, 0], "genus": 0},
      "euler": 26,
      "signature": -18,
      "flags": {"rational": false, "ruled": false, "closed": false}
    }

"V" is optional for manifests that only describe a manifold; "cap" is an
optional standard-cap label (see parse_cap_label) used by CLI commands that
need a second summand.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .errors import PreconditionError
from .lattice import (
    IntersectionLattice,
    ManifoldModel,
    ModelFlags,
    SymplecticPair,
    validate_model,
    validate_pair,
)
from .models import (
    StandardCap,
    cap_bundle_fiber,
    cap_bundle_section,
    cap_cp2_2h,
    cap_cp2_h,
)


class ManifestError(Exception):
    """The manifest file is syntactically or structurally malformed."""


@dataclass(frozen=True)
class Manifest:
    name: str
    model: ManifoldModel
    pair: Optional[SymplecticPair]
    cap: Optional[str]

    def require_pair(self) -> SymplecticPair:
        if self.pair is None:
            raise PreconditionError(f"manifest {self.name!r} has no marked class V")
        return self.pair


def _int_vector(raw, what: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in raw
    ):
        raise ManifestError(f"{what} must be a list of integers")
    return tuple(raw)


def parse_manifest(data: dict, name_hint: str = "?") -> Manifest:
    if not isinstance(data, dict):
        raise ManifestError("manifest must be a JSON object")
    try:
        name = data.get("name", name_hint)
        basis = data["basis"]
        if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
            raise ManifestError("basis must be a list of strings")
        gram_raw = data["gram"]
        if not isinstance(gram_raw, list):
            raise ManifestError("gram must be a matrix")
        gram = tuple(_int_vector(row, "gram row") for row in gram_raw)
        if len(gram) != len(basis) or any(len(row) != len(basis) for row in gram):
            raise ManifestError("gram must be square of the basis size")
        k = _int_vector(data["K"], "K")
        euler = data["euler"]
        signature = data["signature"]
        if not isinstance(euler, int) or not isinstance(signature, int):
            raise ManifestError("euler and signature must be integers")
        flags_raw = data.get("flags", {})
        flags = ModelFlags(
            rational=bool(flags_raw.get("rational", False)),
            ruled=bool(flags_raw.get("ruled", False)),
            closed=bool(flags_raw.get("closed", True)),
        )
    except KeyError as exc:
        raise ManifestError(f"missing required field {exc.args[0]!r}") from exc
    if len(k) != len(basis):
        raise ManifestError("K has the wrong length")
    L = IntersectionLattice(tuple(basis), gram)
    model = ManifoldModel(L, L.cls(k), euler=euler, signature=signature, flags=flags)
    pair = None
    if "V" in data:
        v_raw = data["V"]
        if not isinstance(v_raw, dict):
            raise ManifestError("V must be an object with 'vector' and 'genus'")
        vec = _int_vector(v_raw.get("vector"), "V.vector")
        if len(vec) != len(basis):
            raise ManifestError("V.vector has the wrong length")
        genus = v_raw.get("genus", 0)
        if not isinstance(genus, int):
            raise ManifestError("V.genus must be an integer")
        pair = SymplecticPair(model, L.cls(vec), genus)
    cap = data.get("cap")
    if cap is not None and not isinstance(cap, str):
        raise ManifestError("cap must be a string label")
    return Manifest(name, model, pair, cap)


def load_manifest(path: Union[str, Path]) -> Manifest:
    try:
        text = Path(path).read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    return parse_manifest(data, name_hint=Path(path).stem)


def manifest_violations(m: Manifest) -> list[str]:
    """Structural violations of the loaded model (and pair, if marked)."""
    if m.pair is not None:
        return validate_pair(m.pair)
    return validate_model(m.model)


def parse_cap_label(label: str) -> StandardCap:
    """Cap labels: cp2_h | cp2_2h | bundle_fiber:G[:twisted] | bundle_section:N."""
    parts = label.split(":")
    head = parts[0]
    if head == "cp2_h" and len(parts) == 1:
        return cap_cp2_h()
    if head == "cp2_2h" and len(parts) == 1:
        return cap_cp2_2h()
    if head == "bundle_fiber" and len(parts) in (2, 3):
        try:
            g = int(parts[1])
        except ValueError as exc:
            raise ManifestError(f"bad base genus in cap label {label!r}") from exc
        twisted = False
        if len(parts) == 3:
            if parts[2] not in ("twisted", "untwisted"):
                raise ManifestError(f"bad twist flag in cap label {label!r}")
            twisted = parts[2] == "twisted"
        return cap_bundle_fiber(g, twisted)
    if head == "bundle_section" and len(parts) == 2:
        try:
            n = int(parts[1])
        except ValueError as exc:
            raise ManifestError(f"bad section square in cap label {label!r}") from exc
        return cap_bundle_section(n)
    raise ManifestError(f"unknown cap label {label!r}")
