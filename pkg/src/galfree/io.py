"""JSON documents for groups, catalogs and scenario inputs.

A group reference is one of

* an inline object ``{"name", "kind": "cayley", "table"}`` or
  ``{"name", "kind": "perm", "degree", "generators"}``;
* a path to a file holding such an object, relative to the referring file;
* ``"catalog:NAME"`` for a group of the shipped catalog.

Every loader raises :class:`SchemaError` with the dotted path of the field
at fault.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .catalog import Catalog, default_catalog
from .errors import GalfreeError
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    build_from_permutations,
    build_from_table,
    closure,
)


class SchemaError(GalfreeError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(str(path), f"cannot read file ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(str(path), f"invalid JSON: {exc}") from None


def _require(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if key not in doc:
        raise SchemaError(f"{path}.{key}", "missing required field")
    return doc[key]


def _int_list(value, path: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise SchemaError(path, "expected a list of integers")
    return value


def group_to_doc(G: FiniteGroup, name: str | None = None) -> dict:
    return {"name": name or G.label or "group", "kind": "cayley", "table": G.table.tolist()}


def group_from_doc(doc: dict, path: str = "group") -> FiniteGroup:
    kind = _require(doc, "kind", path)
    name = doc.get("name")
    if kind == "cayley":
        table = _require(doc, "table", path)
        if not isinstance(table, list):
            raise SchemaError(f"{path}.table", "expected a list of rows")
        for r, row in enumerate(table):
            _int_list(row, f"{path}.table[{r}]")
        try:
            return build_from_table(table, name)
        except GalfreeError as exc:
            raise SchemaError(f"{path}.table", str(exc)) from None
    if kind == "perm":
        degree = _require(doc, "degree", path)
        if not isinstance(degree, int) or degree < 1:
            raise SchemaError(f"{path}.degree", "expected a positive integer")
        gens = _require(doc, "generators", path)
        if not isinstance(gens, list):
            raise SchemaError(f"{path}.generators", "expected a list of image arrays")
        for k, g in enumerate(gens):
            _int_list(g, f"{path}.generators[{k}]")
        try:
            return build_from_permutations(degree, gens, name)[0]
        except GalfreeError as exc:
            raise SchemaError(f"{path}.generators", str(exc)) from None
    raise SchemaError(f"{path}.kind", f"expected 'cayley' or 'perm', got {kind!r}")


class Loader:
    """Resolves group references relative to a base directory."""

    def __init__(self, base: str | Path = ".", catalog: Catalog | None = None):
        self.base = Path(base)
        self._catalog = catalog
        self._cache: dict[str, FiniteGroup] = {}

    @property
    def catalog(self) -> Catalog:
        if self._catalog is None:
            self._catalog = default_catalog()
        return self._catalog

    def group(self, ref, path: str) -> FiniteGroup:
        if isinstance(ref, dict):
            return group_from_doc(ref, path)
        if not isinstance(ref, str):
            raise SchemaError(path, "expected a group object, file path or 'catalog:NAME'")
        if ref in self._cache:
            return self._cache[ref]
        if ref.startswith("catalog:"):
            try:
                G = self.catalog.by_label(ref[len("catalog:"):])
            except KeyError:
                raise SchemaError(path, f"no catalog group named {ref[8:]!r}") from None
        else:
            G = group_from_doc(read_json(self.base / ref), f"{path}<{ref}>")
        self._cache[ref] = G
        return G

    def subgroup(self, G: FiniteGroup, value, path: str) -> Subgroup:
        elems = _int_list(value, path)
        if any(not 0 <= x < G.order for x in elems):
            raise SchemaError(path, f"element index out of range for a group of order {G.order}")
        S = Subgroup(G, elems, check=False)
        if len(closure(G, elems)) != len(S):
            raise SchemaError(path, "element list is not a subgroup")
        return S

    def hom(self, G: FiniteGroup, H: FiniteGroup, value, path: str) -> Homomorphism:
        m = _int_list(value, path)
        try:
            return Homomorphism(G, H, m)
        except GalfreeError as exc:
            raise SchemaError(path, str(exc)) from None


def load_catalog_manifest(path: str | Path) -> Catalog:
    """A catalog manifest: ``{"bound": N, "groups": [group refs]}``."""
    doc = read_json(path)
    loader = Loader(Path(path).parent)
    bound = _require(doc, "bound", "catalog")
    refs = _require(doc, "groups", "catalog")
    if not isinstance(bound, int) or bound < 1:
        raise SchemaError("catalog.bound", "expected a positive integer")
    groups = [loader.group(r, f"catalog.groups[{k}]") for k, r in enumerate(refs)]
    for k, G in enumerate(groups):
        if G.label is None:
            G.label = f"G{G.order}_{k}"
    return Catalog(bound, groups)
