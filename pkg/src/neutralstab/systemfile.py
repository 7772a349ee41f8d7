"""Reading system descriptions from JSON.

A system file holds ``n``, ``N``, ``A0``, ``A`` (list of ``N`` matrices),
``B`` (list of ``N`` matrices) and optionally ``label`` and ``params``.
Entries may be JSON numbers, decimal or fraction strings, or arithmetic
expressions in the declared parameters.  Numbers are read from their JSON
text, so ``0.1`` is exactly one tenth.  Missing delayed matrices are zero.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import ConfigError, NeutralStabError
from .polycore import rat
from .stability import NeutralSystem, SystemTemplate

KNOWN_KEYS = {"n", "N", "A0", "A", "B", "label", "params"}


class _Text(str):
    """A JSON number kept as its source text."""


def _loads(text: str):
    try:
        return json.loads(text, parse_float=_Text, parse_int=_Text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from None


def _count(value, name: str) -> int:
    if isinstance(value, _Text) and value.lstrip("-").isdigit():
        return int(value)
    raise ConfigError(f"{name} must be an integer")


def _entries(m, name: str):
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise ConfigError(f"{name} must be a list of rows")
    out = []
    for row in m:
        cells = []
        for c in row:
            if isinstance(c, bool) or not isinstance(c, str):
                raise ConfigError(f"{name}: entries must be numbers or strings")
            cells.append(str(c))
        out.append(cells)
    return out


def template_from_dict(doc: dict) -> SystemTemplate:
    if not isinstance(doc, dict):
        raise ConfigError("a system file must hold a JSON object")
    unknown = set(doc) - KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown keys: {sorted(unknown)}")
    for key in ("n", "N", "A0"):
        if key not in doc:
            raise ConfigError(f"missing key {key!r}")
    n = _count(doc["n"], "n")
    N = _count(doc["N"], "N")
    if n < 1 or N < 1:
        raise ConfigError("n and N must be positive")
    A = doc.get("A", [])
    B = doc.get("B", [])
    if not isinstance(A, list) or not isinstance(B, list):
        raise ConfigError("A and B must be lists of matrices")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    try:
        params = {str(k): rat(str(v)) for k, v in params.items()}
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"params: {exc}") from None
    label = doc.get("label")
    try:
        return SystemTemplate(
            n, N,
            _entries(doc["A0"], "A0"),
            tuple(_entries(m, f"A{k + 1}") for k, m in enumerate(A)),
            tuple(_entries(m, f"B{k + 1}") for k, m in enumerate(B)),
            params,
            None if label is None else str(label),
        )
    except NeutralStabError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def loads_template(text: str) -> SystemTemplate:
    return template_from_dict(_loads(text))


def resolve_path(path: str | Path) -> Path:
    """A filesystem path, or the name of a bundled system (``"ex3"``, ``"ex5.json"``)."""
    p = Path(path)
    if p.exists():
        return p
    name = p.name if p.suffix == ".json" else p.name + ".json"
    bundled = resources.files("neutralstab").joinpath("systems", name)
    if str(p.parent) in ("", ".", "examples", "systems") and bundled.is_file():
        return Path(str(bundled))
    raise ConfigError(f"no such system file: {path}")


def load_template(path: str | Path) -> SystemTemplate:
    p = resolve_path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return loads_template(text)


def load_system(path: str | Path, **params) -> NeutralSystem:
    return load_template(path).instantiate(**params)


def bundled_systems() -> list[str]:
    root = resources.files("neutralstab").joinpath("systems")
    return sorted(e.name[:-5] for e in root.iterdir() if e.name.endswith(".json"))
