"""Text field documents.

A document is UTF-8 text, one entry per line::

    # comment
    name: exceptional
    seed: 42
    notes: anything
    D = 2*x3
    E = -2*x4
    F = x3*x4

Polynomial entries use either the component names P1..P4 or the parameter
names A..F, never both; omitted entries are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .field import CliffordParams, VectorField, clifford_build
from .mpoly import MPoly
from .parser import parse_poly

__all__ = ["FieldDocument", "DocumentError", "parse_assignments"]

COMPONENTS = ("P1", "P2", "P3", "P4")
PARAMS = ("A", "B", "C", "D", "E", "F")
META = ("name", "seed", "notes")


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class FieldDocument:
    components: VectorField | None = None
    params: CliffordParams | None = None
    name: str | None = None
    seed: int | None = None
    notes: str | None = None

    def __post_init__(self):
        if (self.components is None) == (self.params is None):
            raise DocumentError("exactly one of components or params must be given")

    @property
    def field(self) -> VectorField:
        return self.components if self.components is not None else clifford_build(self.params)

    @classmethod
    def parse(cls, text: str) -> "FieldDocument":
        meta: dict[str, str] = {}
        polys: dict[str, MPoly] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            head = line.partition(":")[0].strip().lower()
            if ":" in line and head in META:
                meta[head] = line.partition(":")[2].strip()
            elif "=" in line:
                key, _, expr = line.partition("=")
                key = key.strip()
                if key not in COMPONENTS + PARAMS:
                    raise DocumentError(f"unknown polynomial name {key!r}", lineno)
                if key in polys:
                    raise DocumentError(f"duplicate entry {key}", lineno)
                try:
                    polys[key] = parse_poly(expr)
                except ParseError as exc:
                    raise DocumentError(f"{key}: {exc}", lineno) from exc
            elif ":" in line:
                raise DocumentError(f"unknown metadata key {head!r}", lineno)
            else:
                raise DocumentError(f"cannot read {line!r}", lineno)
        seed = None
        if "seed" in meta:
            try:
                seed = int(meta["seed"])
            except ValueError:
                raise DocumentError(f"seed must be an integer, got {meta['seed']!r}") from None
        return cls.from_assignments(polys, name=meta.get("name"), seed=seed, notes=meta.get("notes"))

    @classmethod
    def from_assignments(cls, polys: dict[str, MPoly], **meta) -> "FieldDocument":
        comp = {k: v for k, v in polys.items() if k in COMPONENTS}
        par = {k: v for k, v in polys.items() if k in PARAMS}
        if comp and par:
            raise DocumentError("a document holds either P1..P4 or A..F, not both")
        if not comp and not par:
            raise DocumentError("no polynomials given")
        if comp:
            vf = VectorField(*(comp.get(k, MPoly()) for k in COMPONENTS))
            return cls(components=vf, **meta)
        return cls(params=CliffordParams.of(**{k.lower(): v for k, v in par.items()}), **meta)

    @classmethod
    def read(cls, path: str | Path) -> "FieldDocument":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def to_text(self) -> str:
        lines = []
        for key in META:
            v = getattr(self, key)
            if v is not None:
                lines.append(f"{key}: {v}")
        if self.components is not None:
            lines += [f"{k} = {p}" for k, p in zip(COMPONENTS, self.components.components)]
        else:
            lines += [f"{k} = {p}" for k, p in zip(PARAMS, self.params.as_tuple())]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in META if getattr(self, k) is not None}
        if self.components is not None:
            out["components"] = {k: str(p) for k, p in zip(COMPONENTS, self.components.components)}
        else:
            out["params"] = {k: str(p) for k, p in zip(PARAMS, self.params.as_tuple())}
        return out


def parse_assignments(items: list[str]) -> dict[str, MPoly]:
    """``["A=0", "C=1"]`` into a name -> polynomial map (CLI helper)."""
    out = {}
    for item in items:
        key, sep, expr = item.partition("=")
        key = key.strip()
        if not sep or key not in COMPONENTS + PARAMS:
            raise DocumentError(f"expected NAME=EXPR with NAME in P1..P4 or A..F, got {item!r}")
        try:
            out[key] = parse_poly(expr)
        except ParseError as exc:
            raise DocumentError(f"{key}: {exc}") from exc
    return out
