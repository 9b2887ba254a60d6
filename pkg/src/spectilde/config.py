"""Analysis configuration documents (JSON) and their validation."""
from __future__ import annotations

import json
from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

ANALYSES = (
    "spec", "separation", "nested", "connected", "closure-operators", "compactness",
    "semi-local", "prime-avoidance", "localization", "induced-map", "oracle-compare",
    "lattice-witness",
)
MODULE_ANALYSES = ANALYSES[:-1]


class ConfigError(ValueError):
    """Malformed or invalid configuration document."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class RingSpec(_Strict):
    zn: int | None = None
    product: list[int] | None = None

    @model_validator(mode="after")
    def _one_shape(self):
        if (self.zn is None) == (self.product is None):
            raise ValueError("give exactly one of 'zn' or 'product'")
        for m in ([self.zn] if self.zn is not None else self.product):
            if m < 2:
                raise ValueError(f"modulus must be at least 2, got {m}")
        if self.product is not None and len(self.product) < 2:
            raise ValueError("'product' needs at least two moduli")
        return self

    @property
    def shape(self):
        return self.zn if self.zn is not None else tuple(self.product)


Factor = Union[int, tuple[int, int]]


class ModuleSpec(_Strict):
    factors: list[Factor]

    @field_validator("factors")
    @classmethod
    def _positive(cls, v):
        for f in v:
            d = f if isinstance(f, int) else f[0]
            if d < 1:
                raise ValueError(f"factor orders must be positive, got {d}")
        return v


class LatticeSpec(_Strict):
    rank: int = Field(ge=1)
    submodules: dict[str, list[list[int]]]

    @model_validator(mode="after")
    def _shapes(self):
        if len(self.submodules) < 2:
            raise ValueError("declare at least two submodules to compare")
        for name, gens in self.submodules.items():
            for g in gens:
                if len(g) != self.rank:
                    raise ValueError(f"generator {g} of {name} does not have length {self.rank}")
        return self


class PrimeFamilies(_Strict):
    P: list[Union[str, int]]
    Q: list[Union[str, int]]


class Epimorphism(_Strict):
    kernel: list = Field(default_factory=list)  # generator labels of the kernel submodule


class Bounds(_Strict):
    max_ring_size: int = Field(default=64, gt=0)
    max_module_size: int = Field(default=256, gt=0)
    max_oracle_points: int = Field(default=20, gt=0)
    samples: int = Field(default=500, gt=0)


class AnalysisConfig(_Strict):
    ring: RingSpec | None = None
    module: ModuleSpec | None = None
    lattice: LatticeSpec | None = None
    mult_sets: list[list] = Field(default_factory=list)
    families: dict[str, list[int]] = Field(default_factory=dict)
    subsets: dict[str, list[Union[str, int]]] = Field(default_factory=dict)
    prime_families: list[PrimeFamilies] = Field(default_factory=list)
    epimorphism: Epimorphism | None = None
    analyses: list[Literal[ANALYSES]] = Field(min_length=1)
    bounds: Bounds = Field(default_factory=Bounds)
    seed: int = 0

    @model_validator(mode="after")
    def _consistent(self):
        needs_module = [a for a in self.analyses if a in MODULE_ANALYSES]
        if needs_module and (self.ring is None or self.module is None):
            raise ValueError(f"analyses {needs_module} need both 'ring' and 'module'")
        if "lattice-witness" in self.analyses and self.lattice is None:
            raise ValueError("'lattice-witness' needs a 'lattice' section")
        if len(set(self.analyses)) != len(self.analyses):
            raise ValueError("analyses must not repeat")
        for name, idx in self.families.items():
            for i in idx:
                if not 0 <= i < len(self.mult_sets):
                    raise ValueError(f"family {name!r} refers to mult_sets[{i}], which does not exist")
        return self


def _format_loc(loc) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def parse_config(text: str) -> AnalysisConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    try:
        return AnalysisConfig.model_validate(raw)
    except ValidationError as e:
        msgs = []
        for err in e.errors():
            # tagged unions add the branch name to the path; drop it
            loc = [p for p in err["loc"] if not (isinstance(p, str) and ("[" in p or p.startswith("literal")))]
            msgs.append(f"{_format_loc(loc)}: {err['msg']}")
        raise ConfigError("invalid configuration: " + "; ".join(msgs)) from None
