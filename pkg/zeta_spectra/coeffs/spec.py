from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from mpmath import mp

from zeta_spectra.file import jsonl
from zeta_spectra.mpnum import BigComplex

from .generators import GENERATORS, ZETA_STAR, analyticity_radius

logger = logging.getLogger(__name__)

BUILTIN_FAMILIES = ("geometric", "exponential", "rational2", "catalan", "moments")
_PARAM_COUNT = {"geometric": 1, "exponential": 0, "rational2": 2, "catalan": 0}
_SPEC_PREC = 128
# ring radius when none is given; 1/(1-s) needs a ring inside its unit disc
_DEFAULT_RADIUS = {"one-over-one-minus-z": "0.5"}


def _check_decimal(text: str, what: str) -> str:
    try:
        with mp.workprec(_SPEC_PREC):
            value = mp.mpf(text)
    except (ValueError, TypeError):
        raise ValueError(f"{what} '{text}' is not a decimal number.") from None
    if not mp.isfinite(value):
        raise ValueError(f"{what} must be finite, got {text}.")
    return str(text).strip()


@dataclass(frozen=True)
class FunctionSpec:
    """
    Description of the function f whose Taylor coefficients feed the Hankel matrices.

    Builtin families carry their parameters as decimal strings. Analytic specs name a
    registered generator, the expansion point ``s0 = re + i*im``, a pole-removal tag and the
    radius of the Cauchy ring; the ring must lie strictly inside the analyticity disc.
    """

    name: str
    kind: str = "builtin"
    params: tuple[str, ...] = ()
    generator_id: str = ""
    expansion_point: tuple[str, str] = ("0", "0")
    pole_removal: str = "none"
    ring_radius: str = "1"
    notes: dict[str, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        """Validate family parameters or the analytic ring."""
        object.__setattr__(self, "params", tuple(str(p) for p in self.params))
        object.__setattr__(self, "expansion_point", tuple(str(x) for x in self.expansion_point))
        if self.kind == "builtin":
            self._validate_builtin()
        elif self.kind == "analytic":
            self._validate_analytic()
        else:
            raise ValueError(f"FunctionSpec kind must be 'builtin' or 'analytic', got '{self.kind}'.")

    def _validate_builtin(self):
        if self.name not in BUILTIN_FAMILIES:
            raise ValueError(f"Unknown builtin family '{self.name}'. Known families: {', '.join(BUILTIN_FAMILIES)}.")
        expected = _PARAM_COUNT.get(self.name)
        if expected is not None and len(self.params) != expected:
            raise ValueError(f"Family '{self.name}' takes {expected} parameter(s), got {len(self.params)}.")
        if self.name == "moments" and not self.params:
            raise ValueError("Family 'moments' needs at least one value.")
        for p in self.params:
            _check_decimal(p, f"Parameter of '{self.name}'")

    def _validate_analytic(self):
        for x in self.expansion_point:
            _check_decimal(x, "Expansion point component")
        _check_decimal(self.ring_radius, "Ring radius")
        with mp.workprec(_SPEC_PREC):
            radius = mp.mpf(self.ring_radius)
            if radius <= 0:
                raise ValueError(f"Ring radius must be positive, got {self.ring_radius}.")
            limit = analyticity_radius(self.generator_id, self.pole_removal, self.s0(_SPEC_PREC))
            if radius >= limit:
                raise ValueError(
                    f"Ring radius {self.ring_radius} is not inside the analyticity disc of radius "
                    f"{mp.nstr(limit, 10)} around s0 for {self.generator_id} ({self.pole_removal})."
                )

    def s0(self, prec: int) -> BigComplex:
        """Expansion point at the given precision."""
        with mp.workprec(prec):
            return mp.mpc(mp.mpf(self.expansion_point[0]), mp.mpf(self.expansion_point[1]))

    def radius(self, prec: int):
        """Ring radius at the given precision."""
        with mp.workprec(prec):
            return mp.mpf(self.ring_radius)

    @property
    def is_placeholder(self) -> bool:
        """Whether this is the shipped zeta-star default rather than a transcribed definition."""
        return self.kind == "analytic" and self.generator_id == ZETA_STAR and self.notes.get("placeholder") == "true"

    @property
    def label(self) -> str:
        """Short text form, the inverse of :meth:`parse` for builtin families."""
        if self.kind == "builtin":
            return f"{self.name}:{','.join(self.params)}" if self.params else self.name
        re, im = self.expansion_point
        s0 = re if im in ("0", "0.0") else f"{re}+{im}j"
        return f"{self.name}:s0={s0},r={self.ring_radius},removal={self.pole_removal}"

    def to_dict(self) -> dict[str, Any]:
        """Canonical mapping used for hashing and the JSON config form."""
        document: dict[str, Any] = {"name": self.name, "kind": self.kind}
        if self.kind == "builtin":
            document["params"] = list(self.params)
        else:
            document.update(
                {
                    "generator_id": self.generator_id,
                    "expansion_point": list(self.expansion_point),
                    "pole_removal": self.pole_removal,
                    "ring_radius": self.ring_radius,
                }
            )
        return document

    def spec_hash(self) -> str:
        """First 16 hex digits of the SHA-256 of the canonical JSON form."""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

    @classmethod
    def from_dict(cls, document: dict[str, Any]) -> FunctionSpec:
        """
        Build a spec from its mapping form.

        :param document: mapping as produced by :meth:`to_dict`
        :return: the spec
        """
        kind = document.get("kind", "builtin")
        if kind == "builtin":
            return cls(name=document["name"], kind=kind, params=tuple(document.get("params", ())))
        return cls(
            name=document.get("name", document.get("generator_id", "")),
            kind=kind,
            generator_id=document.get("generator_id", document.get("name", "")),
            expansion_point=tuple(document.get("expansion_point", ("0", "0"))),
            pole_removal=document.get("pole_removal", "none"),
            ring_radius=str(document.get("ring_radius", "1")),
            notes=dict(document.get("notes", {})),
        )

    @classmethod
    def from_json(cls, path: str | Path) -> FunctionSpec:
        """Read a spec from a JSON config file."""
        return cls.from_dict(jsonl.read_json(path))

    @classmethod
    def parse(cls, text: str) -> FunctionSpec:
        """
        Parse the command line form of a function spec.

        Builtins: ``geometric:R``, ``exponential``, ``rational2:A,B``, ``catalan``,
        ``moments:X0,X1,...``. Analytic: a generator id optionally followed by
        ``:s0=...,r=...,removal=...``; ``zeta-star`` alone gives the placeholder
        (s - 1) zeta(s) expanded at 0 on the unit ring.

        :param text: spec text
        :raises ValueError: if the text names no family or generator
        :return: the spec
        """
        name, _, rest = text.strip().partition(":")
        if name in BUILTIN_FAMILIES:
            params = tuple(p.strip() for p in rest.split(",") if p.strip()) if rest else ()
            return cls(name=name, kind="builtin", params=params)
        if name in GENERATORS:
            options = dict(item.split("=", 1) for item in rest.split(",") if "=" in item) if rest else {}
            unknown = set(options) - {"s0", "r", "removal"}
            if unknown:
                raise ValueError(f"Unknown option(s) {', '.join(sorted(unknown))} for generator '{name}'.")
            s0_text = options.get("s0", "0").strip()
            if any(c in s0_text for c in "ij"):
                z = complex(s0_text.replace("i", "j"))
                expansion_point = (repr(z.real), repr(z.imag))
            else:
                expansion_point = (s0_text, "0")
            removal = options.get("removal", "s-1" if name == ZETA_STAR else "none")
            notes = {"placeholder": "true"} if name == ZETA_STAR and not options else {}
            return cls(
                name=name,
                kind="analytic",
                generator_id=name,
                expansion_point=expansion_point,
                pole_removal=removal,
                ring_radius=options.get("r", _DEFAULT_RADIUS.get(name, "1")),
                notes=notes,
            )
        raise ValueError(
            f"Cannot parse function spec '{text}'. Use one of {', '.join(BUILTIN_FAMILIES)} "
            f"or a generator in {', '.join(sorted(GENERATORS))}."
        )
