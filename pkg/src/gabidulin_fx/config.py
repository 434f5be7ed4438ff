"""Code configuration files (TOML) and the bundled worked-example fixtures.

A configuration has three tables::

    [field]
    p = 2
    modulus = [1, 1, 0, 0, 1]   # β^4 + β + 1, lowest degree first
    symbol = "β"

    [extension]
    kind = "kummer"              # or "artin-schreier"
    u = "x"
    n = 5
    alpha = "β^3"                # optional

    [code]
    k = 3
    g = ["1", "y", "y^2", "y^3", "y^4"]   # optional, defaults to the basis
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .code import build_code
from .errors import ValidationError
from .extension import build_artin_schreier, build_kummer
from .field import FqContext

FIXTURES = ("kummer-f16", "artin-schreier-f5")


@dataclass
class CodeConfig:
    field: dict
    extension: dict
    code: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        missing = [k for k in ("field", "extension") if k not in data]
        if missing:
            raise ValidationError(f"config is missing section(s): {', '.join(missing)}")
        return cls(dict(data["field"]), dict(data["extension"]), dict(data.get("code", {})))

    @classmethod
    def load(cls, path):
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ValidationError(f"{path}: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self):
        return {"field": self.field, "extension": self.extension, "code": self.code}

    def build_field(self):
        f = self.field
        if "p" not in f:
            raise ValidationError("[field] needs p")
        modulus = f.get("modulus")
        if modulus is not None and "m" in f and len(modulus) - 1 != f["m"]:
            raise ValidationError(f"modulus degree {len(modulus) - 1} != m = {f['m']}")
        return FqContext(int(f["p"]), modulus, f.get("symbol", "β"))

    def build_extension(self, ctx=None):
        ctx = ctx or self.build_field()
        e = self.extension
        kind = e.get("kind")
        if "u" not in e:
            raise ValidationError("[extension] needs u")
        if kind == "kummer":
            if "n" not in e:
                raise ValidationError("a Kummer extension needs n")
            return build_kummer(ctx, str(e["u"]), int(e["n"]), e.get("alpha"))
        if kind == "artin-schreier":
            if "n" in e and int(e["n"]) != ctx.p:
                raise ValidationError(f"an Artin-Schreier extension has degree p = {ctx.p}")
            return build_artin_schreier(ctx, str(e["u"]))
        raise ValidationError(f"unknown extension kind {kind!r}")

    def build(self):
        ext = self.build_extension()
        k = self.code.get("k")
        if k is None:
            raise ValidationError("[code] needs k")
        g = self.code.get("g")
        if g is not None:
            g = [ext.parse(s) for s in g]
        return build_code(ext, int(k), g)


def fixture_dir(name):
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return Path(str(resources.files("gabidulin_fx") / "fixtures" / name))


def load_fixture(name):
    """Config and the stored worked-example files of a bundled fixture."""
    d = fixture_dir(name)
    cfg = CodeConfig.load(d / "config.toml")
    files = {}
    for p in sorted(d.glob("*.json")):
        files[p.stem] = json.loads(p.read_text(encoding="utf-8"))
    return cfg, files
