"""The JSON code-file format shared by every CLI command.

All coordinate indices in files are 1-based (the library API is
0-based); matrices are row-major arrays of canonical field integers.
"""

from __future__ import annotations

import json

import numpy as np

from .codes import LinearCode, from_generator
from .constructions import ConstructionRecipe
from .errors import LrcError, ParseError, RankDeficient
from .gf import make_field
from .locality import LocalGroup, LocalityProfile

FORMAT_VERSION = 1


def code_to_dict(code: LinearCode, profile: LocalityProfile | None = None,
                 recipe: ConstructionRecipe | None = None) -> dict:
    out = {
        "format": FORMAT_VERSION,
        "q": code.field.q,
        "n": code.n,
        "k": code.k,
        "generator": code.G.tolist(),
    }
    if code.field.modulus:
        out["modulus"] = list(code.field.modulus)
    if code.systematic_columns:
        out["systematic_columns"] = [c + 1 for c in code.systematic_columns]
    if profile is not None:
        out["locality"] = {
            "r": profile.r,
            "delta": profile.delta,
            "mode": profile.mode,
            "groups": [
                {
                    "index": g.index + 1,
                    "support": [c + 1 for c in g.support],
                    "local_check": np.asarray(g.local_check).tolist(),
                    "local_distance": g.local_distance,
                }
                for g in profile.groups
            ],
        }
    if recipe is not None:
        out["recipe"] = {"kind": recipe.kind, "params": dict(recipe.params),
                         "provenance": dict(recipe.provenance)}
    return out


def code_from_dict(doc: dict):
    """(code, profile | None, recipe | None); raises ParseError on bad input."""
    try:
        q = int(doc["q"])
        n = int(doc["n"])
        k = int(doc["k"])
        gen = doc["generator"]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"missing or malformed required field: {e}") from e
    try:
        field = make_field(q, doc.get("modulus"))
    except LrcError as e:
        raise ParseError(f"bad field: {e}") from e
    G = np.array(gen, dtype=np.int64)
    if G.ndim != 2 or G.shape != (k, n):
        raise ParseError(f"generator shape {G.shape} does not match k={k}, n={n}")
    syscols = doc.get("systematic_columns")
    try:
        code = from_generator(G, field,
                              None if syscols is None else [c - 1 for c in syscols])
    except RankDeficient as e:
        raise ParseError(f"generator is rank-deficient: rows {[r + 1 for r in e.dependent_rows]} "
                         "are dependent") from e
    except LrcError as e:
        raise ParseError(str(e)) from e

    profile = None
    if "locality" in doc:
        loc = doc["locality"]
        try:
            groups = tuple(
                LocalGroup(
                    index=int(g["index"]) - 1,
                    support=tuple(int(c) - 1 for c in g["support"]),
                    local_check=np.array(g["local_check"], dtype=np.int64),
                    local_distance=int(g.get("local_distance", loc["delta"])),
                )
                for g in loc["groups"]
            )
            profile = LocalityProfile(r=int(loc["r"]), delta=int(loc["delta"]),
                                      mode=str(loc["mode"]), groups=groups)
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed locality block: {e}") from e

    recipe = None
    if "recipe" in doc:
        rec = doc["recipe"]
        try:
            recipe = ConstructionRecipe(kind=str(rec["kind"]), params=dict(rec["params"]),
                                        provenance=dict(rec.get("provenance", {})))
        except (KeyError, TypeError) as e:
            raise ParseError(f"malformed recipe block: {e}") from e
    return code, profile, recipe


def save_code(path, code: LinearCode, profile=None, recipe=None):
    with open(path, "w") as fh:
        json.dump(code_to_dict(code, profile, recipe), fh, sort_keys=True,
                  separators=(",", ":"))
        fh.write("\n")


def load_code(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read code file {path}: {e}") from e
    return code_from_dict(doc)
