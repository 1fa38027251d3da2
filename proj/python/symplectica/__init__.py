"""Finite symplectic self-dualities, extension matrices and Heisenberg cocycles.

Every computation of the command-line tool is available through `run` (full
result) or `call` (payload only, raising on errors). Integers in payloads
are decimal strings; `ints` converts nested lists of them.
"""

import json
from dataclasses import dataclass
from typing import Any

from . import _core

__version__ = _core.__version__

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class SymplecticaError(RuntimeError):
    def __init__(self, result: "Result"):
        super().__init__(result.payload.get("message", result.status))
        self.result = result


@dataclass
class Result:
    verb: str
    status: str
    payload: Any
    provenance: dict
    exit_code: int


def verbs() -> list:
    return list(_core.verbs())


def run(verb: str, data: Any = None, **options) -> Result:
    """Run `verb` with JSON-serializable `data` as input. Keyword options map
    to flags: run("counterexample", p=5, s=4, N=5)."""
    args = [verb]
    for key, value in options.items():
        if value is True:
            args.append("--" + key)
        elif value is not False and value is not None:
            args += ["--" + key, str(value)]
    text = ""
    if data is not None:
        args += ["--input", "-"]
        text = json.dumps(data)
    code, out = _core.run(args, text)
    doc = json.loads(out)
    return Result(doc["verb"], doc["status"], doc["payload"], doc["provenance"], code)


def call(verb: str, data: Any = None, **options) -> Any:
    result = run(verb, data, **options)
    if result.exit_code != EXIT_OK:
        raise SymplecticaError(result)
    return result.payload


def ints(x: Any) -> Any:
    if isinstance(x, list):
        return [ints(v) for v in x]
    if isinstance(x, str):
        return int(x)
    return x


def smith(matrix) -> dict:
    out = call("smith", {"matrix": [[str(v) for v in row] for row in matrix]})
    return {k: ints(out[k]) for k in ("U", "V", "D")}


def extension_group(p: int, lam, alpha) -> list:
    """Invariant factors of the middle group, largest first."""
    return ints(call("ext-group", {"p": p, "lambda": list(lam), "alpha": alpha})["invariants"])


def counterexample(p: int = 3, s: int = 4, N: int = 4) -> dict:
    out = call("counterexample", p=p, s=s, N=N)
    return {"p": out["p"], "lambda": out["lambda"], "alpha": ints(out["alpha"])}


def standardize(p: int, exponents, numerators, route: str = "auto") -> dict:
    return call("standardize", {"group": {"p": p, "exponents": list(exponents)}, "numerators": numerators}, route=route)
