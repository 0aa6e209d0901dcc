"""Python bindings for the derand experiment engine."""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from . import _derand
from ._derand import DerandError, construction_names, game_names, generate, stream_values

__version__ = _derand.version()

EXIT_OK, EXIT_ERROR, EXIT_REFUTED, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Result:
    exit_code: int
    report: Optional[dict]
    text: str
    message: str


def run(command: str, name: Optional[str] = None, **config: Any) -> Result:
    """Runs verify, solve, game or gen with the same keys as a config file."""
    cfg = {"command": command, **config}
    if name is not None:
        cfg["name"] = name
    code, report, text, message = _derand.run_json(json.dumps(cfg))
    return Result(code, json.loads(report) if report else None, text, message)


def verify(name: str, **config: Any) -> Result:
    return run("verify", name, **config)


def solve(name: str, **config: Any) -> Result:
    return run("solve", name, **config)


def game(name: str, **config: Any) -> Result:
    return run("game", name, **config)


def exact_good_fraction(name: str, **config: Any) -> float:
    return _derand.exact_good_fraction_json(json.dumps({"command": "verify", "name": name, **config}))


def even_odds_win_fraction(rounds: int) -> Fraction:
    num, den = _derand.even_odds_win_fraction(rounds)
    return Fraction(int(num), int(den))


__all__ = [
    "DerandError", "Result", "run", "verify", "solve", "game", "generate", "exact_good_fraction",
    "even_odds_win_fraction", "construction_names", "game_names", "stream_values", "__version__",
]
